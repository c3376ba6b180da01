//! Command-line front end: build named instances, verify the two-distance
//! property, certify maximality, enumerate parameters, and reproduce the
//! instance table.
//!
//! Machine-readable JSON goes to stdout, human-readable text to stderr.
//! Exit codes: 0 success (verified / MAXIMAL), 1 verification failure or
//! EXTENDABLE, 2 invalid arguments, 3 resource cap exceeded (partial
//! result). Every command is deterministic and independent of the thread
//! count.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use simplex2dist_core::exactgeom::{embed, simplex_points, write_points_csv, Point};
use simplex2dist_core::paramspace::{admissible_params, Branch};
use simplex2dist_core::report::{
    InstanceJson, MaximalityJson, OutputFileJson, ParamTupleJson, RunManifest, VerifyJson,
};
use simplex2dist_core::searcher::{
    build_instance, catalog_names, expected_size, maximality_check, verify_instance, Instance,
    Method, SearchError, SearchLimits, Verdict,
};

const EXIT_OK: i32 = 0;
const EXIT_FAIL: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_PARTIAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "simplex2dist",
    about = "Exact construction and certification of two-distance sets containing a regular simplex",
    version
)]
struct Cli {
    /// Worker threads (0 = all cores); the SIMPLEX2DIST_THREADS environment
    /// variable overrides this flag.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Below,
    Above,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Decomposed,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate admissible parameter tuples for an integer LRS ratio.
    Params {
        #[arg(long)]
        s: i64,
        #[arg(long, value_enum)]
        branch: BranchArg,
    },
    /// Build a named instance; write instance JSON, coordinate CSV, and a
    /// run manifest when --out is given.
    Build {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the two-distance property of an instance file.
    Verify { file: PathBuf },
    /// Certify maximality of an instance file by exhaustive search.
    Maximal {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "decomposed")]
        method: MethodArg,
        /// Scan/node budget; exceeding it is reported, never truncated.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Build and verify every catalog row; --certify also runs maximality.
    Table1 {
        #[arg(long, default_value_t = 5)]
        max_s: usize,
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        cap: Option<u64>,
    },
}

fn init_threads(flag: usize) {
    let n = std::env::var("SIMPLEX2DIST_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(flag);
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn limits_with_cap(cap: Option<u64>) -> SearchLimits {
    let mut limits = SearchLimits::default();
    if let Some(c) = cap {
        limits.max_scan = c as u128;
        limits.max_nodes = c;
    }
    limits
}

fn fail(code: i32, msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(code);
}

fn error_exit_code(e: &SearchError) -> i32 {
    match e {
        SearchError::ScanCapExceeded { .. }
        | SearchError::Obstruction(_)
        | SearchError::AmbientTooLarge(_) => EXIT_PARTIAL,
        SearchError::UnknownInstance(_) | SearchError::NotDecomposable(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn instance_points(inst: &Instance) -> Vec<Point> {
    let t = &inst.params;
    let mut points = Vec::with_capacity(inst.size());
    if inst.include_simplex {
        points.extend(simplex_points(t.d).expect("catalog dimensions are >= 2"));
    }
    for m in inst.members() {
        points.push(embed(&m, t.d, m.weight(), &t.beta).expect("members embed"));
    }
    points
}

fn sha256_file(path: &Path) -> String {
    let bytes = std::fs::read(path).expect("hash freshly written file");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

fn write_out(path: &Path, bytes: &[u8]) {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).unwrap_or_else(|e| {
                fail(
                    EXIT_FAIL,
                    &format!("cannot create {}: {e}", parent.display()),
                )
            });
        }
    }
    std::fs::write(path, bytes)
        .unwrap_or_else(|e| fail(EXIT_FAIL, &format!("cannot write {}: {e}", path.display())));
}

fn load_instance(file: &Path) -> Instance {
    let text = std::fs::read_to_string(file)
        .unwrap_or_else(|e| fail(EXIT_USAGE, &format!("cannot read {}: {e}", file.display())));
    let json: InstanceJson = serde_json::from_str(&text)
        .unwrap_or_else(|e| fail(EXIT_USAGE, &format!("bad instance JSON: {e}")));
    json.into_instance()
        .unwrap_or_else(|e| fail(EXIT_USAGE, &format!("inconsistent instance file: {e}")))
}

fn cmd_params(s: i64, branch: BranchArg) -> i32 {
    let branch = match branch {
        BranchArg::Below => Branch::Below,
        BranchArg::Above => Branch::Above,
    };
    match admissible_params(s, branch) {
        Ok(tuples) => {
            let rows: Vec<ParamTupleJson> = tuples.iter().map(ParamTupleJson::from).collect();
            println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            eprintln!("{} admissible tuples for s={s}", rows.len());
            EXIT_OK
        }
        Err(e) => fail(EXIT_USAGE, &e.to_string()),
    }
}

fn cmd_build(name: &str, out: Option<&Path>, argv: &[String]) -> i32 {
    let started = Instant::now();
    let inst = match build_instance(name) {
        Ok(i) => i,
        Err(e) => fail(error_exit_code(&e), &e.to_string()),
    };
    let t = &inst.params;
    let json = InstanceJson::from_instance(&inst);
    let text = serde_json::to_string_pretty(&json).unwrap();
    println!("{text}");
    eprintln!(
        "{name}: {} points, d={}, s={}, alpha={}",
        inst.size(),
        t.d,
        t.s,
        json.alpha
    );

    if let Some(out) = out {
        write_out(out, format!("{text}\n").as_bytes());
        let csv_path = out.with_extension("csv");
        let mut csv = Vec::new();
        write_points_csv(&instance_points(&inst), &mut csv).unwrap();
        write_out(&csv_path, &csv);

        let manifest = RunManifest {
            command: argv.to_vec(),
            inputs: vec![format!("catalog:{name}")],
            outputs: vec![
                OutputFileJson {
                    path: out.display().to_string(),
                    sha256: sha256_file(out),
                },
                OutputFileJson {
                    path: csv_path.display().to_string(),
                    sha256: sha256_file(&csv_path),
                },
            ],
            determinism: "seed-free; byte-identical on re-run; independent of --threads".into(),
            wall_clock_ms: started.elapsed().as_millis() as u64,
            scanned: 0,
        };
        let manifest_path = PathBuf::from(format!("{}.manifest.json", out.display()));
        write_out(
            &manifest_path,
            format!("{}\n", serde_json::to_string_pretty(&manifest).unwrap()).as_bytes(),
        );
        eprintln!(
            "wrote {}, {}, {}",
            out.display(),
            csv_path.display(),
            manifest_path.display()
        );
    }
    EXIT_OK
}

fn cmd_verify(file: &Path) -> i32 {
    let inst = load_instance(file);
    match verify_instance(&inst) {
        Ok(report) => {
            let json = VerifyJson::from_report(&report);
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            if let Some(v) = &report.violation {
                eprintln!(
                    "violation: pair {:?} / {:?} has {} value {}",
                    v.x.one_based(),
                    v.y.one_based(),
                    if v.same_weight { "l" } else { "m" },
                    v.value
                );
                EXIT_FAIL
            } else {
                if report.spectrum.len() < 2 {
                    eprintln!("warning: set has fewer than 2 distances");
                }
                eprintln!(
                    "{}: {} points, spectrum {:?}",
                    inst.name, report.points, json.spectrum
                );
                EXIT_OK
            }
        }
        Err(e) => fail(error_exit_code(&e), &e.to_string()),
    }
}

fn cmd_maximal(file: &Path, method: MethodArg, cap: Option<u64>) -> i32 {
    let inst = load_instance(file);
    // Maximality presumes a verified instance.
    match verify_instance(&inst) {
        Ok(report) if report.is_valid() => {}
        Ok(report) => {
            let v = report.violation.unwrap();
            fail(
                EXIT_FAIL,
                &format!(
                    "instance is not a valid two-distance set: pair {:?} / {:?} has value {}",
                    v.x.one_based(),
                    v.y.one_based(),
                    v.value
                ),
            );
        }
        Err(e) => fail(error_exit_code(&e), &e.to_string()),
    }
    let method = match method {
        MethodArg::Brute => Method::Brute,
        MethodArg::Decomposed => Method::Decomposed,
    };
    match maximality_check(&inst, method, &limits_with_cap(cap)) {
        Ok(report) => {
            let json = MaximalityJson::from_report(&report);
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            match report.verdict {
                Verdict::Maximal => {
                    eprintln!("{}: MAXIMAL ({} scanned)", inst.name, report.scanned);
                    EXIT_OK
                }
                Verdict::Extendable => {
                    eprintln!(
                        "{}: EXTENDABLE, counterexample {:?}",
                        inst.name,
                        json.counterexample.as_deref().unwrap_or(&[])
                    );
                    EXIT_FAIL
                }
            }
        }
        Err(e) => fail(error_exit_code(&e), &e.to_string()),
    }
}

fn table_description(name: &str) -> String {
    match name {
        "d7-J83" => "weight-3 star family (largest in dimension 7)".into(),
        "d8-hadamard" => "order-8 Hadamard family".into(),
        "d8-2intersecting" => "largest 2-intersecting family".into(),
        "d8-J92" => "all weight-2 vectors (largest in dimension 8)".into(),
        "d23-21712" => "2-(21,7,12) design".into(),
        "d24-witt" => "4-(23,7,1) design".into(),
        "d26-witt" => "4-(23,7,1) design".into(),
        "d26-wittc" => "complement of 4-(23,7,1) design".into(),
        "d31-3221" => "3-(22,6,1) design".into(),
        "d31-wittc" => "complement of 4-(23,7,1) design".into(),
        "d48-wittc" => "complement of 4-(23,7,1) design".into(),
        _ => match name.strip_prefix("resolvable-s") {
            Some(s) => format!("2-(s^3,s^2,s+1) resolvable design, s={s}"),
            None => name.into(),
        },
    }
}

fn cmd_table1(max_s: usize, certify: bool, cap: Option<u64>) -> i32 {
    let mut names: Vec<String> = catalog_names()
        .into_iter()
        .filter(|n| !n.starts_with("resolvable-"))
        .map(String::from)
        .collect();
    for s in 2..=max_s {
        names.push(format!("resolvable-s{s}"));
    }

    let limits = limits_with_cap(cap);
    let mut rows = Vec::new();
    let mut worst = EXIT_OK;
    eprintln!(
        "{:<18} {:>4} {:>5} {:>2} {:>5}  added set",
        "name", "d", "size", "s", "alpha"
    );
    for name in &names {
        let inst = match build_instance(name) {
            Ok(i) => i,
            Err(e) => {
                if name.starts_with("resolvable-s") && matches!(e, SearchError::Design(_)) {
                    eprintln!("{name}: skipped ({e})");
                    continue;
                }
                fail(EXIT_FAIL, &format!("{name}: {e}"));
            }
        };
        let report = match verify_instance(&inst) {
            Ok(r) => r,
            Err(e) => fail(EXIT_FAIL, &format!("{name}: {e}")),
        };
        let size_ok = expected_size(name) == Some(inst.size());
        let verified = report.is_two_distance() && size_ok;
        if !verified {
            worst = worst.max(EXIT_FAIL);
        }

        // Certification: decomposed where the instance decomposes, brute
        // otherwise; s >= 4 resolvable rows are left to an explicit
        // `maximal` run with a raised cap.
        let mut maximal: Option<MaximalityJson> = None;
        let mut cap_hit = false;
        let certifiable = !(name.starts_with("resolvable-s")
            && name
                .strip_prefix("resolvable-s")
                .and_then(|s| s.parse::<usize>().ok())
                .is_some_and(|s| s > 3));
        if certify && certifiable {
            let attempt = maximality_check(&inst, Method::Decomposed, &limits).or_else(|e| {
                if matches!(e, SearchError::NotDecomposable(_)) {
                    maximality_check(&inst, Method::Brute, &limits)
                } else {
                    Err(e)
                }
            });
            match attempt {
                Ok(r) => {
                    if r.verdict == Verdict::Extendable {
                        worst = worst.max(EXIT_FAIL);
                    }
                    maximal = Some(MaximalityJson::from_report(&r));
                }
                Err(e) if error_exit_code(&e) == EXIT_PARTIAL => {
                    cap_hit = true;
                    worst = worst.max(EXIT_PARTIAL);
                    eprintln!("{name}: certification hit the resource cap ({e})");
                }
                Err(e) => fail(EXIT_FAIL, &format!("{name}: {e}")),
            }
        }

        let t = &inst.params;
        eprintln!(
            "{:<18} {:>4} {:>5} {:>2} {:>5}  {}{}",
            name,
            t.d,
            inst.size(),
            t.s,
            simplex2dist_core::rational::format_rational(&t.alpha),
            table_description(name),
            match &maximal {
                Some(m) => format!(
                    "  [{}]",
                    serde_json::to_string(&m.verdict).unwrap().trim_matches('"')
                ),
                None if cap_hit => "  [cap exceeded]".into(),
                None => String::new(),
            }
        );

        rows.push(serde_json::json!({
            "name": name,
            "d": t.d,
            "size": inst.size(),
            "s": t.s,
            "alpha": simplex2dist_core::rational::format_rational(&t.alpha),
            "added": table_description(name),
            "verified": verified,
            "maximal": maximal,
        }));
    }

    // The two d=26 rows must come out the same size.
    let d26: Vec<u64> = rows
        .iter()
        .filter(|r| r["d"] == 26)
        .map(|r| r["size"].as_u64().unwrap())
        .collect();
    if d26.len() == 2 && d26[0] != d26[1] {
        fail(EXIT_FAIL, "the two d=26 rows differ in size");
    }

    println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    worst
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    init_threads(cli.threads);
    let code = match &cli.command {
        Command::Params { s, branch } => cmd_params(*s, *branch),
        Command::Build { name, out } => cmd_build(name, out.as_deref(), &argv),
        Command::Verify { file } => cmd_verify(file),
        Command::Maximal { file, method, cap } => cmd_maximal(file, *method, *cap),
        Command::Table1 {
            max_s,
            certify,
            cap,
        } => cmd_table1(*max_s, *certify, *cap),
    };
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
