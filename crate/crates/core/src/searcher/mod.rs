//! Addability of candidate vectors, the instance catalog, two-distance
//! verification, and maximality certification.
//!
//! A candidate vector of weight k or k' can join an instance exactly when
//! its l value against every same-weight member and its m value against
//! every cross-weight member stay inside the allowed sets of the parameter
//! branch. Verification checks all pairwise conditions combinatorially and,
//! in low dimensions, re-derives the full spectrum by exact rational
//! geometry.

mod clique;
mod maximality;
mod obstruction;
mod profile;

pub use clique::{max_subset_search, CliqueError, MaxSubsetResult};
pub use maximality::{maximality_check, MaximalityReport, Method, SearchLimits, Verdict};
pub use obstruction::{obstruction_search, ObstructionError, ObstructionOutcome, ObstructionQuery};
pub use profile::{profile_scan, witt_overlap_fact, ProfileScan, WittOverlapFact};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bits::Subset;
use crate::designs::{
    affine_planes, complement_design, derived_design, hadamard8_family, pad, prefix_pattern,
    residual_2_21_7_12, witt_4_23_7, Design, DesignError, PaddedFamily,
};
use crate::exactgeom::{
    distance_spectrum, embed, simplex_points, squared_distance, CandidateVector, GeomError,
};
use crate::paramspace::{
    allowed_l, allowed_m, alpha_from_s, beta_from_s, paired_k, Branch, ParamError, ParamTuple,
};
use crate::rational::{int, Rational};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error("vectors have different ambients ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("l value requires equal weights, got {0} and {1}")]
    WeightMismatch(usize, usize),
    #[error("m value requires different weights, both are {0}")]
    SameWeight(usize),
    #[error("unknown instance name {0:?}")]
    UnknownInstance(String),
    #[error("instance {name}: expected {expected} points, built {built}")]
    WrongSize {
        name: String,
        expected: usize,
        built: usize,
    },
    #[error("instance {name} fails pairwise conditions: {detail}")]
    InvalidInstance { name: String, detail: String },
    #[error("family is not equidistant: pair with l={0}, expected {1}")]
    NotEquidistant(usize, usize),
    #[error("scan budget {cap} exceeded; partial result is not a certificate")]
    ScanCapExceeded { cap: u128 },
    #[error("ambient {0} too large for the brute-force scan")]
    AmbientTooLarge(usize),
    #[error("decomposed method not applicable: {0}")]
    NotDecomposable(String),
    #[error("cross-weight arbitration failed: geometry admits {geometry:?}")]
    ArbitrationFailed { geometry: Vec<usize> },
}

/// Half the Hamming distance of two same-weight candidates.
pub fn l_value(x: &CandidateVector, y: &CandidateVector) -> Result<usize, SearchError> {
    if x.ambient() != y.ambient() {
        return Err(SearchError::AmbientMismatch(x.ambient(), y.ambient()));
    }
    if x.weight() != y.weight() {
        return Err(SearchError::WeightMismatch(x.weight(), y.weight()));
    }
    Ok(x.base_set().symmetric_difference_len(y.base_set()) / 2)
}

/// Base-value overlap of two candidates of different weights.
pub fn m_value(x: &CandidateVector, y: &CandidateVector) -> Result<usize, SearchError> {
    if x.ambient() != y.ambient() {
        return Err(SearchError::AmbientMismatch(x.ambient(), y.ambient()));
    }
    if x.weight() == y.weight() {
        return Err(SearchError::SameWeight(x.weight()));
    }
    Ok(x.base_set().intersection_len(y.base_set()))
}

/// A full two-distance set: simplex flag, padded block families, extra
/// vectors, and the parameter tuple they live on.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub params: ParamTuple,
    pub include_simplex: bool,
    pub families: Vec<PaddedFamily>,
    pub extras: Vec<CandidateVector>,
}

impl Instance {
    pub fn ambient(&self) -> usize {
        self.params.d + 1
    }

    /// Candidate weights to scan, descending, deduplicated.
    pub fn candidate_weights(&self) -> Vec<usize> {
        let (k, kp) = (self.params.k, self.params.k_prime);
        if k == kp {
            vec![k]
        } else {
            vec![k.max(kp), k.min(kp)]
        }
    }

    pub fn members(&self) -> Vec<CandidateVector> {
        let mut out: Vec<CandidateVector> =
            self.families.iter().flat_map(|f| f.members()).collect();
        out.extend(self.extras.iter().copied());
        out
    }

    pub fn size(&self) -> usize {
        let simplex = if self.include_simplex {
            self.params.d + 1
        } else {
            0
        };
        simplex + self.families.iter().map(|f| f.len()).sum::<usize>() + self.extras.len()
    }

    pub fn contains_member(&self, z: &CandidateVector) -> bool {
        self.members().iter().any(|m| m == z)
    }

    /// The same instance with its extra vectors withheld.
    pub fn without_extras(&self) -> Instance {
        let mut inst = self.clone();
        inst.extras.clear();
        inst.name = format!("{}-without-extras", self.name);
        inst
    }
}

/// Can `z` join the instance while keeping the two-distance property?
pub fn check_addable(inst: &Instance, z: &CandidateVector) -> bool {
    let t = &inst.params;
    if z.ambient() != inst.ambient() {
        return false;
    }
    let w = z.weight();
    if w != t.k && w != t.k_prime {
        return false;
    }
    let al = allowed_l(t.s, t.branch).expect("s >= 2");
    let am = allowed_m(t.s, t.branch).expect("s >= 2");
    for y in inst.members() {
        if y.weight() == w {
            // l = 0 is never allowed, so duplicates reject themselves.
            let l = w - z.base_set().intersection_len(y.base_set());
            if l != al[0] && l != al[1] {
                return false;
            }
        } else {
            let m = z.base_set().intersection_len(y.base_set());
            if m != am[0] && m != am[1] {
                return false;
            }
        }
    }
    true
}

/// Squared distance of two same-weight candidates: `2 beta^2 l`.
pub fn combinatorial_same_distance(t: &ParamTuple, l: usize) -> Rational {
    int(2) * &t.beta * &t.beta * int(l as i64)
}

/// Squared distance across weights k and k' at base overlap m:
/// `beta^2 ((k + k' - 2m) - (k - k')^2 / (d+1))`.
pub fn combinatorial_cross_distance(t: &ParamTuple, m: usize) -> Rational {
    let n = int((t.d + 1) as i64);
    let k = int(t.k as i64);
    let kp = int(t.k_prime as i64);
    let diff = &k - &kp;
    let inner = k + kp - int(2 * m as i64) - &diff * &diff / n;
    &t.beta * &t.beta * inner
}

/// The geometrically admissible cross-weight overlaps for a tuple: every
/// feasible m whose embedded pair distance lands in {2, alpha}. Used to
/// arbitrate the shipped `allowed_m` sets empirically.
pub fn arbitrate_allowed_m(t: &ParamTuple) -> Result<Vec<usize>, SearchError> {
    if t.k == t.k_prime {
        return Ok(Vec::new());
    }
    let n = t.d + 1;
    let lo = (t.k + t.k_prime).saturating_sub(n);
    let hi = t.k.min(t.k_prime);
    let two = int(2);
    let mut out = Vec::new();
    for m in lo..=hi {
        // Base sets {1..k} and {k-m+1 .. k-m+k'} overlap in exactly m.
        let x = CandidateVector::new(n, Subset::from_indices(&(0..t.k).collect::<Vec<_>>()));
        let y = CandidateVector::new(
            n,
            Subset::from_indices(&((t.k - m)..(t.k - m + t.k_prime)).collect::<Vec<_>>()),
        );
        let px = embed(&x, t.d, t.k, &t.beta)?;
        let py = embed(&y, t.d, t.k_prime, &t.beta)?;
        let d2 = squared_distance(&px, &py)?;
        debug_assert_eq!(d2, combinatorial_cross_distance(t, m));
        if d2 == two || d2 == t.alpha {
            out.push(m);
        }
    }
    Ok(out)
}

/// A violated pairwise condition, reported with the offending pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub x: CandidateVector,
    pub y: CandidateVector,
    pub same_weight: bool,
    pub value: usize,
}

fn pairwise_scan(
    t: &ParamTuple,
    members: &[CandidateVector],
    spectrum: Option<&mut BTreeSet<Rational>>,
) -> Result<Option<PairViolation>, SearchError> {
    let al = allowed_l(t.s, t.branch)?;
    let am = allowed_m(t.s, t.branch)?;
    let mut spectrum = spectrum;
    let mut violation = None;
    'pairs: for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            let (x, y) = (members[i], members[j]);
            if x.weight() == y.weight() {
                let l = l_value(&x, &y)?;
                if let Some(spec) = spectrum.as_deref_mut() {
                    spec.insert(combinatorial_same_distance(t, l));
                }
                if l != al[0] && l != al[1] {
                    violation = Some(PairViolation {
                        x,
                        y,
                        same_weight: true,
                        value: l,
                    });
                    break 'pairs;
                }
            } else {
                let m = m_value(&x, &y)?;
                if let Some(spec) = spectrum.as_deref_mut() {
                    spec.insert(combinatorial_cross_distance(t, m));
                }
                if m != am[0] && m != am[1] {
                    violation = Some(PairViolation {
                        x,
                        y,
                        same_weight: false,
                        value: m,
                    });
                    break 'pairs;
                }
            }
        }
    }
    Ok(violation)
}

/// Outcome of instance verification.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub points: usize,
    /// Squared distances over all pairs, from the combinatorial calculus.
    pub spectrum: BTreeSet<Rational>,
    pub violation: Option<PairViolation>,
    /// Whether the exact-geometry cross-check ran (d <= 31).
    pub geometry_checked: bool,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    pub fn is_two_distance(&self) -> bool {
        self.is_valid() && self.spectrum.len() == 2
    }
}

/// Check every pairwise condition and compute the exact spectrum. For
/// d <= 31 the spectrum is re-derived by embedding all points and must agree
/// exactly.
pub fn verify_instance(inst: &Instance) -> Result<VerifyReport, SearchError> {
    let t = &inst.params;
    let n = inst.ambient();
    // Parameter sanity independent of how the instance was produced.
    if paired_k(t.s, t.branch, t.k)? != t.k_prime
        || beta_from_s(t.s, t.branch)? != t.beta
        || alpha_from_s(t.s, t.branch)? != t.alpha
    {
        return Err(SearchError::InvalidInstance {
            name: inst.name.clone(),
            detail: "parameter tuple is internally inconsistent".into(),
        });
    }

    let members = inst.members();
    for m in &members {
        if m.ambient() != n {
            return Err(SearchError::AmbientMismatch(m.ambient(), n));
        }
        if m.weight() != t.k && m.weight() != t.k_prime {
            return Err(SearchError::InvalidInstance {
                name: inst.name.clone(),
                detail: format!(
                    "member weight {} outside {{{}, {}}}",
                    m.weight(),
                    t.k,
                    t.k_prime
                ),
            });
        }
    }

    let mut spectrum = BTreeSet::new();
    if inst.include_simplex {
        spectrum.insert(int(2));
        for m in &members {
            spectrum.insert(t.alpha.clone());
            if m.weight() < n {
                spectrum.insert(int(2));
            }
        }
    }
    let violation = pairwise_scan(t, &members, Some(&mut spectrum))?;

    let mut geometry_checked = false;
    if violation.is_none() && t.d <= 31 {
        let mut points = Vec::new();
        if inst.include_simplex {
            points.extend(simplex_points(t.d)?);
        }
        for m in &members {
            points.push(embed(m, t.d, m.weight(), &t.beta)?);
        }
        if points.len() >= 2 {
            let geometric = distance_spectrum(&points)?;
            assert_eq!(
                geometric, spectrum,
                "combinatorial and geometric spectra must agree"
            );
            geometry_checked = true;
        }
    }

    Ok(VerifyReport {
        points: inst.size(),
        spectrum,
        violation,
        geometry_checked,
    })
}

/// Equidistant-family projection bound: a weight-k family on n points with
/// all pairwise l = k - t projects to vectors of constant inner product
/// `t - k^2/n`; when `n t >= k^2` that angle is non-obtuse and the family
/// has at most n - 1 members. Returns whether the bound holds.
pub fn one_distance_bound_check(
    n: usize,
    k: usize,
    t: usize,
    family: &[CandidateVector],
) -> Result<bool, SearchError> {
    let expected_inner = int(t as i64) - int((k * k) as i64) / int(n as i64);
    for i in 0..family.len() {
        for j in (i + 1)..family.len() {
            let l = l_value(&family[i], &family[j])?;
            if l != k - t {
                return Err(SearchError::NotEquidistant(l, k - t));
            }
            // Projected inner product, computed exactly.
            let overlap = family[i].base_set().intersection_len(family[j].base_set());
            let inner = int(overlap as i64) - int((k * k) as i64) / int(n as i64);
            assert_eq!(inner, expected_inner);
        }
    }
    if n * t >= k * k {
        Ok(family.len() < n)
    } else {
        Ok(true)
    }
}

/// Names of every instance in the catalog.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "d7-J83",
        "d8-hadamard",
        "d8-2intersecting",
        "d8-J92",
        "d23-21712",
        "d24-witt",
        "d26-witt",
        "d26-wittc",
        "d31-3221",
        "d31-wittc",
        "d48-wittc",
        "resolvable-s2",
        "resolvable-s3",
        "resolvable-s4",
        "resolvable-s5",
    ]
}

/// Point count each catalog instance must have.
pub fn expected_size(name: &str) -> Option<usize> {
    Some(match name {
        "d7-J83" => 29,
        "d8-hadamard" => 24,
        "d8-2intersecting" => 30,
        "d8-J92" => 45,
        "d23-21712" => 144,
        "d24-witt" => 278,
        "d26-witt" => 280,
        "d26-wittc" => 280,
        "d31-3221" => 110,
        "d31-wittc" => 286,
        "d48-wittc" => 302,
        "resolvable-s2" => 24,
        "resolvable-s3" => 72,
        "resolvable-s4" => 160,
        "resolvable-s5" => 300,
        _ => return None,
    })
}

fn tuple(s: i64, branch: Branch, d: usize, k: usize) -> Result<ParamTuple, SearchError> {
    Ok(crate::paramspace::tuple_for(s, branch, d, k)?)
}

fn resolvable_instance(s: usize) -> Result<Instance, SearchError> {
    let si = s as i64;
    let n = (s - 1) * (s + 1) * (s + 1);
    if n > crate::bits::MAX_BITS {
        return Err(SearchError::AmbientTooLarge(n));
    }
    let d = n - 1;
    let k = s * s + s - 1;
    let params = tuple(si, Branch::Below, d, k)?;
    let planes = affine_planes(s)?;
    let family = pad(&planes, &prefix_pattern(s - 1, s * s - 2 * s), n)?;
    // The paired-weight vector supported on the whole plane point set.
    let p = s * s - s - 1;
    let x0 = CandidateVector::new(n, Subset::from_indices(&(p..n).collect::<Vec<_>>()));
    Ok(Instance {
        name: format!("resolvable-s{s}"),
        params,
        include_simplex: true,
        families: vec![family],
        extras: vec![x0],
    })
}

fn design_from_vectors(v: usize, vectors: &[CandidateVector]) -> Result<Design, SearchError> {
    let blocks = vectors.iter().map(|c| c.base_set()).collect();
    Ok(Design::from_blocks(v, blocks, None)?)
}

/// Assemble a catalog instance, validate its cross-weight overlap sets
/// against exact geometry, and check its pairwise conditions and size.
pub fn build_instance(name: &str) -> Result<Instance, SearchError> {
    let witt = witt_4_23_7;
    let inst = match name {
        // All weight-3 vectors through the first coordinate.
        "d7-J83" => Instance {
            name: name.into(),
            params: tuple(2, Branch::Above, 7, 3)?,
            include_simplex: true,
            families: vec![pad(&Design::complete(7, 2), &prefix_pattern(1, 0), 8)?],
            extras: Vec::new(),
        },
        // Complements of the Hadamard rows (weight 5, all through the last
        // coordinate), plus the weight-8 vector missing that coordinate.
        "d8-hadamard" => {
            let complements: Vec<CandidateVector> = hadamard8_family()
                .iter()
                .map(|h| CandidateVector::new(9, h.base_set().complement(9)))
                .collect();
            Instance {
                name: name.into(),
                params: tuple(2, Branch::Below, 8, 5)?,
                include_simplex: true,
                families: vec![pad(&design_from_vectors(9, &complements)?, &[], 9)?],
                extras: vec![CandidateVector::from_one_based(
                    9,
                    &[1, 2, 3, 4, 5, 6, 7, 8],
                )],
            }
        }
        // The largest 2-intersecting family in printed form is all weight-4
        // vectors through the first two coordinates; its base sets are the
        // weight-5 vectors avoiding them.
        "d8-2intersecting" => Instance {
            name: name.into(),
            params: tuple(2, Branch::Above, 8, 5)?,
            include_simplex: true,
            families: vec![pad(&Design::complete(7, 5), &prefix_pattern(0, 2), 9)?],
            extras: Vec::new(),
        },
        "d8-J92" => Instance {
            name: name.into(),
            params: tuple(2, Branch::Above, 8, 2)?,
            include_simplex: true,
            families: vec![pad(&Design::complete(9, 2), &[], 9)?],
            extras: Vec::new(),
        },
        "d23-21712" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 23, 10)?,
            include_simplex: true,
            families: vec![pad(&residual_2_21_7_12(), &prefix_pattern(3, 0), 24)?],
            extras: Vec::new(),
        },
        "d24-witt" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 24, 8)?,
            include_simplex: true,
            families: vec![pad(&witt(), &prefix_pattern(1, 1), 25)?],
            extras: Vec::new(),
        },
        "d26-witt" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 26, 7)?,
            include_simplex: true,
            families: vec![pad(&witt(), &prefix_pattern(0, 4), 27)?],
            extras: Vec::new(),
        },
        "d26-wittc" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 26, 16)?,
            include_simplex: true,
            families: vec![pad(&complement_design(&witt()), &prefix_pattern(0, 4), 27)?],
            extras: Vec::new(),
        },
        // Derived-design blocks on the last 22 coordinates, plus the
        // weight-22 vector covering them all.
        "d31-3221" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 31, 6)?,
            include_simplex: true,
            families: vec![pad(
                &derived_design(&witt(), 23)?,
                &prefix_pattern(0, 10),
                32,
            )?],
            extras: vec![CandidateVector::new(
                32,
                Subset::from_indices(&(10..32).collect::<Vec<_>>()),
            )],
        },
        // Complement-design blocks behind prefix 1^6 0^3, plus the weight-6
        // vector on the prefix ones.
        "d31-wittc" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 31, 22)?,
            include_simplex: true,
            families: vec![pad(&complement_design(&witt()), &prefix_pattern(6, 3), 32)?],
            extras: vec![CandidateVector::from_one_based(32, &[1, 2, 3, 4, 5, 6])],
        },
        "d48-wittc" => Instance {
            name: name.into(),
            params: tuple(3, Branch::Above, 48, 40)?,
            include_simplex: true,
            families: vec![pad(
                &complement_design(&witt()),
                &prefix_pattern(24, 2),
                49,
            )?],
            extras: Vec::new(),
        },
        "resolvable-s2" => resolvable_instance(2)?,
        "resolvable-s3" => resolvable_instance(3)?,
        "resolvable-s4" => resolvable_instance(4)?,
        "resolvable-s5" => resolvable_instance(5)?,
        _ => return Err(SearchError::UnknownInstance(name.into())),
    };

    let expected = expected_size(name).expect("catalog name");
    if inst.size() != expected {
        return Err(SearchError::WrongSize {
            name: name.into(),
            expected,
            built: inst.size(),
        });
    }

    // Cross-weight instances validate the shipped overlap sets against exact
    // geometry before use.
    let t = &inst.params;
    if t.k != t.k_prime {
        let geometry = arbitrate_allowed_m(t)?;
        let am = allowed_m(t.s, t.branch)?;
        let lo = (t.k + t.k_prime).saturating_sub(t.d + 1);
        let hi = t.k.min(t.k_prime);
        let shipped: Vec<usize> = am
            .iter()
            .copied()
            .filter(|m| (lo..=hi).contains(m))
            .collect();
        if geometry != shipped {
            return Err(SearchError::ArbitrationFailed { geometry });
        }
    }

    // Every catalog instance must satisfy its own pairwise conditions.
    if let Some(v) = pairwise_scan(&inst.params, &inst.members(), None)? {
        return Err(SearchError::InvalidInstance {
            name: name.into(),
            detail: format!(
                "pair {:?} / {:?} has value {}",
                v.x.one_based(),
                v.y.one_based(),
                v.value
            ),
        });
    }

    Ok(inst)
}
