//! JSON schemas for instances, designs, parameter tuples, and reports.
//!
//! Everything on disk is fully combinatorial and exact: rationals are
//! `p/q` strings, block and vector entries are sorted 1-based indices, and a
//! round trip through these types is byte-stable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Subset;
use crate::designs::{pad, Design, DesignError};
use crate::exactgeom::CandidateVector;
use crate::paramspace::{self, Branch};
use crate::rational::{format_rational, parse_rational};
use crate::searcher::{
    Instance, MaximalityReport, Method, PairViolation, SearchError, Verdict, VerifyReport,
};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("declared {field} {value} disagrees with the parameter tuple {expected}")]
    ParamMismatch {
        field: &'static str,
        value: String,
        expected: String,
    },
    #[error("prefix entries must be 0 or 1")]
    BadPrefixBit,
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyJson {
    pub prefix: Vec<u8>,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceJson {
    pub name: String,
    pub d: usize,
    pub s: i64,
    pub branch: Branch,
    pub k: usize,
    pub k_prime: usize,
    pub beta: String,
    pub alpha: String,
    pub simplex: bool,
    pub families: Vec<FamilyJson>,
    pub extras: Vec<Vec<usize>>,
}

impl InstanceJson {
    pub fn from_instance(inst: &Instance) -> InstanceJson {
        let t = &inst.params;
        InstanceJson {
            name: inst.name.clone(),
            d: t.d,
            s: t.s,
            branch: t.branch,
            k: t.k,
            k_prime: t.k_prime,
            beta: format_rational(&t.beta),
            alpha: format_rational(&t.alpha),
            simplex: inst.include_simplex,
            families: inst
                .families
                .iter()
                .map(|f| FamilyJson {
                    prefix: f.prefix().iter().map(|&b| u8::from(b)).collect(),
                    blocks: f.suffix().blocks().iter().map(|b| b.one_based()).collect(),
                })
                .collect(),
            extras: inst.extras.iter().map(|e| e.one_based()).collect(),
        }
    }

    /// Rebuild the instance, re-deriving the parameter tuple from
    /// `(s, branch, d, k)` and insisting the file's beta/alpha agree.
    pub fn into_instance(self) -> Result<Instance, SchemaError> {
        let params = paramspace::tuple_for(self.s, self.branch, self.d, self.k)
            .map_err(SearchError::from)?;
        if params.k_prime != self.k_prime {
            return Err(SchemaError::ParamMismatch {
                field: "kPrime",
                value: self.k_prime.to_string(),
                expected: params.k_prime.to_string(),
            });
        }
        let beta = parse_rational(&self.beta)
            .ok_or_else(|| SchemaError::BadRational(self.beta.clone()))?;
        if beta != params.beta {
            return Err(SchemaError::ParamMismatch {
                field: "beta",
                value: self.beta.clone(),
                expected: format_rational(&params.beta),
            });
        }
        let alpha = parse_rational(&self.alpha)
            .ok_or_else(|| SchemaError::BadRational(self.alpha.clone()))?;
        if alpha != params.alpha {
            return Err(SchemaError::ParamMismatch {
                field: "alpha",
                value: self.alpha.clone(),
                expected: format_rational(&params.alpha),
            });
        }

        let ambient = self.d + 1;
        let mut families = Vec::new();
        for f in &self.families {
            let mut prefix = Vec::with_capacity(f.prefix.len());
            for &bit in &f.prefix {
                match bit {
                    0 => prefix.push(false),
                    1 => prefix.push(true),
                    _ => return Err(SchemaError::BadPrefixBit),
                }
            }
            let v = ambient - prefix.len();
            let blocks: Vec<Subset> = f.blocks.iter().map(|b| Subset::from_one_based(b)).collect();
            let design = Design::from_blocks(v, blocks, None)?;
            families.push(pad(&design, &prefix, ambient)?);
        }
        let extras = self
            .extras
            .iter()
            .map(|e| CandidateVector::from_one_based(ambient, e))
            .collect();
        Ok(Instance {
            name: self.name,
            params,
            include_simplex: self.simplex,
            families,
            extras,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParamTupleJson {
    pub d: usize,
    pub k: usize,
    pub k_prime: usize,
    pub s: i64,
    pub branch: Branch,
    pub beta: String,
    pub alpha: String,
}

impl From<&paramspace::ParamTuple> for ParamTupleJson {
    fn from(t: &paramspace::ParamTuple) -> ParamTupleJson {
        ParamTupleJson {
            d: t.d,
            k: t.k,
            k_prime: t.k_prime,
            s: t.s,
            branch: t.branch,
            beta: format_rational(&t.beta),
            alpha: format_rational(&t.alpha),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeclaredJson {
    pub t: usize,
    pub k: usize,
    pub lambda: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignJson {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared: Option<DeclaredJson>,
}

impl DesignJson {
    pub fn from_design(d: &Design) -> DesignJson {
        DesignJson {
            v: d.points(),
            blocks: d.blocks().iter().map(|b| b.one_based()).collect(),
            declared: d.declared().map(|p| DeclaredJson {
                t: p.t,
                k: p.block_size,
                lambda: p.lambda,
            }),
        }
    }

    pub fn into_design(self) -> Result<Design, SchemaError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| Subset::from_one_based(b))
            .collect();
        let declared = self.declared.map(|d| crate::designs::DeclaredParams {
            t: d.t,
            block_size: d.k,
            lambda: d.lambda,
        });
        Ok(Design::from_blocks(self.v, blocks, declared)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ViolationJson {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub kind: String,
    pub value: usize,
}

impl From<&PairViolation> for ViolationJson {
    fn from(v: &PairViolation) -> ViolationJson {
        ViolationJson {
            x: v.x.one_based(),
            y: v.y.one_based(),
            kind: if v.same_weight { "l" } else { "m" }.into(),
            value: v.value,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyJson {
    pub points: usize,
    pub spectrum: Vec<String>,
    pub two_distance: bool,
    pub geometry_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationJson>,
}

impl VerifyJson {
    pub fn from_report(r: &VerifyReport) -> VerifyJson {
        VerifyJson {
            points: r.points,
            spectrum: r.spectrum.iter().map(format_rational).collect(),
            two_distance: r.is_two_distance(),
            geometry_checked: r.geometry_checked,
            violation: r.violation.as_ref().map(ViolationJson::from),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaximalityJson {
    pub verdict: Verdict,
    pub counterexample: Option<Vec<usize>>,
    pub scanned: u64,
    pub method: Method,
}

impl MaximalityJson {
    pub fn from_report(r: &MaximalityReport) -> MaximalityJson {
        MaximalityJson {
            verdict: r.verdict,
            counterexample: r.counterexample.map(|c| c.one_based()),
            scanned: r.scanned,
            method: r.method,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputFileJson {
    pub path: String,
    pub sha256: String,
}

/// Record of one CLI invocation. Outputs are hashed; re-running the same
/// command reproduces them byte for byte.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<OutputFileJson>,
    pub determinism: String,
    pub wall_clock_ms: u64,
    pub scanned: u64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::searcher::build_instance;

    #[test]
    fn instance_round_trip() {
        for name in ["d8-hadamard", "d31-3221", "resolvable-s2"] {
            let inst = build_instance(name).unwrap();
            let json = InstanceJson::from_instance(&inst);
            let text = serde_json::to_string_pretty(&json).unwrap();
            let parsed: InstanceJson = serde_json::from_str(&text).unwrap();
            let rebuilt = parsed.into_instance().unwrap();
            assert_eq!(rebuilt.size(), inst.size());
            assert_eq!(rebuilt.members(), inst.members());
            assert_eq!(rebuilt.params, inst.params);
            // Serialization is stable.
            let again =
                serde_json::to_string_pretty(&InstanceJson::from_instance(&rebuilt)).unwrap();
            assert_eq!(text, again);
        }
    }

    #[test]
    fn design_json_round_trip() {
        let witt = crate::designs::witt_4_23_7();
        let json = DesignJson::from_design(&witt);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: DesignJson = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.into_design().unwrap();
        assert_eq!(rebuilt, witt);
        assert_eq!(rebuilt.declared(), witt.declared());
    }

    #[test]
    fn tampered_params_are_rejected() {
        let inst = build_instance("d8-J92").unwrap();
        let mut json = InstanceJson::from_instance(&inst);
        json.beta = "2/3".into();
        assert!(json.into_instance().is_err());

        let mut json = InstanceJson::from_instance(&inst);
        json.k_prime = 4;
        assert!(json.into_instance().is_err());
    }

    #[test]
    fn enums_serialize_as_specified() {
        assert_eq!(serde_json::to_string(&Branch::Below).unwrap(), "\"below\"");
        assert_eq!(
            serde_json::to_string(&Verdict::Maximal).unwrap(),
            "\"MAXIMAL\""
        );
        assert_eq!(
            serde_json::to_string(&Method::Decomposed).unwrap(),
            "\"decomposed\""
        );
    }
}
