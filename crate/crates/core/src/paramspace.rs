//! Admissible parameter tuples `(d, k, k', beta, alpha)` for an integer
//! LRS ratio `s`.
//!
//! For a two-distance set containing the simplex with squared distances
//! `{2, alpha}`, write `beta = (alpha - 2)/2`. On the branch `alpha < 2`
//! (`Below`) the ratio condition forces `beta = -1/s` and
//! `d = k + s^2 - 2s - 1 + s^2(s-1)^2/(k - s^2)`; on `alpha > 2` (`Above`)
//! it forces `beta = 1/(s-1)` and `d = k + s^2 - 2 + s^2(s-1)^2/(k - (s-1)^2)`.
//! Integrality of `d` makes the denominator a divisor of `s^2(s-1)^2`, so
//! each branch admits only finitely many `(d, k)`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{exact_sqrt, int, ratio, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamError {
    #[error("LRS ratio must be at least 2, got {0}")]
    RatioTooSmall(i64),
    #[error("weight must satisfy 1 <= k <= d+1, got k={k} for d={d}")]
    WeightOutOfRange { d: usize, k: usize },
    #[error("k={k} is not admissible for s={s} on the {branch:?} branch")]
    NotAdmissible { s: i64, k: i64, branch: Branch },
}

/// The two cases of the ratio condition: `alpha < 2` or `alpha > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Below,
    Above,
}

/// One admissible parameter choice. `k_prime` is the unique second weight
/// giving the same dimension (possibly equal to `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamTuple {
    pub d: usize,
    pub k: usize,
    pub k_prime: usize,
    pub s: i64,
    pub branch: Branch,
    pub beta: Rational,
    pub alpha: Rational,
}

/// A root of the weight-k quadratic from the simplex-distance condition.
/// Irrational roots are kept as markers so the enumeration can witness why
/// they are excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaRoot {
    Rational(Rational),
    /// `(k ± sqrt(radicand)) / (k(d+1-k))` with a non-square radicand.
    Irrational {
        radicand: BigInt,
    },
}

/// The possible `beta` values for which some `x` in `T_d(k, beta)` keeps
/// `R_d ∪ {x}` two-distance.
pub fn beta_options(d: usize, k: usize) -> Result<Vec<BetaRoot>, ParamError> {
    if d < 2 || k < 1 || k > d + 1 {
        return Err(ParamError::WeightOutOfRange { d, k });
    }
    if k == 1 {
        return Ok(vec![BetaRoot::Rational(int(1) + ratio(2, d as i64))]);
    }
    if k == d + 1 {
        return Ok(vec![BetaRoot::Rational(ratio(
            -((d + 2) as i64),
            2 * (d + 1) as i64,
        ))]);
    }
    let radicand = BigInt::from(k) * BigInt::from(d + 1) * BigInt::from(d + 2 - k);
    match exact_sqrt(&radicand) {
        None => Ok(vec![BetaRoot::Irrational { radicand }]),
        Some(root) => {
            let denom = BigInt::from(k) * BigInt::from(d + 1 - k);
            let kk = BigInt::from(k);
            let mut roots = vec![
                Rational::new(&kk + &root, denom.clone()),
                Rational::new(&kk - &root, denom),
            ];
            roots.sort();
            roots.dedup();
            Ok(roots.into_iter().map(BetaRoot::Rational).collect())
        }
    }
}

/// `beta` forced by the ratio condition on each branch.
pub fn beta_from_s(s: i64, branch: Branch) -> Result<Rational, ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    Ok(match branch {
        Branch::Below => ratio(-1, s),
        Branch::Above => ratio(1, s - 1),
    })
}

/// The second squared distance: `2(s-1)/s` below, `2s/(s-1)` above.
pub fn alpha_from_s(s: i64, branch: Branch) -> Result<Rational, ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    Ok(match branch {
        Branch::Below => ratio(2 * (s - 1), s),
        Branch::Above => ratio(2 * s, s - 1),
    })
}

fn excluded_k(s: i64, branch: Branch) -> i64 {
    match branch {
        Branch::Below => s * s,
        Branch::Above => (s - 1) * (s - 1),
    }
}

fn dimension_for(s: i64, branch: Branch, k: i64) -> Option<i64> {
    let m = s * s * (s - 1) * (s - 1);
    let e = excluded_k(s, branch);
    if k == e || m % (k - e) != 0 {
        return None;
    }
    Some(match branch {
        Branch::Below => k + s * s - 2 * s - 1 + m / (k - e),
        Branch::Above => k + s * s - 2 + m / (k - e),
    })
}

/// The weight paired with `k` on the same dimension.
pub fn paired_k(s: i64, branch: Branch, k: usize) -> Result<usize, ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    let m = s * s * (s - 1) * (s - 1);
    let e = excluded_k(s, branch);
    let k = k as i64;
    if k == e || m % (k - e) != 0 {
        return Err(ParamError::NotAdmissible { s, k, branch });
    }
    let kp = m / (k - e) + e;
    if kp < 2 {
        return Err(ParamError::NotAdmissible { s, k, branch });
    }
    Ok(kp as usize)
}

/// All admissible tuples for a branch, by scanning every divisor (either
/// sign) of `s^2 (s-1)^2` and filtering `2 <= k <= d`, `d >= 2`, and on the
/// upper branch `d + 2 >= k + s`. Sorted by `(d, k)`.
pub fn admissible_params(s: i64, branch: Branch) -> Result<Vec<ParamTuple>, ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    let m = s * s * (s - 1) * (s - 1);
    let e = excluded_k(s, branch);
    let beta = beta_from_s(s, branch)?;
    let alpha = alpha_from_s(s, branch)?;
    let mut out = Vec::new();
    for t in -m..=m {
        if t == 0 || m % t != 0 {
            continue;
        }
        let k = e + t;
        let Some(d) = dimension_for(s, branch, k) else {
            continue;
        };
        if k < 2 || d < 2 || k > d {
            continue;
        }
        if branch == Branch::Above && d + 2 < k + s {
            continue;
        }
        let k_prime = paired_k(s, branch, k as usize)?;
        out.push(ParamTuple {
            d: d as usize,
            k: k as usize,
            k_prime,
            s,
            branch,
            beta: beta.clone(),
            alpha: alpha.clone(),
        });
    }
    out.sort_by_key(|t| (t.d, t.k));
    Ok(out)
}

/// Look up the admissible tuple with the given `(d, k)`.
pub fn tuple_for(s: i64, branch: Branch, d: usize, k: usize) -> Result<ParamTuple, ParamError> {
    admissible_params(s, branch)?
        .into_iter()
        .find(|t| t.d == d && t.k == k)
        .ok_or(ParamError::NotAdmissible {
            s,
            k: k as i64,
            branch,
        })
}

/// Allowed `l` values for two same-weight candidates added together:
/// `{s^2, s(s-1)}` below, `{(s-1)^2, s(s-1)}` above.
pub fn allowed_l(s: i64, branch: Branch) -> Result<[usize; 2], ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    let s = s as usize;
    Ok(match branch {
        Branch::Below => [s * (s - 1), s * s],
        Branch::Above => [(s - 1) * (s - 1), s * (s - 1)],
    })
}

/// The two candidate cross-weight overlap sets, in branch order:
/// `{s^2, s(s-1)}` (case 1) and `{(s-1)^2, s(s-1)}` (case 2).
pub fn allowed_m_candidates(s: i64) -> Result<[[usize; 2]; 2], ParamError> {
    if s < 2 {
        return Err(ParamError::RatioTooSmall(s));
    }
    let s = s as usize;
    Ok([[s * (s - 1), s * s], [(s - 1) * (s - 1), s * (s - 1)]])
}

/// Allowed base-value overlap `m` for a cross-weight pair (weights `k` and
/// `k'` with `k != k'`).
///
/// Shipped sets: case 1 below, case 2 above. The choice is arbitrated
/// empirically against exact geometry (see `searcher::arbitrate_allowed_m`):
/// for every admissible tuple the squared cross distance is
/// `(2s(2s-1) - 2m)/s^2` below and `(2(s-1)(2s-1) - 2m)/(s-1)^2` above,
/// which lands in `{2, alpha}` exactly on these sets.
pub fn allowed_m(s: i64, branch: Branch) -> Result<[usize; 2], ParamError> {
    let cands = allowed_m_candidates(s)?;
    Ok(match branch {
        Branch::Below => cands[0],
        Branch::Above => cands[1],
    })
}

/// Integer LRS ratios possible in dimension d: all `s >= 2` with
/// `(2s-1)^2 <= 2d`.
pub fn lrs_candidates(d: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut s: i64 = 2;
    while (2 * s - 1) * (2 * s - 1) <= 2 * d as i64 {
        out.push(s);
        s += 1;
    }
    out
}
