//! Exact maximum-clique search over candidate compatibility graphs.
//!
//! Vertices are the weight-k vectors in colex order; two vertices are
//! adjacent when their l value lies in the allowed set. Branch and bound
//! with greedy-coloring upper bounds certifies the maximum size, and a
//! second pass extracts the lexicographically least maximum clique (in
//! vertex-rank order).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bits::{binomial, ColexSubsets, Subset};
use crate::exactgeom::CandidateVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("C({n},{k}) = {size} vertices exceeds the exact-search cap {cap}")]
    TooManyVertices {
        n: usize,
        k: usize,
        size: u128,
        cap: u128,
    },
}

#[derive(Debug, Clone)]
pub struct MaxSubsetResult {
    /// Members of the clique as candidate vectors, in colex order.
    pub vectors: Vec<CandidateVector>,
    pub size: usize,
}

struct BitRows {
    words: usize,
    rows: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> BitRows {
        let words = n.div_ceil(64);
        BitRows {
            words,
            rows: vec![0; n * words],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

fn and_into(dst: &mut Vec<u64>, a: &[u64], b: &[u64]) {
    dst.clear();
    dst.extend(a.iter().zip(b).map(|(x, y)| x & y));
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|w| w.count_ones() as usize).sum()
}

fn iter_bits(a: &[u64]) -> impl Iterator<Item = usize> + '_ {
    a.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Greedy-coloring bound: candidates are assignable to `colors` classes, so
/// no clique inside them exceeds that count.
fn coloring_bound(adj: &BitRows, cand: &[u64]) -> usize {
    let mut colors: Vec<Vec<u64>> = Vec::new();
    for v in iter_bits(cand) {
        let mut placed = false;
        for class in colors.iter_mut() {
            let conflict = adj.row(v).iter().zip(class.iter()).any(|(a, c)| a & c != 0);
            if !conflict {
                class[v / 64] |= 1 << (v % 64);
                placed = true;
                break;
            }
        }
        if !placed {
            let mut class = vec![0u64; adj.words];
            class[v / 64] |= 1 << (v % 64);
            colors.push(class);
        }
    }
    colors.len()
}

struct Solver<'a> {
    adj: &'a BitRows,
    best: usize,
    best_clique: Vec<usize>,
    /// When set, stop as soon as a clique of this size is found.
    target: Option<usize>,
}

impl Solver<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, cand: &[u64]) -> bool {
        if popcount(cand) == 0 {
            if current.len() > self.best {
                self.best = current.len();
                self.best_clique = current.clone();
            }
            return self.target.is_some_and(|t| self.best >= t);
        }
        if current.len() + coloring_bound(self.adj, cand) <= self.best {
            return false;
        }
        let mut rest = cand.to_vec();
        let mut buf = Vec::new();
        for v in iter_bits(cand) {
            if current.len() + popcount(&rest) <= self.best {
                return false;
            }
            and_into(&mut buf, &rest, self.adj.row(v));
            current.push(v);
            if current.len() > self.best {
                self.best = current.len();
                self.best_clique = current.clone();
                if self.target.is_some_and(|t| self.best >= t) {
                    current.pop();
                    return true;
                }
            }
            let sub = std::mem::take(&mut buf);
            if self.expand(current, &sub) {
                current.pop();
                return true;
            }
            buf = sub;
            current.pop();
            rest[v / 64] &= !(1 << (v % 64));
        }
        false
    }
}

fn max_clique_size(adj: &BitRows, n: usize, lower: usize) -> usize {
    let mut cand = vec![0u64; adj.words];
    for v in 0..n {
        cand[v / 64] |= 1 << (v % 64);
    }
    let mut solver = Solver {
        adj,
        best: lower.saturating_sub(1),
        best_clique: Vec::new(),
        target: None,
    };
    solver.expand(&mut Vec::new(), &cand);
    solver.best.max(lower)
}

/// Is there a clique of size at least `need` inside `cand`?
fn clique_at_least(adj: &BitRows, cand: &[u64], need: usize) -> bool {
    if need == 0 {
        return true;
    }
    let mut solver = Solver {
        adj,
        best: need - 1,
        best_clique: Vec::new(),
        target: Some(need),
    };
    solver.expand(&mut Vec::new(), cand);
    solver.best >= need
}

/// A maximum set of weight-k vectors with all pairwise l values inside
/// `allowed_l`, found by exact branch-and-bound clique search; ties broken
/// by the lexicographically least vertex-rank sequence.
pub fn max_subset_search(
    n: usize,
    k: usize,
    allowed_l: &BTreeSet<usize>,
    vertex_cap: u128,
) -> Result<MaxSubsetResult, CliqueError> {
    let size = binomial(n, k);
    if size > vertex_cap {
        return Err(CliqueError::TooManyVertices {
            n,
            k,
            size,
            cap: vertex_cap,
        });
    }
    let verts: Vec<u128> = ColexSubsets::new(n, k).collect();
    let nv = verts.len();
    let mut adj = BitRows::new(nv);
    for i in 0..nv {
        for j in (i + 1)..nv {
            let l = (verts[i] ^ verts[j]).count_ones() as usize / 2;
            if allowed_l.contains(&l) {
                adj.set(i, j);
                adj.set(j, i);
            }
        }
    }

    let omega = max_clique_size(&adj, nv, 1);

    // Lexicographically least maximum clique: fix vertices greedily in rank
    // order, keeping an omega-clique reachable.
    let mut chosen: Vec<usize> = Vec::new();
    let mut cand: Vec<u64> = vec![0; adj.words];
    for v in 0..nv {
        cand[v / 64] |= 1 << (v % 64);
    }
    while chosen.len() < omega {
        let mut advanced = false;
        for v in iter_bits(&cand.clone()) {
            let mut sub = Vec::new();
            and_into(&mut sub, &cand, adj.row(v));
            let need = omega - chosen.len() - 1;
            if popcount(&sub) >= need && clique_at_least(&adj, &sub, need) {
                chosen.push(v);
                cand = sub;
                advanced = true;
                break;
            }
            cand[v / 64] &= !(1 << (v % 64));
        }
        assert!(advanced, "an omega-clique must remain reachable");
    }

    Ok(MaxSubsetResult {
        vectors: chosen
            .iter()
            .map(|&v| CandidateVector::new(n, Subset::from_mask(verts[v])))
            .collect(),
        size: omega,
    })
}
