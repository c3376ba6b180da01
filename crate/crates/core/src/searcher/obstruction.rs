//! Depth-first subset search with per-block interval pruning.
//!
//! Searches for a subset S of a design's points whose intersection with
//! every block lies in a given value set, optionally constrained to a fixed
//! size and to non-emptiness. A block prunes a branch as soon as no
//! reachable target remains: with c chosen and f undecided points in the
//! block, it stays feasible only while some allowed t has c <= t <= c + f.
//! Node accounting certifies exhaustion.

use thiserror::Error;

use crate::bits::Subset;
use crate::designs::Design;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("query must satisfy a - b = s and b < s, got a={a} b={b} s={s}")]
    InvalidQuery { s: usize, a: usize, b: usize },
    #[error("node budget {cap} exceeded; partial exploration is not a certificate")]
    NodeCapExceeded { cap: u64 },
}

/// Query of the obstruction lemma: intersection sizes {a, b} with a - b = s
/// and b < s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObstructionQuery {
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionOutcome {
    /// Full exploration found no subset; `nodes` counts the decision nodes
    /// visited, certifying exhaustion.
    NoWitness {
        nodes: u64,
    },
    Witness {
        subset: Subset,
        nodes: u64,
    },
}

pub(crate) struct DfsSpec<'a> {
    pub design: &'a Design,
    /// Allowed intersection sizes, ascending.
    pub allowed: Vec<usize>,
    /// Exact subset size, if constrained.
    pub weight: Option<usize>,
    pub require_nonempty: bool,
    pub node_cap: u64,
}

struct DfsState {
    order: Vec<usize>,
    blocks_per_point: Vec<Vec<u32>>,
    chosen_count: Vec<u32>,
    free_count: Vec<u32>,
    allowed: Vec<u32>,
    weight: Option<usize>,
    require_nonempty: bool,
    node_cap: u64,
    nodes: u64,
    chosen: Vec<usize>,
}

impl DfsState {
    fn feasible(&self, block: usize) -> bool {
        let c = self.chosen_count[block];
        let f = self.free_count[block];
        self.allowed.iter().any(|&t| c <= t && t <= c + f)
    }

    fn dfs(&mut self, depth: usize) -> Result<Option<Subset>, ObstructionError> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(ObstructionError::NodeCapExceeded { cap: self.node_cap });
        }
        let remaining = self.order.len() - depth;
        if let Some(w) = self.weight {
            if self.chosen.len() > w || self.chosen.len() + remaining < w {
                return Ok(None);
            }
        }
        if self.require_nonempty && self.chosen.is_empty() && remaining == 0 {
            return Ok(None);
        }
        if depth == self.order.len() {
            // All free counts are zero, so feasibility means exact membership.
            return Ok(Some(Subset::from_indices(&self.chosen)));
        }
        let point = self.order[depth];

        // Exclude the point, then include it; the first witness found is the
        // same in every run.
        for include in [false, true] {
            let mut ok = true;
            for bi in 0..self.blocks_per_point[point].len() {
                let b = self.blocks_per_point[point][bi] as usize;
                self.free_count[b] -= 1;
                if include {
                    self.chosen_count[b] += 1;
                }
                if !self.feasible(b) {
                    ok = false;
                }
            }
            if include {
                self.chosen.push(point);
            }
            if ok {
                if let Some(hit) = self.dfs(depth + 1)? {
                    return Ok(Some(hit));
                }
            }
            if include {
                self.chosen.pop();
            }
            for bi in 0..self.blocks_per_point[point].len() {
                let b = self.blocks_per_point[point][bi] as usize;
                self.free_count[b] += 1;
                if include {
                    self.chosen_count[b] -= 1;
                }
            }
        }
        Ok(None)
    }
}

/// Exhaustive search for a subset with all block intersections inside
/// `allowed`. Returns the witness found first in a fixed exploration order,
/// or a no-witness certificate with the node count.
pub(crate) fn subset_profile_dfs(
    spec: &DfsSpec,
) -> Result<(Option<Subset>, u64), ObstructionError> {
    let v = spec.design.points();
    let blocks = spec.design.blocks();

    // Visit points block by block so each block's count settles early.
    let mut order = Vec::with_capacity(v);
    let mut placed = vec![false; v];
    for b in blocks {
        for i in b.indices() {
            if !placed[i] {
                placed[i] = true;
                order.push(i);
            }
        }
    }
    for (i, done) in placed.iter().enumerate() {
        if !done {
            order.push(i);
        }
    }

    let mut blocks_per_point = vec![Vec::new(); v];
    for (bi, b) in blocks.iter().enumerate() {
        for i in b.indices() {
            blocks_per_point[i].push(bi as u32);
        }
    }

    let mut state = DfsState {
        order,
        blocks_per_point,
        chosen_count: vec![0; blocks.len()],
        free_count: blocks.iter().map(|b| b.len() as u32).collect(),
        allowed: spec.allowed.iter().map(|&a| a as u32).collect(),
        weight: spec.weight,
        require_nonempty: spec.require_nonempty,
        node_cap: spec.node_cap,
        nodes: 0,
        chosen: Vec::new(),
    };

    // A block may be infeasible before any decision (e.g. empty allowed set).
    for b in 0..blocks.len() {
        if !state.feasible(b) {
            return Ok((None, 1));
        }
    }

    let witness = state.dfs(0)?;
    Ok((witness, state.nodes))
}

/// Search the planes of AG(3, s) for a non-empty point subset meeting every
/// plane in a or b points, where a - b = s and b < s.
pub fn obstruction_search(
    s: usize,
    query: ObstructionQuery,
    node_cap: u64,
) -> Result<ObstructionOutcome, ObstructionError> {
    if query.a != query.b + s || query.b >= s {
        return Err(ObstructionError::InvalidQuery {
            s,
            a: query.a,
            b: query.b,
        });
    }
    let design = crate::designs::affine_planes(s).map_err(|_| ObstructionError::InvalidQuery {
        s,
        a: query.a,
        b: query.b,
    })?;
    let (witness, nodes) = subset_profile_dfs(&DfsSpec {
        design: &design,
        allowed: vec![query.b, query.a],
        weight: None,
        require_nonempty: true,
        node_cap,
    })?;
    Ok(match witness {
        Some(subset) => ObstructionOutcome::Witness { subset, nodes },
        None => ObstructionOutcome::NoWitness { nodes },
    })
}
