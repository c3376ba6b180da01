//! Combinatorial designs added to the simplex: affine-plane families,
//! the 4-(23,7,1) Witt design with its complement/derived/residual designs,
//! the order-8 Hadamard family, trivial t-intersecting families, and the
//! padding of block families into candidate vectors.
//!
//! All constructions are deterministic with blocks in colexicographic order,
//! and every design claim used downstream is certified by [`verify_t_design`]
//! and [`intersection_profile`] rather than trusted.

mod gf;

pub use gf::{gf, FieldError, FiniteField};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bits::{ColexSubsets, Subset};
use crate::exactgeom::CandidateVector;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("point {point} out of range 1..={v}")]
    PointOutOfRange { point: usize, v: usize },
    #[error("block contains index outside 1..={v}")]
    BlockOutOfRange { v: usize },
    #[error("duplicate blocks")]
    DuplicateBlocks,
    #[error("prefix length {p} plus point count {v} must equal ambient {ambient}")]
    ArityMismatch { p: usize, v: usize, ambient: usize },
    #[error("need t <= k <= n, got n={n} k={k} t={t}")]
    BadStarParameters { n: usize, k: usize, t: usize },
    #[error("t={t} exceeds block size {block_size}")]
    TExceedsBlockSize { t: usize, block_size: usize },
    #[error("need at least {need} blocks, got {got}")]
    TooFewBlocks { need: usize, got: usize },
}

/// Declared `t-(v, k, lambda)` parameters carried alongside a design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeclaredParams {
    pub t: usize,
    pub block_size: usize,
    pub lambda: u64,
}

/// A block family on points `{1, .., v}`. Blocks are held in colex order
/// with no duplicates. Equality ignores the declared parameters, which are
/// annotations rather than structure.
#[derive(Debug, Clone, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<Subset>,
    declared: Option<DeclaredParams>,
}

impl PartialEq for Design {
    fn eq(&self, other: &Design) -> bool {
        self.v == other.v && self.blocks == other.blocks
    }
}

impl Design {
    pub fn from_blocks(
        v: usize,
        mut blocks: Vec<Subset>,
        declared: Option<DeclaredParams>,
    ) -> Result<Design, DesignError> {
        for b in &blocks {
            if b.indices().iter().any(|&i| i >= v) {
                return Err(DesignError::BlockOutOfRange { v });
            }
        }
        blocks.sort_by(|a, b| a.colex_cmp(*b));
        if blocks.windows(2).any(|w| w[0] == w[1]) {
            return Err(DesignError::DuplicateBlocks);
        }
        Ok(Design {
            v,
            blocks,
            declared,
        })
    }

    /// The complete design: all k-subsets of `{1, .., v}`.
    pub fn complete(v: usize, k: usize) -> Design {
        let blocks = ColexSubsets::new(v, k).map(Subset::from_mask).collect();
        Design {
            v,
            blocks,
            declared: None,
        }
    }

    pub fn points(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn declared(&self) -> Option<DeclaredParams> {
        self.declared
    }

    /// Uniform block size, if the design is non-empty and uniform.
    pub fn block_size(&self) -> Option<usize> {
        let first = self.blocks.first()?.len();
        self.blocks
            .iter()
            .all(|b| b.len() == first)
            .then_some(first)
    }

    /// Blocks as low-v bitmasks for scan loops (requires v <= 128).
    pub fn block_masks(&self) -> Vec<u128> {
        assert!(self.v <= 128);
        self.blocks.iter().map(|b| b.to_mask()).collect()
    }
}

/// The planes of the affine space of dimension 3 over `GF(s)`: a
/// 2-(s^3, s^2, s+1) design with s^3 + s^2 + s blocks.
pub fn affine_planes(s: usize) -> Result<Design, DesignError> {
    Ok(affine_planes_with_resolution(s)?.0)
}

/// As [`affine_planes`], also returning the resolution: the partition of the
/// block list into s^2 + s + 1 parallel classes of s blocks, each class
/// partitioning the point set. Class entries are indices into `blocks()`.
pub fn affine_planes_with_resolution(s: usize) -> Result<(Design, Vec<Vec<usize>>), DesignError> {
    let field = gf(s)?;
    let q = field.order();
    let v = q * q * q;

    let point = |idx: usize| -> [usize; 3] { [idx % q, (idx / q) % q, idx / (q * q)] };

    // Normalized nonzero functionals: first nonzero coefficient equal 1 picks
    // one representative per direction, q^2 + q + 1 in total.
    let mut functionals = Vec::new();
    for c0 in 0..q {
        for c1 in 0..q {
            for c2 in 0..q {
                let f = [c0, c1, c2];
                let lead = f.iter().find(|&&c| c != 0);
                if lead == Some(&1) {
                    functionals.push(f);
                }
            }
        }
    }
    debug_assert_eq!(functionals.len(), q * q + q + 1);

    // Tag each plane with its functional so classes survive canonical sorting.
    let mut tagged: Vec<(Subset, usize)> = Vec::new();
    for (fi, f) in functionals.iter().enumerate() {
        for c in 0..q {
            let mut block = Subset::EMPTY;
            for idx in 0..v {
                let x = point(idx);
                let mut acc = 0;
                for t in 0..3 {
                    acc = field.add(acc, field.mul(f[t], x[t]));
                }
                if acc == c {
                    block.insert(idx);
                }
            }
            tagged.push((block, fi));
        }
    }
    tagged.sort_by(|a, b| a.0.colex_cmp(b.0));

    let blocks: Vec<Subset> = tagged.iter().map(|(b, _)| *b).collect();
    let mut classes = vec![Vec::new(); functionals.len()];
    for (pos, (_, fi)) in tagged.iter().enumerate() {
        classes[*fi].push(pos);
    }
    classes.sort();

    let design = Design::from_blocks(
        v,
        blocks,
        Some(DeclaredParams {
            t: 2,
            block_size: q * q,
            lambda: (q + 1) as u64,
        }),
    )?;
    Ok((design, classes))
}

/// Degree of a GF(2) polynomial stored as a bitmask.
fn gf2_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn gf2_rem(mut a: u64, m: u64) -> u64 {
    let dm = gf2_degree(m);
    while a != 0 && gf2_degree(a) >= dm {
        a ^= m << (gf2_degree(a) - dm);
    }
    a
}

/// The Steiner system S(4, 7, 23): supports of the weight-7 codewords of the
/// length-23 binary quadratic-residue code. The generator polynomial is
/// found by factoring x^23 + 1 over GF(2) rather than taken from a table;
/// the t-design property is certified separately by [`verify_t_design`].
pub fn witt_4_23_7() -> Design {
    let x23_plus_1: u64 = (1 << 23) | 1;
    // Degree-11 factors of x^23 + 1; there are exactly two, reciprocal to
    // each other. Either generates a [23,12,7] code.
    let mut generator = None;
    for low in 0..(1u64 << 11) {
        let candidate = (1 << 11) | low;
        if gf2_rem(x23_plus_1, candidate) == 0 {
            generator = Some(candidate);
            break;
        }
    }
    let g = generator.expect("x^23+1 has a degree-11 factor over GF(2)");

    let mut blocks = Vec::with_capacity(253);
    for msg in 0u64..(1 << 12) {
        let mut word: u64 = 0;
        for i in 0..12 {
            if msg >> i & 1 == 1 {
                word ^= g << i;
            }
        }
        if word.count_ones() == 7 {
            let mut s = Subset::EMPTY;
            let mut w = word;
            while w != 0 {
                s.insert(w.trailing_zeros() as usize);
                w &= w - 1;
            }
            blocks.push(s);
        }
    }
    Design::from_blocks(
        23,
        blocks,
        Some(DeclaredParams {
            t: 4,
            block_size: 7,
            lambda: 1,
        }),
    )
    .expect("codeword supports are distinct")
}

/// Replace every block by its complement in the point set.
pub fn complement_design(d: &Design) -> Design {
    let blocks = d.blocks.iter().map(|b| b.complement(d.v)).collect();
    Design::from_blocks(d.v, blocks, None).expect("complementation preserves distinctness")
}

/// Blocks through `point` (1-based) with the point deleted; remaining points
/// renumbered to `{1, .., v-1}`.
pub fn derived_design(d: &Design, point: usize) -> Result<Design, DesignError> {
    if point < 1 || point > d.v {
        return Err(DesignError::PointOutOfRange { point, v: d.v });
    }
    let p0 = point - 1;
    let mut blocks = Vec::new();
    for b in &d.blocks {
        if b.contains(p0) {
            let mut nb = Subset::EMPTY;
            for i in b.indices() {
                if i < p0 {
                    nb.insert(i);
                } else if i > p0 {
                    nb.insert(i - 1);
                }
            }
            blocks.push(nb);
        }
    }
    Design::from_blocks(d.v - 1, blocks, None)
}

/// The 2-(21,7,12) design: the 120 blocks of S(4,7,23) disjoint from the
/// fixed pair {22, 23}, on the remaining 21 points.
pub fn residual_2_21_7_12() -> Design {
    let witt = witt_4_23_7();
    let removed = Subset::from_one_based(&[22, 23]);
    let blocks: Vec<Subset> = witt
        .blocks()
        .iter()
        .copied()
        .filter(|b| b.intersection_len(removed) == 0)
        .collect();
    Design::from_blocks(
        21,
        blocks,
        Some(DeclaredParams {
            t: 2,
            block_size: 7,
            lambda: 12,
        }),
    )
    .expect("residual blocks inherit distinctness")
}

/// The 14 weight-4 vectors in ambient 9 obtained from the order-8 Hadamard
/// matrix: the positive supports of the 7 non-constant normalized rows,
/// padded with a trailing 0, plus their complements within the first 8
/// coordinates. Pairwise l values lie in {2, 4}.
pub fn hadamard8_family() -> Vec<CandidateVector> {
    let mut out = Vec::with_capacity(14);
    for a in 1usize..8 {
        // Sylvester row a has +1 exactly where <a, j> = 0 over GF(2).
        let mut support = Subset::EMPTY;
        for j in 0usize..8 {
            if (a & j).count_ones() % 2 == 0 {
                support.insert(j);
            }
        }
        out.push(CandidateVector::new(9, support));
        out.push(CandidateVector::new(9, support.complement(8)));
    }
    out.sort_by(|x, y| x.base_set().colex_cmp(y.base_set()));
    out
}

/// The trivial t-intersecting family: all weight-k vectors of length n whose
/// first t coordinates are 1.
pub fn star_family(n: usize, k: usize, t: usize) -> Result<Vec<CandidateVector>, DesignError> {
    if t > k || k > n {
        return Err(DesignError::BadStarParameters { n, k, t });
    }
    let head = Subset::full(t);
    let out = ColexSubsets::new(n - t, k - t)
        .map(|tail| {
            let tail = Subset::from_mask(tail).shifted_up(t);
            CandidateVector::new(n, head.union(tail))
        })
        .collect();
    Ok(out)
}

/// Outcome of a t-design check: a constant lambda, or a witness pair of
/// t-subsets covered by different block counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TDesignOutcome {
    Lambda(u64),
    NotUniform {
        subset_a: Subset,
        count_a: u64,
        subset_b: Subset,
        count_b: u64,
    },
}

/// Count the blocks through every t-subset of points.
pub fn verify_t_design(d: &Design, t: usize) -> Result<TDesignOutcome, DesignError> {
    if let Some(bs) = d.block_size() {
        if t > bs {
            return Err(DesignError::TExceedsBlockSize { t, block_size: bs });
        }
    }
    let masks = d.block_masks();
    let mut first: Option<(u128, u64)> = None;
    for sub in ColexSubsets::new(d.v, t) {
        let count = masks.iter().filter(|&&b| b & sub == sub).count() as u64;
        match first {
            None => first = Some((sub, count)),
            Some((s0, c0)) if c0 != count => {
                return Ok(TDesignOutcome::NotUniform {
                    subset_a: Subset::from_mask(s0),
                    count_a: c0,
                    subset_b: Subset::from_mask(sub),
                    count_b: count,
                });
            }
            _ => {}
        }
    }
    Ok(TDesignOutcome::Lambda(first.map_or(0, |(_, c)| c)))
}

/// Set of pairwise block intersection sizes over distinct block pairs.
pub fn intersection_profile(d: &Design) -> Result<BTreeSet<usize>, DesignError> {
    if d.block_count() < 2 {
        return Err(DesignError::TooFewBlocks {
            need: 2,
            got: d.block_count(),
        });
    }
    let mut out = BTreeSet::new();
    for i in 0..d.blocks.len() {
        for j in (i + 1)..d.blocks.len() {
            out.insert(d.blocks[i].intersection_len(d.blocks[j]));
        }
    }
    Ok(out)
}

/// A block family padded into ambient coordinates: every member is the
/// 1-positions of `prefix` followed by a block's characteristic vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedFamily {
    ambient: usize,
    prefix: Vec<bool>,
    suffix: Design,
}

impl PaddedFamily {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix_weight(&self) -> usize {
        self.prefix.iter().filter(|&&b| b).count()
    }

    /// The prefix 1-positions as an ambient subset.
    pub fn prefix_ones(&self) -> Subset {
        let mut s = Subset::EMPTY;
        for (i, &b) in self.prefix.iter().enumerate() {
            if b {
                s.insert(i);
            }
        }
        s
    }

    pub fn suffix(&self) -> &Design {
        &self.suffix
    }

    pub fn len(&self) -> usize {
        self.suffix.block_count()
    }

    pub fn is_empty(&self) -> bool {
        self.suffix.block_count() == 0
    }

    /// Shared member weight (prefix weight + block size).
    pub fn weight(&self) -> usize {
        self.prefix_weight() + self.suffix.block_size().unwrap_or(0)
    }

    pub fn members(&self) -> Vec<CandidateVector> {
        let p = self.prefix.len();
        let ones = self.prefix_ones();
        self.suffix
            .blocks()
            .iter()
            .map(|b| CandidateVector::new(self.ambient, ones.union(b.shifted_up(p))))
            .collect()
    }
}

/// Prefix every block's characteristic vector with `prefix`.
pub fn pad(design: &Design, prefix: &[bool], ambient: usize) -> Result<PaddedFamily, DesignError> {
    if prefix.len() + design.points() != ambient {
        return Err(DesignError::ArityMismatch {
            p: prefix.len(),
            v: design.points(),
            ambient,
        });
    }
    Ok(PaddedFamily {
        ambient,
        prefix: prefix.to_vec(),
        suffix: design.clone(),
    })
}

/// Convenience: `ones` leading 1s then `zeros` 0s.
pub fn prefix_pattern(ones: usize, zeros: usize) -> Vec<bool> {
    let mut p = vec![true; ones];
    p.extend(std::iter::repeat(false).take(zeros));
    p
}
