//! Weight-class scans over a design's point set.
//!
//! The core loop streams weight-w bitmasks in colexicographic order and
//! tests every block overlap against an allowed-value set, exiting a
//! candidate at the first overlap outside the set. Blocks are pre-ordered by
//! rejection frequency on a deterministic sample so the average candidate
//! dies after very few intersections.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::bits::{binomial, ColexSubsets, Subset};
use crate::designs::{witt_4_23_7, Design};

const CHUNK: usize = 1 << 15;

/// Result of a single weight-class scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileScan {
    /// Colexicographically least vector whose overlaps all stay inside the
    /// allowed set, if any.
    pub witness: Option<Subset>,
    /// Number of candidate vectors examined.
    pub scanned: u64,
}

/// Overlap-value set as a bitmask (bit i set means overlap i is allowed).
pub(crate) fn allowed_bits(allowed: impl IntoIterator<Item = usize>) -> u128 {
    let mut bits = 0u128;
    for a in allowed {
        debug_assert!(a < 128);
        bits |= 1 << a;
    }
    bits
}

#[inline]
fn candidate_ok(z: u128, blocks: &[u128], allowed: u128) -> bool {
    for &b in blocks {
        let ov = (z & b).count_ones();
        if allowed >> ov & 1 == 0 {
            return false;
        }
    }
    true
}

/// Sort blocks so that the ones most likely to reject a candidate come
/// first. Frequencies are counted on an initial colex sample, so the order
/// is deterministic.
pub(crate) fn order_blocks_by_rejection(
    v: usize,
    w: usize,
    blocks: &[u128],
    allowed: u128,
) -> Vec<u128> {
    let sample: Vec<u128> = ColexSubsets::new(v, w).take(4096).collect();
    let mut tally: Vec<(usize, u64)> = blocks
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let rejections = sample
                .iter()
                .filter(|&&z| allowed >> (z & b).count_ones() & 1 == 0)
                .count() as u64;
            (i, rejections)
        })
        .collect();
    tally.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    tally.into_iter().map(|(i, _)| blocks[i]).collect()
}

/// Scan all weight-w masks on v points against the blocks, returning the
/// least passing mask. Chunks are processed in colex order and the scan
/// stops at the first chunk containing a witness, so the result does not
/// depend on the thread count.
pub(crate) fn scan_weight_class(
    v: usize,
    w: usize,
    blocks: &[u128],
    allowed: u128,
) -> (Option<u128>, u64) {
    let ordered = order_blocks_by_rejection(v, w, blocks, allowed);
    let mut iter = ColexSubsets::new(v, w);
    let mut scanned = 0u64;
    let mut buf = Vec::with_capacity(CHUNK);
    loop {
        buf.clear();
        buf.extend(iter.by_ref().take(CHUNK));
        if buf.is_empty() {
            return (None, scanned);
        }
        scanned += buf.len() as u64;
        let hit = buf
            .par_iter()
            .filter(|&&z| candidate_ok(z, &ordered, allowed))
            .min();
        if let Some(&z) = hit {
            return (Some(z), scanned);
        }
    }
}

/// Does any weight-`weight` vector on the design's points have every block
/// overlap inside `allowed`?
pub fn profile_scan(design: &Design, weight: usize, allowed: &BTreeSet<usize>) -> ProfileScan {
    assert!(weight <= design.points());
    let blocks = design.block_masks();
    let bits = allowed_bits(allowed.iter().copied());
    let (witness, scanned) = scan_weight_class(design.points(), weight, &blocks, bits);
    ProfileScan {
        witness: witness.map(Subset::from_mask),
        scanned,
    }
}

/// The exhaustive overlap fact for S(4,7,23): for which weights w does
/// *every* weight-w vector meet the 253 blocks in at least three distinct
/// overlap sizes? Complementing blocks preserves the count, so the fact
/// applies to the complement design as well.
#[derive(Debug)]
pub struct WittOverlapFact {
    /// Indexed by weight 0..=23.
    pub min_distinct_ge3: [bool; 24],
    /// Total vectors examined to establish the fact.
    pub scanned: u64,
}

fn distinct_overlaps_at_least(z: u128, blocks: &[u128], want: u32) -> bool {
    let mut seen: u64 = 0;
    for &b in blocks {
        seen |= 1 << (z & b).count_ones();
        if seen.count_ones() >= want {
            return true;
        }
    }
    false
}

/// Compute (once) whether every weight-w vector on 23 points meets the Witt
/// blocks in >= 3 distinct overlap sizes, for every w.
pub fn witt_overlap_fact() -> &'static WittOverlapFact {
    static FACT: OnceLock<WittOverlapFact> = OnceLock::new();
    FACT.get_or_init(|| {
        let blocks = witt_4_23_7().block_masks();
        let mut min_distinct_ge3 = [false; 24];
        let mut scanned = 0u64;
        for (w, slot) in min_distinct_ge3.iter_mut().enumerate() {
            scanned += binomial(23, w) as u64;
            let all: Vec<u128> = ColexSubsets::new(23, w).collect();
            *slot = all
                .par_iter()
                .all(|&z| distinct_overlaps_at_least(z, &blocks, 3));
        }
        WittOverlapFact {
            min_distinct_ge3,
            scanned,
        }
    })
}
