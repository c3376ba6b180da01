//! Fixed-width index sets and colexicographic k-subset enumeration.
//!
//! Coordinates are 0-based internally; all file formats and reports use
//! 1-based indices. A subset of `{0, .., n-1}` stored as a bitmask compares
//! numerically in exactly colexicographic order on index sets, which is the
//! canonical enumeration and tie-breaking order throughout the crate.

use std::fmt;

/// Maximum ambient dimension supported by [`Subset`] (three 64-bit words).
pub const MAX_BITS: usize = 192;

/// A subset of `{0, .., MAX_BITS-1}` as a fixed 192-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset {
    words: [u64; 3],
}

impl Subset {
    pub const EMPTY: Subset = Subset { words: [0; 3] };

    /// Set of all indices in `0..n`.
    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_BITS);
        let mut s = Subset::EMPTY;
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn from_indices(indices: &[usize]) -> Subset {
        let mut s = Subset::EMPTY;
        for &i in indices {
            s.insert(i);
        }
        s
    }

    /// Parse 1-based index lists as used in the JSON formats.
    pub fn from_one_based(indices: &[usize]) -> Subset {
        let mut s = Subset::EMPTY;
        for &i in indices {
            assert!(i >= 1, "indices in files are 1-based");
            s.insert(i - 1);
        }
        s
    }

    pub fn from_mask(mask: u128) -> Subset {
        Subset {
            words: [mask as u64, (mask >> 64) as u64, 0],
        }
    }

    /// Lossless only when no index is ≥ 128.
    pub fn to_mask(self) -> u128 {
        debug_assert_eq!(self.words[2], 0, "subset does not fit in 128 bits");
        (self.words[0] as u128) | ((self.words[1] as u128) << 64)
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < MAX_BITS);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        assert!(i < MAX_BITS);
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_BITS && self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(self) -> bool {
        self.words == [0; 3]
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset {
            words: [
                self.words[0] & other.words[0],
                self.words[1] & other.words[1],
                self.words[2] & other.words[2],
            ],
        }
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset {
            words: [
                self.words[0] | other.words[0],
                self.words[1] | other.words[1],
                self.words[2] | other.words[2],
            ],
        }
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset {
            words: [
                self.words[0] & !other.words[0],
                self.words[1] & !other.words[1],
                self.words[2] & !other.words[2],
            ],
        }
    }

    pub fn intersection_len(self, other: Subset) -> usize {
        (self.words[0] & other.words[0]).count_ones() as usize
            + (self.words[1] & other.words[1]).count_ones() as usize
            + (self.words[2] & other.words[2]).count_ones() as usize
    }

    pub fn symmetric_difference_len(self, other: Subset) -> usize {
        (self.words[0] ^ other.words[0]).count_ones() as usize
            + (self.words[1] ^ other.words[1]).count_ones() as usize
            + (self.words[2] ^ other.words[2]).count_ones() as usize
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.words[0] & !other.words[0] == 0
            && self.words[1] & !other.words[1] == 0
            && self.words[2] & !other.words[2] == 0
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    pub fn indices(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        for w in 0..3 {
            let mut word = self.words[w];
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                out.push(w * 64 + b);
                word &= word - 1;
            }
        }
        out
    }

    /// Sorted 1-based indices as used in the JSON formats.
    pub fn one_based(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    /// Shift every index up by `offset` (prepend `offset` empty coordinates).
    pub fn shifted_up(self, offset: usize) -> Subset {
        let mut out = Subset::EMPTY;
        for i in self.indices() {
            out.insert(i + offset);
        }
        out
    }

    /// Colexicographic comparison = numeric comparison of the masks.
    pub fn colex_cmp(self, other: Subset) -> std::cmp::Ordering {
        for w in (0..3).rev() {
            match self.words[w].cmp(&other.words[w]) {
                std::cmp::Ordering::Equal => continue,
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, idx) in self.one_based().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "}}")
    }
}

/// Streaming colexicographic enumeration of the weight-`k` masks on `n` bits.
///
/// Masks are produced in increasing numeric order (Gosper's hack), so the
/// first mask emitted is `{0..k-1}` and the last is the top `k` bits of `n`.
pub struct ColexSubsets {
    next: Option<u128>,
    limit: u128,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> ColexSubsets {
        assert!(n <= 128);
        assert!(k <= n);
        if k == 0 {
            return ColexSubsets {
                next: Some(0),
                limit: 0,
            };
        }
        let first = if k == 128 {
            u128::MAX
        } else {
            (1u128 << k) - 1
        };
        let limit = first << (n - k);
        ColexSubsets {
            next: Some(first),
            limit,
        }
    }
}

impl Iterator for ColexSubsets {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        let v = self.next?;
        if v == self.limit || v == 0 {
            self.next = None;
        } else {
            // Gosper's hack: next larger integer with the same popcount.
            let t = v | (v - 1);
            let next = (t + 1) | (((!t & t.wrapping_add(1)) - 1) >> (v.trailing_zeros() + 1));
            self.next = Some(next);
        }
        Some(v)
    }
}

/// Binomial coefficient with saturation at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
