//! Exact rational model of the hyperplane `H_d`, the regular simplex, and
//! ground-truth distance spectra.
//!
//! `H_d` is the affine hyperplane of `R^{d+1}` whose coordinates sum to 1;
//! the standard basis vectors form a d-dimensional regular simplex in it with
//! squared side length 2. A candidate vector with base set `S` of size k
//! embeds as the point taking the base value `c` on `S` and `c + beta`
//! elsewhere. All arithmetic is exact; spectra are sets of squared distances.

use std::collections::BTreeSet;
use std::io::Write;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bits::Subset;
use crate::rational::{format_rational, int, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("weight must satisfy 1 <= k <= d+1, got k={k} for d={d}")]
    WeightOutOfRange { d: usize, k: usize },
    #[error("candidate has ambient {have}, expected {want}")]
    AmbientMismatch { have: usize, want: usize },
    #[error("candidate has weight {have}, expected {want}")]
    WeightMismatch { have: usize, want: usize },
    #[error("points have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("point coordinates sum to {0}, not 1")]
    NotInHyperplane(String),
    #[error("degenerate set: duplicate points")]
    DuplicatePoints,
    #[error("need at least 2 distinct points, got {0}")]
    TooFewPoints(usize),
}

/// A point of `H_d`, kept exact. Construction checks hyperplane membership.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Point, GeomError> {
        let sum: Rational = coords.iter().cloned().sum();
        if !sum.is_one() {
            return Err(GeomError::NotInHyperplane(format_rational(&sum)));
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// A point of `T_d(k, beta)` stored combinatorially: the set of coordinates
/// holding the base value `c`, inside ambient `{1, .., d+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CandidateVector {
    ambient: usize,
    base: Subset,
}

impl CandidateVector {
    pub fn new(ambient: usize, base: Subset) -> CandidateVector {
        debug_assert!(base.indices().iter().all(|&i| i < ambient));
        CandidateVector { ambient, base }
    }

    pub fn from_one_based(ambient: usize, indices: &[usize]) -> CandidateVector {
        CandidateVector::new(ambient, Subset::from_one_based(indices))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn base_set(&self) -> Subset {
        self.base
    }

    /// Johnson weight `|N(x, c)| = k`.
    pub fn weight(&self) -> usize {
        self.base.len()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.base.one_based()
    }
}

/// The regular simplex `R_d`: the d+1 standard basis points.
pub fn simplex_points(d: usize) -> Result<Vec<Point>, GeomError> {
    if d < 2 {
        return Err(GeomError::InvalidDimension(d));
    }
    Ok((0..=d)
        .map(|i| {
            let coords = (0..=d)
                .map(|j| if i == j { int(1) } else { int(0) })
                .collect();
            Point { coords }
        })
        .collect())
}

/// Base value `c = (1 - (d+1-k) beta) / (d+1)`.
pub fn base_value(d: usize, k: usize, beta: &Rational) -> Result<Rational, GeomError> {
    if k < 1 || k > d + 1 {
        return Err(GeomError::WeightOutOfRange { d, k });
    }
    let n = int((d + 1) as i64);
    Ok((Rational::one() - int((d + 1 - k) as i64) * beta) / n)
}

/// Embed a candidate: coordinate i is `c` on the base set, `c + beta` off it.
pub fn embed(v: &CandidateVector, d: usize, k: usize, beta: &Rational) -> Result<Point, GeomError> {
    if v.ambient() != d + 1 {
        return Err(GeomError::AmbientMismatch {
            have: v.ambient(),
            want: d + 1,
        });
    }
    if v.weight() != k {
        return Err(GeomError::WeightMismatch {
            have: v.weight(),
            want: k,
        });
    }
    let c = base_value(d, k, beta)?;
    let off = &c + beta;
    let coords = (0..=d)
        .map(|i| {
            if v.base_set().contains(i) {
                c.clone()
            } else {
                off.clone()
            }
        })
        .collect();
    Point::new(coords)
}

/// Exact squared Euclidean distance.
pub fn squared_distance(p: &Point, q: &Point) -> Result<Rational, GeomError> {
    if p.len() != q.len() {
        return Err(GeomError::LengthMismatch(p.len(), q.len()));
    }
    let mut acc = Rational::zero();
    for (a, b) in p.coords.iter().zip(&q.coords) {
        let diff = a - b;
        acc += &diff * &diff;
    }
    Ok(acc)
}

/// Set of distinct squared distances over all unordered pairs.
pub fn distance_spectrum(points: &[Point]) -> Result<BTreeSet<Rational>, GeomError> {
    if points.len() < 2 {
        return Err(GeomError::TooFewPoints(points.len()));
    }
    let mut spectrum = BTreeSet::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d2 = squared_distance(&points[i], &points[j])?;
            if d2.is_zero() {
                return Err(GeomError::DuplicatePoints);
            }
            spectrum.insert(d2);
        }
    }
    Ok(spectrum)
}

/// CSV export: one point per row, coordinates as reduced fraction strings.
pub fn write_points_csv<W: Write>(points: &[Point], mut out: W) -> std::io::Result<()> {
    for p in points {
        let row: Vec<String> = p.coords.iter().map(format_rational).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn simplex_basis_points() {
        let pts = simplex_points(2).unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].coords(), &[int(1), int(0), int(0)]);
        assert_eq!(simplex_points(1), Err(GeomError::InvalidDimension(1)));

        // Pairwise squared distance 2, any dimension.
        for d in [7usize, 31] {
            let pts = simplex_points(d).unwrap();
            assert_eq!(pts.len(), d + 1);
            let spec = distance_spectrum(&pts).unwrap();
            assert_eq!(spec.into_iter().collect::<Vec<_>>(), vec![int(2)]);
        }
    }

    #[test]
    fn base_value_examples() {
        // d=8, k=8, beta=-1/2 gives c = 1/6.
        assert_eq!(base_value(8, 8, &ratio(-1, 2)).unwrap(), ratio(1, 6));
        // k = d+1 always gives 1/(d+1).
        assert_eq!(base_value(5, 6, &ratio(7, 3)).unwrap(), ratio(1, 6));
        assert!(base_value(5, 7, &int(1)).is_err());
    }

    #[test]
    fn embed_weight8_vector() {
        // Base set {1..8} in ambient 9 at beta=-1/2: (1/6,...,1/6,-1/3).
        let v = CandidateVector::from_one_based(9, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let p = embed(&v, 8, 8, &ratio(-1, 2)).unwrap();
        let mut want = vec![ratio(1, 6); 8];
        want.push(ratio(-1, 3));
        assert_eq!(p.coords(), &want[..]);

        let bad = embed(&v, 8, 5, &ratio(-1, 2));
        assert_eq!(bad, Err(GeomError::WeightMismatch { have: 8, want: 5 }));
    }

    #[test]
    fn embedded_candidates_stay_in_hyperplane() {
        // Any base set, any beta: the defining c forces coordinate sum 1.
        for k in 1..=9usize {
            let v = CandidateVector::new(9, Subset::from_indices(&(0..k).collect::<Vec<_>>()));
            for beta in [ratio(-1, 2), ratio(1, 2), ratio(3, 7), int(1)] {
                let p = embed(&v, 8, k, &beta).unwrap();
                let sum: Rational = p.coords().iter().cloned().sum();
                assert!(sum.is_one());
            }
        }
    }

    #[test]
    fn squared_distance_basics() {
        let pts = simplex_points(3).unwrap();
        assert_eq!(squared_distance(&pts[0], &pts[1]).unwrap(), int(2));
        assert_eq!(squared_distance(&pts[0], &pts[0]).unwrap(), int(0));
        // Symmetry.
        assert_eq!(
            squared_distance(&pts[2], &pts[1]).unwrap(),
            squared_distance(&pts[1], &pts[2]).unwrap()
        );
    }

    #[test]
    fn simplex_and_admissible_candidate_distances() {
        // e_j at squared distance 2 off the base set, alpha on it (d=8, k=5,
        // beta=-1/2, alpha=1).
        let v = CandidateVector::from_one_based(9, &[1, 2, 3, 4, 9]);
        let p = embed(&v, 8, 5, &ratio(-1, 2)).unwrap();
        let simplex = simplex_points(8).unwrap();
        for (j, e) in simplex.iter().enumerate() {
            let d2 = squared_distance(e, &p).unwrap();
            if v.base_set().contains(j) {
                assert_eq!(d2, int(1));
            } else {
                assert_eq!(d2, int(2));
            }
        }
    }

    #[test]
    fn spectrum_rejects_duplicates() {
        let pts = simplex_points(2).unwrap();
        let doubled = vec![pts[0].clone(), pts[1].clone(), pts[0].clone()];
        assert_eq!(distance_spectrum(&doubled), Err(GeomError::DuplicatePoints));
    }

    #[test]
    fn csv_format() {
        let pts = vec![
            Point::new(vec![ratio(1, 6), ratio(1, 2), ratio(1, 3)]).unwrap(),
            Point::new(vec![int(1), int(0), int(0)]).unwrap(),
        ];
        let mut buf = Vec::new();
        write_points_csv(&pts, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1/6,1/2,1/3\n1,0,0\n");
    }
}
