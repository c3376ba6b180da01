//! Helpers shared by the integration test targets.

use std::collections::BTreeSet;

use simplex2dist_core::exactgeom::CandidateVector;

/// Do two families of vectors coincide after some permutation of the
/// coordinates? Backtracking on coordinate images with degree pruning;
/// intended for small ambients.
pub fn equal_up_to_coordinate_permutation(
    n: usize,
    a: &[CandidateVector],
    b: &[CandidateVector],
) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let a_sets: BTreeSet<Vec<usize>> = a.iter().map(|v| v.base_set().indices()).collect();
    let b_sets: BTreeSet<Vec<usize>> = b.iter().map(|v| v.base_set().indices()).collect();
    let degree =
        |sets: &BTreeSet<Vec<usize>>, i: usize| sets.iter().filter(|s| s.contains(&i)).count();

    fn extend(
        n: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        a_sets: &BTreeSet<Vec<usize>>,
        b_sets: &BTreeSet<Vec<usize>>,
        degree: &dyn Fn(&BTreeSet<Vec<usize>>, usize) -> usize,
    ) -> bool {
        let i = match image.iter().position(|x| x.is_none()) {
            None => {
                let mapped: BTreeSet<Vec<usize>> = a_sets
                    .iter()
                    .map(|s| {
                        let mut t: Vec<usize> = s.iter().map(|&x| image[x].unwrap()).collect();
                        t.sort();
                        t
                    })
                    .collect();
                return mapped == *b_sets;
            }
            Some(i) => i,
        };
        for j in 0..n {
            if used[j] || degree(a_sets, i) != degree(b_sets, j) {
                continue;
            }
            image[i] = Some(j);
            used[j] = true;
            if extend(n, image, used, a_sets, b_sets, degree) {
                return true;
            }
            image[i] = None;
            used[j] = false;
        }
        false
    }

    extend(
        n,
        &mut vec![None; n],
        &mut vec![false; n],
        &a_sets,
        &b_sets,
        &degree,
    )
}
