use std::collections::HashSet;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{structural_bound, Algorithm, SolveResult};
use crate::generators::Seed;
use crate::geometry::{line_through_unchecked, Point, PointSet};

/// Order in which [`greedy_gpss`] scans its input.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanOrder {
    #[default]
    Input,
    Shuffled,
}

/// Scans the points once and keeps each one that forms no collinear triple
/// with two points already kept.
///
/// The lines spanned by kept pairs are stored, so a candidate is rejected iff
/// its line to some kept point is already present.
pub fn greedy_gpss(s: &PointSet, order: ScanOrder, seed: Seed) -> SolveResult {
    let mut scan: Vec<&Point> = s.iter().collect();
    if order == ScanOrder::Shuffled {
        scan.shuffle(&mut seed.rng());
    }
    let mut kept: Vec<Point> = Vec::new();
    let mut spanned = HashSet::new();
    let mut rejected = 0usize;
    for q in scan {
        let keys: Vec<_> = kept.iter().map(|c| line_through_unchecked(c, q)).collect();
        if keys.iter().any(|k| spanned.contains(k)) {
            rejected += 1;
            continue;
        }
        spanned.extend(keys);
        kept.push(q.clone());
    }
    let (bound, source) = structural_bound(s);
    let mut res = SolveResult::new(
        PointSet::from_distinct(kept),
        Algorithm::Greedy,
        bound,
        source,
    );
    if order == ScanOrder::Shuffled {
        res.seed = Some(seed);
    }
    res.stat("rejected", rejected as f64);
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::grid;
    use crate::geometry::{collinear, is_general_position};

    // Straightforward O(k^2) recheck of every kept pair.
    fn naive_greedy(pts: &[Point]) -> Vec<Point> {
        let mut kept: Vec<Point> = Vec::new();
        for q in pts {
            let blocked = (0..kept.len())
                .any(|i| (i + 1..kept.len()).any(|j| collinear(&kept[i], &kept[j], q)));
            if !blocked {
                kept.push(q.clone());
            }
        }
        kept
    }

    #[test]
    fn examples() {
        let diag = PointSet::from_lattice([(0, 0), (1, 1), (2, 2)]).unwrap();
        let r = greedy_gpss(&diag, ScanOrder::Input, Seed(0));
        assert_eq!(r.chosen.points(), &[Point::int(0, 0), Point::int(1, 1)]);

        let gp = PointSet::from_lattice((0..10).map(|x| (x, x * x))).unwrap();
        for seed in 0..5 {
            assert_eq!(greedy_gpss(&gp, ScanOrder::Shuffled, Seed(seed)).size(), 10);
        }

        let g3 = grid(3);
        let r = greedy_gpss(&g3, ScanOrder::Input, Seed(0));
        assert_eq!(r.chosen.points(), naive_greedy(g3.points()).as_slice());
        assert_eq!(r.size(), 4);
        assert!(r.verify(&g3));
    }

    #[test]
    fn matches_naive_scan() {
        for m in 2..=7 {
            let g = grid(m);
            for seed in 0..4 {
                let r = greedy_gpss(&g, ScanOrder::Shuffled, Seed(seed));
                let mut order: Vec<Point> = g.points().to_vec();
                order.shuffle(&mut Seed(seed).rng());
                assert_eq!(r.chosen.points(), naive_greedy(&order).as_slice());
                assert!(is_general_position(&r.chosen));
                assert!(r.size() <= r.opt_upper_bound);
            }
        }
    }
}
