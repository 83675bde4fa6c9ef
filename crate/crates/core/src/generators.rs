//! Seeded constructions of the instance families used throughout the crate.
//!
//! All randomness comes from a ChaCha stream keyed by [`Seed`], so outputs are
//! identical across runs and platforms.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GpssError, Result};
use crate::geometry::{LineKey, LineSet, Point, PointSet};
use crate::primes::is_prime;
use crate::rational::{floor_sqrt, Rational};

/// Seed for every randomized generator and solver.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// An independent stream derived from this seed.
    pub fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_stream(stream);
        rng
    }
}

impl From<u64> for Seed {
    fn from(v: u64) -> Self {
        Seed(v)
    }
}

fn grid_coords(m: u64) -> Vec<(i64, i64)> {
    let m = m as i64;
    (0..m).flat_map(|y| (0..m).map(move |x| (x, y))).collect()
}

/// The `m x m` lattice grid in row-major order (`y` outer, `x` inner).
pub fn grid(m: u64) -> PointSet {
    PointSet::from_distinct(grid_coords(m).into_iter().map(Point::from).collect())
}

/// `{(x, (x^2 mod p) + i) : 0 <= x < m}`, in order of `x`.
pub fn erdos_class(m: u64, p: u64, i: i64) -> Result<PointSet> {
    if p < m || !is_prime(p) {
        return Err(GpssError::InvalidPrime(p, m));
    }
    let pts = (0..m)
        .map(|x| {
            let y = ((x as u128 * x as u128) % p as u128) as i64 + i;
            Point::int(x as i64, y)
        })
        .collect();
    Ok(PointSet::from_distinct(pts))
}

/// Side of the grid used by [`dense_lattice`]: `floor(alpha sqrt(n) / sqrt(2))`.
pub fn dense_lattice_side(n: usize, alpha: &Rational) -> u64 {
    let half_sq = &(alpha * alpha) * &Rational::new(n as i64, 2);
    floor_sqrt(&half_sq).to_u64().unwrap_or(u64::MAX)
}

/// `n` distinct points drawn uniformly from the grid of side
/// `floor(alpha sqrt(n) / sqrt(2))`, sorted. The grid's diameter is at most
/// `alpha sqrt(n)` and lattice points are at unit distance or more, so the
/// result is `alpha`-dense.
pub fn dense_lattice(n: usize, alpha: &Rational, seed: Seed) -> Result<PointSet> {
    if !alpha.is_positive() {
        return Err(GpssError::InvalidParameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let side = dense_lattice_side(n, alpha);
    if (side as u128) * (side as u128) < n as u128 {
        return Err(GpssError::InfeasibleDensity { n, side });
    }
    Ok(sample_grid(side, n, seed))
}

fn sample_grid(side: u64, count: usize, seed: Seed) -> PointSet {
    let mut cells = grid_coords(side);
    cells.shuffle(&mut seed.rng());
    cells.truncate(count);
    cells.sort_by_key(|&(x, y)| (x, y));
    PointSet::from_distinct(cells.into_iter().map(Point::from).collect())
}

fn key(a: i64, b: i64, c: i64) -> LineKey {
    LineKey::new(a, b, c).expect("generator lines are non-degenerate")
}

fn family_sizes(n: usize) -> [usize; 3] {
    let (q, r) = (n / 3, n % 3);
    [q + usize::from(r > 0), q + usize::from(r > 1), q]
}

/// Three families of parallel lines: verticals `x = i`, horizontals `y = j`,
/// and slope-one lines `x - y = k + 1/2`. The half-integer offsets keep every
/// cross-family intersection distinct, so the arrangement has
/// `ab + bc + ca` vertices for family sizes `a, b, c`.
pub fn bundle_arrangement(n: usize) -> Result<LineSet> {
    if n < 3 {
        return Err(GpssError::InvalidParameter(format!(
            "bundle arrangement needs n >= 3, got {n}"
        )));
    }
    let [a, b, c] = family_sizes(n);
    let mut lines = Vec::with_capacity(n);
    lines.extend((0..a as i64).map(|i| key(1, 0, -i)));
    lines.extend((0..b as i64).map(|j| key(0, 1, -j)));
    let shift = (c / 2) as i64;
    // 2x - 2y - (2k + 1) = 0
    lines.extend((0..c as i64).map(|k| key(2, -2, -(2 * (k - shift) + 1))));
    LineSet::new(lines)
}

/// Three horizontal parallels `y = 0, 1, 2` and `n - 3` lines through
/// `(0, -1)` with directions `(d, 1)`, `d = 0, 1, ...`. Has `1 + 3(n - 3)`
/// vertices.
pub fn degenerate_arrangement(n: usize) -> Result<LineSet> {
    if n < 4 {
        return Err(GpssError::InvalidParameter(format!(
            "degenerate arrangement needs n >= 4, got {n}"
        )));
    }
    let mut lines: Vec<LineKey> = (0..3).map(|j| key(0, 1, -j)).collect();
    // x - d (y + 1) = 0
    lines.extend((0..(n - 3) as i64).map(|d| key(1, -d, -d)));
    LineSet::new(lines)
}

/// `n - 1` horizontal parallels crossed by the diagonal `y = x`: all `n - 1`
/// vertices lie on one line.
pub fn parallels_with_transversal(n: usize) -> Result<LineSet> {
    if n < 3 {
        return Err(GpssError::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let mut lines: Vec<LineKey> = (0..(n - 1) as i64).map(|j| key(0, 1, -j)).collect();
    lines.push(key(1, -1, 0));
    LineSet::new(lines)
}

/// A random `ceil(keep n)`-point subset of the `sqrt(n) x sqrt(n)` grid, sorted.
pub fn grid_like(n: usize, keep: &Rational, seed: Seed) -> Result<PointSet> {
    let side = (n as f64).sqrt().round() as u64;
    if (side * side) as usize != n {
        return Err(GpssError::InvalidParameter(format!(
            "{n} is not a perfect square"
        )));
    }
    if !keep.is_positive() || keep > &Rational::one() {
        return Err(GpssError::InvalidParameter(format!(
            "keep must lie in (0, 1], got {keep}"
        )));
    }
    let count = (keep * &Rational::from_integer(n as i64))
        .ceil()
        .to_usize()
        .expect("count is at most n");
    if count < 2 {
        return Err(GpssError::InvalidParameter(format!(
            "keep {keep} leaves {count} point(s), need at least 2"
        )));
    }
    Ok(sample_grid(side, count, seed))
}

/// `n` distinct points drawn uniformly from `G_side`, sorted.
pub fn random_points(n: usize, side: u64, seed: Seed) -> Result<PointSet> {
    if (side as u128) * (side as u128) < n as u128 {
        return Err(GpssError::InfeasibleDensity { n, side });
    }
    Ok(sample_grid(side, n, seed))
}

/// Number of distinct canonical lines with all coefficients in `[-range, range]`,
/// capped at `cap`.
fn distinct_lines_in_range(range: i64, cap: usize) -> usize {
    let side = 2 * range as u128 + 1;
    // every (1, b, c) is already canonical
    if side * side >= cap as u128 {
        return cap;
    }
    let mut seen = HashSet::new();
    for a in -range..=range {
        for b in -range..=range {
            for c in -range..=range {
                if let Ok(k) = LineKey::new(a, b, c) {
                    seen.insert(k);
                }
            }
        }
    }
    seen.len()
}

/// `n` distinct lines with coefficients drawn uniformly from `[-range, range]`,
/// redrawing degenerate and repeated lines.
pub fn random_lines(n: usize, range: i64, seed: Seed) -> Result<LineSet> {
    if range < 1 {
        return Err(GpssError::InvalidParameter(format!(
            "range must be positive, got {range}"
        )));
    }
    let available = distinct_lines_in_range(range, n);
    if available < n {
        return Err(GpssError::ExhaustedLineSpace {
            requested: n,
            available,
            range,
        });
    }
    let mut rng = seed.rng();
    let mut seen = HashSet::with_capacity(n);
    let mut lines = Vec::with_capacity(n);
    while lines.len() < n {
        let (a, b, c) = (
            rng.random_range(-range..=range),
            rng.random_range(-range..=range),
            rng.random_range(-range..=range),
        );
        if let Ok(k) = LineKey::new(a, b, c) {
            if seen.insert(k.clone()) {
                lines.push(k);
            }
        }
    }
    LineSet::new(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{
        arrangement_vertices, collinear_triples, greedy_line_cover, is_alpha_dense, is_generic,
        max_collinear,
    };
    use crate::geometry::is_general_position;
    use crate::primes::next_prime_at_least;

    #[test]
    fn grids() {
        assert_eq!(grid(1).points(), &[Point::int(0, 0)]);
        assert_eq!(grid(8).len(), 64);
        assert_eq!(grid(3).points()[1], Point::int(1, 0));
        assert_eq!(max_collinear(&grid(3)), 3);
        assert_eq!(collinear_triples(&grid(3)), 8);
    }

    #[test]
    fn erdos_classes() {
        let v0 = erdos_class(8, 11, 0).unwrap();
        assert!(v0.points().contains(&Point::int(3, 9)));
        assert_eq!(v0.len(), 8);
        assert!(is_general_position(&v0));
        assert_eq!(erdos_class(1, 2, 0).unwrap().points(), &[Point::int(0, 0)]);
        let v = erdos_class(5, 5, 0).unwrap();
        let want: Vec<Point> = [(0, 0), (1, 1), (2, 4), (3, 4), (4, 1)]
            .into_iter()
            .map(Point::from)
            .collect();
        assert_eq!(v.points(), want.as_slice());
        assert!(is_general_position(&v));
        assert_eq!(erdos_class(8, 7, 0), Err(GpssError::InvalidPrime(7, 8)));
        assert_eq!(erdos_class(8, 12, 0), Err(GpssError::InvalidPrime(12, 8)));
    }

    #[test]
    fn erdos_classes_partition_the_grid() {
        for m in 1..=50u64 {
            let p = next_prime_at_least(m.max(2)).unwrap();
            let lo = 1 - p as i64;
            let hi = m as i64 - 1;
            let mut seen = HashSet::new();
            for i in lo..=hi {
                for q in erdos_class(m, p, i).unwrap().iter() {
                    assert!(seen.insert(q.clone()), "classes overlap at {q}");
                }
            }
            for (x, y) in grid_coords(m) {
                let i = y - ((x * x) as u64 % p) as i64;
                assert!((lo..=hi).contains(&i));
                assert!(erdos_class(m, p, i)
                    .unwrap()
                    .points()
                    .contains(&Point::int(x, y)));
            }
        }
    }

    #[test]
    fn dense_lattices() {
        let two = Rational::from_integer(2);
        let s = dense_lattice(25, &two, Seed(7)).unwrap();
        assert_eq!(s.len(), 25);
        assert!(s.iter().all(|p| {
            let (x, y) = p.as_lattice().unwrap();
            (0..7).contains(&x) && (0..7).contains(&y)
        }));
        assert!(is_alpha_dense(&s, &two));
        assert_eq!(s, dense_lattice(25, &two, Seed(7)).unwrap());
        assert_ne!(s, dense_lattice(25, &two, Seed(8)).unwrap());
        // alpha^2 n / 2 = 55.125 gives side 7, so 49 points fill the grid
        let full = dense_lattice(49, &Rational::new(3, 2), Seed(1)).unwrap();
        assert_eq!(dense_lattice_side(49, &Rational::new(3, 2)), 7);
        assert_eq!(full, grid(7).sorted());
        assert_eq!(
            dense_lattice(25, &Rational::one(), Seed(0)),
            Err(GpssError::InfeasibleDensity { n: 25, side: 3 })
        );
    }

    #[test]
    fn bundles() {
        assert_eq!(
            arrangement_vertices(&bundle_arrangement(6).unwrap()).len(),
            12
        );
        let tri = arrangement_vertices(&bundle_arrangement(3).unwrap());
        assert_eq!(tri.len(), 3);
        assert!(is_general_position(&tri));
        assert_eq!(
            arrangement_vertices(&bundle_arrangement(30).unwrap()).len(),
            300
        );
        for n in 6..=40 {
            let v = arrangement_vertices(&bundle_arrangement(n).unwrap()).len();
            let [a, b, c] = family_sizes(n);
            assert_eq!(v, a * b + b * c + c * a);
            assert!(4 * v >= n * n, "n = {n}");
            assert!(is_generic(
                &bundle_arrangement(n).unwrap(),
                &Rational::new(1, 4)
            ));
        }
    }

    #[test]
    fn degenerate_arrangements() {
        assert_eq!(
            arrangement_vertices(&degenerate_arrangement(4).unwrap()).len(),
            3
        );
        assert_eq!(
            arrangement_vertices(&degenerate_arrangement(10).unwrap()).len(),
            22
        );
        let big = degenerate_arrangement(100).unwrap();
        assert_eq!(arrangement_vertices(&big).len(), 292);
        assert!(!is_generic(&big, &Rational::new(1, 10)));
    }

    #[test]
    fn transversal() {
        for n in 3..=20 {
            let v = arrangement_vertices(&parallels_with_transversal(n).unwrap());
            assert_eq!(v.len(), n - 1);
            assert_eq!(max_collinear(&v), n - 1);
        }
    }

    #[test]
    fn grid_like_sets() {
        let full = grid_like(64, &Rational::one(), Seed(3)).unwrap();
        assert_eq!(full, grid(8).sorted());
        assert_eq!(max_collinear(&full), 8);
        assert!(greedy_line_cover(&full).size <= 8);
        let half = grid_like(64, &Rational::new(1, 2), Seed(3)).unwrap();
        assert_eq!(half.len(), 32);
        assert!(greedy_line_cover(&half).size <= 16);
        assert!(grid_like(63, &Rational::one(), Seed(3)).is_err());
        assert!(grid_like(4, &Rational::new(1, 4), Seed(3)).is_err());
        assert!(grid_like(4, &Rational::zero(), Seed(3)).is_err());
    }

    #[test]
    fn random_point_sets() {
        let s = random_points(30, 8, Seed(5)).unwrap();
        assert_eq!(s.len(), 30);
        assert!(s.is_subset_of(&grid(8)));
        assert_eq!(s, random_points(30, 8, Seed(5)).unwrap());
        assert_eq!(s, s.sorted());
        assert!(random_points(10, 3, Seed(0)).is_err());
    }

    #[test]
    fn random_line_sets() {
        let two = random_lines(2, 1, Seed(0)).unwrap();
        assert_eq!(two.len(), 2);
        let a = random_lines(50, 100, Seed(11)).unwrap();
        assert_eq!(a, random_lines(50, 100, Seed(11)).unwrap());
        let v = arrangement_vertices(&a);
        assert!(max_collinear(&v) <= 49);
        // range 1: nine lines (1, b, c) and three lines (0, 1, c)
        let avail = distinct_lines_in_range(1, usize::MAX);
        assert_eq!(avail, 12);
        assert!(random_lines(avail, 1, Seed(1)).is_ok());
        assert!(matches!(
            random_lines(avail + 1, 1, Seed(1)),
            Err(GpssError::ExhaustedLineSpace { .. })
        ));
    }
}
