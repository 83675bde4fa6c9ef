use std::collections::BTreeMap;

use super::{Algorithm, BoundSource, SolveResult};
use crate::analysis::{density_bound, density_report};
use crate::error::{GpssError, Result};
use crate::geometry::PointSet;
use crate::primes::next_prime_at_least;
use crate::rational::{ceil_sqrt, Rational};

/// A lattice point set split into the classes `V_i = {(x, (x^2 mod p) + i)}`
/// of the grid that contains it after translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErdosBuckets {
    /// Side of the smallest grid `G_m` holding the translated set.
    pub side: u64,
    pub prime: u64,
    /// Coordinate-wise minimum subtracted from every point.
    pub offset: (i64, i64),
    /// Class index to input positions, ascending.
    pub buckets: BTreeMap<i64, Vec<usize>>,
}

impl ErdosBuckets {
    /// The largest class, ties going to the smallest index.
    pub fn largest(&self) -> Option<(i64, &[usize])> {
        self.buckets
            .iter()
            .fold(
                None,
                |best: Option<(i64, &Vec<usize>)>, (&i, b)| match best {
                    Some((_, bb)) if bb.len() >= b.len() => best,
                    _ => Some((i, b)),
                },
            )
            .map(|(i, b)| (i, b.as_slice()))
    }

    /// `ceil(n / (m + p - 1))`: the pigeonhole floor on the largest class.
    pub fn guarantee(&self, n: usize) -> usize {
        let classes = (self.side + self.prime - 1) as usize;
        n.div_ceil(classes)
    }
}

/// Translates `s` into `G_m`, picks the smallest prime `p >= m`, and files
/// each point under `i = y - (x^2 mod p)`.
pub fn erdos_buckets(s: &PointSet) -> Result<ErdosBuckets> {
    let coords = s
        .iter()
        .map(|p| {
            p.as_lattice()
                .ok_or_else(|| GpssError::NotLattice(p.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let min_x = coords.iter().map(|c| c.0).min().unwrap_or(0);
    let min_y = coords.iter().map(|c| c.1).min().unwrap_or(0);
    let extent = coords
        .iter()
        .map(|&(x, y)| (x as i128 - min_x as i128).max(y as i128 - min_y as i128))
        .max()
        .unwrap_or(0);
    let side = u64::try_from(extent + 1)
        .map_err(|_| GpssError::InvalidParameter("bounding box too large".into()))?;
    let prime = next_prime_at_least(side.max(2))?;
    let mut buckets: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, &(x, y)) in coords.iter().enumerate() {
        let tx = (x as i128 - min_x as i128) as u128;
        let ty = (y as i128 - min_y as i128) as i64;
        let class = ty - ((tx * tx) % prime as u128) as i64;
        buckets.entry(class).or_default().push(idx);
    }
    Ok(ErdosBuckets {
        side,
        prime,
        offset: (min_x, min_y),
        buckets,
    })
}

/// Constant-factor selection for dense lattice sets: the largest Erdős class.
///
/// Each class is in general position, and the `m + p - 1` classes cover the
/// grid, so the answer has at least `ceil(n / (m + p - 1))` points. No row of
/// `G_m` holds more than two points of any solution, which certifies `2m`.
pub fn dense_lattice_gpss(s: &PointSet, alpha: &Rational) -> Result<SolveResult> {
    if let Some(p) = s.iter().find(|p| !p.is_lattice()) {
        return Err(GpssError::NotLattice(p.to_string()));
    }
    if let Some(report) = density_report(s) {
        let bound = density_bound(s.len(), alpha);
        if report.spread_sq > bound {
            return Err(GpssError::NotDense {
                alpha: alpha.to_string(),
                spread_sq: report.spread_sq.to_string(),
                bound: bound.to_string(),
            });
        }
    }
    let b = erdos_buckets(s)?;
    let (class, members) = b.largest().unwrap_or((0, &[]));
    let chosen = PointSet::from_distinct(members.iter().map(|&i| s.points()[i].clone()).collect());
    let side = b.side as usize;
    let mut res = SolveResult::new(chosen, Algorithm::Dense, 2 * side, BoundSource::RowBound);
    let density_side = ceil_sqrt(&crate::analysis::density_bound(s.len(), alpha));
    res.stat("m", side as f64);
    res.stat("p", b.prime as f64);
    res.stat("classes", (b.side + b.prime - 1) as f64);
    res.stat("nonempty_classes", b.buckets.len() as f64);
    res.stat("class_index", class as f64);
    res.stat("guarantee", b.guarantee(s.len()) as f64);
    res.stat(
        "alpha_sqrt_n_ceil",
        num_traits::ToPrimitive::to_f64(&density_side).unwrap_or(f64::NAN),
    );
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{dense_lattice, erdos_class, grid, Seed};
    use crate::geometry::{is_general_position, Point};

    #[test]
    fn single_point() {
        let s = PointSet::from_lattice([(4, -2)]).unwrap();
        let r = dense_lattice_gpss(&s, &Rational::one()).unwrap();
        assert_eq!(r.chosen, s);
        assert_eq!(r.opt_upper_bound, 2);
    }

    #[test]
    fn g8_subset_parameters() {
        let two = Rational::from_integer(2);
        // a 2-dense 25-point subset of G_8 touching both far sides
        let mut pts: Vec<(i64, i64)> = (0..8)
            .flat_map(|y| (0..8).map(move |x| (x, y)))
            .step_by(2)
            .take(23)
            .collect();
        pts.extend([(7, 7), (1, 0)]);
        let s = PointSet::from_lattice(pts).unwrap();
        assert_eq!(s.len(), 25);
        let b = erdos_buckets(&s).unwrap();
        assert_eq!((b.side, b.prime), (8, 11));
        assert_eq!(b.guarantee(25), 2);
        let r = dense_lattice_gpss(&s, &two).unwrap();
        assert!(r.size() >= 2);
        assert_eq!(r.opt_upper_bound, 16);
        assert!(r.verify(&s));
    }

    #[test]
    fn buckets_match_classes() {
        let g = grid(8);
        let b = erdos_buckets(&g).unwrap();
        assert_eq!(b.buckets.values().map(Vec::len).sum::<usize>(), 64);
        for (&i, members) in &b.buckets {
            let class = erdos_class(8, 11, i).unwrap();
            for &m in members {
                assert!(class.points().contains(&g.points()[m]));
            }
            let sub =
                PointSet::from_distinct(members.iter().map(|&m| g.points()[m].clone()).collect());
            assert!(is_general_position(&sub));
        }
    }

    #[test]
    fn translation_is_undone() {
        let s = PointSet::from_lattice((0..6).flat_map(|y| (0..6).map(move |x| (x + 100, y - 50))))
            .unwrap();
        let r = dense_lattice_gpss(&s, &Rational::new(3, 2)).unwrap();
        assert!(r.verify(&s));
        assert!(r.chosen.iter().all(|p| p.x >= Rational::from_integer(100)));
    }

    #[test]
    fn rejects_bad_input() {
        let frac = PointSet::new(vec![
            Point::new(Rational::new(1, 2), Rational::zero()),
            Point::int(1, 1),
        ])
        .unwrap();
        assert!(matches!(
            dense_lattice_gpss(&frac, &Rational::from_integer(5)),
            Err(GpssError::NotLattice(_))
        ));
        let sparse = PointSet::from_lattice([(0, 0), (1, 0), (100, 0)]).unwrap();
        assert!(matches!(
            dense_lattice_gpss(&sparse, &Rational::from_integer(2)),
            Err(GpssError::NotDense { .. })
        ));
    }

    #[test]
    fn dense_instances_meet_pigeonhole() {
        for seed in 0..20 {
            let alpha = Rational::from_integer(2);
            let s = dense_lattice(40, &alpha, Seed(seed)).unwrap();
            let r = dense_lattice_gpss(&s, &alpha).unwrap();
            assert!(r.verify(&s));
            assert!(r.size() as f64 >= r.stats["guarantee"]);
        }
    }
}
