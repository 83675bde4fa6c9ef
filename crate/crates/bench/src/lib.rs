//! Fixed instances shared by the benchmarks.

use gpss_core::generators::{bundle_arrangement, dense_lattice, grid, grid_like, random_points};
use gpss_core::{LineSet, PointSet, Rational, Seed};

pub fn grid_points(m: u64) -> PointSet {
    grid(m)
}

pub fn bundles(n: usize) -> LineSet {
    bundle_arrangement(n).expect("n >= 2")
}

pub fn dense(n: usize) -> (PointSet, Rational) {
    let alpha = Rational::from_integer(2);
    let s = dense_lattice(n, &alpha, Seed(7)).expect("feasible density");
    (s, alpha)
}

pub fn gridlike(n: usize) -> PointSet {
    grid_like(n, &Rational::new(1, 2), Seed(7)).expect("feasible keep")
}

/// `n` points in a `side x side` box, small enough for the exact search.
pub fn small_random(n: usize, side: u64) -> PointSet {
    random_points(n, side, Seed(7)).expect("side^2 >= n")
}
