//! General position subset selection: given points in the plane, find a large
//! subset with no three on a line.
//!
//! Geometry is exact throughout. Coordinates are rationals and all predicates
//! reduce to integer determinants, so no tolerance is ever involved.

pub mod analysis;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod io;
pub mod primes;
pub mod rational;
pub mod solvers;

pub use analysis::{
    arrangement_vertices, collinear_triples, density_report, greedy_line_cover, is_alpha_dense,
    is_generic, line_profile, max_collinear, triple_bound_ratio, CoverCertificate, DensityReport,
    LineProfile,
};
pub use error::{GpssError, ParseError, Result};
pub use generators::Seed;
pub use geometry::{
    collinear, is_general_position, line_through, orientation, LineKey, LineSet, Point, PointSet,
};
pub use io::Instance;
pub use primes::{is_prime, next_prime_at_least};
pub use rational::{Coord, Rational};
pub use solvers::{
    choose_k, dense_lattice_gpss, exact_gpss, greedy_gpss, make_general_position,
    sample_delete_arrangement, sample_delete_gridlike, Algorithm, BoundSource, SamplingPlan,
    ScanOrder, SolveResult, TrialStats, Variant,
};
