//! General position subset selection algorithms.
//!
//! Every solver returns a [`SolveResult`] carrying the chosen subset together
//! with a certified upper bound on the optimum, so `|chosen| / bound` is a
//! sound lower bound on the approximation ratio actually achieved.

mod deletion;
mod dense;
mod exact;
mod greedy;
mod sampling;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::analysis::greedy_line_cover;
use crate::generators::Seed;
use crate::geometry::{is_general_position, PointSet};
use crate::rational::Rational;

pub use deletion::make_general_position;
pub use dense::{dense_lattice_gpss, erdos_buckets, ErdosBuckets};
pub use exact::{exact_gpss, DEFAULT_NODE_BUDGET};
pub use greedy::{greedy_gpss, ScanOrder};
pub use sampling::{
    choose_k, sample_delete_arrangement, sample_delete_gridlike, sample_trial, SamplingPlan,
    TrialOutcome, Variant, DEFAULT_TRIALS, MAX_HALVINGS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    Greedy,
    Dense,
    SampleArrangement,
    SampleGridlike,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Exact,
        Algorithm::Greedy,
        Algorithm::Dense,
        Algorithm::SampleArrangement,
        Algorithm::SampleGridlike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Greedy => "greedy",
            Algorithm::Dense => "dense",
            Algorithm::SampleArrangement => "sample-arrangement",
            Algorithm::SampleGridlike => "sample-gridlike",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Where an upper bound on the optimum comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// At most two points per row of the `m x m` grid: `2m`.
    RowBound,
    /// At most two vertices per arrangement line: `2n`.
    LineBound,
    /// At most two points per line of a cover: `2 * cover size`.
    CoverBound,
    /// The input size itself.
    SizeBound,
    /// The optimum, proven by exhaustive search.
    Exact,
}

impl BoundSource {
    pub fn name(self) -> &'static str {
        match self {
            BoundSource::RowBound => "row-bound",
            BoundSource::LineBound => "line-bound",
            BoundSource::CoverBound => "cover-bound",
            BoundSource::SizeBound => "size-bound",
            BoundSource::Exact => "exact",
        }
    }
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Counters for one sample-and-delete trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    /// Index of the halving step that ran this trial (0 for the initial `k`).
    pub attempt: usize,
    pub trial: usize,
    pub k: f64,
    pub p: f64,
    pub sample_size: usize,
    pub triples: u128,
    pub deletions: usize,
    pub survivors: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub chosen: PointSet,
    pub algorithm: Algorithm,
    pub opt_upper_bound: usize,
    pub bound_source: BoundSource,
    /// `|chosen| / opt_upper_bound` (1 when the bound is 0).
    pub ratio_lower_bound: Rational,
    pub seed: Option<Seed>,
    pub stats: BTreeMap<String, f64>,
    pub trials: Vec<TrialStats>,
    pub warnings: Vec<String>,
}

impl SolveResult {
    pub(crate) fn new(
        chosen: PointSet,
        algorithm: Algorithm,
        bound: usize,
        source: BoundSource,
    ) -> Self {
        assert!(
            chosen.len() <= bound || (bound == 0 && chosen.is_empty()),
            "{algorithm}: chosen {} exceeds certified bound {bound}",
            chosen.len()
        );
        let ratio_lower_bound = if bound == 0 {
            Rational::one()
        } else {
            Rational::new(chosen.len() as i64, bound as i64)
        };
        SolveResult {
            chosen,
            algorithm,
            opt_upper_bound: bound,
            bound_source: source,
            ratio_lower_bound,
            seed: None,
            stats: BTreeMap::new(),
            trials: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub(crate) fn stat(&mut self, name: &str, value: impl Into<f64>) {
        self.stats.insert(name.to_string(), value.into());
    }

    pub fn size(&self) -> usize {
        self.chosen.len()
    }

    /// The chosen set is a general-position subset of `input` within its bound.
    pub fn verify(&self, input: &PointSet) -> bool {
        self.chosen.is_subset_of(input)
            && is_general_position(&self.chosen)
            && self.chosen.len() <= self.opt_upper_bound
    }
}

/// The better of `2 * greedy cover size` and `n`.
pub(crate) fn structural_bound(s: &PointSet) -> (usize, BoundSource) {
    let cover = 2 * greedy_line_cover(s).size;
    if cover <= s.len() {
        (cover, BoundSource::CoverBound)
    } else {
        (s.len(), BoundSource::SizeBound)
    }
}
