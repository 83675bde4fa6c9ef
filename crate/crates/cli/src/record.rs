use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use gpss_core::{SolveResult, TrialStats};
use serde::{Deserialize, Serialize};

/// One solver run, written as a single JSON object per line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    /// Generator family, or `file` for instances read from disk.
    pub family: String,
    /// Instance size: points, or lines for arrangements.
    pub n: usize,
    pub alg: String,
    pub size: usize,
    pub bound: usize,
    pub bound_source: String,
    /// `size / bound` as an exact fraction.
    pub ratio_lb: String,
    /// The optimum, when an exact search finished.
    pub opt: Option<usize>,
    pub seed: Option<u64>,
    /// Wall-clock milliseconds; the only nondeterministic field.
    pub ms: f64,
    pub params: BTreeMap<String, String>,
    pub stats: BTreeMap<String, f64>,
    pub trials: Vec<TrialStats>,
    pub warnings: Vec<String>,
}

impl ExperimentRecord {
    pub fn new(
        family: &str,
        params: BTreeMap<String, String>,
        n: usize,
        res: &SolveResult,
        ms: f64,
    ) -> Self {
        ExperimentRecord {
            family: family.to_string(),
            n,
            alg: res.algorithm.to_string(),
            size: res.size(),
            bound: res.opt_upper_bound,
            bound_source: res.bound_source.to_string(),
            ratio_lb: res.ratio_lower_bound.to_string(),
            opt: (res.bound_source == gpss_core::BoundSource::Exact).then_some(res.size()),
            seed: res.seed.map(|s| s.0),
            ms,
            params,
            stats: res.stats.clone(),
            trials: res.trials.clone(),
            warnings: res.warnings.clone(),
        }
    }

    /// `size / opt`, when the optimum is known.
    pub fn true_ratio(&self) -> Option<f64> {
        self.opt.map(|o| {
            if o == 0 {
                1.0
            } else {
                self.size as f64 / o as f64
            }
        })
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

/// Appends one line per record.
pub fn append(path: &Path, records: &[ExperimentRecord]) -> std::io::Result<()> {
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        writeln!(f, "{}", r.to_line())?;
    }
    Ok(())
}
