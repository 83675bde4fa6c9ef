//! `bench`: a TOML sweep over families, sizes, algorithms and seeds, written
//! as a CSV table of per-run rows followed by aggregate rows.

use std::collections::BTreeMap;
use std::time::Instant;

use gpss_core::{Algorithm, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::family::{generate, Family, Params};
use crate::record::ExperimentRecord;
use crate::solve::{ground_set, run, SolveOptions};
use crate::CliError;

fn default_seeds() -> Vec<u64> {
    vec![0]
}

fn default_trials() -> usize {
    gpss_core::solvers::DEFAULT_TRIALS
}

fn default_budget() -> u64 {
    gpss_core::solvers::DEFAULT_NODE_BUDGET
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_budget")]
    pub node_budget: u64,
    pub genericity_c: Option<Rational>,
    #[serde(default)]
    pub group: Vec<Group>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Group {
    pub family: Family,
    /// Values of the family's size parameter (`m` for grid and erdos, else `n`).
    pub sizes: Vec<u64>,
    pub algorithms: Vec<String>,
    pub alpha: Option<Rational>,
    pub keep: Option<Rational>,
    pub range: Option<i64>,
    pub side: Option<u64>,
    pub c_prime: Option<Rational>,
    /// Also run the exact search and fill `opt` on every row.
    #[serde(default)]
    pub exact_opt: bool,
}

pub fn parse_spec(text: &str) -> Result<SweepSpec, CliError> {
    let spec: SweepSpec = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    for g in &spec.group {
        for a in &g.algorithms {
            a.parse::<Algorithm>().map_err(CliError::Parse)?;
        }
    }
    Ok(spec)
}

/// One CSV line: a run (`kind = row`) or a summary over seeds (`kind = aggregate`).
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TableRow {
    pub kind: &'static str,
    pub group: usize,
    pub family: String,
    pub param: u64,
    pub n: Option<usize>,
    pub alg: String,
    pub seed: Option<u64>,
    pub size: Option<usize>,
    pub bound: Option<usize>,
    pub bound_source: Option<String>,
    pub ratio_lb: Option<String>,
    pub opt: Option<usize>,
    pub ms: Option<f64>,
    pub error: Option<String>,
    pub runs: Option<usize>,
    pub median_size: Option<f64>,
    pub mean_size: Option<f64>,
    pub median_ratio_lb: Option<f64>,
    pub mean_true_ratio: Option<f64>,
    pub fit: Option<f64>,
    pub fit_formula: Option<&'static str>,
}

/// Normalized size whose stability across `n` reflects the expected growth.
pub fn fit(alg: Algorithm, n: usize, size: f64) -> (Option<f64>, &'static str) {
    let nf = n as f64;
    let (v, formula) = match alg {
        Algorithm::SampleArrangement => (size * nf.log2().sqrt() / nf, "size*sqrt(log2 n)/n"),
        Algorithm::SampleGridlike => (size / (nf / nf.log2()).sqrt(), "size/sqrt(n/log2 n)"),
        _ => (size / nf.sqrt(), "size/sqrt(n)"),
    };
    (v.is_finite().then_some(v), formula)
}

#[derive(Clone, Copy)]
struct Job {
    group: usize,
    param: u64,
    seed: u64,
}

struct Run {
    job: Job,
    alg: String,
    outcome: Result<ExperimentRecord, String>,
}

fn params_for(g: &Group, param: u64, seed: u64) -> Params {
    let mut p = Params {
        alpha: g.alpha.clone(),
        keep: g.keep.clone(),
        range: g.range,
        side: g.side,
        seed,
        ..Params::default()
    };
    match g.family.size_param() {
        "m" => p.m = Some(param),
        _ => p.n = Some(param as usize),
    }
    p
}

fn run_job(spec: &SweepSpec, job: Job) -> Vec<Run> {
    let g = &spec.group[job.group];
    let params = params_for(g, job.param, job.seed);
    let inst = match generate(g.family, &params) {
        Ok(i) => i,
        Err(e) => {
            return g
                .algorithms
                .iter()
                .map(|a| Run {
                    job,
                    alg: a.clone(),
                    outcome: Err(e.to_string()),
                })
                .collect()
        }
    };
    let ground = ground_set(&inst);
    let opts = SolveOptions {
        seed: job.seed,
        trials: spec.trials,
        alpha: g.alpha.clone(),
        c_prime: g.c_prime.clone(),
        genericity_c: spec
            .genericity_c
            .clone()
            .unwrap_or_else(|| Rational::new(1, 10)),
        node_budget: spec.node_budget,
        ..SolveOptions::default()
    };
    let opt = if g.exact_opt {
        run(&inst, &ground, Algorithm::Exact, &opts)
            .ok()
            .filter(|r| r.bound_source == gpss_core::BoundSource::Exact)
            .map(|r| r.size())
    } else {
        None
    };
    let described = params.describe(g.family);
    let mut out = Vec::new();
    for name in &g.algorithms {
        let alg: Algorithm = name.parse().expect("validated in parse_spec");
        let start = Instant::now();
        let outcome = run(&inst, &ground, alg, &opts).map(|res| {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let mut rec =
                ExperimentRecord::new(g.family.name(), described.clone(), inst.len(), &res, ms);
            rec.opt = rec.opt.or(opt);
            rec
        });
        out.push(Run {
            job,
            alg: name.clone(),
            outcome: outcome.map_err(|e| e.to_string()),
        });
    }
    out
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

fn mean(v: &[f64]) -> Option<f64> {
    (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
}

/// Runs every (group, size, seed) instance in parallel; rows come back in
/// sweep order, then one aggregate row per (group, size, algorithm).
pub fn run_sweep(spec: &SweepSpec) -> (Vec<TableRow>, Vec<ExperimentRecord>) {
    let mut jobs = Vec::new();
    for (gi, g) in spec.group.iter().enumerate() {
        for &param in &g.sizes {
            for &seed in &spec.seeds {
                jobs.push(Job {
                    group: gi,
                    param,
                    seed,
                });
            }
        }
    }
    let runs: Vec<Run> = jobs
        .into_par_iter()
        .flat_map_iter(|j| run_job(spec, j))
        .collect();
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut buckets: BTreeMap<(usize, u64, String), Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in &runs {
        let g = &spec.group[r.job.group];
        let mut row = TableRow {
            kind: "row",
            group: r.job.group,
            family: g.family.to_string(),
            param: r.job.param,
            alg: r.alg.clone(),
            seed: Some(r.job.seed),
            ..TableRow::default()
        };
        match &r.outcome {
            Ok(rec) => {
                row.n = Some(rec.n);
                row.size = Some(rec.size);
                row.bound = Some(rec.bound);
                row.bound_source = Some(rec.bound_source.clone());
                row.ratio_lb = Some(rec.ratio_lb.clone());
                row.opt = rec.opt;
                row.ms = Some(rec.ms);
                buckets
                    .entry((r.job.group, r.job.param, r.alg.clone()))
                    .or_default()
                    .push(rec);
                records.push(rec.clone());
            }
            Err(e) => row.error = Some(e.clone()),
        }
        rows.push(row);
    }
    for g in 0..spec.group.len() {
        for &param in &spec.group[g].sizes {
            for alg in &spec.group[g].algorithms {
                let recs = buckets
                    .get(&(g, param, alg.clone()))
                    .cloned()
                    .unwrap_or_default();
                let sizes: Vec<f64> = recs.iter().map(|r| r.size as f64).collect();
                let ratios: Vec<f64> = recs
                    .iter()
                    .map(|r| {
                        r.ratio_lb
                            .parse::<Rational>()
                            .map_or(f64::NAN, |q| q.to_f64())
                    })
                    .collect();
                let trues: Vec<f64> = recs.iter().filter_map(|r| r.true_ratio()).collect();
                let n = recs.first().map(|r| r.n);
                let median_size = median(sizes.clone());
                let (fit_value, formula) = match (n, median_size) {
                    (Some(n), Some(m)) => fit(alg.parse().expect("validated"), n, m),
                    _ => (None, fit(alg.parse().expect("validated"), 1, 0.0).1),
                };
                rows.push(TableRow {
                    kind: "aggregate",
                    group: g,
                    family: spec.group[g].family.to_string(),
                    param,
                    n,
                    alg: alg.clone(),
                    runs: Some(recs.len()),
                    median_size,
                    mean_size: mean(&sizes),
                    median_ratio_lb: median(ratios),
                    mean_true_ratio: mean(&trues),
                    fit: fit_value,
                    fit_formula: Some(formula),
                    ..TableRow::default()
                });
            }
        }
    }
    (rows, records)
}

pub fn write_csv<W: std::io::Write>(rows: &[TableRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        // serialize() writes the header only alongside the first record
        w.write_record(HEADER)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}

pub const HEADER: [&str; 21] = [
    "kind",
    "group",
    "family",
    "param",
    "n",
    "alg",
    "seed",
    "size",
    "bound",
    "bound_source",
    "ratio_lb",
    "opt",
    "ms",
    "error",
    "runs",
    "median_size",
    "mean_size",
    "median_ratio_lb",
    "mean_true_ratio",
    "fit",
    "fit_formula",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_a_bare_header() {
        let spec = parse_spec("").unwrap();
        let (rows, records) = run_sweep(&spec);
        assert!(rows.is_empty() && records.is_empty());
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), HEADER.join(",") + "\n");
    }

    #[test]
    fn header_matches_rows() {
        let spec = parse_spec(
            r#"
            seeds = [1, 2]
            [[group]]
            family = "grid"
            sizes = [3, 4]
            algorithms = ["exact", "dense"]
            alpha = "2"
            "#,
        )
        .unwrap();
        let (rows, records) = run_sweep(&spec);
        assert_eq!(rows.len(), 8 + 4);
        assert_eq!(records.len(), 8);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), HEADER.join(","));
        let exact4 = rows
            .iter()
            .find(|r| r.kind == "aggregate" && r.param == 4 && r.alg == "exact")
            .unwrap();
        assert_eq!(exact4.median_size, Some(8.0));
        assert_eq!(exact4.mean_true_ratio, Some(1.0));
    }

    #[test]
    fn failures_stay_in_their_row() {
        let spec = parse_spec(
            r#"
            [[group]]
            family = "grid"
            sizes = [4]
            algorithms = ["dense", "sample-arrangement"]
            "#,
        )
        .unwrap();
        let (rows, _) = run_sweep(&spec);
        assert!(rows[0].error.as_deref().unwrap().contains("--alpha"));
        assert!(rows[1].error.as_deref().unwrap().contains("cannot run"));
        assert_eq!(rows[2].runs, Some(0));
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(parse_spec(
            "[[group]]\nfamily = \"grid\"\nsizes = [3]\nalgorithms = [\"magic\"]\n"
        )
        .is_err());
        assert!(parse_spec("bogus = 1\n").is_err());
    }
}
