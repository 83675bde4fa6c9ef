use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::deletion::delete_with_profile;
use super::{Algorithm, BoundSource, SolveResult, TrialStats};
use crate::analysis::{
    arrangement_vertices, greedy_line_cover, line_profile_of, max_collinear,
    vertex_count_is_generic,
};
use crate::error::{GpssError, Result};
use crate::generators::Seed;
use crate::geometry::{LineSet, Point, PointSet};
use crate::rational::Rational;

pub const DEFAULT_TRIALS: usize = 50;
/// How often the adaptive schedule may halve `k`.
pub const MAX_HALVINGS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Sample the vertices of a line arrangement.
    Arrangement,
    /// Sample a point set with few points per line and a small line cover.
    GridLike,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub variant: Variant,
    /// Expected sample size.
    pub k: f64,
    /// Inclusion probability `k / population`.
    pub p: f64,
    pub population: usize,
    pub c_prime: Rational,
    pub trials: usize,
    /// Halve `k` while the mean deletion count exceeds `k / 2`.
    pub adaptive: bool,
    pub seed: Seed,
    /// Arrangements with fewer than `c n^2` vertices draw a warning.
    pub genericity_c: Rational,
}

impl SamplingPlan {
    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: Seed) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_adaptive(mut self, adaptive: bool) -> Self {
        self.adaptive = adaptive;
        self
    }

    pub fn with_genericity_c(mut self, c: Rational) -> Self {
        self.genericity_c = c;
        self
    }
}

/// Sample size for `n` lines (arrangement, `N` vertices) or `n` points
/// (grid-like): `c' n / sqrt(log n)` or `c' sqrt(n / log n)`, logs base 2.
///
/// `k` is clamped to at most `population - 1/2`, so `p < 1`.
pub fn choose_k(
    variant: Variant,
    n: usize,
    big_n: Option<usize>,
    c_prime: &Rational,
) -> Result<SamplingPlan> {
    if n < 2 {
        return Err(GpssError::InvalidParameter(format!(
            "sampling needs n >= 2, got {n}"
        )));
    }
    if !c_prime.is_positive() {
        return Err(GpssError::InvalidParameter(format!(
            "c' must be positive, got {c_prime}"
        )));
    }
    let nf = n as f64;
    let c = c_prime.to_f64();
    let (raw, population) = match variant {
        Variant::Arrangement => {
            let big_n = big_n
                .filter(|&v| v > 0)
                .ok_or(GpssError::DegenerateArrangement)?;
            (c * nf / nf.log2().sqrt(), big_n)
        }
        Variant::GridLike => (c * (nf / nf.log2()).sqrt(), n),
    };
    let k = raw.min(population as f64 - 0.5);
    Ok(SamplingPlan {
        variant,
        k,
        p: k / population as f64,
        population,
        c_prime: c_prime.clone(),
        trials: DEFAULT_TRIALS,
        adaptive: false,
        seed: Seed(0),
        genericity_c: Rational::new(1, 10),
    })
}

/// One sample-and-delete trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub stats: TrialStats,
    pub sample: PointSet,
    pub survivors: PointSet,
}

/// Replays trial `trial` of halving step `attempt`: keeps each point of
/// `population` with probability `p`, then deletes down to general position.
/// `k` is recorded only.
pub fn sample_trial(
    population: &[Point],
    p: f64,
    k: f64,
    seed: Seed,
    attempt: usize,
    trial: usize,
) -> TrialOutcome {
    let mut rng = seed.stream(((attempt as u64) << 32) | trial as u64);
    let sample: Vec<Point> = population
        .iter()
        .filter(|_| rng.random_bool(p))
        .cloned()
        .collect();
    let profile = line_profile_of(&sample);
    let triples = profile.triple_sum();
    let (survivors, deletions) = delete_with_profile(&sample, &profile);
    TrialOutcome {
        stats: TrialStats {
            attempt,
            trial,
            k,
            p,
            sample_size: sample.len(),
            triples,
            deletions,
            survivors: survivors.len(),
        },
        sample: PointSet::from_distinct(sample),
        survivors,
    }
}

struct Sampled {
    best: PointSet,
    best_at: (usize, usize),
    trials: Vec<TrialStats>,
    /// `(k, p)` of the last attempt.
    last: (f64, f64),
}

/// Best of `plan.trials` sample-and-delete runs, with optional halving of `k`.
fn sample_and_delete(population: &[Point], plan: &SamplingPlan) -> Result<Sampled> {
    if !(plan.p > 0.0 && plan.p < 1.0) {
        return Err(GpssError::BadProbability(plan.p));
    }
    let (mut k, mut p) = (plan.k, plan.p);
    let mut all = Vec::new();
    let mut best: Option<(PointSet, (usize, usize))> = None;
    for attempt in 0..=MAX_HALVINGS {
        let outcomes: Vec<TrialOutcome> = (0..plan.trials)
            .into_par_iter()
            .map(|t| sample_trial(population, p, k, plan.seed, attempt, t))
            .collect();
        let mean_deletions = outcomes
            .iter()
            .map(|o| o.stats.deletions as f64)
            .sum::<f64>()
            / plan.trials.max(1) as f64;
        for o in outcomes {
            let better = best
                .as_ref()
                .is_none_or(|(b, _)| o.survivors.len() > b.len());
            all.push(o.stats.clone());
            if better {
                best = Some((o.survivors, (attempt, o.stats.trial)));
            }
        }
        if !plan.adaptive || mean_deletions <= k / 2.0 || attempt == MAX_HALVINGS {
            break;
        }
        k /= 2.0;
        p /= 2.0;
    }
    let (best, best_at) = best.unwrap_or((PointSet::from_distinct(Vec::new()), (0, 0)));
    Ok(Sampled {
        best,
        best_at,
        trials: all,
        last: (k, p),
    })
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    if count == 0 {
        0.0
    } else {
        sum / count as f64
    }
}

fn finish(
    sampled: Sampled,
    algorithm: Algorithm,
    bound: usize,
    source: BoundSource,
    plan: &SamplingPlan,
) -> SolveResult {
    let Sampled {
        best,
        best_at,
        trials,
        last,
    } = sampled;
    let mut res = SolveResult::new(best, algorithm, bound, source);
    res.seed = Some(plan.seed);
    let final_attempt = trials.last().map_or(0, |t| t.attempt);
    let last_trials = || trials.iter().filter(move |t| t.attempt == final_attempt);
    res.stat("k_initial", plan.k);
    res.stat("k", last.0);
    res.stat("p", last.1);
    res.stat("half_k", last.0 / 2.0);
    res.stat("trials", plan.trials as f64);
    res.stat("attempts", (final_attempt + 1) as f64);
    res.stat(
        "mean_sample_size",
        mean(last_trials().map(|t| t.sample_size as f64)),
    );
    res.stat(
        "mean_triples_in_sample",
        mean(last_trials().map(|t| t.triples as f64)),
    );
    res.stat(
        "mean_deletions",
        mean(last_trials().map(|t| t.deletions as f64)),
    );
    res.stat("best_attempt", best_at.0 as f64);
    res.stat("best_trial", best_at.1 as f64);
    res.trials = trials;
    res
}

/// Sample-and-delete over the vertices of an arrangement, or over `restrict`,
/// a subset of them. Any solution holds at most two vertices per line, which
/// certifies `2n`.
pub fn sample_delete_arrangement(
    l: &LineSet,
    restrict: Option<&PointSet>,
    plan: &SamplingPlan,
) -> Result<SolveResult> {
    if l.len() < 2 {
        return Err(GpssError::DegenerateArrangement);
    }
    let vertices = arrangement_vertices(l);
    let population = match restrict {
        Some(r) => {
            let known: HashSet<&Point> = vertices.iter().collect();
            if let Some(p) = r.iter().find(|p| !known.contains(p)) {
                return Err(GpssError::NotAVertex(p.to_string()));
            }
            r.points()
        }
        None => vertices.points(),
    };
    if population.is_empty() {
        return Err(GpssError::DegenerateArrangement);
    }
    let n = l.len();
    let mut warnings = Vec::new();
    if !vertex_count_is_generic(vertices.len(), n, &plan.genericity_c) {
        warnings.push(format!(
            "arrangement is not generic: {} vertices < {} n^2",
            vertices.len(),
            plan.genericity_c
        ));
    }
    let sampled = sample_and_delete(population, plan)?;
    let mut res = finish(
        sampled,
        Algorithm::SampleArrangement,
        2 * n,
        BoundSource::LineBound,
        plan,
    );
    res.warnings = warnings;
    res.stat("n_lines", n as f64);
    res.stat("vertices", vertices.len() as f64);
    res.stat("population", population.len() as f64);
    res.stat("measured_c", vertices.len() as f64 / (n * n) as f64);
    Ok(res)
}

/// Sample-and-delete over a point set with `O(sqrt n)` points per line and a
/// line cover of size `O(sqrt n)`. A greedy cover of size `κ̂` certifies `2κ̂`.
pub fn sample_delete_gridlike(s: &PointSet, plan: &SamplingPlan) -> Result<SolveResult> {
    let n = s.len();
    let ell = max_collinear(s);
    let cover = greedy_line_cover(s);
    let regime = 2.0 * (n as f64).sqrt();
    let mut warnings = Vec::new();
    if ell as f64 > regime {
        warnings.push(format!(
            "max collinear {ell} exceeds 2 sqrt(n) = {regime:.2}"
        ));
    }
    if cover.size as f64 > regime {
        warnings.push(format!(
            "line cover size {} exceeds 2 sqrt(n) = {regime:.2}",
            cover.size
        ));
    }
    let sampled = sample_and_delete(s.points(), plan)?;
    let mut res = finish(
        sampled,
        Algorithm::SampleGridlike,
        2 * cover.size,
        BoundSource::CoverBound,
        plan,
    );
    res.warnings = warnings;
    res.stat("n", n as f64);
    res.stat("max_collinear", ell as f64);
    res.stat("cover_size", cover.size as f64);
    Ok(res)
}
