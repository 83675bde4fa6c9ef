//! Dispatch from an instance and an algorithm name to a solver.

use gpss_core::analysis::arrangement_vertices;
use gpss_core::io::Instance;
use gpss_core::solvers::{choose_k, DEFAULT_NODE_BUDGET, DEFAULT_TRIALS};
use gpss_core::{
    dense_lattice_gpss, exact_gpss, greedy_gpss, is_general_position, sample_delete_arrangement,
    sample_delete_gridlike, Algorithm, GpssError, PointSet, Rational, ScanOrder, Seed, SolveResult,
    Variant,
};

use crate::CliError;

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub seed: u64,
    pub trials: usize,
    pub alpha: Option<Rational>,
    /// Fixed `c'`; `None` starts at 1 and halves `k` adaptively.
    pub c_prime: Option<Rational>,
    pub genericity_c: Rational,
    pub node_budget: u64,
    pub order: ScanOrder,
    pub restrict: Option<PointSet>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            trials: DEFAULT_TRIALS,
            alpha: None,
            c_prime: None,
            genericity_c: Rational::new(1, 10),
            node_budget: DEFAULT_NODE_BUDGET,
            order: ScanOrder::Input,
            restrict: None,
        }
    }
}

/// The point set an algorithm selects from: the points themselves, or the
/// arrangement vertices of a line file.
pub fn ground_set(inst: &Instance) -> PointSet {
    match inst {
        Instance::Points(s) => s.clone(),
        Instance::Lines(l) => arrangement_vertices(l),
    }
}

/// Whether `alg` accepts this kind of instance. Exact and greedy run on the
/// vertices of a line file.
pub fn compatible(inst: &Instance, alg: Algorithm) -> bool {
    matches!(
        (inst, alg),
        (_, Algorithm::Exact | Algorithm::Greedy)
            | (
                Instance::Points(_),
                Algorithm::Dense | Algorithm::SampleGridlike
            )
            | (Instance::Lines(_), Algorithm::SampleArrangement)
    )
}

/// Runs `alg` and re-checks the output against `ground`, the set it must be
/// drawn from.
pub fn run(
    inst: &Instance,
    ground: &PointSet,
    alg: Algorithm,
    opts: &SolveOptions,
) -> Result<SolveResult, CliError> {
    if !compatible(inst, alg) {
        return Err(CliError::Solver(GpssError::InvalidParameter(format!(
            "{alg} cannot run on a {} file",
            inst.kind()
        ))));
    }
    let seed = Seed(opts.seed);
    let plan = |variant: Variant, n: usize, big_n: Option<usize>| {
        let c = opts.c_prime.clone().unwrap_or_else(Rational::one);
        Ok::<_, GpssError>(
            choose_k(variant, n, big_n, &c)?
                .with_trials(opts.trials)
                .with_seed(seed)
                .with_adaptive(opts.c_prime.is_none())
                .with_genericity_c(opts.genericity_c.clone()),
        )
    };
    let res = match (inst, alg) {
        (_, Algorithm::Exact) => exact_gpss(ground, opts.node_budget),
        (_, Algorithm::Greedy) => greedy_gpss(ground, opts.order, seed),
        (Instance::Points(s), Algorithm::Dense) => {
            let alpha = opts
                .alpha
                .as_ref()
                .ok_or_else(|| CliError::Usage("dense needs --alpha".into()))?;
            dense_lattice_gpss(s, alpha)?
        }
        (Instance::Points(s), Algorithm::SampleGridlike) => {
            sample_delete_gridlike(s, &plan(Variant::GridLike, s.len(), None)?)?
        }
        (Instance::Lines(l), Algorithm::SampleArrangement) => {
            let population = opts.restrict.as_ref().map_or(ground.len(), PointSet::len);
            let p = plan(Variant::Arrangement, l.len(), Some(population))?;
            sample_delete_arrangement(l, opts.restrict.as_ref(), &p)?
        }
        _ => unreachable!("checked by compatible"),
    };
    if !res.chosen.is_subset_of(ground)
        || !is_general_position(&res.chosen)
        || res.size() > res.opt_upper_bound
    {
        return Err(CliError::Internal(format!(
            "{alg} produced an output that fails re-verification"
        )));
    }
    Ok(res)
}
