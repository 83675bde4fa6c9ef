//! The `gpss` command-line tool: instance generation, analysis, solving,
//! comparison against the exact optimum, and sweeps.

pub mod family;
pub mod record;
pub mod solve;
pub mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gpss_core::analysis::{
    arrangement_vertices, collinear_triples, density_report, greedy_line_cover, is_alpha_dense,
    is_generic, max_collinear, triple_bound_ratio,
};
use gpss_core::io::{emit_instance, emit_points, parse_instance, parse_points, Instance};
use gpss_core::solvers::{DEFAULT_NODE_BUDGET, DEFAULT_TRIALS};
use gpss_core::{Algorithm, GpssError, Rational, ScanOrder};
use serde_json::json;
use thiserror::Error;

use crate::family::{generate, Family, Params};
use crate::record::ExperimentRecord;
use crate::solve::{compatible, ground_set, SolveOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Solver(#[from] GpssError),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// 0 success, 1 usage or I/O, 2 parse, 3 solver precondition, 4 an output
    /// that failed re-verification.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gpss", version, about = "General position subset selection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Report structural quantities of an instance.
    Analyze(AnalyzeArgs),
    /// Run one algorithm and emit the chosen subset and a record.
    Solve(SolveArgs),
    /// Run a TOML sweep and write a CSV table.
    Bench(BenchArgs),
    /// Run several algorithms on one instance against the exact optimum.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,
    #[arg(long)]
    pub alpha: Option<Rational>,
    #[arg(long)]
    pub keep: Option<Rational>,
    #[arg(long)]
    pub range: Option<i64>,
    #[arg(long)]
    pub side: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// Density parameter to test; repeatable.
    #[arg(long)]
    pub alpha: Vec<Rational>,
    #[arg(long, default_value = "1/10")]
    pub genericity_c: Rational,
}

#[derive(Debug, Args)]
pub struct AlgorithmArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long)]
    pub alpha: Option<Rational>,
    /// Fixed sampling constant; without it k starts at c' = 1 and halves adaptively.
    #[arg(long)]
    pub c_prime: Option<Rational>,
    #[arg(long, default_value = "1/10")]
    pub genericity_c: Rational,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    #[arg(long, value_enum, default_value = "input")]
    pub order: Order,
    /// Point file of arrangement vertices to sample from.
    #[arg(long)]
    pub restrict: Option<PathBuf>,
    /// Append the record(s) to this JSON-lines file.
    #[arg(long)]
    pub record: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum Order {
    Input,
    Shuffled,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub alg: Algorithm,
    #[command(flatten)]
    pub opts: AlgorithmArgs,
    /// Write the chosen subset here as a point file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub input: PathBuf,
    /// Comma-separated algorithms; all compatible ones when absent.
    #[arg(long, value_delimiter = ',')]
    pub algs: Vec<Algorithm>,
    #[command(flatten)]
    pub opts: AlgorithmArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub spec: PathBuf,
    /// CSV output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also append every run as a JSON-lines record.
    #[arg(long)]
    pub record: Option<PathBuf>,
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn gen(args: GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = Params {
        m: args.m,
        n: args.n,
        p: args.p,
        i: args.i,
        alpha: args.alpha,
        keep: args.keep,
        range: args.range,
        side: args.side,
        seed: args.seed,
    };
    let inst = generate(args.family, &params)?;
    let text = emit_instance(&inst);
    let summary = format!("{}: {} {}", args.family, inst.len(), inst.kind());
    match args.out {
        Some(path) => {
            write_text(&path, &text)?;
            writeln!(out, "{summary}").map_err(|e| CliError::Io(e.to_string()))
        }
        None => {
            eprintln!("{summary}");
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = read_instance(&args.input)?;
    let report = match &inst {
        Instance::Points(s) => {
            let ell = max_collinear(s);
            let t = collinear_triples(s);
            let density = density_report(s);
            let dense: serde_json::Map<String, serde_json::Value> = args
                .alpha
                .iter()
                .map(|a| (a.to_string(), json!(is_alpha_dense(s, a))))
                .collect();
            json!({
                "kind": "points",
                "n": s.len(),
                "max_collinear": ell,
                "triples": t.to_string(),
                "triple_bound_ratio": triple_bound_ratio(s.len(), ell, t),
                "spread_sq": density.as_ref().map(|d| d.spread_sq.to_string()),
                "min_sq": density.as_ref().map(|d| d.min_sq.to_string()),
                "max_sq": density.as_ref().map(|d| d.max_sq.to_string()),
                "alpha_dense": dense,
                "cover_size": greedy_line_cover(s).size,
            })
        }
        Instance::Lines(l) => {
            let v = arrangement_vertices(l);
            let ell = max_collinear(&v);
            json!({
                "kind": "lines",
                "n": l.len(),
                "vertices": v.len(),
                "vertex_max_collinear": ell,
                "vertex_triples": collinear_triples(&v).to_string(),
                "max_collinear_at_most_n_minus_1": ell < l.len().max(1),
                "genericity_c": args.genericity_c.to_string(),
                "generic": is_generic(l, &args.genericity_c),
                "measured_c": v.len() as f64 / (l.len() * l.len()).max(1) as f64,
            })
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("json values serialize");
    writeln!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))
}

fn solve_options(a: &AlgorithmArgs) -> Result<SolveOptions, CliError> {
    let restrict = match &a.restrict {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            Some(
                parse_points(&text)
                    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    Ok(SolveOptions {
        seed: a.seed,
        trials: a.trials,
        alpha: a.alpha.clone(),
        c_prime: a.c_prime.clone(),
        genericity_c: a.genericity_c.clone(),
        node_budget: a.node_budget,
        order: match a.order {
            Order::Input => ScanOrder::Input,
            Order::Shuffled => ScanOrder::Shuffled,
        },
        restrict,
    })
}

fn file_params(path: &Path) -> std::collections::BTreeMap<String, String> {
    let mut m = std::collections::BTreeMap::new();
    let name = path
        .file_name()
        .map_or_else(String::new, |f| f.to_string_lossy().into_owned());
    m.insert("file".to_string(), name);
    m
}

fn emit_records(
    records: &[ExperimentRecord],
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if let Some(p) = path {
        record::append(p, records).map_err(|e| io_err(p, e))?;
    }
    for r in records {
        writeln!(out, "{}", r.to_line()).map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

fn solve_cmd(args: SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = read_instance(&args.input)?;
    let opts = solve_options(&args.opts)?;
    let ground = ground_set(&inst);
    let start = Instant::now();
    let res = solve::run(&inst, &ground, args.alg, &opts)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    if let Some(path) = &args.out {
        write_text(path, &emit_points(&res.chosen))?;
    }
    let rec = ExperimentRecord::new("file", file_params(&args.input), inst.len(), &res, ms);
    emit_records(&[rec], args.opts.record.as_deref(), out)
}

fn compare(args: CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let inst = read_instance(&args.input)?;
    let opts = solve_options(&args.opts)?;
    let ground = ground_set(&inst);
    let algs: Vec<Algorithm> = if args.algs.is_empty() {
        Algorithm::ALL
            .into_iter()
            .filter(|&a| compatible(&inst, a))
            .filter(|&a| a != Algorithm::Dense || opts.alpha.is_some())
            .collect()
    } else {
        args.algs.clone()
    };
    let exact = solve::run(&inst, &ground, Algorithm::Exact, &opts)?;
    let opt = (exact.bound_source == gpss_core::BoundSource::Exact).then_some(exact.size());
    let mut records = Vec::new();
    for alg in algs {
        let start = Instant::now();
        let res = if alg == Algorithm::Exact {
            exact.clone()
        } else {
            solve::run(&inst, &ground, alg, &opts)?
        };
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let mut rec = ExperimentRecord::new("file", file_params(&args.input), inst.len(), &res, ms);
        rec.opt = opt;
        records.push(rec);
    }
    emit_records(&records, args.opts.record.as_deref(), out)
}

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let text = fs::read_to_string(&args.spec)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.spec.display())))?;
    let spec = sweep::parse_spec(&text)?;
    let (rows, records) = sweep::run_sweep(&spec);
    if let Some(p) = &args.record {
        record::append(p, &records).map_err(|e| io_err(p, e))?;
    }
    match &args.out {
        Some(path) => {
            let f = fs::File::create(path).map_err(|e| io_err(path, e))?;
            sweep::write_csv(&rows, f)
        }
        None => sweep::write_csv(&rows, out),
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => gen(a, out),
        Command::Analyze(a) => analyze(a, out),
        Command::Solve(a) => solve_cmd(a, out),
        Command::Bench(a) => bench(a, out),
        Command::Compare(a) => compare(a, out),
    }
}
