//! Command-line driver: every subcommand is a thin binding of the library's
//! pure functions to flags and files.
//!
//! Determinism is part of the interface: there is no randomness anywhere,
//! initial-condition sets are fixed interior grids, and identical flags
//! produce byte-identical outputs at any worker count. Exit codes: 0 on
//! success, 1 on usage or output errors, 2 on numerical domain or
//! precondition failures reported by the engine.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mwu_lab::atomic::reduce_atomic_two;
use mwu_lab::chaos::{estimate_entropy, feigenbaum_cascade, find_period3_witness, CascadeDirection};
use mwu_lab::hetero::{hetero_invariant_logits, step_hetero_logits, HeteroParams};
use mwu_lab::linear::{normalize_economics, rate_unit};
use mwu_lab::metrics::{compute_metrics, hetero_mixture_average, simplex_cost_averages};
use mwu_lab::num::logit;
use mwu_lab::orbit::{hetero_orbit, scalar_orbit, simplex_orbit};
use mwu_lab::simplex::simplex_equilibrium;
use mwu_lab::sweep::{
    bifurcation_scan, emit_bifurcation_csv, emit_metrics_csv, emit_ppm, lyapunov_shade,
    metrics_curve, period_palette, read_grid_csv, sweep_grid_to_csv, InitRule, SweepGrid,
    DEFAULT_LYAPUNOV_T,
};
use mwu_lab::{Error, GameEconomics, LinearTwoParams, SimplexParams};

/// Reference learning rate 1 - 1/e: one unit of cost decrements the logit by
/// exactly 1, so normalized runs satisfy demand N = drive a.
const EPS_REFERENCE: f64 = 1.0 - 1.0 / std::f64::consts::E;

#[derive(Parser)]
#[command(
    name = "mwu-lab",
    version,
    about = "Deterministic laboratory for multiplicative-weights dynamics in congestion games",
    after_help = "All analyses are seed-free: initial conditions come from fixed interior \
                  grids (a 5000-point grid stands in for random start sampling), and \
                  identical flags yield byte-identical outputs at any --threads count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one two-path orbit and report its time-average metrics as CSV
    Simulate(SimulateArgs),
    /// Scan the drive at fixed split and emit attractor samples per a
    Bifurcation(BifurcationArgs),
    /// Classify periods over an (a, b) grid into a CSV and optional PPM
    Diagram(DiagramArgs),
    /// Estimate Lyapunov exponents over an (a, b) grid
    Lyapunov(LyapunovArgs),
    /// Trace mean, variance, regret, and social cost along the drive
    Metrics(MetricsArgs),
    /// Resolve the period-doubling cascade and its universal constants
    Feigenbaum(FeigenbaumArgs),
    /// Certify chaos: period-3 witness search plus a symbolic entropy rate
    ChaosCert(ChaosCertArgs),
    /// Run two populations with distinct rates; report balance and mixture
    Hetero(HeteroArgs),
    /// Run the m-strategy update; report per-path flow averages
    Simplex(SimplexArgs),
    /// Reduce an N-player game, then analyze the resulting scalar family
    Atomic(AtomicArgs),
}

/// Scalar family selection: exactly one of the normalized pair (--a, --b) or
/// the raw economics quadruple (--alpha, --beta, --demand, --eps).
#[derive(Args)]
struct FamilyArgs {
    /// Drive strength (normalized; pairs with --b)
    #[arg(long)]
    a: Option<f64>,
    /// Equilibrium split in (0,1) (normalized; pairs with --a)
    #[arg(long)]
    b: Option<f64>,
    /// First-path cost slope (raw economics)
    #[arg(long, requires = "beta", requires = "demand", requires = "eps")]
    alpha: Option<f64>,
    /// Second-path cost slope (raw economics)
    #[arg(long)]
    beta: Option<f64>,
    /// Total demand N (raw economics)
    #[arg(long)]
    demand: Option<f64>,
    /// Learning rate in (0,1) (raw economics)
    #[arg(long)]
    eps: Option<f64>,
}

impl FamilyArgs {
    /// Resolve to map parameters plus the economics used for regret columns.
    /// Normalized runs take the reference rate, under which demand N = a.
    fn resolve(&self) -> Result<(LinearTwoParams, GameEconomics), CliError> {
        let normalized = self.a.is_some() || self.b.is_some();
        let raw = self.alpha.is_some()
            || self.beta.is_some()
            || self.demand.is_some()
            || self.eps.is_some();
        match (normalized, raw) {
            (true, true) => Err(CliError::Usage(
                "give either --a/--b or --alpha/--beta/--demand/--eps, not both".into(),
            )),
            (false, false) => Err(CliError::Usage(
                "select a family: --a/--b or --alpha/--beta/--demand/--eps".into(),
            )),
            (true, false) => {
                let (a, b) = match (self.a, self.b) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(CliError::Usage(
                            "normalized parameters need both --a and --b".into(),
                        ))
                    }
                };
                let p = LinearTwoParams::new(a, b)?;
                let econ = GameEconomics::new(
                    1.0 - b,
                    b,
                    a / rate_unit(EPS_REFERENCE),
                    EPS_REFERENCE,
                )?;
                Ok((p, econ))
            }
            (false, true) => {
                let (alpha, beta, demand, eps) =
                    match (self.alpha, self.beta, self.demand, self.eps) {
                        (Some(al), Some(be), Some(n), Some(e)) => (al, be, n, e),
                        _ => {
                            return Err(CliError::Usage(
                                "raw economics need all of --alpha, --beta, --demand, --eps"
                                    .into(),
                            ))
                        }
                    };
                let econ = GameEconomics::new(alpha, beta, demand, eps)?;
                Ok((normalize_economics(&econ), econ))
            }
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Initial share on the first path
    #[arg(long, default_value_t = 0.3)]
    x0: f64,
    /// Burn-in steps dropped before sampling
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Recorded steps
    #[arg(long = "T", default_value_t = 1_000_000)]
    samples: usize,
    /// Metrics CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled orbit as CSV (n,x)
    #[arg(long)]
    orbit_out: Option<PathBuf>,
}

#[derive(Args)]
struct BifurcationArgs {
    /// Equilibrium split in (0,1)
    #[arg(long)]
    b: f64,
    /// Drive range MIN:MAX
    #[arg(long, value_parser = parse_range, default_value = "2:54")]
    a_range: (f64, f64),
    /// Grid steps along the drive
    #[arg(long, default_value_t = 800)]
    res: usize,
    /// Start state per cell: left-critical, right-critical, or fixed:<x>
    #[arg(long, value_parser = parse_init, default_value = "left-critical")]
    init: InitRule,
    /// Burn-in steps per cell
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Attractor samples recorded per cell
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// CSV destination (a,x,mean_running)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    /// Drive range MIN:MAX
    #[arg(long, value_parser = parse_range, default_value = "2:54")]
    a_range: (f64, f64),
    /// Split range MIN:MAX inside (0,1)
    #[arg(long, value_parser = parse_range, default_value = "0.02:0.98")]
    b_range: (f64, f64),
    /// Grid steps along the drive axis
    #[arg(long, default_value_t = 800)]
    res: usize,
    /// Grid steps along the split axis (defaults to --res)
    #[arg(long)]
    res_b: Option<usize>,
    /// Burn-in steps per cell (the sweep exits early once an orbit closes)
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Orbit-closure tolerance for period detection
    #[arg(long, default_value = "1e-10")]
    tol: f64,
    /// Largest period classified before a cell is left white
    #[arg(long, default_value_t = 8)]
    max_period: usize,
    /// Start state per cell: left-critical, right-critical, or fixed:<x>
    #[arg(long, value_parser = parse_init, default_value = "left-critical")]
    init: InitRule,
    /// Worker threads for the sweep (defaults to one per core)
    #[arg(long)]
    threads: Option<usize>,
    /// Resume an interrupted sweep from its last complete row
    #[arg(long)]
    resume: bool,
    /// Grid CSV destination (a,b,period_code,lyapunov)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DiagramArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Optional period-palette PPM destination
    #[arg(long)]
    ppm_out: Option<PathBuf>,
}

#[derive(Args)]
struct LyapunovArgs {
    #[command(flatten)]
    grid: GridArgs,
    /// Averaging horizon for the exponent estimate
    #[arg(long = "T", default_value_t = DEFAULT_LYAPUNOV_T)]
    samples: usize,
    /// Optional grayscale PPM destination (darker = more negative)
    #[arg(long)]
    ppm_out: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    /// Equilibrium split in (0,1)
    #[arg(long)]
    b: f64,
    /// Drive range MIN:MAX
    #[arg(long, value_parser = parse_range, default_value = "2:54")]
    a_range: (f64, f64),
    /// Grid steps along the drive
    #[arg(long, default_value_t = 400)]
    res: usize,
    /// Start state per cell: left-critical, right-critical, or fixed:<x>
    #[arg(long, value_parser = parse_init, default_value = "left-critical")]
    init: InitRule,
    /// Burn-in steps per cell
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Recorded steps per cell
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Learning rate tying demand to drive via N = a/ln(1/(1-eps))
    #[arg(long, default_value_t = EPS_REFERENCE)]
    eps: f64,
    /// CSV destination (a,mean,variance,regret_avg,regret_bound,norm_sc)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FeigenbaumArgs {
    /// Fixed drive strength along the cascade
    #[arg(long, default_value_t = 30.0)]
    a: f64,
    /// Starting split, at or below the superstable fixed point
    #[arg(long, default_value_t = 0.02)]
    b_start: f64,
    /// Cascade direction: increasing-b or decreasing-b
    #[arg(long, value_parser = parse_direction, default_value = "increasing-b")]
    direction: CascadeDirection,
    /// Deepest doubling level to resolve (at most 12)
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChaosCertArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Deterministic start-grid size for the witness scan
    #[arg(long, default_value_t = 5000)]
    witness_grid: usize,
    /// Symbolic word length for the entropy estimate
    #[arg(long, default_value_t = 14)]
    word_length: usize,
    /// Deterministic start-grid size for the entropy estimate
    #[arg(long, default_value_t = 5000)]
    init_grid: usize,
    /// Report destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HeteroArgs {
    /// Learning rate of the first population
    #[arg(long)]
    a1: f64,
    /// Learning rate of the second population
    #[arg(long)]
    a2: f64,
    /// Equilibrium split in (0,1)
    #[arg(long)]
    b: f64,
    /// Weight of the first population
    #[arg(long, default_value_t = 0.5)]
    eta1: f64,
    /// Weight of the second population
    #[arg(long, default_value_t = 0.5)]
    eta2: f64,
    /// Initial share of the first population
    #[arg(long, default_value_t = 0.3)]
    x0: f64,
    /// Initial share of the second population
    #[arg(long, default_value_t = 0.6)]
    y0: f64,
    /// Burn-in steps dropped before sampling
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Recorded steps
    #[arg(long = "T", default_value_t = 100_000)]
    samples: usize,
    /// Report destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled orbit as CSV (n,x,y)
    #[arg(long)]
    orbit_out: Option<PathBuf>,
}

#[derive(Args)]
struct SimplexArgs {
    /// Per-path rates, comma-separated (for example 1,2,4)
    #[arg(long, value_delimiter = ',', required = true)]
    rates: Vec<f64>,
    /// Initial flows, comma-separated (default: uniform)
    #[arg(long, value_delimiter = ',')]
    x0: Option<Vec<f64>>,
    /// Burn-in steps (default 0: flow averages telescope from the start)
    #[arg(long, default_value_t = 0)]
    transient: usize,
    /// Recorded steps
    #[arg(long = "T", default_value_t = 100_000)]
    samples: usize,
    /// Report destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled orbit as CSV (n,x_0,...,x_{m-1})
    #[arg(long)]
    orbit_out: Option<PathBuf>,
}

#[derive(Args)]
struct AtomicArgs {
    /// First-path cost slope per player
    #[arg(long)]
    alpha1: f64,
    /// Second-path cost slope per player
    #[arg(long)]
    alpha2: f64,
    /// Player count
    #[arg(long = "N")]
    n: u32,
    /// Learning rate in (0,1)
    #[arg(long)]
    eps: f64,
    #[command(subcommand)]
    action: AtomicAction,
}

#[derive(Subcommand)]
enum AtomicAction {
    /// Print the reduced drive and split
    PrintParams,
    /// Simulate the reduced family (regret columns use demand N = a under
    /// the reference rate, exactly as `simulate --a --b`)
    Simulate(AtomicSimulateArgs),
}

#[derive(Args)]
struct AtomicSimulateArgs {
    /// Initial share on the first path
    #[arg(long, default_value_t = 0.3)]
    x0: f64,
    /// Burn-in steps dropped before sampling
    #[arg(long, default_value_t = 20_000)]
    transient: usize,
    /// Recorded steps
    #[arg(long = "T", default_value_t = 1_000_000)]
    samples: usize,
    /// Metrics CSV destination (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the sampled orbit as CSV (n,x)
    #[arg(long)]
    orbit_out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Num(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Num(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Num(Error::Io(e))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got {s:?}"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad range start {lo:?}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad range end {hi:?}: {e}"))?;
    Ok((lo, hi))
}

fn parse_init(s: &str) -> Result<InitRule, String> {
    match s {
        "left-critical" => Ok(InitRule::LeftCritical),
        "right-critical" => Ok(InitRule::RightCritical),
        _ => match s.strip_prefix("fixed:") {
            Some(v) => v
                .parse()
                .map(InitRule::Fixed)
                .map_err(|e| format!("bad fixed start {v:?}: {e}")),
            None => Err(format!(
                "expected left-critical, right-critical, or fixed:<x>, got {s:?}"
            )),
        },
    }
}

fn parse_direction(s: &str) -> Result<CascadeDirection, String> {
    match s {
        "increasing-b" => Ok(CascadeDirection::IncreasingB),
        "decreasing-b" => Ok(CascadeDirection::DecreasingB),
        _ => Err(format!("expected increasing-b or decreasing-b, got {s:?}")),
    }
}

/// 17 significant digits: enough to reproduce every f64 bit for bit.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run_in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn run_simulate_scalar(
    p: &LinearTwoParams,
    econ: &GameEconomics,
    x0: f64,
    transient: usize,
    samples: usize,
    out: Option<&Path>,
    orbit_out: Option<&Path>,
) -> Result<(), CliError> {
    let orbit = scalar_orbit(p, x0, transient, samples)?;
    if orbit.saturated {
        eprintln!("note: orbit grazed the interval boundary and was clamped inside");
    }
    let m = compute_metrics(&orbit.samples, p, econ);
    let mut text = String::from("mean,variance,regret_avg,regret_bound,norm_sc,t,demand_n\n");
    let _ = writeln!(
        text,
        "{},{},{},{},{},{},{}",
        fmt(m.cesaro_mean),
        fmt(m.variance),
        fmt(m.regret_avg),
        fmt(m.regret_bound),
        fmt(m.norm_social_cost),
        m.t,
        fmt(m.demand_n)
    );
    write_text(&text, out)?;
    if let Some(path) = orbit_out {
        let mut csv = String::from("n,x\n");
        for (n, x) in orbit.samples.iter().enumerate() {
            let _ = writeln!(csv, "{n},{}", fmt(*x));
        }
        std::fs::write(path, csv)?;
    }
    Ok(())
}

fn grid_from_args(g: &GridArgs) -> Result<SweepGrid, CliError> {
    let mut grid = SweepGrid::new(
        g.a_range.0,
        g.a_range.1,
        g.res,
        g.b_range.0,
        g.b_range.1,
        g.res_b.unwrap_or(g.res),
    )?;
    grid.transient = g.transient;
    grid.tol = g.tol;
    grid.max_period = g.max_period;
    grid.init_rule = g.init;
    grid.validate()?;
    Ok(grid)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => {
            let (p, econ) = args.family.resolve()?;
            run_simulate_scalar(
                &p,
                &econ,
                args.x0,
                args.transient,
                args.samples,
                args.out.as_deref(),
                args.orbit_out.as_deref(),
            )
        }
        Command::Bifurcation(args) => {
            let rows = bifurcation_scan(
                args.b,
                args.a_range.0,
                args.a_range.1,
                args.res,
                args.init,
                args.transient,
                args.samples,
            )?;
            emit_bifurcation_csv(&rows, &args.out)?;
            Ok(())
        }
        Command::Diagram(args) => {
            let grid = grid_from_args(&args.grid)?;
            run_in_pool(args.grid.threads, || {
                sweep_grid_to_csv(&grid, DEFAULT_LYAPUNOV_T, &args.grid.out, args.grid.resume)
            })??;
            if let Some(ppm) = &args.ppm_out {
                let cells = read_grid_csv(&args.grid.out)?;
                emit_ppm(&cells, &grid, period_palette, ppm)?;
            }
            Ok(())
        }
        Command::Lyapunov(args) => {
            let grid = grid_from_args(&args.grid)?;
            run_in_pool(args.grid.threads, || {
                sweep_grid_to_csv(&grid, args.samples, &args.grid.out, args.grid.resume)
            })??;
            if let Some(ppm) = &args.ppm_out {
                let cells = read_grid_csv(&args.grid.out)?;
                emit_ppm(&cells, &grid, lyapunov_shade, ppm)?;
            }
            Ok(())
        }
        Command::Metrics(args) => {
            let rows = metrics_curve(
                args.b,
                args.a_range.0,
                args.a_range.1,
                args.res,
                args.init,
                args.transient,
                args.samples,
                args.eps,
            )?;
            emit_metrics_csv(&rows, &args.out)?;
            Ok(())
        }
        Command::Feigenbaum(args) => {
            let est = feigenbaum_cascade(args.a, args.b_start, args.direction, args.n_max)?;
            let mut text = String::from("n,s_n,b_n,d_n,delta,alpha\n");
            let opt = |v: Option<&f64>| v.map(|x| fmt(*x)).unwrap_or_default();
            for n in 0..est.superstable_points.len() {
                let _ = writeln!(
                    text,
                    "{n},{},{},{},{},{}",
                    fmt(est.superstable_points[n]),
                    opt(n.checked_sub(1).and_then(|k| est.birth_points.get(k))),
                    opt(n.checked_sub(1).and_then(|k| est.distances.get(k))),
                    opt(n.checked_sub(2).and_then(|k| est.delta_n.get(k))),
                    opt(n.checked_sub(1).and_then(|k| est.alpha_n.get(k))),
                );
            }
            write_text(&text, args.out.as_deref())
        }
        Command::ChaosCert(args) => {
            let (p, _) = args.family.resolve()?;
            let mut text = format!("family: a={} b={}\n", fmt(p.a()), fmt(p.b()));
            match find_period3_witness(&p, args.witness_grid) {
                Some(w) => {
                    let _ = writeln!(
                        text,
                        "period3_witness: x0={} x1={} x3={} (x3 < x0 < x1)",
                        fmt(w.x0),
                        fmt(w.x1),
                        fmt(w.x3)
                    );
                }
                None => {
                    let _ = writeln!(
                        text,
                        "period3_witness: inconclusive on a {}-point grid",
                        args.witness_grid
                    );
                }
            }
            let h = estimate_entropy(&p, args.word_length, args.init_grid)?;
            let _ = writeln!(
                text,
                "entropy_estimate: {} (word length {}, {} starts)",
                fmt(h),
                args.word_length,
                args.init_grid
            );
            write_text(&text, args.out.as_deref())
        }
        Command::Hetero(args) => {
            let p = HeteroParams::new(args.a1, args.a2, args.b, args.eta1, args.eta2)?;
            let orbit = hetero_orbit(&p, args.x0, args.y0, args.transient, args.samples)?;
            // Balance drift over the same horizon, measured in the logit
            // chart where the conserved quantity is linear.
            let (mut lx, mut ly) = (logit(args.x0), logit(args.y0));
            let balance0 = hetero_invariant_logits(lx, ly, &p);
            for _ in 0..args.transient + args.samples {
                let (nx, ny) = step_hetero_logits(lx, ly, &p);
                lx = nx;
                ly = ny;
            }
            let balance1 = hetero_invariant_logits(lx, ly, &p);
            let mix = hetero_mixture_average(&orbit, &p);
            let mut text = String::new();
            let _ = writeln!(text, "balance_start: {}", fmt(balance0));
            let _ = writeln!(text, "balance_end: {}", fmt(balance1));
            let _ = writeln!(text, "balance_drift: {}", fmt((balance1 - balance0).abs()));
            let _ = writeln!(text, "mixture_average: {}", fmt(mix));
            let _ = writeln!(text, "split: {}", fmt(p.b()));
            write_text(&text, args.out.as_deref())?;
            if let Some(path) = &args.orbit_out {
                let mut csv = String::from("n,x,y\n");
                for (n, (x, y)) in orbit.samples.iter().enumerate() {
                    let _ = writeln!(csv, "{n},{},{}", fmt(*x), fmt(*y));
                }
                std::fs::write(path, csv)?;
            }
            Ok(())
        }
        Command::Simplex(args) => {
            let p = SimplexParams::new(args.rates.clone())?;
            let x0 = args
                .x0
                .clone()
                .unwrap_or_else(|| vec![1.0 / p.m() as f64; p.m()]);
            let orbit = simplex_orbit(&p, &x0, args.transient, args.samples)?;
            let flows = simplex_cost_averages(&orbit);
            let eq = simplex_equilibrium(&p);
            let mut text = String::new();
            for (k, (flow, want)) in flows.iter().zip(&eq).enumerate() {
                let _ = writeln!(text, "flow_average[{k}]: {} (equal-cost {})", fmt(*flow), fmt(*want));
            }
            let _ = writeln!(text, "saturated: {}", orbit.saturated);
            write_text(&text, args.out.as_deref())?;
            if let Some(path) = &args.orbit_out {
                let mut header = String::from("n");
                for k in 0..p.m() {
                    let _ = write!(header, ",x_{k}");
                }
                header.push('\n');
                let mut csv = header;
                for i in 0..orbit.len() {
                    let _ = write!(csv, "{i}");
                    for v in orbit.sample(i) {
                        let _ = write!(csv, ",{}", fmt(*v));
                    }
                    csv.push('\n');
                }
                std::fs::write(path, csv)?;
            }
            Ok(())
        }
        Command::Atomic(args) => {
            let p = reduce_atomic_two(args.alpha1, args.alpha2, args.n, args.eps)?;
            match args.action {
                AtomicAction::PrintParams => {
                    let text = format!("a: {}\nb: {}\n", fmt(p.a()), fmt(p.b()));
                    write_text(&text, None)
                }
                AtomicAction::Simulate(sim) => {
                    let econ = GameEconomics::new(
                        1.0 - p.b(),
                        p.b(),
                        p.a() / rate_unit(EPS_REFERENCE),
                        EPS_REFERENCE,
                    )?;
                    run_simulate_scalar(
                        &p,
                        &econ,
                        sim.x0,
                        sim.transient,
                        sim.samples,
                        sim.out.as_deref(),
                        sim.orbit_out.as_deref(),
                    )
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Num(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(1),
                Error::Domain(_) | Error::Precondition(_) => ExitCode::from(2),
            }
        }
    }
}
