//! Command-line harness: seeded sweeps, analytic ratio tables, count
//! histograms, cross-engine validation, and solution extraction.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qmt_sim::gates::OracleSpec;
use qmt_sim::noise::NoiseParams;
use qmt_sim::search::{estimate_solution_count, extract_all_solutions, Method};
use qmt_sim::sweep::{
    log_grid, ratio_snr_grid, run_count_experiment, run_fig2, run_sweep, run_validate_signal,
    trial_seed, with_workers, write_count_csv, write_ratio_csv, ExperimentConfig, SolutionSpec,
    COUNT_TAG, EXTRACT_TAG,
};

/// Exit 1: the run could not start (bad flags or config).
/// Exit 2: the run finished but a validation check failed.
#[derive(Debug)]
enum Failure {
    Config(String),
    Check(String),
}

impl From<qmt_sim::Error> for Failure {
    fn from(e: qmt_sim::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qmt",
    about = "Simulated signal-device search: sweeps, analytics, validation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monte Carlo success-rate sweep with the stock defaults (n = 4, three
    /// random solutions, all methods)
    Fig1(SweepArgs),
    /// Monte Carlo success-rate sweep over any register size and grid
    Sweep(SweepArgs),
    /// Analytic table: amplified search against the projected search given
    /// the same number of oracle calls
    Fig2(RatioArgs),
    /// Histogram of the solution-count estimator against its predicted law
    Count(SweepArgs),
    /// Run the noiseless corpus through both engines and compare
    ValidateSignal(ValidateArgs),
    /// Estimate the solution count, then extract every solution
    Extract(ExtractArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct SweepArgs {
    /// Input register width in qubits
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated solution inputs, e.g. 2,7,11
    #[arg(long)]
    solutions: Option<String>,
    /// Number of seeded randomly placed solutions instead of an explicit list
    #[arg(long)]
    num_solutions: Option<usize>,
    /// SNR grid: comma list (inf allowed) or log:LO:HI:COUNT
    #[arg(long)]
    snr: Option<String>,
    /// Fidelity grid mapped onto SNR values: comma list or log:LO:HI:COUNT
    #[arg(long)]
    fidelity: Option<String>,
    /// Trials per grid point
    #[arg(long)]
    trials: Option<u64>,
    /// Base seed for the whole run
    #[arg(long)]
    seed: Option<u64>,
    /// Two-sided miss probability of the reported confidence intervals
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated subset of brute,subspace,grover
    #[arg(long)]
    methods: Option<String>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = default pool)
    #[arg(long)]
    workers: Option<usize>,
    /// key = value file supplying any long flag; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RatioArgs {
    /// Largest register width to tabulate
    #[arg(long)]
    n: Option<u32>,
    /// SNR grid: comma list (inf allowed) or log:LO:HI:COUNT
    #[arg(long)]
    snr: Option<String>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ValidateArgs {
    /// Largest register width in the corpus
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Largest cross-engine discrepancy accepted as agreement
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct ExtractArgs {
    /// Input register width in qubits
    #[arg(long, default_value_t = 4)]
    n: u32,
    /// Comma-separated solution inputs, e.g. 2,7,11
    #[arg(long)]
    solutions: Option<String>,
    /// Number of seeded randomly placed solutions instead of an explicit list
    #[arg(long)]
    num_solutions: Option<usize>,
    /// SNR of the oracle channel (inf for noiseless)
    #[arg(long, default_value = "inf")]
    snr: String,
    /// Base seed
    #[arg(long, default_value_t = qmt_sim::sweep::DEFAULT_BASE_SEED)]
    seed: u64,
    /// Cap on measurement rounds
    #[arg(long)]
    max_iters: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let benign = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Fig1(args) | Command::Sweep(args) => run_sweep_command(args),
        Command::Fig2(args) => run_ratio_command(args),
        Command::Count(args) => run_count_command(args),
        Command::ValidateSignal(args) => run_validate_command(args),
        Command::Extract(args) => run_extract_command(args),
    }
}

fn parse_f64(token: &str) -> Result<f64, Failure> {
    let t = token.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    t.parse::<f64>()
        .map_err(|_| Failure::Config(format!("cannot parse '{}' as a number", t)))
}

/// Accepts either a comma list of values or log:LO:HI:COUNT.
fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(Failure::Config(format!(
                "grid spec '{}' should look like log:LO:HI:COUNT",
                spec
            )));
        }
        let lo = parse_f64(parts[0])?;
        let hi = parse_f64(parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| Failure::Config(format!("cannot parse '{}' as a count", parts[2])))?;
        return Ok(log_grid(lo, hi, count)?);
    }
    spec.split(',').map(parse_f64).collect()
}

fn parse_usize_list(spec: &str) -> Result<Vec<usize>, Failure> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Config(format!("cannot parse '{}' as an input index", t)))
        })
        .collect()
}

fn parse_methods(spec: &str) -> Result<Vec<Method>, Failure> {
    spec.split(',')
        .map(|t| Method::from_str(t.trim()).map_err(Failure::from))
        .collect()
}

/// Reads a `key = value` file; blank lines and # comments are skipped.
fn read_config_file(path: &PathBuf) -> Result<HashMap<String, String>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read {}: {}", path.display(), e)))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::Config(format!(
                "{}:{}: expected key = value, got '{}'",
                path.display(),
                lineno + 1,
                line
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fills unset flags from the config file, leaving explicit flags alone.
fn merge_config(mut args: SweepArgs) -> Result<SweepArgs, Failure> {
    let Some(path) = &args.config else {
        return Ok(args);
    };
    let map = read_config_file(path)?;
    let known = [
        "n",
        "solutions",
        "num-solutions",
        "snr",
        "fidelity",
        "trials",
        "seed",
        "alpha",
        "methods",
        "out",
        "workers",
    ];
    for key in map.keys() {
        if !known.contains(&key.as_str()) {
            return Err(Failure::Config(format!(
                "{}: unknown key '{}'",
                path.display(),
                key
            )));
        }
    }
    let parse_num = |key: &str, value: &str| -> Result<u64, Failure> {
        value
            .parse::<u64>()
            .map_err(|_| Failure::Config(format!("config key {}: cannot parse '{}'", key, value)))
    };
    if args.n.is_none() {
        if let Some(v) = map.get("n") {
            args.n = Some(parse_num("n", v)? as u32);
        }
    }
    if args.solutions.is_none() {
        args.solutions = map.get("solutions").cloned();
    }
    if args.num_solutions.is_none() {
        if let Some(v) = map.get("num-solutions") {
            args.num_solutions = Some(parse_num("num-solutions", v)? as usize);
        }
    }
    if args.snr.is_none() {
        args.snr = map.get("snr").cloned();
    }
    if args.fidelity.is_none() {
        args.fidelity = map.get("fidelity").cloned();
    }
    if args.trials.is_none() {
        if let Some(v) = map.get("trials") {
            args.trials = Some(parse_num("trials", v)?);
        }
    }
    if args.seed.is_none() {
        if let Some(v) = map.get("seed") {
            args.seed = Some(parse_num("seed", v)?);
        }
    }
    if args.alpha.is_none() {
        if let Some(v) = map.get("alpha") {
            args.alpha = Some(
                v.parse::<f64>()
                    .map_err(|_| Failure::Config(format!("config key alpha: cannot parse '{}'", v)))?,
            );
        }
    }
    if args.methods.is_none() {
        args.methods = map.get("methods").cloned();
    }
    if args.out.is_none() {
        args.out = map.get("out").map(PathBuf::from);
    }
    if args.workers.is_none() {
        if let Some(v) = map.get("workers") {
            args.workers = Some(parse_num("workers", v)? as usize);
        }
    }
    Ok(args)
}

/// Builds the experiment description from merged flags over the defaults.
fn build_config(args: &SweepArgs, defaults: ExperimentConfig) -> Result<ExperimentConfig, Failure> {
    let mut cfg = defaults;
    if let Some(n) = args.n {
        cfg.n = n;
    }
    cfg.solutions = match (&args.solutions, args.num_solutions) {
        (Some(_), Some(_)) => {
            return Err(Failure::Config(
                "choose either --solutions or --num-solutions, not both".into(),
            ))
        }
        (Some(list), None) => SolutionSpec::Explicit(parse_usize_list(list)?),
        (None, Some(m)) => SolutionSpec::Count(m),
        (None, None) => cfg.solutions,
    };
    if let Some(seed) = args.seed {
        cfg.base_seed = seed;
    }
    cfg.snr_grid = match (&args.snr, &args.fidelity) {
        (Some(_), Some(_)) => {
            return Err(Failure::Config(
                "choose either --snr or --fidelity, not both".into(),
            ))
        }
        (Some(spec), None) => parse_grid(spec)?,
        (None, Some(spec)) => {
            let dim = 1usize << cfg.n;
            parse_grid(spec)?
                .into_iter()
                .map(|f| Ok(NoiseParams::from_fidelity(dim, cfg.s, f)?.snr()))
                .collect::<Result<Vec<f64>, Failure>>()?
        }
        (None, None) => cfg.snr_grid,
    };
    if let Some(trials) = args.trials {
        cfg.trials = trials;
    }
    if let Some(alpha) = args.alpha {
        cfg.alpha = alpha;
    }
    if let Some(spec) = &args.methods {
        cfg.methods = parse_methods(spec)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(path) => Box::new(
            fs::File::create(path)
                .map_err(|e| Failure::Config(format!("cannot create {}: {}", path.display(), e)))?,
        ),
        None => Box::new(io::stdout()),
    })
}

fn run_sweep_command(args: SweepArgs) -> Result<(), Failure> {
    let args = merge_config(args)?;
    let cfg = build_config(&args, ExperimentConfig::fig1_defaults())?;
    let workers = args.workers.unwrap_or(0);
    let result = with_workers(workers, || run_sweep(&cfg))??;
    let mut out = open_output(&args.out)?;
    result.write_csv(&mut out)?;
    Ok(())
}

fn run_ratio_command(args: RatioArgs) -> Result<(), Failure> {
    let n_max = args.n.unwrap_or(4);
    let grid = match &args.snr {
        Some(spec) => parse_grid(spec)?,
        None => ratio_snr_grid(),
    };
    let rows = run_fig2(n_max, &grid)?;
    let mut out = open_output(&args.out)?;
    write_ratio_csv(&rows, &mut out)?;
    let worst = rows
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("nonempty table");
    if worst.ratio > 1.0 + 1e-12 {
        return Err(Failure::Check(format!(
            "ratio {} exceeds 1 at N={} M={} snr={}",
            worst.ratio, worst.dim, worst.num_solutions, worst.snr
        )));
    }
    Ok(())
}

fn run_count_command(args: SweepArgs) -> Result<(), Failure> {
    let args = merge_config(args)?;
    let mut defaults = ExperimentConfig::fig1_defaults();
    defaults.trials = 50_000;
    let cfg = build_config(&args, defaults)?;
    let workers = args.workers.unwrap_or(0);
    let points = with_workers(workers, || run_count_experiment(&cfg))??;
    let mut out = open_output(&args.out)?;
    write_count_csv(&points, &mut out)?;
    Ok(())
}

fn run_validate_command(args: ValidateArgs) -> Result<(), Failure> {
    let report = run_validate_signal(args.n, args.tolerance)?;
    let mut out = open_output(&args.out)?;
    report.write_report(&mut out)?;
    drop(out);
    if !report.pass {
        return Err(Failure::Check(format!(
            "cross-engine discrepancy {} exceeds tolerance {}",
            report.max_discrepancy, report.tolerance
        )));
    }
    Ok(())
}

fn run_extract_command(args: ExtractArgs) -> Result<(), Failure> {
    let solutions = match (&args.solutions, args.num_solutions) {
        (Some(_), Some(_)) => {
            return Err(Failure::Config(
                "choose either --solutions or --num-solutions, not both".into(),
            ))
        }
        (Some(list), None) => SolutionSpec::Explicit(parse_usize_list(list)?),
        (None, Some(m)) => SolutionSpec::Count(m),
        (None, None) => SolutionSpec::Count(3),
    };
    let probe = ExperimentConfig {
        n: args.n,
        solutions,
        snr_grid: vec![parse_f64(&args.snr)?],
        trials: 1,
        methods: vec![Method::Subspace],
        base_seed: args.seed,
        alpha: 0.05,
        s: 1.0,
    };
    probe.validate()?;
    let spec = OracleSpec::new(probe.n, probe.resolve_solutions()?)?;
    let params = NoiseParams::from_snr(probe.s, probe.snr_grid[0])?;

    let mut count_rng =
        ChaCha8Rng::seed_from_u64(trial_seed(args.seed, COUNT_TAG, 0, 0));
    let estimate = estimate_solution_count(&spec, &params, &mut count_rng);
    println!("estimated count: {}", estimate.count);

    let max_iters = args.max_iters.unwrap_or(4 * spec.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(args.seed, EXTRACT_TAG, 0, 0));
    let mut found = extract_all_solutions(&spec, &params, &mut rng, max_iters)?;
    found.sort_unstable();
    let rendered: Vec<String> = found.iter().map(|x| x.to_string()).collect();
    println!("extracted {} inputs: {}", found.len(), rendered.join(" "));
    Ok(())
}
