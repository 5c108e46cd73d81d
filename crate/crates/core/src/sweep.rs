//! Experiment harness: seeded Monte Carlo sweeps over noise grids, analytic
//! comparison curves, count-estimator histograms, and a cross-engine
//! validation corpus. Every trial outcome is a pure function of
//! (base seed, method, grid index, trial index), so results are reproducible
//! across runs and worker counts.

use std::io::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytics::{clopper_pearson, p_brute, p_grover, p_subspace, rician_mean_var};
use crate::error::{Error, Result};
use crate::gates::{grover_plan, OracleSpec};
use crate::noise::NoiseParams;
use crate::search::{
    estimate_solution_count, repeated_success_probability, run_trial, Method, TrialRecord,
};
use crate::state::{StateVector, MAX_QUBITS};

/// Seed-stream tag for count-estimator draws.
pub const COUNT_TAG: u64 = 4;
/// Seed-stream tag for full extraction runs.
pub const EXTRACT_TAG: u64 = 5;
/// Seed-stream tag for random solution placement.
pub const PLACEMENT_TAG: u64 = 6;

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent per-trial seed from the experiment coordinates.
pub fn trial_seed(base_seed: u64, stream_tag: u64, grid_index: u64, trial_index: u64) -> u64 {
    let mut h = splitmix64(base_seed ^ 0x243F_6A88_85A3_08D3);
    h = splitmix64(h ^ stream_tag);
    h = splitmix64(h ^ grid_index);
    h = splitmix64(h ^ trial_index);
    h
}

/// Logarithmically spaced grid from lo to hi inclusive.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 || hi <= lo {
        return Err(Error::InvalidArgument(format!(
            "log grid needs 0 < lo < hi, got [{}, {}]",
            lo, hi
        )));
    }
    if count == 0 {
        return Err(Error::InvalidArgument("log grid needs at least one point".into()));
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let (llo, lhi) = (lo.log10(), hi.log10());
    Ok((0..count)
        .map(|k| 10f64.powf(llo + (lhi - llo) * k as f64 / (count - 1) as f64))
        .collect())
}

/// Default 12-point sweep grid spanning deep noise to near-noiseless.
pub fn default_snr_grid() -> Vec<f64> {
    log_grid(1e-2, 1e4, 12).expect("static grid")
}

/// Dense 200-point grid for the analytic ratio curves.
pub fn ratio_snr_grid() -> Vec<f64> {
    log_grid(1e-2, 1e4, 200).expect("static grid")
}

/// How the solution set is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSpec {
    /// Use exactly these inputs.
    Explicit(Vec<usize>),
    /// Place this many distinct inputs at seeded random positions.
    Count(usize),
}

/// Full description of a sweep run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: u32,
    pub solutions: SolutionSpec,
    pub snr_grid: Vec<f64>,
    pub trials: u64,
    pub methods: Vec<Method>,
    pub base_seed: u64,
    pub alpha: f64,
    pub s: f64,
}

/// Base seed used by the stock configurations.
pub const DEFAULT_BASE_SEED: u64 = 13;

impl ExperimentConfig {
    /// Stock configuration: n = 4, three random solutions, all methods,
    /// 1000 trials per point on the default grid.
    pub fn fig1_defaults() -> Self {
        ExperimentConfig {
            n: 4,
            solutions: SolutionSpec::Count(3),
            snr_grid: default_snr_grid(),
            trials: 1000,
            methods: Method::ALL.to_vec(),
            base_seed: DEFAULT_BASE_SEED,
            alpha: 0.05,
            s: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "input register must have 1..={} qubits, got {}",
                MAX_QUBITS, self.n
            )));
        }
        let dim = 1usize << self.n;
        match &self.solutions {
            SolutionSpec::Explicit(v) => {
                OracleSpec::new(self.n, v.clone())?;
            }
            SolutionSpec::Count(m) => {
                if *m > dim {
                    return Err(Error::InvalidArgument(format!(
                        "cannot place {} distinct solutions among {} inputs",
                        m, dim
                    )));
                }
            }
        }
        if self.snr_grid.is_empty() {
            return Err(Error::InvalidArgument("empty snr grid".into()));
        }
        for &snr in &self.snr_grid {
            if snr.is_nan() || snr <= 0.0 {
                return Err(Error::InvalidArgument(format!("snr must be positive, got {}", snr)));
            }
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("need at least one trial".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidArgument("no methods selected".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "confidence level alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "signal magnitude must be positive and finite, got {}",
                self.s
            )));
        }
        Ok(())
    }

    /// Resolves the solution set, sampling seeded placements if needed.
    pub fn resolve_solutions(&self) -> Result<Vec<usize>> {
        let dim = 1usize << self.n;
        match &self.solutions {
            SolutionSpec::Explicit(v) => Ok(v.clone()),
            SolutionSpec::Count(m) => {
                if *m > dim {
                    return Err(Error::InvalidArgument(format!(
                        "cannot place {} distinct solutions among {} inputs",
                        m, dim
                    )));
                }
                let mut rng =
                    ChaCha8Rng::seed_from_u64(trial_seed(self.base_seed, PLACEMENT_TAG, 0, 0));
                let mut picks = rand::seq::index::sample(&mut rng, dim, *m).into_vec();
                picks.sort_unstable();
                Ok(picks)
            }
        }
    }
}

/// Aggregated outcome of one (method, snr) grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub method: Method,
    pub n: u32,
    pub dim: usize,
    pub num_solutions: usize,
    pub snr: f64,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub p_theory: f64,
    pub oracle_calls: u64,
    pub degenerate: u64,
}

/// All grid points of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

fn fmt_f(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{:.11e}", x)
    }
}

/// Exact header of the sweep CSV.
pub const SWEEP_CSV_HEADER: &str =
    "method,n,N,M,snr,trials,successes,p_hat,ci_lo,ci_hi,p_theory,oracle_calls,degenerate";

impl SweepResult {
    /// Writes one line per grid point under a fixed header.
    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "{}", SWEEP_CSV_HEADER)?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.method.name(),
                r.n,
                r.dim,
                r.num_solutions,
                fmt_f(r.snr),
                r.trials,
                r.successes,
                fmt_f(r.p_hat),
                fmt_f(r.ci_lo),
                fmt_f(r.ci_hi),
                fmt_f(r.p_theory),
                r.oracle_calls,
                r.degenerate
            )?;
        }
        Ok(())
    }
}

fn point_records_parallel(
    method: Method,
    spec: &OracleSpec,
    params: &NoiseParams,
    grid_index: usize,
    cfg: &ExperimentConfig,
) -> Vec<TrialRecord> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                run_trial(
                    method,
                    spec,
                    params,
                    trial_seed(cfg.base_seed, method.tag(), grid_index as u64, t),
                )
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        point_records_sequential(method, spec, params, grid_index, cfg)
    }
}

fn point_records_sequential(
    method: Method,
    spec: &OracleSpec,
    params: &NoiseParams,
    grid_index: usize,
    cfg: &ExperimentConfig,
) -> Vec<TrialRecord> {
    (0..cfg.trials)
        .map(|t| {
            run_trial(
                method,
                spec,
                params,
                trial_seed(cfg.base_seed, method.tag(), grid_index as u64, t),
            )
        })
        .collect()
}

fn fold_records(
    method: Method,
    spec: &OracleSpec,
    snr: f64,
    cfg: &ExperimentConfig,
    records: &[TrialRecord],
) -> SweepRow {
    let dim = spec.dim();
    let m = spec.num_solutions();
    let successes = records.iter().filter(|r| r.success).count() as u64;
    let oracle_calls = records.iter().map(|r| u64::from(r.oracle_calls)).sum();
    let degenerate = records.iter().filter(|r| r.outcome_x.is_none()).count() as u64;
    let p_hat = successes as f64 / cfg.trials as f64;
    let (ci_lo, ci_hi) =
        clopper_pearson(successes, cfg.trials, cfg.alpha).expect("config validated");
    let p_theory = match method {
        Method::Brute => p_brute(dim, m, snr),
        Method::Subspace => p_subspace(dim, m, snr),
        Method::Grover => p_grover(dim, m, snr),
    }
    .expect("config validated");
    SweepRow {
        method,
        n: spec.n(),
        dim,
        num_solutions: m,
        snr,
        trials: cfg.trials,
        successes,
        p_hat,
        ci_lo,
        ci_hi,
        p_theory,
        oracle_calls,
        degenerate,
    }
}

/// Runs one grid point, fanning trials across the active thread pool.
pub fn run_point(
    method: Method,
    spec: &OracleSpec,
    params: &NoiseParams,
    grid_index: usize,
    cfg: &ExperimentConfig,
    snr: f64,
) -> SweepRow {
    let records = point_records_parallel(method, spec, params, grid_index, cfg);
    fold_records(method, spec, snr, cfg, &records)
}

/// Single-threaded twin of run_point, kept for benchmarking and as the
/// reference ordering.
pub fn run_point_sequential(
    method: Method,
    spec: &OracleSpec,
    params: &NoiseParams,
    grid_index: usize,
    cfg: &ExperimentConfig,
    snr: f64,
) -> SweepRow {
    let records = point_records_sequential(method, spec, params, grid_index, cfg);
    fold_records(method, spec, snr, cfg, &records)
}

/// Runs the full sweep: every selected method across the whole grid.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let spec = OracleSpec::new(cfg.n, cfg.resolve_solutions()?)?;
    let mut rows = Vec::with_capacity(cfg.methods.len() * cfg.snr_grid.len());
    for &method in &cfg.methods {
        for (gi, &snr) in cfg.snr_grid.iter().enumerate() {
            let params = NoiseParams::from_snr(cfg.s, snr)?;
            rows.push(run_point(method, &spec, &params, gi, cfg, snr));
        }
    }
    Ok(SweepResult { rows })
}

/// Runs a closure inside a dedicated pool of the given size; 0 keeps the
/// default pool. Without the parallel feature the closure runs inline.
#[cfg(feature = "parallel")]
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {}", e)))?;
    Ok(pool.install(f))
}

/// Runs a closure inside a dedicated pool of the given size; 0 keeps the
/// default pool. Without the parallel feature the closure runs inline.
#[cfg(not(feature = "parallel"))]
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let _ = workers;
    Ok(f())
}

/// One analytic comparison row: amplified search versus the projected
/// search repeated once per oracle call the amplified run spends.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: u32,
    pub dim: usize,
    pub num_solutions: usize,
    pub snr: f64,
    pub iterations: u32,
    pub theta: f64,
    pub p_grover: f64,
    pub p_subspace_repeated: f64,
    pub ratio: f64,
    pub degenerate: bool,
}

/// Exact header of the ratio CSV.
pub const RATIO_CSV_HEADER: &str =
    "n,N,M,snr,iterations,theta,p_grover,p_subspace_repeated,ratio,degenerate";

/// Tabulates the success ratio over every register size up to n_max and
/// every solution count.
pub fn run_fig2(n_max: u32, snr_grid: &[f64]) -> Result<Vec<RatioRow>> {
    if n_max == 0 || n_max > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "input register must have 1..={} qubits, got {}",
            MAX_QUBITS, n_max
        )));
    }
    if snr_grid.is_empty() {
        return Err(Error::InvalidArgument("empty snr grid".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let dim = 1usize << n;
        for m in 0..=dim {
            let plan = grover_plan(dim, m)?;
            for &snr in snr_grid {
                if snr.is_nan() || snr <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "snr must be positive, got {}",
                        snr
                    )));
                }
                let p_g = p_grover(dim, m, snr)?;
                let p_s = p_subspace(dim, m, snr)?;
                let p_s_rep =
                    repeated_success_probability(p_s, u64::from(plan.iterations) + 1);
                let degenerate = m == 0;
                let ratio = if degenerate { 1.0 } else { p_g / p_s_rep };
                rows.push(RatioRow {
                    n,
                    dim,
                    num_solutions: m,
                    snr,
                    iterations: plan.iterations,
                    theta: plan.theta,
                    p_grover: p_g,
                    p_subspace_repeated: p_s_rep,
                    ratio,
                    degenerate,
                });
            }
        }
    }
    Ok(rows)
}

/// Writes ratio rows under a fixed header.
pub fn write_ratio_csv(rows: &[RatioRow], w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "{}", RATIO_CSV_HEADER)?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.dim,
            r.num_solutions,
            fmt_f(r.snr),
            r.iterations,
            fmt_f(r.theta),
            fmt_f(r.p_grover),
            fmt_f(r.p_subspace_repeated),
            fmt_f(r.ratio),
            u8::from(r.degenerate)
        )?;
    }
    Ok(())
}

/// Empirical count-estimator distribution at one grid point, next to its
/// predicted law.
#[derive(Debug, Clone, PartialEq)]
pub struct CountPoint {
    pub n: u32,
    pub dim: usize,
    pub num_solutions: usize,
    pub snr: f64,
    pub trials: u64,
    /// histogram[m] = draws whose rounded estimate was m
    pub histogram: Vec<u64>,
    /// predicted mass at each m, same length as the histogram
    pub pmf_theory: Vec<f64>,
    pub tv_distance: f64,
    pub mean_raw: f64,
    pub mean_theory: f64,
    pub var_raw: f64,
    pub var_theory: f64,
}

/// Exact header of the count CSV.
pub const COUNT_CSV_HEADER: &str =
    "n,N,M,snr,trials,m,observed,pmf_hat,pmf_theory,tv_distance,mean_raw,mean_theory";

fn count_draws(
    spec: &OracleSpec,
    params: &NoiseParams,
    grid_index: usize,
    cfg: &ExperimentConfig,
) -> Vec<(f64, usize)> {
    let draw = |t: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(
            cfg.base_seed,
            COUNT_TAG,
            grid_index as u64,
            t,
        ));
        let est = estimate_solution_count(spec, params, &mut rng);
        (est.estimate.norm(), est.count)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..cfg.trials).into_par_iter().map(draw).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..cfg.trials).map(draw).collect()
    }
}

/// Runs the count-estimator experiment over the configured grid. Methods in
/// the config are ignored; only the estimator is exercised.
pub fn run_count_experiment(cfg: &ExperimentConfig) -> Result<Vec<CountPoint>> {
    cfg.validate()?;
    let spec = OracleSpec::new(cfg.n, cfg.resolve_solutions()?)?;
    let dim = spec.dim();
    let m_true = spec.num_solutions();
    let mut points = Vec::with_capacity(cfg.snr_grid.len());
    for (gi, &snr) in cfg.snr_grid.iter().enumerate() {
        let params = NoiseParams::from_snr(cfg.s, snr)?;
        let draws = count_draws(&spec, &params, gi, cfg);

        let max_count = draws.iter().map(|&(_, c)| c).max().unwrap_or(0);
        let mut len = max_count.max(m_true) + 2;
        let pmf_at = |m: usize| {
            crate::analytics::count_estimate_pmf(m, dim, m_true, params.s(), params.sigma2(), params.period())
                .expect("validated point")
        };
        let mut pmf_theory: Vec<f64> = (0..len).map(pmf_at).collect();
        let mut covered: f64 = pmf_theory.iter().sum();
        while 1.0 - covered > 1e-12 && len < 100_000 {
            pmf_theory.push(pmf_at(len));
            covered += pmf_theory[len];
            len += 1;
        }

        let mut histogram = vec![0u64; len];
        for &(_, c) in &draws {
            histogram[c] += 1;
        }
        let trials = cfg.trials as f64;
        let mut tv = 0.0;
        for (mm, &obs) in histogram.iter().enumerate() {
            tv += (obs as f64 / trials - pmf_theory[mm]).abs();
        }
        tv = 0.5 * (tv + (1.0 - covered).max(0.0));

        let mean_raw = draws.iter().map(|&(r, _)| r).sum::<f64>() / trials;
        let var_raw =
            draws.iter().map(|&(r, _)| (r - mean_raw) * (r - mean_raw)).sum::<f64>() / trials;
        let (mean_theory, var_theory) = if params.sigma2() == 0.0 {
            (m_true as f64, 0.0)
        } else {
            rician_mean_var(dim, m_true, params.s(), params.sigma2(), params.period())?
        };

        points.push(CountPoint {
            n: cfg.n,
            dim,
            num_solutions: m_true,
            snr,
            trials: cfg.trials,
            histogram,
            pmf_theory,
            tv_distance: tv,
            mean_raw,
            mean_theory,
            var_raw,
            var_theory,
        });
    }
    Ok(points)
}

/// Writes count points as one CSV line per histogram cell.
pub fn write_count_csv(points: &[CountPoint], w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "{}", COUNT_CSV_HEADER)?;
    for p in points {
        for (m, &obs) in p.histogram.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                p.n,
                p.dim,
                p.num_solutions,
                fmt_f(p.snr),
                p.trials,
                m,
                obs,
                fmt_f(obs as f64 / p.trials as f64),
                fmt_f(p.pmf_theory[m]),
                fmt_f(p.tv_distance),
                fmt_f(p.mean_raw),
                fmt_f(p.mean_theory)
            )?;
        }
    }
    Ok(())
}

/// Largest componentwise amplitude difference between two states.
pub fn state_discrepancy(a: &StateVector, b: &StateVector) -> f64 {
    a.amps()
        .iter()
        .zip(b.amps())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

/// One validation case: a named circuit run through both engines.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationCase {
    pub name: String,
    pub discrepancy: f64,
}

/// Cross-engine agreement report over the whole corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub cases: Vec<ValidationCase>,
    pub tolerance: f64,
    pub max_discrepancy: f64,
    pub pass: bool,
}

impl ValidationReport {
    /// Writes one line per case plus a verdict line.
    pub fn write_report(&self, w: &mut impl Write) -> io::Result<()> {
        for case in &self.cases {
            writeln!(w, "{}: {:.3e}", case.name, case.discrepancy)?;
        }
        writeln!(
            w,
            "max discrepancy {:.3e} against tolerance {:.3e}: {}",
            self.max_discrepancy,
            self.tolerance,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

fn oracle_corpus(dim: usize) -> Vec<Vec<usize>> {
    let mut sets = vec![
        Vec::new(),
        vec![dim - 1],
        (0..dim).collect::<Vec<_>>(),
    ];
    if dim >= 4 {
        sets.push(vec![0, dim / 2, dim - 1]);
    }
    sets
}

/// Runs the noiseless validation corpus through both engines, carrying the
/// signal-path state through waveforms between stages.
pub fn run_validate_signal(n_max: u32, tolerance: f64) -> Result<ValidationReport> {
    use crate::gates::{apply_oracle, hadamard_layer};
    use crate::search::project_output_one;
    use crate::signal::{default_sample_rate, demodulate, signal_project_output_one, synthesize};

    if n_max == 0 || n_max > 10 {
        return Err(Error::InvalidArgument(format!(
            "validation corpus covers 1..=10 qubits, got {}",
            n_max
        )));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive and finite, got {}",
            tolerance
        )));
    }

    let mut cases = Vec::new();
    for n in 1..=n_max {
        let dim = 1usize << n;
        let rate = default_sample_rate(dim);
        let initial = StateVector::new(n, 1.0)?;

        let prepared = hadamard_layer(&initial);
        let staged = hadamard_layer(&demodulate(&synthesize(&initial, rate)?));
        let via_signal = demodulate(&synthesize(&staged, rate)?);
        cases.push(ValidationCase {
            name: format!("n={} prepare", n),
            discrepancy: state_discrepancy(&prepared, &via_signal),
        });

        for (idx, solutions) in oracle_corpus(dim).into_iter().enumerate() {
            let spec = OracleSpec::new(n, solutions)?;
            let marked = apply_oracle(&prepared, &spec)?;
            let staged = apply_oracle(&demodulate(&synthesize(&prepared, rate)?), &spec)?;
            let via_signal = demodulate(&synthesize(&staged, rate)?);
            cases.push(ValidationCase {
                name: format!("n={} oracle {}", n, idx),
                discrepancy: state_discrepancy(&marked, &via_signal),
            });

            let projected = project_output_one(&marked);
            let via_signal =
                demodulate(&signal_project_output_one(&synthesize(&marked, rate)?));
            cases.push(ValidationCase {
                name: format!("n={} project {}", n, idx),
                discrepancy: state_discrepancy(&projected, &via_signal),
            });
        }
    }

    let max_discrepancy = cases.iter().map(|c| c.discrepancy).fold(0.0, f64::max);
    let pass = max_discrepancy < tolerance;
    Ok(ValidationReport {
        cases,
        tolerance,
        max_discrepancy,
        pass,
    })
}
