//! The three search procedures over a noisy template oracle, Born-rule
//! measurement, output-subspace projection, solution counting, and the
//! iterative extraction loop.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gates::{
    diffusion_in_place, grover_plan, h_in_place, hadamard_layer, oracle_in_place, x_in_place,
    OracleSpec,
};
use crate::noise::{add_noise_in_place, NoiseParams};
use crate::state::{flat_index, StateVector};

/// Search procedure selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Subspace,
    Grover,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Brute, Method::Subspace, Method::Grover];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Subspace => "subspace",
            Method::Grover => "grover",
        }
    }

    /// Stable stream tag folded into per-trial seeds.
    pub fn tag(&self) -> u64 {
        match self {
            Method::Brute => 1,
            Method::Subspace => 2,
            Method::Grover => 3,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "subspace" => Ok(Method::Subspace),
            "grover" => Ok(Method::Grover),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{}' (expected brute, subspace, or grover)",
                other
            ))),
        }
    }
}

/// Outcome of one search trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialRecord {
    pub method: Method,
    pub outcome_x: Option<usize>,
    pub outcome_y: Option<u8>,
    pub success: bool,
    pub oracle_calls: u32,
    pub seed: u64,
}

/// Raw and rounded solution-count estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountEstimate {
    pub estimate: Complex64,
    pub count: usize,
}

/// Zeroes every output-bit-0 amplitude; keeps the y = 1 subspace.
pub fn project_output_one(psi: &StateVector) -> StateVector {
    let mut out = psi.clone();
    project_in_place(&mut out);
    out
}

fn project_in_place(psi: &mut StateVector) {
    let dim = psi.dim();
    let amps = psi.amps_mut();
    for x in 0..dim {
        amps[flat_index(x, 0)] = Complex64::new(0.0, 0.0);
    }
}

/// Born-rule measurement of all n + 1 qubits.
pub fn measure_full(psi: &StateVector, rng: &mut impl Rng) -> Result<(usize, u8)> {
    let norm = psi.norm_sq();
    if norm == 0.0 {
        return Err(Error::UnmeasurableState);
    }
    let target = rng.gen::<f64>() * norm;
    let mut acc = 0.0;
    let mut last_occupied = 0;
    for (i, a) in psi.amps().iter().enumerate() {
        let w = a.norm_sqr();
        if w > 0.0 {
            acc += w;
            last_occupied = i;
            if acc > target {
                return Ok((i >> 1, (i & 1) as u8));
            }
        }
    }
    Ok((last_occupied >> 1, (last_occupied & 1) as u8))
}

// uniform superposition over inputs with the output bit cleared
fn prepared_state(spec: &OracleSpec, params: &NoiseParams) -> StateVector {
    let psi = StateVector::new(spec.n(), params.s()).expect("validated spec");
    hadamard_layer(&psi)
}

fn judge(spec: &OracleSpec, outcome: (usize, u8)) -> bool {
    outcome.1 == 1 && spec.is_solution(outcome.0)
}

/// One full-measurement search trial: prepare, one noisy oracle call,
/// measure everything.
pub fn brute_force_trial(spec: &OracleSpec, params: &NoiseParams, seed: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = prepared_state(spec, params);
    oracle_in_place(psi.amps_mut(), spec);
    add_noise_in_place(psi.amps_mut(), params, &mut rng);
    let outcome = measure_full(&psi, &mut rng).ok();
    TrialRecord {
        method: Method::Brute,
        outcome_x: outcome.map(|o| o.0),
        outcome_y: outcome.map(|o| o.1),
        success: outcome.map_or(false, |o| judge(spec, o)),
        oracle_calls: 1,
        seed,
    }
}

/// One projected search trial: prepare, one noisy oracle call, project onto
/// the y = 1 subspace, measure. A zero-norm projection is a failed trial.
pub fn subspace_trial(spec: &OracleSpec, params: &NoiseParams, seed: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut psi = prepared_state(spec, params);
    oracle_in_place(psi.amps_mut(), spec);
    add_noise_in_place(psi.amps_mut(), params, &mut rng);
    project_in_place(&mut psi);
    let outcome = measure_full(&psi, &mut rng).ok();
    TrialRecord {
        method: Method::Subspace,
        outcome_x: outcome.map(|o| o.0),
        outcome_y: outcome.map(|o| o.1),
        success: outcome.map_or(false, |o| judge(spec, o)),
        oracle_calls: 1,
        seed,
    }
}

/// One amplified search trial: output qubit to the phase-kick state, uniform
/// inputs, R rounds of noisy oracle plus diffusion, final output Hadamard,
/// measure.
pub fn grover_trial(spec: &OracleSpec, params: &NoiseParams, seed: u64) -> TrialRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan = grover_plan(spec.dim(), spec.num_solutions()).expect("validated spec");
    let mut psi = StateVector::new(spec.n(), params.s()).expect("validated spec");
    x_in_place(psi.amps_mut(), 0);
    h_in_place(psi.amps_mut(), 0);
    psi = hadamard_layer(&psi);
    for _ in 0..plan.iterations {
        oracle_in_place(psi.amps_mut(), spec);
        add_noise_in_place(psi.amps_mut(), params, &mut rng);
        diffusion_in_place(psi.amps_mut());
    }
    h_in_place(psi.amps_mut(), 0);
    let outcome = measure_full(&psi, &mut rng).ok();
    TrialRecord {
        method: Method::Grover,
        outcome_x: outcome.map(|o| o.0),
        outcome_y: outcome.map(|o| o.1),
        success: outcome.map_or(false, |o| judge(spec, o)),
        oracle_calls: plan.iterations,
        seed,
    }
}

/// Runs one trial of the given method.
pub fn run_trial(
    method: Method,
    spec: &OracleSpec,
    params: &NoiseParams,
    seed: u64,
) -> TrialRecord {
    match method {
        Method::Brute => brute_force_trial(spec, params, seed),
        Method::Subspace => subspace_trial(spec, params, seed),
        Method::Grover => grover_trial(spec, params, seed),
    }
}

// uniform y=1 reference state used by the counting inner product
fn counting_reference(n: u32, s: f64) -> StateVector {
    let mut phi = StateVector::zero(n, s).expect("valid n");
    let dim = phi.dim();
    let coeff = s / (dim as f64).sqrt();
    let amps = phi.amps_mut();
    for x in 0..dim {
        amps[flat_index(x, 1)] = Complex64::new(coeff, 0.0);
    }
    phi
}

fn count_from_projected(projected: &StateVector, phi: &StateVector, s: f64) -> CountEstimate {
    let dim = projected.dim();
    let ip = phi
        .inner_product(projected)
        .expect("matching register sizes");
    let estimate = ip * dim as f64 / (s * s);
    CountEstimate {
        estimate,
        count: (estimate.norm() + 0.5).floor() as usize,
    }
}

/// Estimates the solution count from a single noisy oracle call: the scaled
/// overlap of the projected state with the uniform y = 1 reference, rounded
/// to the nearest integer.
pub fn estimate_solution_count(
    spec: &OracleSpec,
    params: &NoiseParams,
    rng: &mut impl Rng,
) -> CountEstimate {
    let mut psi = prepared_state(spec, params);
    oracle_in_place(psi.amps_mut(), spec);
    add_noise_in_place(psi.amps_mut(), params, rng);
    project_in_place(&mut psi);
    let phi = counting_reference(spec.n(), params.s());
    count_from_projected(&psi, &phi, params.s())
}

/// Extracts solutions one at a time from a single noisy oracle call: project,
/// estimate the remaining count, measure, remove the measured component,
/// repeat. Stops when the estimate reaches zero or after max_iters rounds.
pub fn extract_all_solutions(
    spec: &OracleSpec,
    params: &NoiseParams,
    rng: &mut impl Rng,
    max_iters: usize,
) -> Result<Vec<usize>> {
    if max_iters == 0 {
        return Err(Error::InvalidArgument(
            "max_iters must be at least 1".to_string(),
        ));
    }
    let mut psi = prepared_state(spec, params);
    oracle_in_place(psi.amps_mut(), spec);
    add_noise_in_place(psi.amps_mut(), params, rng);
    project_in_place(&mut psi);
    let phi = counting_reference(spec.n(), params.s());
    let mut found = Vec::new();
    for _ in 0..max_iters {
        if count_from_projected(&psi, &phi, params.s()).count == 0 {
            break;
        }
        let (x, y) = match measure_full(&psi, rng) {
            Ok(outcome) => outcome,
            Err(_) => break,
        };
        found.push(x);
        let amps = psi.amps_mut();
        amps[flat_index(x, y)] = Complex64::new(0.0, 0.0);
    }
    Ok(found)
}

/// Probability of at least one success in k independent trials:
/// 1 - (1 - p)^k, evaluated stably for small p and large k.
pub fn repeated_success_probability(p: f64, k: u64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "probability out of range: {}", p);
    if k == 0 || p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    -f64::exp_m1(k as f64 * f64::ln_1p(-p))
}
