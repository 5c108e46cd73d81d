//! Gate set acting on amplitude vectors: Hadamard, NOT, the collective
//! coefficient swap, solution-aligned conjugation, template oracles, and the
//! Grover diffusion step. Qubit 0 is the output register; input qubit i is
//! bit i-1 of x.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Planted-solution oracle over n input qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    n: u32,
    solutions: Vec<usize>,
}

impl OracleSpec {
    /// Validates range and distinctness; solutions are kept sorted.
    pub fn new(n: u32, mut solutions: Vec<usize>) -> Result<Self> {
        if n == 0 || n > crate::state::MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..={}, got {}",
                crate::state::MAX_QUBITS,
                n
            )));
        }
        let dim = 1usize << n;
        if let Some(&bad) = solutions.iter().find(|&&a| a >= dim) {
            return Err(Error::InvalidArgument(format!(
                "solution {} out of range for N={}",
                bad, dim
            )));
        }
        solutions.sort_unstable();
        if solutions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "solutions must be distinct".to_string(),
            ));
        }
        Ok(OracleSpec { n, solutions })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn num_solutions(&self) -> usize {
        self.solutions.len()
    }

    pub fn solutions(&self) -> &[usize] {
        &self.solutions
    }

    pub fn is_solution(&self, x: usize) -> bool {
        self.solutions.binary_search(&x).is_ok()
    }
}

/// Iteration plan for the amplitude-amplification loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverPlan {
    /// Rotation angle theta with sin(theta/2) = sqrt(M/N).
    pub theta: f64,
    /// Iteration count R.
    pub iterations: u32,
    /// True when M > N/2 and the complemented-oracle rule fixed R.
    pub complemented: bool,
}

/// Chooses (theta, R) from the dimension and solution count.
pub fn grover_plan(dim: usize, num_solutions: usize) -> Result<GroverPlan> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if num_solutions > dim {
        return Err(Error::InvalidArgument(format!(
            "solution count {} exceeds dimension {}",
            num_solutions, dim
        )));
    }
    let (n, m) = (dim as f64, num_solutions as f64);
    if num_solutions == 0 {
        return Ok(GroverPlan {
            theta: 0.0,
            iterations: 0,
            complemented: false,
        });
    }
    let theta = 2.0 * (m / n).sqrt().asin();
    if 2 * num_solutions <= dim {
        let r = (std::f64::consts::PI * (n / m).sqrt() / 4.0).floor();
        Ok(GroverPlan {
            theta,
            iterations: r as u32,
            complemented: false,
        })
    } else {
        let r = (std::f64::consts::PI * ((n - m) / m).sqrt() / 4.0).floor();
        Ok(GroverPlan {
            theta,
            iterations: r as u32,
            complemented: true,
        })
    }
}

fn check_qubit(k: u32, n: u32) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "qubit index {} out of range for n={}",
            k, n
        )));
    }
    Ok(())
}

pub(crate) fn x_in_place(amps: &mut [Complex64], k: u32) {
    let bit = 1usize << k;
    for i in 0..amps.len() {
        if i & bit == 0 {
            amps.swap(i, i | bit);
        }
    }
}

pub(crate) fn h_in_place(amps: &mut [Complex64], k: u32) {
    let bit = 1usize << k;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..amps.len() {
        if i & bit == 0 {
            let j = i | bit;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = (a + b) * inv_sqrt2;
            amps[j] = (a - b) * inv_sqrt2;
        }
    }
}

pub(crate) fn toffoli_in_place(amps: &mut [Complex64]) {
    let len = amps.len();
    amps.swap(len - 2, len - 1);
}

pub(crate) fn align_in_place(amps: &mut [Complex64], n: u32, a: usize) {
    for i in 0..n {
        if (a >> i) & 1 == 0 {
            x_in_place(amps, i + 1);
        }
    }
}

pub(crate) fn oracle_in_place(amps: &mut [Complex64], spec: &OracleSpec) {
    for &a in spec.solutions() {
        align_in_place(amps, spec.n(), a);
        toffoli_in_place(amps);
        align_in_place(amps, spec.n(), a);
    }
}

pub(crate) fn diffusion_in_place(amps: &mut [Complex64]) {
    let dim = amps.len() / 2;
    for y in 0..2usize {
        let mean: Complex64 = (0..dim).map(|x| amps[2 * x + y]).sum::<Complex64>() / dim as f64;
        for x in 0..dim {
            amps[2 * x + y] = 2.0 * mean - amps[2 * x + y];
        }
    }
}

/// Hadamard on qubit k (0 = output register).
pub fn hadamard(psi: &StateVector, k: u32) -> Result<StateVector> {
    check_qubit(k, psi.n())?;
    let mut out = psi.clone();
    h_in_place(out.amps_mut(), k);
    Ok(out)
}

/// NOT on qubit k: swaps amplitudes between states differing in bit k.
pub fn x_gate(psi: &StateVector, k: u32) -> Result<StateVector> {
    check_qubit(k, psi.n())?;
    let mut out = psi.clone();
    x_in_place(out.amps_mut(), k);
    Ok(out)
}

/// Collective controlled NOT: exchanges the (N-1, 0) and (N-1, 1) amplitudes.
pub fn n_fold_toffoli(psi: &StateVector) -> StateVector {
    let mut out = psi.clone();
    toffoli_in_place(out.amps_mut());
    out
}

/// Maps |a> to |N-1> by applying X to input qubit i+1 wherever bit i of a
/// is zero; self-inverse.
pub fn align_solution(psi: &StateVector, a: usize) -> Result<StateVector> {
    if a >= psi.dim() {
        return Err(Error::InvalidArgument(format!(
            "solution {} out of range for N={}",
            a,
            psi.dim()
        )));
    }
    let mut out = psi.clone();
    align_in_place(out.amps_mut(), psi.n(), a);
    Ok(out)
}

/// Template oracle |x,y> -> |x, y xor f(x)>, built as the product of
/// align/swap/align factors over the solution list; empty list is identity.
pub fn apply_oracle(psi: &StateVector, spec: &OracleSpec) -> Result<StateVector> {
    if psi.n() != spec.n() {
        return Err(Error::DimensionMismatch {
            left: psi.n(),
            right: spec.n(),
        });
    }
    let mut out = psi.clone();
    oracle_in_place(out.amps_mut(), spec);
    Ok(out)
}

/// Inversion about the mean on the input register, per output-bit slice.
pub fn diffusion(psi: &StateVector) -> StateVector {
    let mut out = psi.clone();
    diffusion_in_place(out.amps_mut());
    out
}

/// Hadamard on every input qubit 1..=n.
pub fn hadamard_layer(psi: &StateVector) -> StateVector {
    let mut out = psi.clone();
    for k in 1..=psi.n() {
        h_in_place(out.amps_mut(), k);
    }
    out
}
