//! Time-domain engine: a state is a sum of complex tones, one frequency per
//! basis label, sampled over exactly one fundamental period. Strict
//! oversampling of the highest tone makes the discrete inner products exact,
//! so this engine cross-validates the amplitude engine to rounding error.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{component_frequency, flat_index, StateVector};

/// One period of the tone superposition, sampled uniformly.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWaveform {
    samples: Vec<Complex64>,
    sample_rate: usize,
    n: u32,
    omega0: f64,
    s: f64,
}

/// Default oversampling: four samples per cycle of the fastest tone,
/// rounded up to 8N.
pub fn default_sample_rate(dim: usize) -> usize {
    8 * dim
}

impl SampledWaveform {
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// Mutable sample access, e.g. for injecting faults in validation runs.
    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn sample_rate(&self) -> usize {
        self.sample_rate
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Debug dump: one `t,re,im` line per sample.
    pub fn write_dump(&self, w: &mut impl Write) -> io::Result<()> {
        let period = std::f64::consts::TAU / self.omega0;
        for (j, sample) in self.samples.iter().enumerate() {
            let t = j as f64 * period / self.sample_rate as f64;
            writeln!(w, "{},{},{}", t, sample.re, sample.im)?;
        }
        Ok(())
    }
}

fn check_rate(dim: usize, sample_rate: usize) -> Result<()> {
    if sample_rate <= 2 * (2 * dim - 1) {
        return Err(Error::InvalidArgument(format!(
            "sample rate {} undersamples the top tone: need more than {}",
            sample_rate,
            2 * (2 * dim - 1)
        )));
    }
    Ok(())
}

/// Renders the amplitude vector as samples of its tone superposition over
/// one period: sample j = sum over (x, y) of a_{x,y} e^{i w_{x,y} t_j}.
pub fn synthesize(psi: &StateVector, sample_rate: usize) -> Result<SampledWaveform> {
    let dim = psi.dim();
    check_rate(dim, sample_rate)?;
    let omega0 = crate::state::DEFAULT_OMEGA0;
    let period = std::f64::consts::TAU / omega0;
    let mut samples = vec![Complex64::new(0.0, 0.0); sample_rate];
    for x in 0..dim {
        for y in 0..2u8 {
            let amp = psi.amp(x, y);
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let omega = component_frequency(x, y, dim, omega0)?;
            for (j, sample) in samples.iter_mut().enumerate() {
                let t = j as f64 * period / sample_rate as f64;
                *sample += amp * Complex64::from_polar(1.0, omega * t);
            }
        }
    }
    Ok(SampledWaveform {
        samples,
        sample_rate,
        n: psi.n(),
        omega0,
        s: psi.s(),
    })
}

/// Discrete one-period inner product (1/rate) sum of conj(phi_j) psi_j.
pub fn signal_inner_product(phi: &SampledWaveform, psi: &SampledWaveform) -> Result<Complex64> {
    if phi.n != psi.n {
        return Err(Error::DimensionMismatch {
            left: phi.n,
            right: psi.n,
        });
    }
    if phi.sample_rate != psi.sample_rate || phi.omega0 != psi.omega0 {
        return Err(Error::InvalidArgument(format!(
            "sampling mismatch: rate {} vs {}, omega0 {} vs {}",
            phi.sample_rate, psi.sample_rate, phi.omega0, psi.omega0
        )));
    }
    let total: Complex64 = phi
        .samples
        .iter()
        .zip(&psi.samples)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(total / phi.sample_rate as f64)
}

/// Recovers the amplitude vector: each component is the inner product of its
/// reference tone with the waveform.
pub fn demodulate(wave: &SampledWaveform) -> StateVector {
    let dim = wave.dim();
    let period = std::f64::consts::TAU / wave.omega0;
    let mut psi = StateVector::zero(wave.n, wave.s).expect("valid waveform header");
    let amps = psi.amps_mut();
    for x in 0..dim {
        for y in 0..2u8 {
            let omega = component_frequency(x, y, dim, wave.omega0).expect("in-range label");
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, sample) in wave.samples.iter().enumerate() {
                let t = j as f64 * period / wave.sample_rate as f64;
                acc += Complex64::from_polar(1.0, -omega * t) * sample;
            }
            amps[flat_index(x, y)] = acc / wave.sample_rate as f64;
        }
    }
    psi
}

/// Signal-level projection onto the y = 1 subspace: demodulate, zero the
/// y = 0 tones, resynthesize at the same rate.
pub fn signal_project_output_one(wave: &SampledWaveform) -> SampledWaveform {
    let mut psi = demodulate(wave);
    let dim = psi.dim();
    let amps = psi.amps_mut();
    for x in 0..dim {
        amps[flat_index(x, 0)] = Complex64::new(0.0, 0.0);
    }
    synthesize(&psi, wave.sample_rate).expect("rate already validated")
}
