//! Amplitude-level QMT state representation.
//!
//! A state of n input qubits plus one output qubit is stored as 2N complex
//! amplitudes (N = 2^n) indexed by (x, y) with x the input value and y the
//! output bit. Each component corresponds to one tone at angular frequency
//! (2N - 1 - 4x - 2y)*omega0, so qubit k of the flat index maps to the
//! frequency ladder omega_k = 2^k * omega0.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Base angular frequency convention: omega0 = 1, so one period is T = 2*pi.
pub const DEFAULT_OMEGA0: f64 = 1.0;

/// Largest supported input-register size; amplitude storage is 2^(n+1) values.
pub const MAX_QUBITS: u32 = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: u32,
    s: f64,
    amps: Vec<Complex64>,
}

#[inline]
pub(crate) fn flat_index(x: usize, y: u8) -> usize {
    2 * x + y as usize
}

impl StateVector {
    /// Initial state s|0,0>: amplitude s at (x=0, y=0), zero elsewhere.
    pub fn new(n: u32, s: f64) -> Result<Self> {
        let mut psi = Self::zero(n, s)?;
        psi.amps[0] = Complex64::new(s, 0.0);
        Ok(psi)
    }

    /// All-zero amplitude vector carrying the nominal magnitude tag s.
    pub fn zero(n: u32, s: f64) -> Result<Self> {
        check_n_s(n, s)?;
        Ok(StateVector {
            n,
            s,
            amps: vec![Complex64::new(0.0, 0.0); 2 << n],
        })
    }

    /// Builds a state from an explicit amplitude sequence of length 2N.
    pub fn from_amps(n: u32, s: f64, amps: Vec<Complex64>) -> Result<Self> {
        check_n_s(n, s)?;
        if amps.len() != 2 << n {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes for n={}, got {}",
                2usize << n,
                n,
                amps.len()
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument(
                "amplitudes must be finite".to_string(),
            ));
        }
        Ok(StateVector { n, s, amps })
    }

    /// Basis state c|x,y> with coefficient c.
    pub fn basis(n: u32, s: f64, x: usize, y: u8, coeff: Complex64) -> Result<Self> {
        let mut psi = Self::zero(n, s)?;
        check_xy(x, y, psi.dim())?;
        psi.amps[flat_index(x, y)] = coeff;
        Ok(psi)
    }

    /// Input-register qubit count n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Input-register dimension N = 2^n.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Nominal magnitude s.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Amplitude at (x, y). Panics if x or y is out of range.
    pub fn amp(&self, x: usize, y: u8) -> Complex64 {
        assert!(x < self.dim() && y <= 1, "basis label out of range");
        self.amps[flat_index(x, y)]
    }

    /// Flat amplitude slice; index (x, y) lives at 2x + y.
    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// <self|other>: conjugate-linear in self, linear in other.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared norm: sum of |amplitude|^2.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Componentwise difference self - other.
    pub fn subtract(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let amps = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a - b)
            .collect();
        Ok(StateVector {
            n: self.n,
            s: self.s,
            amps,
        })
    }

    /// Debug dump: header `n=<n> s=<s>`, then one `x,y,re,im` line per component.
    pub fn write_dump(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "n={} s={}", self.n, self.s)?;
        for x in 0..self.dim() {
            for y in 0..2u8 {
                let a = self.amps[flat_index(x, y)];
                writeln!(w, "{},{},{},{}", x, y, a.re, a.im)?;
            }
        }
        Ok(())
    }
}

fn check_n_s(n: u32, s: f64) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "qubit count must be in 1..={}, got {}",
            MAX_QUBITS, n
        )));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "magnitude s must be positive and finite, got {}",
            s
        )));
    }
    Ok(())
}

fn check_xy(x: usize, y: u8, dim: usize) -> Result<()> {
    if x >= dim || y > 1 {
        return Err(Error::InvalidArgument(format!(
            "basis label ({}, {}) out of range for N={}",
            x, y, dim
        )));
    }
    Ok(())
}

/// Tone frequency of component (x, y): (2N - 1 - 4x - 2y) * omega0.
pub fn component_frequency(x: usize, y: u8, dim: usize, omega0: f64) -> Result<f64> {
    check_xy(x, y, dim)?;
    let multiple = 2 * dim as i64 - 1 - 4 * x as i64 - 2 * y as i64;
    Ok(multiple as f64 * omega0)
}

/// Frequency layout of a 2N-component state: distinct odd multiples of omega0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyMap {
    omega0: f64,
    dim: usize,
}

impl FrequencyMap {
    pub fn new(dim: usize, omega0: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "omega0 must be positive and finite, got {}",
                omega0
            )));
        }
        Ok(FrequencyMap { omega0, dim })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frequency(&self, x: usize, y: u8) -> Result<f64> {
        component_frequency(x, y, self.dim, self.omega0)
    }
}
