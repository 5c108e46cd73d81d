//! Simulator of search on a quadrature-modulated tonal (QMT) signal device.
//!
//! A register of n+1 qubits is represented by 2N complex amplitudes (N = 2^n),
//! one per tone frequency; qubit 0 is the output register. The crate provides
//! the amplitude-level engine (states, gates, template oracles), an additive
//! complex Gaussian oracle-noise model, three search procedures (brute force,
//! subspace projection, Grover), closed-form success probabilities for each,
//! a time-domain signal engine used to cross-validate the amplitude engine,
//! and a reproducible Monte Carlo sweep runner.
//!
//! Monte Carlo sweeps run data-parallel under the default `parallel` feature
//! (rayon) and fall back to a sequential runner without it; results are
//! bit-identical either way.

pub mod analytics;
pub mod error;
pub mod gates;
pub mod noise;
pub mod search;
pub mod signal;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use gates::{GroverPlan, OracleSpec};
pub use noise::NoiseParams;
pub use search::{Method, TrialRecord};
pub use signal::SampledWaveform;
pub use state::{FrequencyMap, StateVector};
pub use sweep::{ExperimentConfig, SolutionSpec, SweepResult};
