//! Additive-noise model for the oracle: independent circular complex
//! Gaussian amplitude noise with per-component variance sigma2/T, plus the
//! conversions between sigma2, SNR, and oracle fidelity.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::gates::{oracle_in_place, OracleSpec};
use crate::state::StateVector;

/// One fundamental period at omega0 = 1.
pub const DEFAULT_PERIOD: f64 = std::f64::consts::TAU;

/// Signal magnitude, integration period, and noise power spectral density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    s: f64,
    t: f64,
    sigma2: f64,
}

impl NoiseParams {
    pub fn new(s: f64, t: f64, sigma2: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "magnitude s must be positive and finite, got {}",
                s
            )));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "period must be positive and finite, got {}",
                t
            )));
        }
        if !(sigma2 >= 0.0) || !sigma2.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "noise density must be nonnegative and finite, got {}",
                sigma2
            )));
        }
        Ok(NoiseParams { s, t, sigma2 })
    }

    /// Zero-noise parameters with the default period.
    pub fn noiseless(s: f64) -> Self {
        NoiseParams {
            s,
            t: DEFAULT_PERIOD,
            sigma2: 0.0,
        }
    }

    /// Fixes sigma2 from the target SNR S^2 = s^2 T / sigma2; infinite SNR
    /// means zero noise.
    pub fn from_snr(s: f64, snr: f64) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "magnitude s must be positive and finite, got {}",
                s
            )));
        }
        if !(snr > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "snr must be positive, got {}",
                snr
            )));
        }
        let sigma2 = if snr.is_infinite() {
            0.0
        } else {
            s * s * DEFAULT_PERIOD / snr
        };
        NoiseParams::new(s, DEFAULT_PERIOD, sigma2)
    }

    /// Fixes sigma2 so the oracle fidelity for dimension N equals `fidelity`.
    pub fn from_fidelity(dim: usize, s: f64, fidelity_target: f64) -> Result<Self> {
        let sigma2 = sigma2_for_fidelity(dim, s, DEFAULT_PERIOD, fidelity_target)?;
        NoiseParams::new(s, DEFAULT_PERIOD, sigma2)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn period(&self) -> f64 {
        self.t
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// S^2 = s^2 T / sigma2; infinity when sigma2 = 0.
    pub fn snr(&self) -> f64 {
        if self.sigma2 == 0.0 {
            f64::INFINITY
        } else {
            self.s * self.s * self.t / self.sigma2
        }
    }

    /// Complex variance per amplitude component: sigma2 / T.
    pub fn component_variance(&self) -> f64 {
        self.sigma2 / self.t
    }
}

/// Draws a pure-noise amplitude vector: each component is an independent
/// complex Gaussian with mean 0 and variance sigma2/T.
pub fn sample_noise_state(
    n: u32,
    params: &NoiseParams,
    rng: &mut impl Rng,
) -> Result<StateVector> {
    let mut psi = StateVector::zero(n, params.s())?;
    add_noise_in_place(psi.amps_mut(), params, rng);
    Ok(psi)
}

pub(crate) fn add_noise_in_place(amps: &mut [Complex64], params: &NoiseParams, rng: &mut impl Rng) {
    if params.sigma2 == 0.0 {
        return;
    }
    let quad_sd = (params.component_variance() / 2.0).sqrt();
    let normal = Normal::new(0.0, quad_sd).expect("finite standard deviation");
    for a in amps.iter_mut() {
        *a += Complex64::new(normal.sample(rng), normal.sample(rng));
    }
}

/// One noisy oracle call: U_f applied exactly, then a fresh noise draw added.
pub fn noisy_oracle(
    psi: &StateVector,
    spec: &OracleSpec,
    params: &NoiseParams,
    rng: &mut impl Rng,
) -> Result<StateVector> {
    if psi.n() != spec.n() {
        return Err(Error::DimensionMismatch {
            left: psi.n(),
            right: spec.n(),
        });
    }
    let mut out = psi.clone();
    oracle_in_place(out.amps_mut(), spec);
    add_noise_in_place(out.amps_mut(), params, rng);
    Ok(out)
}

/// Oracle fidelity: F^2 = (s^2 + sigma2/T) / (s^2 + 2N sigma2/T).
pub fn fidelity(dim: usize, params: &NoiseParams) -> f64 {
    let s2 = params.s() * params.s();
    let v = params.component_variance();
    ((s2 + v) / (s2 + 2.0 * dim as f64 * v)).sqrt()
}

/// Inverts the fidelity relation: sigma2 = s^2 T (1 - F^2) / (2N F^2 - 1).
/// Fidelities at or below the floor 1/sqrt(2N) are unreachable.
pub fn sigma2_for_fidelity(dim: usize, s: f64, t: f64, fidelity_target: f64) -> Result<f64> {
    if !(s > 0.0) || !(t > 0.0) {
        return Err(Error::InvalidArgument(
            "magnitude and period must be positive".to_string(),
        ));
    }
    if fidelity_target > 1.0 || !fidelity_target.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "fidelity must be at most 1, got {}",
            fidelity_target
        )));
    }
    let floor = 1.0 / (2.0 * dim as f64).sqrt();
    if fidelity_target <= floor {
        return Err(Error::UnreachableFidelity {
            fidelity: fidelity_target,
            floor,
        });
    }
    let f2 = fidelity_target * fidelity_target;
    Ok(s * s * t * (1.0 - f2) / (2.0 * dim as f64 * f2 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{apply_oracle, hadamard_layer};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const NUM_DRAWS: usize = 100_000;

    #[test]
    fn zero_noise_samples_zero_state() {
        let params = NoiseParams::noiseless(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = sample_noise_state(3, &params, &mut rng).unwrap();
        assert_eq!(psi.norm_sq(), 0.0);
    }

    #[test]
    fn noise_moments_match_target_variance() {
        let t = DEFAULT_PERIOD;
        let params = NoiseParams::new(1.0, t, 0.01 * t).unwrap();
        assert_relative_eq!(params.component_variance(), 0.01, max_relative = 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut sum_sq = [0.0f64; 8];
        let mut cross = [Complex64::new(0.0, 0.0); 4];
        for _ in 0..NUM_DRAWS {
            let psi = sample_noise_state(2, &params, &mut rng).unwrap();
            let amps = psi.amps();
            for (k, a) in amps.iter().enumerate() {
                sum_sq[k] += a.norm_sqr();
            }
            for k in 0..4 {
                cross[k] += amps[k].conj() * amps[k + 4];
            }
        }
        for k in 0..8 {
            let var = sum_sq[k] / NUM_DRAWS as f64;
            assert!(
                (var - 0.01).abs() < 0.0005,
                "component {} variance {}",
                k,
                var
            );
        }
        for k in 0..4 {
            let cov = cross[k] / NUM_DRAWS as f64;
            assert!(cov.norm() < 2e-4, "cross covariance {} is {}", k, cov);
        }
    }

    #[test]
    fn noise_quadratures_pass_ks_against_gaussian() {
        // two-sided KS critical value at significance 0.01
        let t = DEFAULT_PERIOD;
        let params = NoiseParams::new(1.0, t, 0.04 * t).unwrap();
        let quad_sd = (params.component_variance() / 2.0).sqrt();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut values = Vec::with_capacity(10_000);
        while values.len() < 10_000 {
            let psi = sample_noise_state(1, &params, &mut rng).unwrap();
            for a in psi.amps() {
                values.push(a.re);
                values.push(a.im);
            }
        }
        values.truncate(10_000);
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = values.len() as f64;
        let mut d_stat = 0.0f64;
        for (i, v) in values.iter().enumerate() {
            let z = v / (quad_sd * std::f64::consts::SQRT_2);
            let cdf = 0.5 * (1.0 + statrs::function::erf::erf(z));
            let hi = (i as f64 + 1.0) / n - cdf;
            let lo = cdf - i as f64 / n;
            d_stat = d_stat.max(hi.max(lo));
        }
        let critical = 1.63 / n.sqrt();
        assert!(d_stat < critical, "KS statistic {} >= {}", d_stat, critical);
    }

    #[test]
    fn noiseless_oracle_call_is_exact() {
        let spec = OracleSpec::new(3, vec![1, 6]).unwrap();
        let params = NoiseParams::noiseless(1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let psi = hadamard_layer(&StateVector::new(3, 1.0).unwrap());
        let noisy = noisy_oracle(&psi, &spec, &params, &mut rng).unwrap();
        assert_eq!(noisy, apply_oracle(&psi, &spec).unwrap());
    }

    #[test]
    fn noisy_oracle_mean_and_power() {
        let t = DEFAULT_PERIOD;
        let params = NoiseParams::new(1.0, t, 0.01 * t).unwrap();
        let spec = OracleSpec::new(2, vec![2]).unwrap();
        let psi = hadamard_layer(&StateVector::new(2, 1.0).unwrap());
        let clean = apply_oracle(&psi, &spec).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut mean = vec![Complex64::new(0.0, 0.0); 8];
        let mut power = 0.0f64;
        for _ in 0..NUM_DRAWS {
            let out = noisy_oracle(&psi, &spec, &params, &mut rng).unwrap();
            for (m, a) in mean.iter_mut().zip(out.amps()) {
                *m += a;
            }
            power += out.norm_sq();
        }
        for (m, c) in mean.iter().zip(clean.amps()) {
            let avg = m / NUM_DRAWS as f64;
            assert!((avg - c).norm() < 1.5e-3, "mean {} vs clean {}", avg, c);
        }
        let avg_power = power / NUM_DRAWS as f64;
        let expect = 1.0 + 2.0 * 4.0 * 0.01;
        assert!(
            (avg_power - expect).abs() / expect < 0.01,
            "power {} vs {}",
            avg_power,
            expect
        );
    }

    #[test]
    fn fidelity_examples() {
        assert_eq!(fidelity(16, &NoiseParams::noiseless(1.0)), 1.0);

        let params = NoiseParams::from_snr(1.0, 1.0).unwrap();
        assert_relative_eq!(
            fidelity(16, &params),
            (2.0f64 / 33.0).sqrt(),
            max_relative = 1e-12
        );

        let huge = NoiseParams::new(1.0, DEFAULT_PERIOD, 1e12).unwrap();
        assert_relative_eq!(
            fidelity(16, &huge),
            1.0 / 32.0f64.sqrt(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn fidelity_depends_only_on_dim_and_snr() {
        for &snr in &[0.5, 3.0, 40.0] {
            let a = NoiseParams::from_snr(1.0, snr).unwrap();
            let b = NoiseParams::new(2.5, DEFAULT_PERIOD, 2.5 * 2.5 * DEFAULT_PERIOD / snr).unwrap();
            assert_relative_eq!(fidelity(8, &a), fidelity(8, &b), max_relative = 1e-12);
        }
    }

    #[test]
    fn sigma2_inversion_round_trips() {
        assert_eq!(sigma2_for_fidelity(16, 1.0, DEFAULT_PERIOD, 1.0).unwrap(), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for &dim in &[2usize, 8, 16, 64] {
            let floor = 1.0 / (2.0 * dim as f64).sqrt();
            for _ in 0..20 {
                let f = floor + (1.0 - floor) * rand::Rng::gen_range(&mut rng, 0.01..1.0);
                let sigma2 = sigma2_for_fidelity(dim, 1.3, DEFAULT_PERIOD, f).unwrap();
                let params = NoiseParams::new(1.3, DEFAULT_PERIOD, sigma2).unwrap();
                assert_relative_eq!(fidelity(dim, &params), f, epsilon = 1e-12);
            }
        }

        assert!(matches!(
            sigma2_for_fidelity(2, 1.0, DEFAULT_PERIOD, 0.5),
            Err(Error::UnreachableFidelity { .. })
        ));
        assert!(matches!(
            sigma2_for_fidelity(2, 1.0, DEFAULT_PERIOD, 1.5),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn fidelity_strictly_decreasing_in_sigma2() {
        for &dim in &[2usize, 16, 256] {
            let mut last = f64::INFINITY;
            for k in 0..60 {
                let sigma2 = 1e-4 * 1.5f64.powi(k);
                let params = NoiseParams::new(1.0, DEFAULT_PERIOD, sigma2).unwrap();
                let f = fidelity(dim, &params);
                assert!(f < last, "fidelity not decreasing at sigma2={}", sigma2);
                last = f;
            }
        }
    }

    #[test]
    fn snr_round_trip() {
        let params = NoiseParams::from_snr(2.0, 125.0).unwrap();
        assert_relative_eq!(params.snr(), 125.0, max_relative = 1e-12);
        assert_eq!(NoiseParams::noiseless(1.0).snr(), f64::INFINITY);
        assert_eq!(
            NoiseParams::from_snr(1.0, f64::INFINITY).unwrap().sigma2(),
            0.0
        );
        assert!(NoiseParams::from_snr(1.0, 0.0).is_err());
        assert!(NoiseParams::from_snr(1.0, -3.0).is_err());
    }
}
