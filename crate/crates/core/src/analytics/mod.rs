//! Closed-form success probabilities for the three search methods, the
//! SNR crossover analysis between the subspace and amplified searches, and
//! the distribution of the noisy solution-count estimate.

pub mod special;

pub use special::{clopper_pearson, laguerre_half, marcum_q1};

use crate::error::{Error, Result};
use crate::gates::{grover_plan, GroverPlan};
use crate::search::repeated_success_probability;

/// Closed-form curves evaluated at one (N, M, snr) point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodCurvePoint {
    pub dim: usize,
    pub num_solutions: usize,
    pub snr: f64,
    pub p_brute: f64,
    pub p_subspace: f64,
    pub p_grover: f64,
    /// 1 - (1 - p_brute)^N.
    pub p_brute_repeated: f64,
    /// 1 - (1 - p_subspace)^N.
    pub p_subspace_repeated: f64,
    pub iterations: u32,
    pub theta: f64,
}

fn check_point(dim: usize, num_solutions: usize, snr: f64) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if num_solutions > dim {
        return Err(Error::InvalidArgument(format!(
            "solution count {} exceeds dimension {}",
            num_solutions, dim
        )));
    }
    if !(snr > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "snr must be positive, got {}",
            snr
        )));
    }
    Ok(())
}

/// Single-trial success probability of the full-measurement search:
/// (M/N + M/S^2) / (1 + 2N/S^2).
pub fn p_brute(dim: usize, num_solutions: usize, snr: f64) -> Result<f64> {
    check_point(dim, num_solutions, snr)?;
    let (n, m) = (dim as f64, num_solutions as f64);
    if snr.is_infinite() {
        return Ok(m / n);
    }
    Ok((m / n + m / snr) / (1.0 + 2.0 * n / snr))
}

/// Single-trial success probability of the projected search:
/// (M/N + M/S^2) / (M/N + N/S^2) for M >= 1, zero for M = 0.
pub fn p_subspace(dim: usize, num_solutions: usize, snr: f64) -> Result<f64> {
    check_point(dim, num_solutions, snr)?;
    if num_solutions == 0 {
        return Ok(0.0);
    }
    let (n, m) = (dim as f64, num_solutions as f64);
    if snr.is_infinite() {
        return Ok(1.0);
    }
    Ok((m / n + m / snr) / (m / n + n / snr))
}

/// Single-trial success probability of the amplified search after R noisy
/// oracle calls: (sin^2((R + 1/2) theta) + MR/S^2) / (1 + 2NR/S^2).
pub fn p_grover(dim: usize, num_solutions: usize, snr: f64) -> Result<f64> {
    check_point(dim, num_solutions, snr)?;
    if num_solutions == 0 {
        return Ok(0.0);
    }
    let plan = grover_plan(dim, num_solutions)?;
    Ok(p_grover_planned(dim, num_solutions, snr, &plan))
}

fn p_grover_planned(dim: usize, num_solutions: usize, snr: f64, plan: &GroverPlan) -> f64 {
    if num_solutions == 0 {
        return 0.0;
    }
    let (n, m) = (dim as f64, num_solutions as f64);
    let r = plan.iterations as f64;
    let amplified = ((r + 0.5) * plan.theta).sin().powi(2);
    if snr.is_infinite() {
        return amplified;
    }
    (amplified + m * r / snr) / (1.0 + 2.0 * n * r / snr)
}

/// Evaluates all closed forms at one sweep point.
pub fn method_curve_point(dim: usize, num_solutions: usize, snr: f64) -> Result<MethodCurvePoint> {
    check_point(dim, num_solutions, snr)?;
    let plan = grover_plan(dim, num_solutions)?;
    let pb = p_brute(dim, num_solutions, snr)?;
    let ps = p_subspace(dim, num_solutions, snr)?;
    let pg = p_grover_planned(dim, num_solutions, snr, &plan);
    Ok(MethodCurvePoint {
        dim,
        num_solutions,
        snr,
        p_brute: pb,
        p_subspace: ps,
        p_grover: pg,
        p_brute_repeated: repeated_success_probability(pb, dim as u64),
        p_subspace_repeated: repeated_success_probability(ps, dim as u64),
        iterations: plan.iterations,
        theta: plan.theta,
    })
}

/// Where the projected search beats the amplified one, as a function of S^2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// The two probabilities coincide at every SNR (M = 0 or M = N).
    EqualEverywhere,
    /// p_subspace >= p_grover at every SNR.
    SubspaceDominates,
    /// p_subspace > p_grover exactly below this SNR (quartic term vanishes).
    LinearThreshold { snr: f64 },
    /// p_subspace < p_grover exactly for S^2 inside (lower, upper).
    Interval { lower: f64, upper: f64 },
}

/// Classifies the sign of p_subspace - p_grover over S^2 in (0, inf).
///
/// The difference has the sign of c S^4 - b S^2 + M N^2 R with
/// c = M cos^2((R + 1/2) theta) and b = N^2 sin^2((R + 1/2) theta)
/// - M (2NR + N - MR).
pub fn crossover_snr(dim: usize, num_solutions: usize) -> Result<Crossover> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    if num_solutions > dim {
        return Err(Error::InvalidArgument(format!(
            "solution count {} exceeds dimension {}",
            num_solutions, dim
        )));
    }
    if num_solutions == 0 || num_solutions == dim {
        return Ok(Crossover::EqualEverywhere);
    }
    let plan = grover_plan(dim, num_solutions)?;
    if plan.iterations == 0 {
        // without amplification rounds the quadratic collapses to
        // c S^4 > 0, so the projected search never loses
        return Ok(Crossover::SubspaceDominates);
    }
    let (n, m) = (dim as f64, num_solutions as f64);
    let r = plan.iterations as f64;
    let phase = (r + 0.5) * plan.theta;
    let c = m * phase.cos().powi(2);
    let b = n * n * phase.sin().powi(2) - m * (2.0 * n * r + n - m * r);
    let constant = m * n * n * r;
    if c < 1e-18 {
        // quarter-fill geometry: the comparison is linear in S^2
        return Ok(Crossover::LinearThreshold { snr: constant / b });
    }
    let disc = b * b - 4.0 * c * constant;
    if disc > 0.0 && b > 0.0 {
        let root = disc.sqrt();
        Ok(Crossover::Interval {
            lower: (b - root) / (2.0 * c),
            upper: (b + root) / (2.0 * c),
        })
    } else {
        Ok(Crossover::SubspaceDominates)
    }
}

/// Mean and variance of the magnitude of the noisy count estimate.
pub fn rician_mean_var(
    dim: usize,
    num_solutions: usize,
    s: f64,
    sigma2: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if !(sigma2 > 0.0) || !(s > 0.0) || !(t > 0.0) {
        return Err(Error::InvalidArgument(
            "rician moments need s > 0, t > 0, sigma2 > 0".to_string(),
        ));
    }
    if dim == 0 || num_solutions > dim {
        return Err(Error::InvalidArgument("invalid (N, M) pair".into()));
    }
    let (n, m) = (dim as f64, num_solutions as f64);
    let sigma = sigma2.sqrt();
    let arg = -(m * m * s * s * t) / (n * n * sigma2);
    let mean = (n * sigma / (2.0 * s)) * (std::f64::consts::PI / t).sqrt() * laguerre_half(arg)?;
    let variance = n * n * sigma2 / (s * s * t) + m * m - mean * mean;
    Ok((mean, variance))
}

/// Probability that the rounded count estimate equals `count`:
/// the Rician mass on [count - 1/2, count + 1/2), with the m = 0 cell
/// collapsed to [0, 1/2).
pub fn count_estimate_pmf(
    count: usize,
    dim: usize,
    num_solutions: usize,
    s: f64,
    sigma2: f64,
    t: f64,
) -> Result<f64> {
    if !(s > 0.0) || !(t > 0.0) || !(sigma2 >= 0.0) {
        return Err(Error::InvalidArgument(
            "count pmf needs s > 0, t > 0, sigma2 >= 0".to_string(),
        ));
    }
    if dim == 0 || num_solutions > dim {
        return Err(Error::InvalidArgument("invalid (N, M) pair".into()));
    }
    if sigma2 == 0.0 {
        return Ok(if count == num_solutions { 1.0 } else { 0.0 });
    }
    // per-quadrature scale tau with tau^2 = N^2 sigma2 / (2 s^2 T)
    let tau = dim as f64 * sigma2.sqrt() / (s * (2.0 * t).sqrt());
    let a = num_solutions as f64 / tau;
    let upper = marcum_q1(a, (count as f64 + 0.5) / tau)?;
    let lower = if count == 0 {
        1.0
    } else {
        marcum_q1(a, (count as f64 - 0.5) / tau)?
    };
    Ok((lower - upper).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::DEFAULT_PERIOD;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    const TOL: f64 = 1e-12;

    fn snr_grid() -> Vec<f64> {
        let mut grid: Vec<f64> = (0..60)
            .map(|i| 1e-2 * 10f64.powf(6.0 * i as f64 / 59.0))
            .collect();
        grid.push(f64::INFINITY);
        grid
    }

    #[test]
    fn brute_force_curve_examples() {
        assert_relative_eq!(p_brute(16, 3, f64::INFINITY).unwrap(), 3.0 / 16.0);
        assert!((p_brute(16, 16, 1e-12).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(p_brute(16, 0, 7.0).unwrap(), 0.0);
        assert!(p_brute(16, 17, 1.0).is_err());
        assert!(p_brute(16, 1, 0.0).is_err());
    }

    #[test]
    fn subspace_curve_examples() {
        for m in 1..=16usize {
            assert_eq!(p_subspace(16, m, f64::INFINITY).unwrap(), 1.0);
        }
        for &snr in &[0.01, 1.0, 100.0, f64::INFINITY] {
            assert_relative_eq!(p_subspace(16, 16, snr).unwrap(), 1.0, epsilon = TOL);
        }
        assert!((p_subspace(16, 3, 1e-12).unwrap() - 3.0 / 16.0).abs() < 1e-9);
        assert_eq!(p_subspace(16, 0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn grover_curve_examples() {
        assert_relative_eq!(p_grover(4, 1, f64::INFINITY).unwrap(), 1.0, epsilon = TOL);
        assert_relative_eq!(
            p_grover(16, 1, f64::INFINITY).unwrap(),
            0.9613189697265625,
            epsilon = TOL
        );
        assert_relative_eq!(
            p_grover(16, 3, f64::INFINITY).unwrap(),
            0.94921875,
            epsilon = TOL
        );
        for m in 1..=8usize {
            let lo = p_grover(16, m, 1e-12).unwrap();
            assert!(
                (lo - m as f64 / 32.0).abs() < 1e-9,
                "low-snr limit broken at M={}",
                m
            );
        }
        assert_eq!(p_grover(16, 0, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn low_snr_grover_is_half_of_subspace() {
        for &(dim, m) in &[(8usize, 1usize), (16, 2), (32, 5), (64, 16)] {
            let snr = 1e-10;
            let ratio = p_grover(dim, m, snr).unwrap() / p_subspace(dim, m, snr).unwrap();
            assert!((ratio - 0.5).abs() < 1e-6, "ratio {} at ({}, {})", ratio, dim, m);
        }
    }

    #[test]
    fn brute_never_beats_subspace() {
        for n in 1..=10u32 {
            let dim = 1usize << n;
            for m in 0..=dim {
                for &snr in &snr_grid() {
                    let pb = p_brute(dim, m, snr).unwrap();
                    let ps = p_subspace(dim, m, snr).unwrap();
                    assert!(
                        pb <= ps + TOL,
                        "p_b {} > p_s {} at N={} M={} snr={}",
                        pb,
                        ps,
                        dim,
                        m,
                        snr
                    );
                    assert!((0.0..=1.0).contains(&pb) && (0.0..=1.0).contains(&ps));
                }
            }
        }
    }

    #[test]
    fn repeated_subspace_bounds_grover() {
        for n in 1..=4u32 {
            let dim = 1usize << n;
            for m in 0..=dim {
                for &snr in &snr_grid() {
                    let point = method_curve_point(dim, m, snr).unwrap();
                    let bound =
                        repeated_success_probability(point.p_subspace, point.iterations as u64 + 1);
                    assert!(
                        point.p_grover <= bound + TOL,
                        "p_g {} > bound {} at N={} M={} snr={}",
                        point.p_grover,
                        bound,
                        dim,
                        m,
                        snr
                    );
                }
            }
        }
    }

    #[test]
    fn curve_point_is_consistent() {
        let point = method_curve_point(16, 3, 10.0).unwrap();
        assert_relative_eq!(point.p_brute, p_brute(16, 3, 10.0).unwrap());
        assert_relative_eq!(point.p_subspace, p_subspace(16, 3, 10.0).unwrap());
        assert_relative_eq!(point.p_grover, p_grover(16, 3, 10.0).unwrap());
        assert_relative_eq!(
            point.p_subspace_repeated,
            repeated_success_probability(point.p_subspace, 16),
            epsilon = TOL
        );
        assert_eq!(point.iterations, 1);
        assert_relative_eq!(point.theta, 0.8956647938578649, epsilon = TOL);
    }

    #[test]
    fn repeated_probability_limits() {
        // with p = M/N at M = 1 and k = N, both limiting values appear
        let n = 1_000_000usize;
        let high = repeated_success_probability(p_brute(n, 1, f64::INFINITY).unwrap(), n as u64);
        assert!((high - (1.0 - (-1.0f64).exp())).abs() < 1e-3);
        let low = repeated_success_probability(p_brute(n, 1, 1e-9).unwrap(), n as u64);
        assert!((low - (1.0 - (-0.5f64).exp())).abs() < 1e-3);
    }

    #[test]
    fn crossover_examples() {
        assert_eq!(crossover_snr(16, 0).unwrap(), Crossover::EqualEverywhere);
        assert_eq!(crossover_snr(16, 16).unwrap(), Crossover::EqualEverywhere);

        match crossover_snr(16, 4).unwrap() {
            Crossover::LinearThreshold { snr } => {
                assert_relative_eq!(snr, 12.8, max_relative = 1e-12)
            }
            other => panic!("expected linear threshold, got {:?}", other),
        }

        match crossover_snr(16, 1).unwrap() {
            Crossover::Interval { lower, upper } => {
                assert!(lower > 1.0);
                assert_relative_eq!(lower, 5.610728223687607, max_relative = 1e-9);
                assert_relative_eq!(upper, 3538.701697811815, max_relative = 1e-9);
            }
            other => panic!("expected interval, got {:?}", other),
        }

        match crossover_snr(8, 1).unwrap() {
            Crossover::Interval { lower, upper } => {
                assert_relative_eq!(lower, 5.769803623963099, max_relative = 1e-9);
                assert_relative_eq!(upper, 405.6587678046079, max_relative = 1e-9);
            }
            other => panic!("expected interval, got {:?}", other),
        }

        match crossover_snr(64, 15).unwrap() {
            Crossover::Interval { lower, upper } => {
                assert_relative_eq!(lower, 43.06084521557563, max_relative = 1e-9);
                assert_relative_eq!(upper, 31805.428950702877, max_relative = 1e-9);
            }
            other => panic!("expected interval, got {:?}", other),
        }
    }

    #[test]
    fn crossover_agrees_with_sign_of_difference() {
        for n in 1..=6u32 {
            let dim = 1usize << n;
            for m in 0..=dim {
                let class = crossover_snr(dim, m).unwrap();
                for &snr in &snr_grid() {
                    if snr.is_infinite() {
                        continue;
                    }
                    let diff = p_subspace(dim, m, snr).unwrap() - p_grover(dim, m, snr).unwrap();
                    let expect_negative = match class {
                        Crossover::EqualEverywhere => {
                            assert!(diff.abs() < 1e-9, "nonzero diff at N={} M={}", dim, m);
                            continue;
                        }
                        Crossover::SubspaceDominates => false,
                        Crossover::LinearThreshold { snr: s0 } => snr > s0,
                        Crossover::Interval { lower, upper } => snr > lower && snr < upper,
                    };
                    // skip points too close to a boundary to have a stable sign
                    let near_boundary = match class {
                        Crossover::LinearThreshold { snr: s0 } => {
                            (snr / s0).ln().abs() < 1e-6
                        }
                        Crossover::Interval { lower, upper } => {
                            (snr / lower).ln().abs() < 1e-6 || (snr / upper).ln().abs() < 1e-6
                        }
                        _ => false,
                    };
                    if near_boundary || diff.abs() < 1e-14 {
                        continue;
                    }
                    assert_eq!(
                        diff < 0.0,
                        expect_negative,
                        "sign mismatch at N={} M={} snr={} diff={} class={:?}",
                        dim,
                        m,
                        snr,
                        diff,
                        class
                    );
                }
            }
        }
    }

    #[test]
    fn sparse_crossover_intervals_start_above_unity() {
        for n in 3..=6u32 {
            let dim = 1usize << n;
            for m in 1..dim / 4 {
                match crossover_snr(dim, m).unwrap() {
                    Crossover::Interval { lower, upper } => {
                        assert!(lower > 1.0, "lower {} <= 1 at N={} M={}", lower, dim, m);
                        assert!(upper > lower);
                    }
                    other => panic!("expected interval at N={} M={}, got {:?}", dim, m, other),
                }
            }
        }
    }

    #[test]
    fn dense_fill_exceptions_are_exactly_known() {
        // for N/4 < M < N the projected search usually dominates; the four
        // known exceptions flip sign inside a finite SNR window
        let mut exceptions = Vec::new();
        for n in 1..=6u32 {
            let dim = 1usize << n;
            for m in dim / 4 + 1..dim {
                match crossover_snr(dim, m).unwrap() {
                    Crossover::SubspaceDominates => {}
                    Crossover::Interval { .. } => exceptions.push((dim, m)),
                    other => panic!("unexpected class at N={} M={}: {:?}", dim, m, other),
                }
            }
        }
        assert_eq!(exceptions, vec![(32, 9), (64, 17), (64, 18), (64, 19)]);

        // spot check one exception: the amplified search really does win
        // inside the window
        let ps = p_subspace(32, 9, 300.0).unwrap();
        let pg = p_grover(32, 9, 300.0).unwrap();
        assert!(pg > ps, "expected p_g {} > p_s {} at (32, 9, 300)", pg, ps);
    }

    #[test]
    fn rician_moment_examples() {
        let t = DEFAULT_PERIOD;
        // zero solutions: pure noise envelope
        let sigma2 = t / 49.0;
        let (mean, var) = rician_mean_var(8, 0, 1.0, sigma2, t).unwrap();
        let want = 8.0 * sigma2.sqrt() / 2.0 * (std::f64::consts::PI / t).sqrt();
        assert_relative_eq!(mean, want, epsilon = 1e-12);
        assert!(var >= 0.0);

        // reference point at N=16, M=3, S^2=100
        let sigma2 = t / 100.0;
        let (mean, var) = rician_mean_var(16, 3, 1.0, sigma2, t).unwrap();
        assert!((mean - 3.2236786604005894).abs() < 1e-9);
        assert!((var - 1.1678958944778621).abs() < 1e-9);

        // high snr: the estimate concentrates on M
        let (mean, var) = rician_mean_var(16, 3, 1.0, t * 1e-9, t).unwrap();
        assert!((mean - 3.0).abs() < 1e-4);
        assert!(var >= 0.0 && var < 1e-3);

        assert!(rician_mean_var(16, 3, 1.0, 0.0, t).is_err());
    }

    #[test]
    fn rician_variance_nonnegative_on_grid() {
        let t = DEFAULT_PERIOD;
        for n in 1..=6u32 {
            let dim = 1usize << n;
            for m in 0..=dim {
                for &snr in &[0.01, 1.0, 100.0, 1e6] {
                    let sigma2 = t / snr;
                    let (_, var) = rician_mean_var(dim, m, 1.0, sigma2, t).unwrap();
                    assert!(var >= -1e-9, "variance {} at N={} M={} snr={}", var, dim, m, snr);
                }
            }
        }
    }

    #[test]
    fn rician_moments_match_monte_carlo() {
        let t = DEFAULT_PERIOD;
        let snr = 100.0;
        let sigma2 = t / snr;
        let (mean, var) = rician_mean_var(16, 3, 1.0, sigma2, t).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let quad = Normal::new(0.0, (0.5f64).sqrt()).unwrap();
        let scale = 16.0 / snr.sqrt();
        let draws = 1_000_000usize;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        let mut sum_q4 = 0.0;
        for _ in 0..draws {
            let z = Complex64::new(quad.sample(&mut rng), quad.sample(&mut rng));
            let r = (Complex64::new(3.0, 0.0) + scale * z).norm();
            sum += r;
            sum_sq += r * r;
            sum_q4 += r.powi(4);
        }
        let m1 = sum / draws as f64;
        let m2 = sum_sq / draws as f64;
        let sample_var = m2 - m1 * m1;
        let se_mean = (sample_var / draws as f64).sqrt();
        assert!(
            (m1 - mean).abs() < 3.0 * se_mean,
            "mean {} vs {} (se {})",
            m1,
            mean,
            se_mean
        );
        let m4 = sum_q4 / draws as f64;
        let se_var = ((m4 - m2 * m2) / draws as f64).sqrt();
        assert!(
            (sample_var - var).abs() < 3.0 * se_var,
            "var {} vs {} (se {})",
            sample_var,
            var,
            se_var
        );
    }

    #[test]
    fn count_pmf_examples() {
        let t = DEFAULT_PERIOD;
        for m in 0..6usize {
            let p = count_estimate_pmf(m, 16, 3, 1.0, 0.0, t).unwrap();
            assert_eq!(p, if m == 3 { 1.0 } else { 0.0 });
        }

        let sigma2 = t / 25.0;
        let total: f64 = (0..200)
            .map(|m| count_estimate_pmf(m, 16, 3, 1.0, sigma2, t).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-9, "pmf total {}", total);
        for m in 0..200 {
            assert!(count_estimate_pmf(m, 16, 3, 1.0, sigma2, t).unwrap() >= 0.0);
        }
    }

    #[test]
    fn count_pmf_matches_monte_carlo_histogram() {
        let t = DEFAULT_PERIOD;
        let snr = 25.0;
        let sigma2 = t / snr;
        let draws = 1_000_000usize;
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let quad = Normal::new(0.0, (0.5f64).sqrt()).unwrap();
        let scale = 16.0 / snr.sqrt();
        let mut hist = vec![0u64; 64];
        for _ in 0..draws {
            let z = Complex64::new(quad.sample(&mut rng), quad.sample(&mut rng));
            let r = (Complex64::new(3.0, 0.0) + scale * z).norm();
            let rounded = (r + 0.5).floor() as usize;
            hist[rounded.min(63)] += 1;
        }
        let mut tv = 0.0;
        for m in 0..64 {
            let p = count_estimate_pmf(m, 16, 3, 1.0, sigma2, t).unwrap();
            tv += (hist[m] as f64 / draws as f64 - p).abs();
        }
        tv /= 2.0;
        println!("count pmf total variation: {:.5}", tv);
        assert!(tv < 0.01, "total variation {}", tv);
    }

    #[test]
    fn count_pmf_zero_solution_tail() {
        // with no solutions the estimate is pure noise; the mass at zero is
        // 1 - Q1(0, 1/(2 tau)) and grows as snr does
        let t = DEFAULT_PERIOD;
        let p_low = count_estimate_pmf(0, 16, 0, 1.0, t / 0.1, t).unwrap();
        let p_high = count_estimate_pmf(0, 16, 0, 1.0, t / 100.0, t).unwrap();
        assert!(p_high > p_low);
        let tau = 16.0 / (2.0f64 * 100.0).sqrt();
        let want = 1.0 - (-0.25 / (2.0 * tau * tau)).exp();
        assert_relative_eq!(p_high, want, epsilon = 1e-12);
    }
}
