//! Special functions behind the closed forms: scaled modified Bessel
//! functions, the degree-1/2 Laguerre function, the first-order Marcum Q
//! function, and exact binomial confidence bounds.

use crate::error::{Error, Result};

// series/asymptotic switch point for the scaled Bessel evaluations
const BESSEL_SWITCH: f64 = 18.0;
// series/quadrature switch for marcum_q1, in units of a^2/2
const MARCUM_SERIES_MAX: f64 = 200.0;

// 16-point Gauss-Legendre nodes and weights on [-1, 1], positive half
const GL_NODES: [f64; 8] = [
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// e^-z I_0(z) for z >= 0.
pub(crate) fn bessel_i0_scaled(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z < BESSEL_SWITCH {
        let q = z * z / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            term *= q / ((k * k) as f64);
            sum += term;
            if term < sum * 1e-18 {
                break;
            }
        }
        sum * (-z).exp()
    } else {
        // asymptotic sum with terms t_k = t_{k-1} (2k-1)^2 / (8kz)
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..40u32 {
            let odd = (2 * k - 1) as f64;
            term *= odd * odd / (8.0 * k as f64 * z);
            if term.abs() >= prev {
                break;
            }
            sum += term;
            prev = term.abs();
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum / (std::f64::consts::TAU * z).sqrt()
    }
}

/// e^-z I_1(z) for z >= 0.
pub(crate) fn bessel_i1_scaled(z: f64) -> f64 {
    debug_assert!(z >= 0.0);
    if z < BESSEL_SWITCH {
        let q = z * z / 4.0;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..200 {
            term *= q / ((k * (k + 1)) as f64);
            sum += term;
            if term < sum * 1e-18 {
                break;
            }
        }
        sum * (z / 2.0) * (-z).exp()
    } else {
        // terms t_k = t_{k-1} ((2k-1)^2 - 4) / (8kz)
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..40u32 {
            let odd = (2 * k - 1) as f64;
            term *= (odd * odd - 4.0) / (8.0 * k as f64 * z);
            if term.abs() >= prev {
                break;
            }
            sum += term;
            prev = term.abs();
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum / (std::f64::consts::TAU * z).sqrt()
    }
}

/// Laguerre function of degree 1/2 on the nonpositive axis:
/// L(x) = e^{x/2} [(1-x) I_0(-x/2) - x I_1(-x/2)].
pub fn laguerre_half(x: f64) -> Result<f64> {
    if !x.is_finite() || x > 0.0 {
        return Err(Error::OutOfDomain(format!(
            "laguerre_half requires x <= 0, got {}",
            x
        )));
    }
    let z = -x / 2.0;
    Ok((1.0 + 2.0 * z) * bessel_i0_scaled(z) + 2.0 * z * bessel_i1_scaled(z))
}

/// First-order Marcum Q function Q_1(a, b): the upper tail of a Rician
/// variable with noncentrality a and unit per-quadrature scale.
pub fn marcum_q1(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0) || !(b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "marcum_q1 requires finite a >= 0 and b >= 0, got ({}, {})",
            a, b
        )));
    }
    if b == 0.0 {
        return Ok(1.0);
    }
    if a == 0.0 {
        return Ok((-b * b / 2.0).exp());
    }
    let x = a * a / 2.0;
    if x <= MARCUM_SERIES_MAX {
        Ok(marcum_series(x, b * b / 2.0))
    } else {
        Ok(marcum_quadrature(a, b))
    }
}

// Q_1 = sum_k Pois(k; x) * Pr[Pois(y) <= k]; the truncated tail is bounded
// by the remaining Poisson(x) mass.
fn marcum_series(x: f64, y: f64) -> f64 {
    let mut pois_x = (-x).exp();
    let mut cum_x = pois_x;
    let mut term_y = (-y).exp();
    let mut cdf_y = term_y;
    let mut sum = pois_x * cdf_y;
    for k in 1..4000u32 {
        pois_x *= x / k as f64;
        cum_x += pois_x;
        term_y *= y / k as f64;
        cdf_y += term_y;
        sum += pois_x * cdf_y.min(1.0);
        if 1.0 - cum_x < 1e-17 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

// Direct integration of t I_0(at) e^{-(t^2+a^2)/2} over [b, inf), written
// with the scaled Bessel so the integrand never overflows; the mass sits in
// a unit-width neighborhood of t = a.
fn marcum_quadrature(a: f64, b: f64) -> f64 {
    let lo = b.max(a - 14.0);
    let hi = a.max(b) + 14.0;
    if lo >= hi {
        return 0.0;
    }
    let integrand = |t: f64| t * bessel_i0_scaled(a * t) * (-(t - a) * (t - a) / 2.0).exp();
    let panels = ((hi - lo) / 0.5).ceil() as usize;
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * width;
        let half = width / 2.0;
        for i in 0..8 {
            total += GL_WEIGHTS[i]
                * (integrand(mid + half * GL_NODES[i]) + integrand(mid - half * GL_NODES[i]));
        }
    }
    (total * (hi - lo) / (2.0 * panels as f64)).clamp(0.0, 1.0)
}

/// Exact binomial confidence interval at level alpha via bisection on the
/// regularized incomplete beta tails.
pub fn clopper_pearson(successes: u64, trials: u64, alpha: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    if successes > trials {
        return Err(Error::InvalidArgument(format!(
            "successes {} exceed trials {}",
            successes, trials
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, 1), got {}",
            alpha
        )));
    }
    let (k, n) = (successes as f64, trials as f64);
    let lo = if successes == 0 {
        0.0
    } else {
        // Pr[Bin(n, p) >= k] = I_p(k, n-k+1) = alpha/2
        bisect_beta(k, n - k + 1.0, alpha / 2.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        // Pr[Bin(n, p) <= k] = alpha/2, i.e. I_p(k+1, n-k) = 1 - alpha/2
        bisect_beta(k + 1.0, n - k, 1.0 - alpha / 2.0)
    };
    Ok((lo, hi))
}

// solves beta_reg(a, b, p) = target for p in [0, 1]; the left side is
// continuous and strictly increasing
fn bisect_beta(a: f64, b: f64, target: f64) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if statrs::function::beta::beta_reg(a, b, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}
