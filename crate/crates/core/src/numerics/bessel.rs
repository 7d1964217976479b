use libm::{asinh, cosh, exp, fabs, hypot, log, log1p};

use super::gamma::ln_gamma;
use super::quadrature::integrate_adaptive;
use crate::{Error, Result};

const LN_2: f64 = core::f64::consts::LN_2;

/// Integrand cut where it has fallen this many e-folds below its peak.
const CUT: f64 = 60.0;
const BESSEL_REL_TOL: f64 = 1e-14;
const BESSEL_BUDGET: usize = 200_000;

fn ln_cosh(y: f64) -> f64 {
    let y = fabs(y);
    y + log1p(exp(-2.0 * y)) - LN_2
}

/// `ln K_ν(x)` for real order `ν` and `x > 0`.
///
/// Evaluates `K_ν(x) = ∫₀^∞ exp(-x cosh t) cosh(νt) dt` with the integrand
/// rescaled by its analytic upper bound
/// `exp(-√(x²+ν²) + |ν| asinh(|ν|/x))`, so the logarithm stays finite even
/// where `K_ν` itself overflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain { what: "Bessel K argument must be positive and finite", value: x });
    }
    if !nu.is_finite() {
        return Err(Error::Domain { what: "Bessel K order must be finite", value: nu });
    }
    let nu = fabs(nu);
    let peak = asinh(nu / x);
    let shift = -hypot(x, nu) + nu * peak;
    let phi = |t: f64| -x * cosh(t) + ln_cosh(nu * t) - shift;

    // upper end: bracket then bisect phi = -CUT
    let mut step = 1.0f64;
    while phi(peak + step) > -CUT {
        step *= 2.0;
    }
    let (mut lo, mut hi) = (peak, peak + step);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) > -CUT {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let upper = hi;

    // lower end: only trimmed when the integrand is already negligible at 0
    let lower = if phi(0.0) < -CUT {
        let (mut lo, mut hi) = (0.0, peak);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) < -CUT {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    } else {
        0.0
    };

    let breakpoints = [lower, peak.max(lower), upper];
    let r = integrate_adaptive(|t| exp(phi(t)), &breakpoints, 0.0, BESSEL_REL_TOL, BESSEL_BUDGET)?;
    Ok(shift + log(r.value))
}

/// Modified Bessel function of the second kind `K_ν(x)`, `x > 0`.
///
/// Even in `ν`. Returns `+inf` where the value exceeds the double range
/// (large `|ν|` at small `x`); use [`ln_bessel_k`] there.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_k(nu, x).map(exp)
}

/// `ln` of `2^{μ-2} Γ((μ-ν)/2) Γ((μ+ν)/2)`; requires `μ > |ν|`.
pub fn ln_kv_moment_closed_form(mu: f64, nu: f64) -> Result<f64> {
    if !(mu > fabs(nu)) || !mu.is_finite() {
        return Err(Error::Domain { what: "moment order must exceed |nu|", value: mu });
    }
    Ok((mu - 2.0) * LN_2 + ln_gamma(0.5 * (mu - nu)) + ln_gamma(0.5 * (mu + nu)))
}

/// Closed form of `∫₀^∞ K_ν(t) t^{μ-1} dt = 2^{μ-2} Γ((μ-ν)/2) Γ((μ+ν)/2)`.
pub fn kv_moment_closed_form(mu: f64, nu: f64) -> Result<f64> {
    ln_kv_moment_closed_form(mu, nu).map(exp)
}
