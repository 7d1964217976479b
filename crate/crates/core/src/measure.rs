//! Coherent-state measure `m_f(r) = K_ν(r) / (2^l π r^ν C_f²(r))` with the
//! level-dependent exponents `ν_n = (1+γ)n - η`, `l_n = (1-γ)n + η + 1`, and a
//! per-level audit of the resolution of identity it is meant to provide.
//!
//! Level `n` of `∫d²α |α,f⟩ m_f ⟨α,f|` reduces to
//! `2^{1-l_n} / (n! (f(n)!)²) ∫₀^∞ K_{ν_n}(r) r^{2n+1-ν_n} dr`, which has the
//! closed form `Γ(1+η-γn) / (f(n)!)²`. That equals 1 only as `N → ∞`, so
//! ratios are reported rather than asserted.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};
use libm::{exp, log};
use num_complex::Complex64;

use crate::numerics::{integrate_semi_infinite, ln_bessel_k, ln_gamma, ln_kv_moment_closed_form, log_factorial};
use crate::spectrum::TrapParams;
use crate::states::{coherent_state, ln_deformed_factorial, FactorialConvention};
use crate::{Error, Result};

/// Default relative agreement required between the two moment evaluations.
pub const DEFAULT_MOMENT_TOL: f64 = 1e-8;

/// Levels whose ratio deviates from 1 by more than this are flagged.
pub const RATIO_FLAG_TOL: f64 = 1e-6;

/// Largest trap audited in full by [`resolution_report`].
pub const MAX_AUDIT_LEVELS: usize = 500;

/// `(ν_n, l_n)`; `ν_n + l_n = 2n + 1`.
pub fn exponents(params: &TrapParams, n: usize) -> (f64, f64) {
    let n = n as f64;
    let nu = (1.0 + params.gamma()) * n - params.eta();
    let l = (1.0 - params.gamma()) * n + params.eta() + 1.0;
    (nu, l)
}

fn check_level(params: &TrapParams, n: usize) -> Result<()> {
    if n > params.top_level() {
        return Err(Error::LevelOutOfRange { n, max: params.top_level() });
    }
    Ok(())
}

/// `ln m_f(r)` for the exponents of level `n`.
pub fn ln_measure_density(params: &TrapParams, n: usize, r: f64) -> Result<f64> {
    check_level(params, n)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain { what: "measure radius must be positive and finite", value: r });
    }
    let (nu, l) = exponents(params, n);
    let ln_cf = coherent_state(params, Complex64::new(r, 0.0))?.ln_norm_const();
    Ok(ln_bessel_k(nu, r)? - l * LN_2 - log(PI) - nu * log(r) - 2.0 * ln_cf)
}

/// `m_f(r)`, including the `C_f^{-2}(r)` factor. May overflow to `+inf` for
/// large `r`; see [`ln_measure_density`].
pub fn measure_density(params: &TrapParams, n: usize, r: f64) -> Result<f64> {
    ln_measure_density(params, n, r).map(exp)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub n: usize,
    pub nu_n: f64,
    pub l_n: f64,
    /// Level-`n` weight from numerical quadrature.
    pub computed_moment: f64,
    /// The same weight from the Bessel moment formula.
    pub closed_form: f64,
    /// Always 1, the weight a resolution of identity requires.
    pub target: f64,
    /// `computed_moment / target`.
    pub ratio: f64,
    /// Absolute error estimate of `computed_moment`.
    pub quadrature_error: f64,
}

impl MomentReport {
    /// `|computed - closed| / |closed|`.
    pub fn relative_disagreement(&self) -> f64 {
        ((self.computed_moment - self.closed_form) / self.closed_form).abs()
    }
}

/// Level-`n` moment by quadrature and by closed form; fails with
/// [`Error::MomentMismatch`] unless they agree to relative `tol`.
pub fn moment_check(params: &TrapParams, n: usize, tol: f64) -> Result<MomentReport> {
    check_level(params, n)?;
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::Domain { what: "moment tolerance must be positive", value: tol });
    }
    let (nu, l) = exponents(params, n);
    let power = 2.0 * n as f64 + 1.0 - nu;
    let mu = power + 1.0;
    let prefactor = (1.0 - l) * LN_2
        - log_factorial(n as u64)
        - 2.0 * ln_deformed_factorial(params, n, FactorialConvention::IncludeGround)?;

    let ln_raw = ln_kv_moment_closed_form(mu, nu)?;
    let closed_form = exp(ln_raw + prefactor);

    let ln_integrand = |r: f64| -> f64 {
        match ln_bessel_k(nu, r) {
            Ok(v) => v + power * log(r),
            Err(_) => f64::NAN,
        }
    };
    // K_ν(r) r^p peaks near r = p; divide out its size there to stay in range
    let shift = ln_integrand(power.max(1.0));
    let quad = integrate_semi_infinite(
        |r| if r == 0.0 { 0.0 } else { exp(ln_integrand(r) - shift) },
        (tol / 100.0).max(1e-14),
    )?;
    let scale = exp(shift + prefactor);
    let computed_moment = quad.value * scale;
    let report = MomentReport {
        n,
        nu_n: nu,
        l_n: l,
        computed_moment,
        closed_form,
        target: 1.0,
        ratio: computed_moment,
        quadrature_error: quad.abs_error_estimate * scale,
    };
    if !(report.relative_disagreement() <= tol) {
        return Err(Error::MomentMismatch { n, numeric: computed_moment, analytic: closed_form });
    }
    Ok(report)
}

/// `Γ(1+η-γn) / (f(n)!)²`, the exact level-`n` weight.
pub fn analytic_weight(params: &TrapParams, n: usize) -> Result<f64> {
    check_level(params, n)?;
    let arg = 1.0 + params.eta() - params.gamma() * n as f64;
    let ln_ff = ln_deformed_factorial(params, n, FactorialConvention::IncludeGround)?;
    Ok(exp(ln_gamma(arg) - 2.0 * ln_ff))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionReport {
    pub reports: Vec<MomentReport>,
    /// Levels with `|ratio - 1| > RATIO_FLAG_TOL`.
    pub flagged: Vec<usize>,
}

/// Audit of every bound level; at most [`MAX_AUDIT_LEVELS`] levels.
pub fn resolution_report(params: &TrapParams, tol: f64) -> Result<ResolutionReport> {
    if params.num_bound() > MAX_AUDIT_LEVELS {
        return Err(Error::TooManyLevels { levels: params.num_bound(), limit: MAX_AUDIT_LEVELS });
    }
    resolution_report_prefix(params, params.num_bound(), tol)
}

/// Audit of the lowest `count` bound levels (clamped to the bound range).
pub fn resolution_report_prefix(params: &TrapParams, count: usize, tol: f64) -> Result<ResolutionReport> {
    let count = count.min(params.num_bound()).min(MAX_AUDIT_LEVELS);
    let reports = (0..count).map(|n| moment_check(params, n, tol)).collect::<Result<Vec<_>>>()?;
    let flagged = reports.iter().filter(|r| (r.ratio - 1.0).abs() > RATIO_FLAG_TOL).map(|r| r.n).collect();
    Ok(ResolutionReport { reports, flagged })
}
