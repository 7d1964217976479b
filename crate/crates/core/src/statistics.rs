//! Nonclassicality metrics of deformed coherent states: Mandel `Q`, the
//! invariant squeezing coefficient `S` and phase-resolved quadrature variances.
//!
//! Quadratures use the undeformed ladder operators,
//! `q̂_φ = (a e^{-iφ} + a† e^{iφ})/√2`, `p̂_φ = q̂_{φ+π/2}`, so `[q̂_φ, p̂_φ] = i`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use libm::{cos, exp, log, sin};
use num_complex::Complex64;

use crate::spectrum::TrapParams;
use crate::states::{coherent_state, ladder_moments, number_moments, number_variance, DeformedState};
use crate::{Error, Result};

/// Default `(min, max, points)` of the logarithmic `N` grid for `Q` sweeps.
pub const FIG2_GRID: (f64, f64, usize) = (4.0, 1e3, 400);
/// Default `(min, max, points)` of the logarithmic `N` grid for `S` sweeps.
pub const FIG3_GRID: (f64, f64, usize) = (1.0, 1e3, 400);
/// `|α|` values of the `Q` figure series.
pub const FIG2_ALPHAS: [f64; 4] = [3.0, 4.0, 5.0, 7.0];
/// `|α|` values of the `S` figure series.
pub const FIG3_ALPHAS: [f64; 3] = [0.5, 1.0, 1.3];

/// `Q = Var(n̂)/⟨n̂⟩ - 1`; `-1` when `⟨n̂⟩ = 0`.
pub fn mandel_q(state: &DeformedState) -> f64 {
    let (mean, _) = number_moments(state);
    if mean == 0.0 {
        return -1.0;
    }
    number_variance(state) / mean - 1.0
}

/// `S = ⟨a†a⟩ - |⟨a⟩|² - |⟨a²⟩ - ⟨a⟩²|`; `S < 0` signals squeezing.
pub fn squeezing_s(state: &DeformedState) -> f64 {
    let (base, z) = quadrature_terms(state);
    base - z.norm()
}

/// `(⟨a†a⟩ - |⟨a⟩|², ⟨a²⟩ - ⟨a⟩²)`.
fn quadrature_terms(state: &DeformedState) -> (f64, Complex64) {
    let m = ladder_moments(state);
    (m.mean_adag_a - m.mean_a.norm_sqr(), m.mean_a2 - m.mean_a * m.mean_a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub phi: f64,
    pub var_q: f64,
    pub var_p: f64,
}

impl QuadratureReport {
    pub fn uncertainty_product(&self) -> f64 {
        self.var_q * self.var_p
    }
}

/// Variances of `q̂_φ` and `p̂_φ`. A non-finite `phi` yields NaN variances.
pub fn quadrature_variance(state: &DeformedState, phi: f64) -> QuadratureReport {
    let (base, z) = quadrature_terms(state);
    let rot = (Complex64::from_polar(1.0, -2.0 * phi) * z).re;
    QuadratureReport { phi, var_q: 0.5 + base + rot, var_p: 0.5 + base - rot }
}

/// Minimum of `var_q` over `φ`, attained at `φ* = (arg z + π)/2` where
/// `z = ⟨a²⟩ - ⟨a⟩²`; there `var_q - ½ = S`.
pub fn min_quadrature_variance(state: &DeformedState) -> QuadratureReport {
    let (_, z) = quadrature_terms(state);
    quadrature_variance(state, 0.5 * (z.arg() + PI))
}

/// Smallest `var_q` over `points` equally spaced angles in `[0, π)`.
pub fn scan_min_quadrature_variance(state: &DeformedState, points: usize) -> QuadratureReport {
    let (base, z) = quadrature_terms(state);
    let mut best = QuadratureReport { phi: 0.0, var_q: f64::INFINITY, var_p: 0.0 };
    for k in 0..points.max(1) {
        let phi = PI * k as f64 / points.max(1) as f64;
        let rot = z.re * cos(2.0 * phi) + z.im * sin(2.0 * phi);
        if 0.5 + base + rot < best.var_q {
            best = QuadratureReport { phi, var_q: 0.5 + base + rot, var_p: 0.5 + base - rot };
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    MandelQ,
    SqueezingS,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::MandelQ => "Q",
            Metric::SqueezingS => "S",
        }
    }

    pub fn evaluate(self, state: &DeformedState) -> f64 {
        match self {
            Metric::MandelQ => mandel_q(state),
            Metric::SqueezingS => squeezing_s(state),
        }
    }
}

/// The metric for the trap with depth parameter `n_param` and real `α = alpha_abs`.
pub fn sweep_point(n_param: f64, alpha_abs: f64, metric: Metric) -> Result<f64> {
    let wrap = |source| Error::SweepPoint { n_param, source: alloc::boxed::Box::new(source) };
    if !(alpha_abs >= 0.0) || !alpha_abs.is_finite() {
        return Err(wrap(Error::Domain { what: "|alpha| must be finite and non-negative", value: alpha_abs }));
    }
    let params = TrapParams::new(n_param).map_err(wrap)?;
    let state = coherent_state(&params, Complex64::new(alpha_abs, 0.0)).map_err(wrap)?;
    Ok(metric.evaluate(&state))
}

/// `(N, value)` for each grid point, in grid order. Points are independent;
/// callers with threads may evaluate [`sweep_point`] concurrently instead.
pub fn sweep_metric(grid: &[f64], alpha_abs: f64, metric: Metric) -> Result<Vec<(f64, f64)>> {
    grid.iter().map(|&n| sweep_point(n, alpha_abs, metric).map(|v| (n, v))).collect()
}

/// `steps` points from `min` to `max` inclusive, evenly spaced in `ln N`.
pub fn log_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(min > 0.0) || !(max >= min) || !max.is_finite() {
        return Err(Error::Domain { what: "log grid needs 0 < min <= max < inf", value: min });
    }
    let (lo, hi) = (log(min), log(max));
    Ok(grid_points(steps, min, max, |t| exp(lo + (hi - lo) * t)))
}

/// `steps` points from `min` to `max` inclusive, evenly spaced.
pub fn linear_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !min.is_finite() || !max.is_finite() || max < min {
        return Err(Error::Domain { what: "linear grid needs finite min <= max", value: min });
    }
    Ok(grid_points(steps, min, max, |t| min + (max - min) * t))
}

fn grid_points(steps: usize, min: f64, max: f64, at: impl Fn(f64) -> f64) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => alloc::vec![min],
        _ => (0..steps)
            .map(|k| match k {
                0 => min,
                k if k == steps - 1 => max,
                k => at(k as f64 / (steps - 1) as f64),
            })
            .collect(),
    }
}

/// `φ` rotated by a quarter turn; `var_q(φ) = var_p(φ + π/2)`.
pub fn quarter_turn(phi: f64) -> f64 {
    phi + FRAC_PI_2
}
