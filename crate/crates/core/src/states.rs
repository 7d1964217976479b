//! f-deformed bound coherent states
//! `|α,f⟩ = C_f Σ_{n=0}^{[s]} αⁿ / (√(n!) f(n)!) |n⟩` and their moments.
//!
//! Coefficients are built from log-magnitudes plus the phase `n·arg α`, so
//! neither `|α|ⁿ` nor `n!` is ever formed directly.

use alloc::vec::Vec;
use libm::{exp, log, sqrt};
use num_complex::Complex64;

use crate::numerics::log_factorial;
use crate::operators::{build_deformed_ops, OperatorMatrix};
use crate::spectrum::{f_squared, TrapParams};
use crate::{Error, Result, DENSE_LIMIT};

/// Largest accepted `|α|`.
pub const MAX_ALPHA: f64 = 1e100;

/// Above [`DENSE_LIMIT`] bound levels the series stops once the remaining
/// squared weight is provably below this fraction of the accumulated norm.
pub const TAIL_CUTOFF: f64 = 1e-18;

/// Longest coefficient vector a truncated state may carry.
pub const MAX_SUPPORT: usize = 1 << 22;

/// Which factors enter `f(n)!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FactorialConvention {
    /// `f(n)! = f(n) f(n-1) ··· f(0)`.
    #[default]
    IncludeGround,
    /// `f(n)! = f(n) ··· f(1)`, `f(0)! = 1`.
    ExcludeGround,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformedState {
    params: TrapParams,
    alpha: Complex64,
    convention: FactorialConvention,
    coeffs: Vec<Complex64>,
    log_mags: Vec<f64>,
    ln_norm_const: f64,
    truncated: bool,
}

impl DeformedState {
    pub fn params(&self) -> &TrapParams {
        &self.params
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn convention(&self) -> FactorialConvention {
        self.convention
    }

    /// Normalized coefficients `⟨n|α,f⟩`. Length is `num_bound` unless the
    /// series was truncated, in which case the omitted levels carry
    /// negligible weight.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `ln |αⁿ / (√(n!) f(n)!)|` for each stored level.
    pub fn log_mags(&self) -> &[f64] {
        &self.log_mags
    }

    /// `C_f`; may underflow to zero for huge `|α|`, see [`Self::ln_norm_const`].
    pub fn norm_const(&self) -> f64 {
        exp(self.ln_norm_const)
    }

    pub fn ln_norm_const(&self) -> f64 {
        self.ln_norm_const
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// `|⟨n|α,f⟩|²`.
    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.coeffs.iter().map(|c| c.norm_sqr())
    }
}

/// Builds `|α,f⟩` with the `f(n)! = f(n)···f(0)` convention.
pub fn coherent_state(params: &TrapParams, alpha: Complex64) -> Result<DeformedState> {
    coherent_state_with(params, alpha, FactorialConvention::IncludeGround)
}

pub fn coherent_state_with(
    params: &TrapParams,
    alpha: Complex64,
    convention: FactorialConvention,
) -> Result<DeformedState> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::Domain { what: "alpha must be finite", value: alpha.norm() });
    }
    let radius = alpha.norm();
    if radius > MAX_ALPHA {
        return Err(Error::Overflow { what: "|alpha| above 1e100" });
    }
    let ln_radius = log(radius);
    let top = params.top_level();
    let dense = params.num_bound() <= DENSE_LIMIT;
    // smallest k f²(k) on [n+1, top] is at one of the ends (k f²(k) is concave)
    let top_weight = top as f64 * f_squared(params, top)?;

    let mut log_mags = Vec::with_capacity(if dense { params.num_bound() } else { 64 });
    let mut ln_fact_f = match convention {
        FactorialConvention::IncludeGround => 0.5 * log(f_squared(params, 0)?),
        FactorialConvention::ExcludeGround => 0.0,
    };
    let mut peak = f64::NEG_INFINITY;
    let mut acc = 0.0;
    let mut truncated = false;

    for n in 0..params.num_bound() {
        if n > 0 {
            ln_fact_f += 0.5 * log(f_squared(params, n)?);
        }
        let ln_power = if n == 0 { 0.0 } else { n as f64 * ln_radius - 0.5 * log_factorial(n as u64) };
        let lm = ln_power - ln_fact_f;
        log_mags.push(lm);
        if dense || n == top {
            continue;
        }

        if lm > peak {
            acc = acc * exp(2.0 * (peak - lm)) + 1.0;
            peak = lm;
        } else {
            acc += exp(2.0 * (lm - peak));
        }
        let next_weight = (n + 1) as f64 * f_squared(params, n + 1)?;
        let ratio = radius * radius / next_weight.min(top_weight);
        if ratio < 1.0 {
            let tail = exp(2.0 * (lm - peak)) * ratio / (1.0 - ratio);
            if tail < TAIL_CUTOFF * acc {
                truncated = true;
                break;
            }
        }
        if log_mags.len() >= MAX_SUPPORT {
            return Err(Error::TooManyLevels { levels: params.num_bound(), limit: MAX_SUPPORT });
        }
    }

    let max_lm = log_mags.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = log_mags.iter().map(|&lm| exp(2.0 * (lm - max_lm))).sum();
    let ln_norm_const = -(max_lm + 0.5 * log(sum));
    let phase = alpha.arg();
    let coeffs = log_mags
        .iter()
        .enumerate()
        .map(|(n, &lm)| Complex64::from_polar(exp(lm + ln_norm_const), n as f64 * phase))
        .collect();

    Ok(DeformedState { params: *params, alpha, convention, coeffs, log_mags, ln_norm_const, truncated })
}

/// `A|α,f⟩ - α|α,f⟩` from the dense matrix, and the closed-form top-level amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct AnnihilationResidual {
    pub residual: Vec<Complex64>,
    /// Euclidean norm of `residual`.
    pub norm: f64,
    /// `-C_f α^{[s]+1} / (√([s]!) f([s])!)`.
    pub closed_form_top: Complex64,
    /// Largest entrywise gap between `residual` and the closed form
    /// (which vanishes below the top level).
    pub deviation: f64,
}

pub fn annihilation_residual(state: &DeformedState) -> Result<AnnihilationResidual> {
    if state.truncated {
        return Err(Error::TooManyLevels { levels: state.params.num_bound(), limit: DENSE_LIMIT });
    }
    let (a, _) = build_deformed_ops(&state.params)?;
    let applied = a.apply(&state.coeffs)?;
    let residual: Vec<Complex64> = applied.iter().zip(&state.coeffs).map(|(ac, c)| ac - state.alpha * c).collect();
    let norm = sqrt(residual.iter().map(|z| z.norm_sqr()).sum());

    let top = state.params.top_level();
    let radius = state.alpha.norm();
    let closed_form_top = if radius == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        let ln_fact_f = ln_deformed_factorial(&state.params, top, state.convention)?;
        let ln_mag = state.ln_norm_const + (top + 1) as f64 * log(radius) - 0.5 * log_factorial(top as u64) - ln_fact_f;
        -Complex64::from_polar(exp(ln_mag), (top + 1) as f64 * state.alpha.arg())
    };
    let deviation = residual
        .iter()
        .enumerate()
        .map(|(n, r)| if n == top { (r - closed_form_top).norm() } else { r.norm() })
        .fold(0.0, f64::max);
    Ok(AnnihilationResidual { residual, norm, closed_form_top, deviation })
}

/// `ln f(n)!` under the given convention.
pub fn ln_deformed_factorial(params: &TrapParams, n: usize, convention: FactorialConvention) -> Result<f64> {
    let start = match convention {
        FactorialConvention::IncludeGround => 0,
        FactorialConvention::ExcludeGround => 1,
    };
    (start..=n).map(|k| f_squared(params, k).map(|f2| 0.5 * log(f2))).sum()
}

/// `(⟨n̂⟩, ⟨n̂²⟩)`.
pub fn number_moments(state: &DeformedState) -> (f64, f64) {
    state.probabilities().enumerate().fold((0.0, 0.0), |(m1, m2), (n, w)| {
        let n = n as f64;
        (m1 + n * w, m2 + n * n * w)
    })
}

/// `⟨(n̂ - ⟨n̂⟩)²⟩`, summed directly rather than as `⟨n̂²⟩ - ⟨n̂⟩²`.
pub fn number_variance(state: &DeformedState) -> f64 {
    let (mean, _) = number_moments(state);
    state.probabilities().enumerate().map(|(n, w)| (n as f64 - mean) * (n as f64 - mean) * w).sum()
}

/// Moments of the undeformed boson operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderMoments {
    pub mean_a: Complex64,
    pub mean_a2: Complex64,
    pub mean_adag_a: f64,
}

pub fn ladder_moments(state: &DeformedState) -> LadderMoments {
    let c = &state.coeffs;
    let mean_a = (1..c.len()).map(|n| c[n - 1].conj() * c[n] * sqrt(n as f64)).sum();
    let mean_a2 = (2..c.len()).map(|n| c[n - 2].conj() * c[n] * sqrt((n * (n - 1)) as f64)).sum();
    LadderMoments { mean_a, mean_a2, mean_adag_a: number_moments(state).0 }
}

/// `⟨ψ|M|ψ⟩` by direct contraction; `M` must span the state's full basis.
pub fn oracle_expectation(state: &DeformedState, op: &OperatorMatrix) -> Result<Complex64> {
    if state.truncated {
        return Err(Error::TooManyLevels { levels: state.params.num_bound(), limit: DENSE_LIMIT });
    }
    if op.dim() != state.coeffs.len() {
        return Err(Error::DimensionMismatch { expected: state.coeffs.len(), found: op.dim() });
    }
    let m_psi = op.apply(&state.coeffs)?;
    Ok(state.coeffs.iter().zip(&m_psi).map(|(c, v)| c.conj() * v).sum())
}
