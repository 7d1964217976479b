//! Trap parameterization, bound spectrum and deformation function.
//!
//! Units: `ħ = m = ω = 1`. Energies are in units of `ħω`, lengths in units of
//! the oscillator length. The depth parameter `N = 4D/ħω` fixes everything.

use alloc::vec::Vec;
use libm::{floor, round, sqrt, tanh};

use crate::{Error, Result};

/// Tolerance for treating `s` as an integer when counting bound states.
pub const INTEGER_S_TOLERANCE: f64 = 1e-9;

/// Largest accepted depth parameter; keeps the level count well inside `usize`.
pub const MAX_N_PARAM: f64 = 1e12;

/// Largest spectrum materialized by [`BoundSpectrum::new`].
pub const MAX_SPECTRUM_LEVELS: usize = 1 << 20;

/// Physical parameters of the finite-range trap, derived from `N = 4D/ħω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapParams {
    n_param: f64,
    s: f64,
    /// `N/2 - s`, kept separately because it is a small difference of large numbers.
    half_n_minus_s: f64,
    num_bound: usize,
    gamma: f64,
    eta: f64,
    eta_minus_one: f64,
}

impl TrapParams {
    /// Builds the trap for depth parameter `N > 0`.
    pub fn new(n_param: f64) -> Result<Self> {
        if !(n_param > 0.0) || !n_param.is_finite() {
            return Err(Error::Domain { what: "depth parameter N must be positive and finite", value: n_param });
        }
        if n_param > MAX_N_PARAM {
            return Err(Error::Domain { what: "depth parameter N exceeds 1e12", value: n_param });
        }
        let root = sqrt(1.0 + n_param * n_param);
        // s = (√(1+N²) - 1)/2 without cancellation at small N
        let s = n_param * n_param / (2.0 * (root + 1.0));
        // N - √(1+N²) = -1/(N + √(1+N²))
        let half_n_minus_s = 0.5 - 0.5 / (n_param + root);
        let nearest = round(s);
        let num_bound = if nearest >= 1.0 && (s - nearest).abs() < INTEGER_S_TOLERANCE {
            nearest as usize
        } else {
            floor(s) as usize + 1
        };
        let eta = root / n_param;
        let inv_sq = 1.0 / (n_param * n_param);
        let eta_minus_one = inv_sq / (eta + 1.0);
        Ok(Self { n_param, s, half_n_minus_s, num_bound, gamma: 1.0 / n_param, eta, eta_minus_one })
    }

    /// Builds the trap from the well depth `D` (units `ħω`), i.e. `N = 4D`.
    pub fn from_depth(depth: f64) -> Result<Self> {
        if !(depth > 0.0) || !depth.is_finite() {
            return Err(Error::Domain { what: "well depth D must be positive and finite", value: depth });
        }
        Self::new(4.0 * depth)
    }

    /// Dimensionless depth `N = 4D/ħω`.
    pub fn n_param(&self) -> f64 {
        self.n_param
    }

    /// `s = (√(1+N²) - 1)/2`.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Total number of bound states (at least one).
    pub fn num_bound(&self) -> usize {
        self.num_bound
    }

    /// Highest bound quantum number, `num_bound - 1`.
    pub fn top_level(&self) -> usize {
        self.num_bound - 1
    }

    /// `γ = 1/N`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `η = √(1 + 1/N²)`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `η - 1`, accurate for large `N`.
    pub fn eta_minus_one(&self) -> f64 {
        self.eta_minus_one
    }

    /// Well depth `D = N/4`.
    pub fn depth(&self) -> f64 {
        0.25 * self.n_param
    }

    /// Range `δ = √(N/2)`.
    pub fn range(&self) -> f64 {
        sqrt(0.5 * self.n_param)
    }

    /// `q = 1 - 2/N` of the large-`N` q-deformed relation.
    pub fn q(&self) -> f64 {
        1.0 - 2.0 * self.gamma
    }

    fn check_bound(&self, n: usize) -> Result<()> {
        if n > self.top_level() {
            return Err(Error::LevelOutOfRange { n, max: self.top_level() });
        }
        Ok(())
    }
}

/// Shorthand for [`TrapParams::new`].
pub fn new_trap(n_param: f64) -> Result<TrapParams> {
    TrapParams::new(n_param)
}

/// `V(x) = D tanh²(x/δ)`.
pub fn potential(params: &TrapParams, x: f64) -> f64 {
    let t = tanh(x / params.range());
    params.depth() * t * t
}

/// `E_n = D - (s-n)²/N`, written as `(N/2 - s + n)(N/2 + s - n)/N`.
pub fn energy_well_form(params: &TrapParams, n: usize) -> Result<f64> {
    params.check_bound(n)?;
    let n = n as f64;
    let big = params.n_param;
    let low = params.half_n_minus_s + n;
    Ok(low * (big - low) / big)
}

/// `E_n = -n²/N + (η - 1/N) n + (η - 1/N)/2`.
pub fn energy_deformed_form(params: &TrapParams, n: usize) -> Result<f64> {
    params.check_bound(n)?;
    let n = n as f64;
    let slope = params.eta - params.gamma;
    Ok(-n * n * params.gamma + slope * n + 0.5 * slope)
}

/// `E_n = ½[(n+1) f²(n+1) + n f²(n)]`, the eigenvalue of `½(A†A + AA†)`.
pub fn energy_ladder_form(params: &TrapParams, n: usize) -> Result<f64> {
    params.check_bound(n)?;
    let upper = (n + 1) as f64 * f_squared(params, n + 1)?;
    let lower = n as f64 * f_squared(params, n)?;
    Ok(0.5 * (upper + lower))
}

/// `Δ_n = (E_{n+1} - E_n) - 1 = (η - 1) - 2(n+1)/N`.
pub fn delta_param(params: &TrapParams, n: usize) -> Result<f64> {
    if params.top_level() == 0 {
        return Err(Error::NoLevels { what: "level spacing" });
    }
    if n + 1 > params.top_level() {
        return Err(Error::LevelOutOfRange { n, max: params.top_level() - 1 });
    }
    Ok(params.eta_minus_one - 2.0 * (n + 1) as f64 * params.gamma)
}

/// Deformation function `f²(n) = η - n/N`, valid for `0 <= n <= top_level + 1`.
pub fn f_squared(params: &TrapParams, n: usize) -> Result<f64> {
    let max = params.top_level() + 1;
    if n > max {
        return Err(Error::LevelOutOfRange { n, max });
    }
    Ok(params.eta - n as f64 * params.gamma)
}

/// Bound levels and adjacent-spacing deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundSpectrum {
    pub params: TrapParams,
    /// `E_n` for `n = 0..num_bound`.
    pub levels: Vec<f64>,
    /// `Δ_n` for `n = 0..num_bound-1`.
    pub deltas: Vec<f64>,
}

impl BoundSpectrum {
    /// Full bound spectrum; fails above [`MAX_SPECTRUM_LEVELS`] levels.
    pub fn new(params: TrapParams) -> Result<Self> {
        if params.num_bound() > MAX_SPECTRUM_LEVELS {
            return Err(Error::TooManyLevels { levels: params.num_bound(), limit: MAX_SPECTRUM_LEVELS });
        }
        Self::lowest(params, params.num_bound())
    }

    /// The lowest `count` bound levels (clamped to the bound range).
    pub fn lowest(params: TrapParams, count: usize) -> Result<Self> {
        let count = count.min(params.num_bound());
        let levels = (0..count).map(|n| energy_deformed_form(&params, n)).collect::<Result<Vec<_>>>()?;
        let deltas = (0..count.min(params.top_level())).map(|n| delta_param(&params, n)).collect::<Result<Vec<_>>>()?;
        Ok(Self { params, levels, deltas })
    }
}
