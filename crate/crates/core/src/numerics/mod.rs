//! Special functions and quadrature shared by the rest of the crate.

mod bessel;
mod gamma;
mod quadrature;

pub use bessel::{bessel_k, kv_moment_closed_form, ln_bessel_k, ln_kv_moment_closed_form};
pub use gamma::{gamma, ln_gamma, log_factorial};
pub use quadrature::{
    integrate_adaptive, integrate_semi_infinite, integrate_semi_infinite_with_budget, QuadratureResult,
    DEFAULT_EVAL_BUDGET,
};
