//! Numerics for a particle bound in the modified Pöschl-Teller well
//! `V(x) = D tanh²(x/δ)`, treated as an f-deformed harmonic oscillator.
//!
//! Everything is expressed in natural units `ħ = m = ω = 1`, so the single
//! physical input is the dimensionless depth `N = 4D/ħω`.
//!
//! * [`numerics`]: log-Gamma, real-order `K_ν`, semi-infinite quadrature.
//! * [`spectrum`]: trap parameters, bound levels, deformation function.
//! * [`operators`]: dense ladder matrices and algebra-identity checkers.
//! * [`states`]: f-deformed bound coherent states and their moments.
//! * [`statistics`]: Mandel `Q`, invariant squeezing `S`, quadrature variances.
//! * [`measure`]: the coherent-state measure and a per-level audit of the
//!   resolution of identity.
//!
//! The crate is `no_std` and only needs `alloc`; IO, the CLI and output
//! formats live in the `mpt-cli` crate.

#![no_std]
// `!(x > 0.0)` rejects NaN along with non-positive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod measure;
pub mod numerics;
pub mod operators;
pub mod spectrum;
pub mod states;
pub mod statistics;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Largest basis on which dense operator matrices and the matrix oracle are built.
pub const DENSE_LIMIT: usize = 2000;
