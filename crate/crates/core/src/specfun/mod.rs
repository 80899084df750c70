//! Real special-function kernels.
//!
//! Everything here is a pure function of its arguments. Accuracy targets are
//! absolute 1e-12 for Bessel functions on |x| ≤ 50, relative 1e-12 for ₂F₁
//! on (−∞, 1] and absolute 1e-13 for the complete elliptic integrals.

mod bessel;
mod elliptic;
mod gamma;
mod hyper;
mod legendre;
mod poly;

pub use bessel::bessel_j;
pub use elliptic::{elliptic_e, elliptic_k, elliptic_ke};
pub(crate) use elliptic::elliptic_ke_complement;
pub use gamma::{digamma, gamma, ln_gamma, rgamma};
pub use hyper::{gauss_2f1, gauss_2f1_partial, hyp1f2};
pub use legendre::{legendre_p, legendre_p_half};
pub use poly::{catalan, chebyshev_c, chebyshev_c_coeffs, legendre_poly};

/// A value together with the absolute error bound claimed by the method
/// that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    pub value: f64,
    pub est_error: f64,
}
