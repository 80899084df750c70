//! Trace distributions on the compact symplectic group USp(2g), g ≤ 3.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: real special functions (Bessel, Gauss ₂F₁, complete
//!   elliptic integrals, degree-½ Legendre functions, Chebyshev and Legendre
//!   polynomials).
//! * [`quadrature`]: adaptive Gauss–Kronrod rules in one and several
//!   dimensions.
//! * [`weyl`]: the Weyl measure on conjugacy classes in angle and
//!   coefficient coordinates, integration against it and exact sampling.
//! * [`symmetric`]: the Viète map, the symmetric alcove Σ_g and the
//!   character-ring formulas relating Weil-polynomial coefficients to
//!   elementary symmetric functions.
//! * [`distribution`]: closed-form and reconstructed trace densities,
//!   characteristic functions and moment sequences.
//! * [`frobenius`]: point counting on genus-2 curves y² = f(x) over prime
//!   fields and the comparison of Frobenius statistics with the Weyl law.

// Coefficient tables are kept digit-for-digit as published, and `!(x > 0.0)`
// is used on purpose so that NaN is rejected along with non-positive values.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod distribution;
pub mod empirical;
pub mod error;
pub mod frobenius;
pub mod quadrature;
pub mod specfun;
pub mod symmetric;
pub mod weyl;

pub use distribution::{Character, DensityCurve, MomentSequence, TauMethod};
pub use empirical::EmpiricalDistribution;
pub use error::{Error, Result};
pub use frobenius::{HyperellipticCurve, PrimeField, QuadExtField, ScanMode, WeilData};
pub use symmetric::{MembershipReport, PalindromicPolynomial, SymmetricPoint};
pub use weyl::{CoefficientVector, ConjugacyClass};
