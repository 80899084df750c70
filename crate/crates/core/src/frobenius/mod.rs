//! Genus-2 curves over prime fields and their Frobenius statistics.
//!
//! * [`field`]: F_p and F_{p²} with quadratic characters;
//! * [`curve`]: models y² = f(x), squarefree tests, point counting;
//! * [`weil`]: Weil polynomials from point counts and their validation;
//! * [`scan`]: exhaustive and sampled scans over models, compared with the
//!   USp(4) trace law.

pub mod curve;
pub mod field;
pub mod scan;
pub mod weil;

pub use curve::{count_points, count_points_naive, HyperellipticCurve, PointCounter};
pub use field::{PrimeField, QuadElem, QuadExtField};
pub use scan::{compare_to_theory, scan_curves, CurveRecord, CurveScan, ReportRecord, ScanMode, ScanOptions};
pub use weil::{validate_weil, validate_weil_float, weil_data, weil_data_from_counts, WeilData};
