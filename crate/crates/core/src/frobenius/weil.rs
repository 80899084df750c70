//! Weil data of genus-2 curves and their validation against the alcove.

use serde::Serialize;

use super::curve::{HyperellipticCurve, PointCounter};
use crate::error::{Error, Result};
use crate::symmetric::{in_sigma, sym_from_coeffs, PalindromicPolynomial};

/// Point counts and the Frobenius polynomial
/// L(u) = u⁴ − c1 u³ + c2 u² − c1 p u + p² of a genus-2 curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeilData {
    pub p: u64,
    pub n1: i64,
    pub n2: i64,
    pub c1: i64,
    pub c2: i64,
    /// c1/√p
    pub a1: f64,
    /// c2/p
    pub a2: f64,
    /// The normalised trace of Frobenius; equal to a1.
    pub trace: f64,
}

impl WeilData {
    /// The unitarised polynomial L(√p u)/p² as (1, a1, a2).
    pub fn palindromic(&self) -> PalindromicPolynomial {
        PalindromicPolynomial::new(vec![1.0, self.a1, self.a2]).expect("a_0 = 1, g = 2")
    }

    /// (N1, N2) recomputed from (c1, c2): N_n = p^n + 1 − (α_1^n + … + α_4^n).
    pub fn counts_from_coefficients(&self) -> (i64, i64) {
        let p = self.p as i64;
        (p + 1 - self.c1, p * p + 1 - (self.c1 * self.c1 - 2 * self.c2))
    }
}

/// Weil data from the counts over F_p and F_{p²}.
///
/// With α_i the Frobenius roots, P_n = Σ α_i^n = p^n + 1 − N_n, so
/// c1 = P_1 and c2 = e_2 = (P_1² − P_2)/2. Fails with a counting-bug error if
/// the result is not a Weil polynomial (which honest counts never produce).
pub fn weil_data_from_counts(p: u64, n1: i64, n2: i64) -> Result<WeilData> {
    let pi = p as i64;
    let c1 = pi + 1 - n1;
    let p2 = pi * pi + 1 - n2;
    let twice_c2 = c1 * c1 - p2;
    let bug = |c2| Error::CountingBug { p, n1, n2, c1, c2 };
    if twice_c2 % 2 != 0 {
        return Err(bug(twice_c2 / 2));
    }
    let c2 = twice_c2 / 2;
    let a1 = c1 as f64 / (p as f64).sqrt();
    let w = WeilData { p, n1, n2, c1, c2, a1, a2: c2 as f64 / p as f64, trace: a1 };
    if validate_weil(&w) {
        Ok(w)
    } else {
        Err(bug(c2))
    }
}

/// Counts points over F_p and F_{p²} and extracts the Weil data.
pub fn weil_data(c: &HyperellipticCurve) -> Result<WeilData> {
    let counter = PointCounter::new(c.p())?;
    weil_data_with(&counter, c)
}

pub(crate) fn weil_data_with(counter: &PointCounter, c: &HyperellipticCurve) -> Result<WeilData> {
    let n1 = counter.count(c.f_coeffs(), 1)?;
    let n2 = counter.count(c.f_coeffs(), 2)?;
    weil_data_from_counts(c.p(), n1, n2)
}

/// Whether L is a Weil polynomial, decided exactly.
///
/// The real Weil polynomial of the unitarised L is h(x) = x² − a1 x + a2 − 2
/// and L is Weil iff both roots of h lie in [−2, 2]: the vertex a1/2 is in
/// [−2, 2], the discriminant is ≥ 0, and h(±2) ≥ 0. Multiplying through by p
/// leaves only the irrational √p in h(±2)·p = c2 + 2p ∓ 2c1√p, which is
/// cleared by squaring.
pub fn validate_weil(w: &WeilData) -> bool {
    let (p, c1, c2) = (w.p as i128, w.c1 as i128, w.c2 as i128);
    let vertex = c1 * c1 <= 16 * p;
    let real_roots = c1 * c1 - 4 * c2 + 8 * p >= 0;
    let h_at_2 = c2 + 2 * p;
    let ends = h_at_2 >= 0 && h_at_2 * h_at_2 >= 4 * c1 * c1 * p;
    vertex && real_roots && ends
}

/// Floating-point route: map the unitarised coefficients to Σ_2 and test
/// membership. Agrees with [`validate_weil`] away from the boundary of Σ_2.
pub fn validate_weil_float(a: &PalindromicPolynomial) -> bool {
    in_sigma(&sym_from_coeffs(a)).in_sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::curve::count_points_naive;

    fn pal(a1: f64, a2: f64) -> PalindromicPolynomial {
        PalindromicPolynomial::new(vec![1.0, a1, a2]).unwrap()
    }

    #[test]
    fn float_validation_examples() {
        assert!(validate_weil_float(&pal(0.0, 2.0)));
        assert!(!validate_weil_float(&pal(5.0, 1.0)));
        // (u − 1)⁴: t = (2, 2), a corner of Σ_2
        assert!(validate_weil_float(&pal(4.0, 6.0)));
    }

    #[test]
    fn trivial_counts_give_zero_trace() {
        let w = weil_data_from_counts(7, 8, 50).unwrap();
        assert_eq!((w.c1, w.a1), (0, 0.0));
        assert_eq!(w.c2, 0);
    }

    #[test]
    fn exact_and_float_validation_agree() {
        for p in [3u64, 5, 7, 11, 13] {
            let bound = (4.0 * (p as f64).sqrt()) as i64 + 1;
            for c1 in -bound..=bound {
                for c2 in -8 * p as i64..=8 * p as i64 {
                    let a1 = c1 as f64 / (p as f64).sqrt();
                    let a2 = c2 as f64 / p as f64;
                    let w = WeilData { p, n1: 0, n2: 0, c1, c2, a1, a2, trace: a1 };
                    let exact = validate_weil(&w);
                    let float = validate_weil_float(&pal(a1, a2));
                    // on the boundary the float route may go either way
                    let h = |x: f64| x * x - a1 * x + a2 - 2.0;
                    let near_edge = (a1 * a1 - 4.0 * (a2 - 2.0)).abs() < 1e-9
                        || h(2.0).abs() < 1e-9
                        || h(-2.0).abs() < 1e-9;
                    if !near_edge {
                        assert_eq!(exact, float, "p={p} c1={c1} c2={c2}");
                    }
                }
            }
        }
    }

    type C = (f64, f64);

    fn cmul(a: C, b: C) -> C {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
    }

    fn cdiv(a: C, b: C) -> C {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    }

    /// Roots of L(u) by Durand–Kerner iteration on the monic quartic.
    fn frobenius_roots(w: &WeilData) -> Vec<C> {
        let p = w.p as f64;
        let (c1, c2) = (w.c1 as f64, w.c2 as f64);
        let coeffs = [1.0, -c1, c2, -c1 * p, p * p];
        let eval = |z: C| coeffs.iter().fold((0.0, 0.0), |acc, &c| {
            let m = cmul(acc, z);
            (m.0 + c, m.1)
        });
        let mut z: Vec<C> = (0..4).map(|k| {
            let a = 0.4 + 1.7 * k as f64;
            (p.sqrt() * 1.1 * a.cos(), p.sqrt() * 1.1 * a.sin())
        }).collect();
        for _ in 0..500 {
            for i in 0..4 {
                let mut den = (1.0, 0.0);
                for j in 0..4 {
                    if i != j {
                        den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    }
                }
                let step = cdiv(eval(z[i]), den);
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
            }
        }
        z
    }

    #[test]
    fn frobenius_roots_have_absolute_value_sqrt_p() {
        let c = HyperellipticCurve::new(3, &[1, 0, 0, 0, 0, 1]).unwrap();
        let w = weil_data(&c).unwrap();
        assert_eq!(w.n1, count_points_naive(3, c.f_coeffs(), 1).unwrap());
        assert_eq!(w.n2, count_points_naive(3, c.f_coeffs(), 2).unwrap());
        let roots = frobenius_roots(&w);
        for r in &roots {
            assert!((r.0.hypot(r.1) - 3f64.sqrt()).abs() < 1e-6, "{r:?}");
        }
        // the power sums of the roots reproduce the counts
        let s1: f64 = roots.iter().map(|r| r.0).sum();
        let s2: f64 = roots.iter().map(|r| cmul(*r, *r).0).sum();
        assert!((4.0 - s1 - w.n1 as f64).abs() < 1e-6);
        assert!((10.0 - s2 - w.n2 as f64).abs() < 1e-6);
    }

    #[test]
    fn counts_round_trip() {
        let c = HyperellipticCurve::new(7, &[3, 1, 0, 5, 0, 2, 1]).unwrap();
        let w = weil_data(&c).unwrap();
        assert_eq!(w.counts_from_coefficients(), (w.n1, w.n2));
        assert!(validate_weil_float(&w.palindromic()));
    }

    #[test]
    fn corrupted_counts_are_rejected() {
        let c = HyperellipticCurve::new(5, &[1, 1, 0, 0, 0, 1]).unwrap();
        let w = weil_data(&c).unwrap();
        // N1 pushed past the Weil bound
        assert!(matches!(
            weil_data_from_counts(5, w.n1 + 20, w.n2),
            Err(Error::CountingBug { .. })
        ));
        // parity violation
        assert!(weil_data_from_counts(5, w.n1 + 1, w.n2).is_err());
    }
}
