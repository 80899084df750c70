//! Complete elliptic integrals of the first and second kind, parameter
//! convention: K(m) = ∫₀^{π/2} (1 − m sin²φ)^{−1/2} dφ.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// AGM evaluation for 0 ≤ m < 1 with the complementary parameter supplied
/// separately, so that m close to 1 does not lose digits in `1 − m`.
fn agm_ke(m: f64, mc: f64) -> (f64, f64) {
    let mut a = 1.0f64;
    let mut b = mc.sqrt();
    let mut c2 = m; // c_n²
    let mut weight = 0.5; // 2^{n−1}
    let mut sum = weight * c2;
    for _ in 0..64 {
        let a_next = 0.5 * (a + b);
        let b_next = (a * b).sqrt();
        // c_{n+1} = (a_n − b_n)/2 = c_n² / (4 a_{n+1})
        c2 = (c2 / (4.0 * a_next)).powi(2);
        weight *= 2.0;
        sum += weight * c2;
        a = a_next;
        b = b_next;
        if weight * c2 < 1e-17 * sum.max(1e-300) && (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
    }
    let k = FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

/// K and E given the complementary parameter mc = 1 − m > 0 directly.
///
/// Covers every m < 1, including m → −∞ (mc → ∞) where the imaginary-modulus
/// transformation K(m) = K(m')/√(1−m), E(m) = √(1−m)·E(m') with
/// m' = −m/(1−m) is applied.
pub(crate) fn elliptic_ke_complement(mc: f64) -> Result<(f64, f64)> {
    if !(mc > 0.0) || !mc.is_finite() {
        return Err(Error::Domain(format!(
            "complete elliptic K needs 1 - m in (0, inf), got {mc}"
        )));
    }
    if mc <= 1.0 {
        return Ok(agm_ke(1.0 - mc, mc));
    }
    // m = 1 − mc < 0
    let m = 1.0 - mc;
    let mp = -m / mc;
    let mcp = 1.0 / mc;
    let (k, e) = agm_ke(mp, mcp);
    let r = mc.sqrt();
    Ok((k / r, e * r))
}

/// Both complete integrals (K(m), E(m)) for m < 1.
pub fn elliptic_ke(m: f64) -> Result<(f64, f64)> {
    if m.is_nan() || m >= 1.0 {
        return Err(Error::Domain(format!("K(m) diverges for m = {m} >= 1")));
    }
    elliptic_ke_complement(1.0 - m)
}

pub fn elliptic_k(m: f64) -> Result<f64> {
    elliptic_ke(m).map(|(k, _)| k)
}

/// E(m) for m ≤ 1; E(1) = 1.
pub fn elliptic_e(m: f64) -> Result<f64> {
    if m == 1.0 {
        return Ok(1.0);
    }
    if m > 1.0 {
        return Err(Error::Domain(format!("E(m) is not real for m = {m} > 1")));
    }
    elliptic_ke(m).map(|(_, e)| e)
}
