//! Associated Legendre functions of the first kind on the cut z > 1.

use super::gamma::{gamma, rgamma};
use super::hyper::gauss_2f1;
use crate::error::{Error, Result};

/// P^μ_ν(z) for real degree ν, integer order μ and z > 1 (type-3 convention,
/// no (−1)^μ Condon–Shortley phase).
///
/// Non-positive orders use the hypergeometric definition
/// P^μ_ν(z) = ((z+1)/(z−1))^{μ/2} ₂F₁(−ν, ν+1; 1−μ; (1−z)/2) / Γ(1−μ).
/// For positive integer μ that expression is a 0·∞ limit, so the order is
/// flipped with P^m_ν = Γ(ν+m+1)/Γ(ν−m+1) · P^{−m}_ν.
pub fn legendre_p(nu: f64, order: i32, z: f64) -> Result<f64> {
    if !(z > 1.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Legendre P on the cut needs z > 1, got {z}")));
    }
    if order > 0 {
        let m = order as f64;
        let ratio = gamma(nu + m + 1.0) * rgamma(nu - m + 1.0);
        return Ok(ratio * legendre_p(nu, -order, z)?);
    }
    let mu = order as f64;
    let pref = ((z + 1.0) / (z - 1.0)).powf(mu / 2.0) * rgamma(1.0 - mu);
    Ok(pref * gauss_2f1(-nu, nu + 1.0, 1.0 - mu, (1.0 - z) / 2.0)?)
}

/// P^{±2}_{1/2}(z), the two orders the genus-2 trace law is written with.
pub fn legendre_p_half(order: i32, z: f64) -> Result<f64> {
    if order != 2 && order != -2 {
        return Err(Error::UnsupportedOrder {
            order: order as i64,
            supported: "-2 or 2",
        });
    }
    legendre_p(0.5, order, z)
}
