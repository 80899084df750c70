//! The joint density of the elementary symmetric functions and its slices.
//!
//! Under Haar measure, s = (s_1, …, s_g) has density
//! ν_g(s) = (2π)^{−g} √(d₀(s) d₁(s)) on Σ_g, where d₀ is the discriminant and
//! d₁ = L_g^+ L_g^−. Integrating ν_g over {s_1 = x} gives the trace density;
//! integrating ν_2 over {s_2 = x} gives the law of s_2.
//!
//! Every one-dimensional integral below is written in a cosine variable
//! y = c + r cos φ, which absorbs the square-root zeros of the integrand at
//! both ends of its interval.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::symmetric::{d1, in_sigma, SymmetricPoint};

/// ν_g(s); zero outside Σ_g.
pub fn nu_density(p: &SymmetricPoint) -> f64 {
    let r = in_sigma(p);
    if !r.in_sigma {
        return 0.0;
    }
    let d0 = *r.minors.last().expect("g ≥ 1");
    (d0 * d1(p)).max(0.0).sqrt() / (2.0 * PI).powi(p.g() as i32)
}

/// ∫_lo^hi h(y) dy in the cosine variable.
fn cosine_integral<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    if hi <= lo {
        return Ok(0.0);
    }
    let c = 0.5 * (lo + hi);
    let r = 0.5 * (hi - lo);
    integrate(|phi: f64| h(c + r * phi.cos()) * r * phi.sin(), 0.0, PI, abs_tol, rel_tol).map(|e| e.value)
}

/// Like [`cosine_integral`] but settles for the best estimate when the
/// tolerance cannot be met (used for inner integrals of nested rules).
fn cosine_integral_lenient<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    match cosine_integral(h, lo, hi, 0.0, rel_tol) {
        Ok(v) => v,
        Err(Error::Accuracy { estimate, .. }) => estimate,
        Err(_) => f64::NAN,
    }
}

/// USp(4) trace density at x ≥ 0 as ∫ ν_2(x, s_2) ds_2 over
/// s_2 ∈ [2x − 4, x²/4].
pub(crate) fn tau_g2_slice(x: f64, tol: f64) -> Result<f64> {
    let x = x.abs();
    if x >= 4.0 {
        return Ok(0.0);
    }
    let (a, b) = (2.0 * x - 4.0, x * x / 4.0);
    // ((y+4)² − 4x²)(x² − 4y) = 4 (y − a)(b − y)(y + 4 + 2x)
    let h = |y: f64| 2.0 * ((y - a) * (b - y)).max(0.0).sqrt() * (y + 4.0 + 2.0 * x).max(0.0).sqrt();
    Ok(cosine_integral(h, a, b, tol, tol)? / (4.0 * PI * PI))
}

/// Density of s_2 on USp(4) as ∫ ν_2(z, x) dz over
/// {|z| ≤ (x + 4)/2, z² ≥ 4x}.
pub(crate) fn tau2_slice(x: f64, tol: f64) -> Result<f64> {
    if x.abs() >= 4.0 {
        return Ok(0.0);
    }
    let hi = (x + 4.0) / 2.0;
    let lo = if x > 0.0 { 2.0 * x.sqrt() } else { 0.0 };
    let h = |z: f64| {
        ((x + 4.0).powi(2) - 4.0 * z * z).max(0.0).sqrt() * (z * z - 4.0 * x).max(0.0).sqrt()
    };
    // the integrand is even in z
    Ok(2.0 * cosine_integral(h, lo, hi, tol, tol)? / (4.0 * PI * PI))
}

/// Trace density of USp(2g) at x by integrating ν_g over the slice s_1 = x.
///
/// g = 2 is a single integral; g = 3 integrates over s_3 between the roots
/// of the discriminant (clipped by L_3^± ≥ 0) and then over s_2.
pub fn f_tau_slice(g: usize, x: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    match g {
        2 => tau_g2_slice(x, tol),
        3 => tau_g3_slice(x, tol),
        _ => Err(Error::InvalidRank(g)),
    }
}

fn tau_g3_slice(x: f64, tol: f64) -> Result<f64> {
    if x.abs() >= 6.0 {
        return Ok(0.0);
    }
    // s_2 = (x² − Σt²)/2 is largest at t = (x/3, x/3, x/3) and smallest at a
    // vertex of the section {Σt = x} of the cube, where two coordinates are ±2.
    let s2_max = x * x / 3.0;
    let max_sq = [(x - 4.0, 2.0..=6.0), (x, -2.0..=2.0), (x + 4.0, -6.0..=-2.0)]
        .into_iter()
        .filter(|(_, range)| range.contains(&x))
        .map(|(third, _)| 8.0 + third * third)
        .fold(f64::NEG_INFINITY, f64::max);
    let s2_min = (x * x - max_sq) / 2.0;

    let inner = |s2: f64| -> f64 {
        // d₀ as a concave quadratic in s_3: −27 s_3² + B s_3 + C
        let b = 18.0 * x * s2 - 4.0 * x.powi(3);
        let c = x * x * s2 * s2 - 4.0 * s2.powi(3);
        let disc = b * b + 108.0 * c;
        if disc <= 0.0 {
            return 0.0;
        }
        let root = disc.sqrt();
        let lo = ((b - root) / 54.0).max(-2.0 * s2 - 4.0 * x - 8.0);
        let hi = ((b + root) / 54.0).min(2.0 * s2 - 4.0 * x + 8.0);
        let h = |s3: f64| {
            let d0 = -27.0 * s3 * s3 + b * s3 + c;
            let d1 = (s3 + 2.0 * s2 + 4.0 * x + 8.0) * (-s3 + 2.0 * s2 - 4.0 * x + 8.0);
            (d0 * d1).max(0.0).sqrt()
        };
        cosine_integral_lenient(h, lo, hi, 1e-11)
    };
    Ok(cosine_integral(inner, s2_min, s2_max, tol * (2.0 * PI).powi(3), 1e-10)? / (2.0 * PI).powi(3))
}
