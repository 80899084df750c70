//! Closed-form densities and characteristic functions.

use std::f64::consts::PI;

use super::slice::tau_g2_slice;
use super::{Character, TauMethod};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_with_points};
use crate::specfun::{bessel_j, elliptic_ke_complement, gauss_2f1, hyp1f2, legendre_p_half};
use crate::symmetric::det;

/// f(0) of the USp(4) trace, 64/(15π²).
pub const F_TAU_G2_AT_ZERO: f64 = 64.0 / (15.0 * PI * PI);

/// Below this |x| the elliptic form of the s_2 density is replaced by its
/// slicing integral (the elliptic parameter 1 − 16/x² diverges at 0).
pub const TAU2_SLICE_SWITCH: f64 = 0.05;

/// Semicircle density (1/2π)√(4 − x²) of the USp(2) trace.
pub fn f_tau_g1(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// Density of the trace on USp(4) by the chosen route. Zero outside (−4, 4).
pub fn f_tau_g2(x: f64, method: TauMethod) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidInput("x is NaN".into()));
    }
    let ax = x.abs();
    if ax >= 4.0 {
        return Ok(0.0);
    }
    match method {
        TauMethod::Auto if ax <= 3.5 => tau_elliptic(ax),
        TauMethod::Auto | TauMethod::Hypergeometric => {
            let m = 1.0 - ax * ax / 16.0;
            Ok(m.powi(4) * gauss_2f1(1.5, 2.5, 5.0, m)? / (4.0 * PI))
        }
        TauMethod::Elliptic => tau_elliptic(ax),
        TauMethod::Legendre => {
            if ax == 0.0 {
                return Ok(F_TAU_G2_AT_ZERO);
            }
            let z = (ax * ax + 16.0) / (8.0 * ax);
            let m = 1.0 - ax * ax / 16.0;
            Ok(-64.0 / (15.0 * PI) * ax.sqrt() * m * m * legendre_p_half(2, z)?)
        }
        TauMethod::Meijer => {
            if ax == 0.0 {
                return Ok(F_TAU_G2_AT_ZERO);
            }
            Ok(6.0 / PI * meijer_g(ax * ax / 16.0)?)
        }
        TauMethod::Slice => tau_g2_slice(ax, 1e-13),
    }
}

/// (64/15π²)[(m² − 16m + 16)E(m) − 8(m² − 3m + 2)K(m)], m = 1 − x²/16,
/// with m² − 3m + 2 = mc(1 + mc) written through mc = x²/16.
fn tau_elliptic(ax: f64) -> Result<f64> {
    if ax == 0.0 {
        return Ok(F_TAU_G2_AT_ZERO);
    }
    let mc = ax * ax / 16.0;
    let m = 1.0 - mc;
    let (k, e) = elliptic_ke_complement(mc)?;
    Ok(F_TAU_G2_AT_ZERO * ((m * m - 16.0 * m + 16.0) * e - 8.0 * mc * (1.0 + mc) * k))
}

/// The Meijer function of the trace law through its associated-Legendre
/// form, G(z) = (4/3)(1 − z)² z^{1/4} P^{−2}_{1/2}((z + 1)/(2√z)).
fn meijer_g(z: f64) -> Result<f64> {
    let w = (z + 1.0) / (2.0 * z.sqrt());
    Ok(4.0 / 3.0 * (1.0 - z).powi(2) * z.powf(0.25) * legendre_p_half(-2, w)?)
}

/// Density of the trace on SU(2)×SU(2),
/// (1/2π)(1 − x²/16)² ₂F₁(1/2, 3/2; 3; 1 − x²/16).
pub fn f_rho(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidInput("x is NaN".into()));
    }
    if x.abs() >= 4.0 {
        return Ok(0.0);
    }
    let m = 1.0 - x * x / 16.0;
    Ok(m * m * gauss_2f1(0.5, 1.5, 3.0, m)? / (2.0 * PI))
}

/// Density of s_2 on USp(4) (see [`Character::Tau2`]).
///
/// Closed form, with m = 1 − 16/x² < 0:
/// sgn(−x)/(24π²)·[−x(x² + 24x + 16)E(m) + 4(3x² + 8x + 48)K(m)].
/// Near x = 0 the slicing integral is used instead.
pub fn f_tau2(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidInput("x is NaN".into()));
    }
    if x.abs() >= 4.0 {
        return Ok(0.0);
    }
    if x.abs() < TAU2_SLICE_SWITCH {
        return super::slice::tau2_slice(x, 1e-13);
    }
    let (k, e) = elliptic_ke_complement(16.0 / (x * x))?;
    let v = (-x * (x * x + 24.0 * x + 16.0) * e + 4.0 * (3.0 * x * x + 8.0 * x + 48.0) * k) / (24.0 * PI * PI);
    Ok(if x > 0.0 { -v } else { v }.max(0.0))
}

/// Φ_τ(x) = ∫_{−4}^{x} f_τ for the USp(4) trace, by adaptive quadrature
/// (and Φ_τ(x) = 1 − Φ_τ(−x) for x > 0).
pub fn cdf_tau_g2(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::InvalidInput("x is NaN".into()));
    }
    if x <= -4.0 {
        return Ok(0.0);
    }
    if x >= 4.0 {
        return Ok(1.0);
    }
    if x > 0.0 {
        return Ok(1.0 - cdf_tau_g2(-x)?);
    }
    let f = |s: f64| f_tau_g2(s, TauMethod::Auto).unwrap_or(f64::NAN);
    let mut pts = vec![-4.0];
    if x > -3.5 {
        pts.push(-3.5);
    }
    pts.push(x);
    Ok(integrate_with_points(f, &pts, 1e-15, 1e-13)?.value.clamp(0.0, 1.0))
}

/// Characteristic function E[cos(tX)] of a symmetric law.
///
/// * `TauG1`: J₁(2t)/t;
/// * `TauG2`: 4J₁²/t² − 6J₁J₂/t³ + 4J₂²/t² with J_n = J_n(2t), switching to
///   ₁F₂(3/2; 3, 4; −4t²) for |t| < 10⁻³;
/// * `TauG3`: [`charfn_tau_g3_bessel_sum`] for |t| ≥ 1/2, the determinant
///   form below that (the Bessel sum cancels badly as t → 0);
/// * `Rho`: J₁(2t)²/t².
pub fn charfn(which: Character, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("t = {t} is not finite")));
    }
    let t = t.abs();
    if t == 0.0 {
        return match which {
            Character::Tau2 | Character::Chi2 => Err(no_charfn(which)),
            _ => Ok(1.0),
        };
    }
    match which {
        Character::TauG1 => Ok(bessel_j(1, 2.0 * t)? / t),
        Character::TauG2 => {
            if t < 1e-3 {
                return hyp1f2(1.5, 3.0, 4.0, -4.0 * t * t);
            }
            let j1 = bessel_j(1, 2.0 * t)?;
            let j2 = bessel_j(2, 2.0 * t)?;
            let t2 = t * t;
            Ok(4.0 * j1 * j1 / t2 - 6.0 * j1 * j2 / (t2 * t) + 4.0 * j2 * j2 / t2)
        }
        Character::TauG3 => {
            if t < 0.5 {
                charfn_det(3, t)
            } else {
                charfn_tau_g3_bessel_sum(t)
            }
        }
        Character::Rho => Ok((bessel_j(1, 2.0 * t)? / t).powi(2)),
        Character::Tau2 | Character::Chi2 => Err(no_charfn(which)),
    }
}

fn no_charfn(which: Character) -> Error {
    Error::InvalidInput(format!("no characteristic function implemented for {which}"))
}

/// The USp(6) trace characteristic function as a finite Bessel sum:
/// 24(−4J₁³/y⁵ + 11J₁²J₂/y⁶ − 2(3 + 2y²)J₁J₂²/y⁷ + 5J₂³/y⁶), J_n = J_n(2y).
pub fn charfn_tau_g3_bessel_sum(y: f64) -> Result<f64> {
    if y == 0.0 {
        return Ok(1.0);
    }
    let j1 = bessel_j(1, 2.0 * y)?;
    let j2 = bessel_j(2, 2.0 * y)?;
    let y2 = y * y;
    let y5 = y2 * y2 * y;
    let y6 = y5 * y;
    let y7 = y6 * y;
    Ok(24.0
        * (-4.0 * j1.powi(3) / y5 + 11.0 * j1 * j1 * j2 / y6 - 2.0 * (3.0 + 2.0 * y2) * j1 * j2 * j2 / y7
            + 5.0 * j2.powi(3) / y6))
}

/// E[cos(yX)] for the USp(2g) trace as the g×g determinant
/// det[J_{j−k}(2y) − (−1)^k J_{j+k}(2y)], with J_{−n} = (−1)ⁿJ_n.
pub fn charfn_det(g: usize, y: f64) -> Result<f64> {
    if !(1..=4).contains(&g) {
        return Err(Error::InvalidRank(g));
    }
    let mut j = vec![0.0; 2 * g + 1];
    for (n, v) in j.iter_mut().enumerate() {
        *v = bessel_j(n as u32, 2.0 * y)?;
    }
    let jj = |n: i64| {
        let v = j[n.unsigned_abs() as usize];
        if n < 0 && n % 2 != 0 {
            -v
        } else {
            v
        }
    };
    let m: Vec<Vec<f64>> = (1..=g as i64)
        .map(|r| {
            (1..=g as i64)
                .map(|c| {
                    let sign = if c % 2 == 0 { 1.0 } else { -1.0 };
                    jj(r - c) - sign * jj(r + c)
                })
                .collect()
        })
        .collect();
    Ok(det(m))
}

/// (1/π)∫₀^T φ(t) cos(tx) dt for the USp(4) trace, plus the contribution of
/// the non-oscillating tail φ(t) ≈ 4/(πt³) beyond T.
///
/// Converges to f_τ(x); at T = 200 the error is below 10⁻⁵.
pub fn invert_charfn_tau_g2(x: f64, t_max: f64) -> Result<f64> {
    if !(t_max > 0.0) {
        return Err(Error::InvalidInput(format!("cut-off must be positive, got {t_max}")));
    }
    let pieces = (t_max / 2.0).ceil() as usize;
    let pts: Vec<f64> = (0..=pieces).map(|i| t_max * i as f64 / pieces as f64).collect();
    let body = integrate_with_points(
        |t| charfn(Character::TauG2, t).unwrap_or(f64::NAN) * (t * x).cos(),
        &pts,
        1e-13,
        1e-12,
    )?
    .value;
    Ok((body + 4.0 / PI * cos_over_cube_tail(x, t_max)) / PI)
}

/// ∫_T^∞ cos(xt)/t³ dt.
fn cos_over_cube_tail(x: f64, t: f64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return 0.5 / (t * t);
    }
    let at = a * t;
    if at >= 10.0 {
        // integration by parts, three terms
        let (s, c) = at.sin_cos();
        return -s / (a * t.powi(3)) + 3.0 * c / (a * a * t.powi(4)) + 12.0 * s / (a.powi(3) * t.powi(5));
    }
    // t' = T/u: (1/T²)∫₀¹ u cos(xT/u) du, bounded integrand
    match integrate(|u: f64| if u == 0.0 { 0.0 } else { u * (at / u).cos() }, 0.0, 1.0, 1e-12, 1e-10) {
        Ok(e) => e.value / (t * t),
        Err(Error::Accuracy { estimate, .. }) => estimate / (t * t),
        Err(_) => f64::NAN,
    }
}
