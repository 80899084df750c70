use crate::error::{Error, Result};

const MAX_ORDER: u32 = 8;

/// Bessel function of the first kind Jₙ(x) for integer order 0 ≤ n ≤ 8.
///
/// Small arguments use the ascending series; otherwise Miller's backward
/// recurrence normalised by J₀ + 2ΣJ₂ₖ = 1, which is accurate to a few ulps
/// in absolute terms for every finite x.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    if order > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: order as i64,
            supported: "0..=8",
        });
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j argument {x} is not finite")));
    }
    let sign = if x < 0.0 && order % 2 == 1 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let v = if ax == 0.0 {
        if order == 0 {
            1.0
        } else {
            0.0
        }
    } else if ax <= 2.0 {
        series(order, ax)
    } else {
        miller(order, ax)
    };
    Ok(sign * v)
}

fn series(n: u32, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=n {
        term *= h / k as f64;
    }
    let q = -h * h;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + n as f64));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        k += 1.0;
    }
    sum
}

fn miller(n: u32, x: f64) -> f64 {
    let n = n as usize;
    let mut start = x.ceil() as usize + n + 40 + (8.0 * x.sqrt()) as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-30; // J_k
    let mut norm = 0.0;
    let mut result = 0.0;
    let two_over_x = 2.0 / x;
    for k in (1..=start).rev() {
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let idx = k - 1;
        if idx == n {
            result = j_cur;
        }
        if idx > 0 && idx % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    norm += j_cur;
    result / norm
}
