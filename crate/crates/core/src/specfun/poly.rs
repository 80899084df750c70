//! Integer sequences and classical orthogonal polynomials.

use crate::error::{Error, Result};

/// Largest n with C_n < 2⁶⁴.
pub const CATALAN_MAX: u32 = 33;

/// The n-th Catalan number binom(2n, n)/(n+1), exact.
pub fn catalan(n: u32) -> Result<u64> {
    if n > CATALAN_MAX {
        return Err(Error::Range(format!(
            "C_{n} does not fit in 64 bits (max n = {CATALAN_MAX})"
        )));
    }
    // C_{k+1} = C_k · 2(2k+1)/(k+2); the product is exact before the division.
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    Ok(c as u64)
}

/// c_n(u) with c_0 = 1 and c_n(u) = 2T_n(u/2) for n ≥ 1, so that
/// c_n(x + 1/x) = xⁿ + x⁻ⁿ.
pub fn chebyshev_c(n: u32, u: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    // the recurrence c_{k+1} = u c_k − c_{k−1} needs the value 2 at k = 0
    let (mut prev, mut cur) = (2.0, u);
    for _ in 1..n {
        let next = u * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer coefficients of c_n, lowest degree first.
pub fn chebyshev_c_coeffs(n: u32) -> Vec<i64> {
    if n == 0 {
        return vec![1];
    }
    let mut prev = vec![2i64];
    let mut cur = vec![0i64, 1];
    for _ in 1..n {
        let mut next = vec![0i64; cur.len() + 1];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Legendre polynomial P_n(x) by the three-term recurrence
/// (k+1)P_{k+1} = (2k+1)x P_k − k P_{k−1}.
pub fn legendre_poly(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
