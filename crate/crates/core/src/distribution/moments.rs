//! Exact moment sequences.
//!
//! All six laws have integer moments. For the traces they count invariants
//! (M_n = dim of the invariant subspace of the n-th tensor power of the
//! standard representation); for g ≤ 2 and for SU(2)×SU(2) there are
//! closed product formulas, while the USp(6) sequence is generated from the
//! determinant form of the moment generating function,
//!
//! E[e^{zX}] = det[A_{|j−k|}(z) − A_{j+k}(z)]_{j,k=1..g},
//! A_m(z) = Σ_k z^{2k+m} / (k! (k+m)!),
//!
//! expanded as an exact rational power series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{density, integrate_density, Character, TauMethod};
use crate::error::{Error, Result};
use crate::weyl;

/// Largest moment index served by [`moments`].
pub const MAX_MOMENT_INDEX: usize = 1024;

/// M_0, M_1, …, M_n of one law, as exact integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    pub which: Character,
    pub values: Vec<BigInt>,
}

impl MomentSequence {
    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

// BigInt values are written as decimal strings so that no precision is lost
// in formats with floating-point numbers.
impl Serialize for MomentSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MomentSequence", 2)?;
        st.serialize_field("which", &self.which)?;
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        st.serialize_field("values", &vals)?;
        st.end()
    }
}

fn catalan_big(upto: usize) -> Vec<BigInt> {
    // C_{n+1} = C_n · 2(2n + 1)/(n + 2)
    let mut c = vec![BigInt::one()];
    for n in 0..upto {
        let next = &c[n] * BigInt::from(2 * (2 * n + 1)) / BigInt::from(n + 2);
        c.push(next);
    }
    c
}

fn factorials(upto: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one()];
    for n in 1..=upto {
        let next = &f[n - 1] * BigInt::from(n);
        f.push(next);
    }
    f
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

/// M_0..=M_upto of `which`, exactly.
pub fn moments(which: Character, upto: usize) -> Result<MomentSequence> {
    if upto > MAX_MOMENT_INDEX {
        return Err(Error::Range(format!(
            "moment index {upto} exceeds the supported maximum {MAX_MOMENT_INDEX}"
        )));
    }
    let values = match which {
        Character::TauG1 => {
            let c = catalan_big(upto / 2 + 1);
            (0..=upto)
                .map(|n| if n % 2 == 1 { BigInt::zero() } else { c[n / 2].clone() })
                .collect()
        }
        Character::TauG2 => {
            let f = factorials(upto + 4);
            (0..=upto)
                .map(|n| {
                    if n % 2 == 1 {
                        return BigInt::zero();
                    }
                    let k = n / 2;
                    BigInt::from(6) * &f[2 * k] * &f[2 * k + 2] / (&f[k] * &f[k + 1] * &f[k + 2] * &f[k + 3])
                })
                .collect()
        }
        Character::TauG3 => trace_moments_det(3, upto)?,
        Character::Rho => {
            // X_1 + X_2 with independent semicircles; equals C_k C_{k+1} at n = 2k
            let semi = moments(Character::TauG1, upto)?.values;
            (0..=upto)
                .map(|n| {
                    let b = binomial_row(n);
                    (0..=n).map(|j| &b[j] * &semi[j] * &semi[n - j]).sum()
                })
                .collect()
        }
        Character::Tau2 => {
            let c = catalan_big(upto / 2 + 2);
            (0..=upto)
                .map(|n| {
                    let k = n / 2;
                    if n % 2 == 0 {
                        &c[k] * &c[k + 1]
                    } else {
                        -(&c[k + 1] * &c[k + 1])
                    }
                })
                .collect()
        }
        Character::Chi2 => {
            let m = moments(Character::Tau2, upto)?.values;
            (0..=upto)
                .map(|n| {
                    let b = binomial_row(n);
                    (0..=n).map(|k| &b[k] * &m[k]).sum()
                })
                .collect()
        }
    };
    Ok(MomentSequence { which, values })
}

type Series = Vec<BigRational>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().take(n - i).enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn series_det(m: &[Vec<Series>], len: usize) -> Series {
    let g = m.len();
    if g == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![BigRational::zero(); len];
    for col in 0..g {
        let minor: Vec<Vec<Series>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, s)| s.clone()).collect())
            .collect();
        let term = series_mul(&m[0][col], &series_det(&minor, len));
        for (a, t) in acc.iter_mut().zip(term) {
            if col % 2 == 0 {
                *a += t;
            } else {
                *a -= t;
            }
        }
    }
    acc
}

/// Trace moments of USp(2g) from the determinant generating function.
pub(crate) fn trace_moments_det(g: usize, upto: usize) -> Result<Vec<BigInt>> {
    if !(1..=weyl::MAX_RANK).contains(&g) {
        return Err(Error::InvalidRank(g));
    }
    let len = upto + 1;
    let f = factorials(upto + 2 * g + 2);
    let a = |m: usize| -> Series {
        let mut s = vec![BigRational::zero(); len];
        let mut k = 0;
        while 2 * k + m < len {
            s[2 * k + m] = BigRational::new(BigInt::one(), &f[k] * &f[k + m]);
            k += 1;
        }
        s
    };
    let a_tab: Vec<Series> = (0..=2 * g).map(a).collect();
    let m: Vec<Vec<Series>> = (1..=g)
        .map(|j| {
            (1..=g)
                .map(|k| {
                    let d = j.abs_diff(k);
                    a_tab[d].iter().zip(&a_tab[j + k]).map(|(x, y)| x - y).collect()
                })
                .collect()
        })
        .collect();
    let mgf = series_det(&m, len);
    mgf.into_iter()
        .enumerate()
        .map(|(n, c)| {
            let v = c * BigRational::from_integer(f[n].clone());
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::Domain(format!("moment {n} of the USp({}) trace is not an integer: {v}", 2 * g)))
            }
        })
        .collect()
}

/// E[X^n] by numerical integration against the density (for the USp(6)
/// trace: against the Weyl measure on [−2, 2]³), as an independent check on
/// [`moments`].
pub fn moment_by_quadrature(which: Character, n: u32) -> Result<f64> {
    match which {
        Character::TauG3 => {
            weyl::integrate(|t: &[f64]| t.iter().sum::<f64>().powi(n as i32), 3, 1e-9).map(|e| e.value)
        }
        _ => {
            let tol = 1e-12 * 4f64.powi(n as i32).max(1.0);
            integrate_density(
                which,
                |x| x.powi(n as i32) * density(which, TauMethod::Auto, x).unwrap_or(f64::NAN),
                tol,
            )
        }
    }
}
