//! Genus-2 models y² = f(x) and their point counts.

use serde::Serialize;

use super::field::{PrimeField, QuadElem, QuadExtField};
use crate::error::{Error, Result};

/// y² = f(x) over F_p with f squarefree of degree 5 or 6.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HyperellipticCurve {
    p: u64,
    /// f_0, …, f_d (ascending), reduced mod p, f_d ≠ 0
    f: Vec<u64>,
}

impl HyperellipticCurve {
    /// Builds the model from ascending coefficients (any integers).
    pub fn new(p: u64, f_coeffs: &[i64]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let mut f: Vec<u64> = f_coeffs.iter().map(|&c| field.reduce(c)).collect();
        while f.last() == Some(&0) {
            f.pop();
        }
        let deg = f.len().saturating_sub(1);
        if !(5..=6).contains(&deg) {
            return Err(Error::InvalidCurve(format!("deg f = {deg}; genus 2 needs degree 5 or 6")));
        }
        if !is_squarefree(&field, &f) {
            return Err(Error::InvalidCurve(format!("f = {f:?} is not squarefree mod {p}")));
        }
        Ok(Self { p, f })
    }

    pub(crate) fn from_reduced_unchecked(p: u64, f: Vec<u64>) -> Self {
        Self { p, f }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f_coeffs(&self) -> &[u64] {
        &self.f
    }

    pub fn genus(&self) -> usize {
        2
    }
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// a mod b for polynomials over F_p (ascending coefficients, b nonzero and trimmed).
fn poly_rem(field: &PrimeField, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    trim(&mut a);
    let lead_inv = field.inv(*b.last().expect("nonzero divisor")).expect("trimmed");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = field.mul(*a.last().expect("nonempty"), lead_inv);
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = field.sub(a[shift + i], field.mul(q, bi));
        }
        trim(&mut a);
    }
    a
}

/// gcd(f, f′) = 1, which over the perfect field F_p is equivalent to f
/// having no repeated factor over its algebraic closure.
pub(crate) fn is_squarefree(field: &PrimeField, f: &[u64]) -> bool {
    let mut a = f.to_vec();
    trim(&mut a);
    let mut b: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.reduce(i as i64), c))
        .collect();
    trim(&mut b);
    if b.is_empty() {
        // f′ = 0: f is constant (degree 0) or a p-th power
        return a.len() == 1;
    }
    while !b.is_empty() {
        let r = poly_rem(field, a, &b);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Reusable tables for counting points on many models over the same field.
#[derive(Debug, Clone)]
pub struct PointCounter {
    ext: QuadExtField,
}

impl PointCounter {
    pub fn new(p: u64) -> Result<Self> {
        Ok(Self { ext: QuadExtField::new(PrimeField::new(p)?) })
    }

    pub fn field(&self) -> &PrimeField {
        self.ext.base()
    }

    pub fn ext_field(&self) -> &QuadExtField {
        &self.ext
    }

    /// Number of projective points of the smooth model of y² = f(x) over
    /// F_{p^ext}, ext ∈ {1, 2}, for any nonconstant f (ascending, reduced,
    /// trimmed). No genus or smoothness checks are made here.
    pub fn count(&self, f: &[u64], ext: u32) -> Result<i64> {
        let deg = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
            Error::InvalidCurve("f must be nonconstant".into())
        })?;
        let lead = f[deg];
        match ext {
            1 => {
                let k = self.field();
                let affine: i64 = (0..k.p())
                    .map(|x| {
                        let v = f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c));
                        1 + k.chi(v) as i64
                    })
                    .sum();
                let infinity = if deg % 2 == 1 { 1 } else { 1 + k.chi(lead) as i64 };
                Ok(affine + infinity)
            }
            2 => {
                let k = &self.ext;
                let coeffs: Vec<QuadElem> = f.iter().map(|&c| k.from_base(c)).collect();
                let affine: i64 = k
                    .elements()
                    .map(|x| {
                        let v = coeffs.iter().rev().fold(k.from_base(0), |acc, &c| k.add(k.mul(acc, x), c));
                        1 + k.chi(v) as i64
                    })
                    .sum();
                // every element of F_p is a square in F_{p²}
                let infinity = if deg % 2 == 1 { 1 } else { 2 };
                Ok(affine + infinity)
            }
            _ => Err(Error::InvalidInput(format!("extension degree {ext} not supported (1 or 2)"))),
        }
    }
}

/// |C(F_{p^ext})| for a genus-2 model, ext ∈ {1, 2}.
pub fn count_points(c: &HyperellipticCurve, ext_degree: u32) -> Result<i64> {
    PointCounter::new(c.p)?.count(&c.f, ext_degree)
}

/// The same count by brute force over all (x, y) (and over the points at
/// infinity as solutions of y² = leading coefficient when deg f is even).
pub fn count_points_naive(p: u64, f: &[u64], ext: u32) -> Result<i64> {
    let counter = PointCounter::new(p)?;
    let deg = f.len() - 1;
    match ext {
        1 => {
            let k = counter.field();
            let mut n = 0;
            for x in 0..p {
                let v = f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c));
                n += (0..p).filter(|&y| k.mul(y, y) == v).count() as i64;
            }
            n += if deg % 2 == 1 { 1 } else { (0..p).filter(|&y| k.mul(y, y) == f[deg]).count() as i64 };
            Ok(n)
        }
        2 => {
            let k = counter.ext_field();
            let coeffs: Vec<QuadElem> = f.iter().map(|&c| k.from_base(c)).collect();
            let squares: Vec<QuadElem> = k.elements().map(|y| k.mul(y, y)).collect();
            let mut n = 0;
            for x in k.elements() {
                let v = coeffs.iter().rev().fold(k.from_base(0), |acc, &c| k.add(k.mul(acc, x), c));
                n += squares.iter().filter(|&&s| s == v).count() as i64;
            }
            let lead = k.from_base(f[deg]);
            n += if deg % 2 == 1 { 1 } else { squares.iter().filter(|&&s| s == lead).count() as i64 };
            Ok(n)
        }
        _ => Err(Error::InvalidInput(format!("extension degree {ext} not supported (1 or 2)"))),
    }
}
