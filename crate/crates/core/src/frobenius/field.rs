//! Arithmetic in F_p and F_{p²} for small odd primes.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 20;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field F_p, p odd, with a precomputed quadratic-character table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    chi: Vec<i8>,
    non_residue: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let mut chi = vec![-1i8; p as usize];
        chi[0] = 0;
        for y in 1..p {
            chi[(y * y % p) as usize] = 1;
        }
        let non_residue = (2..p).find(|&a| chi[a as usize] == -1).expect("odd p has non-residues");
        Ok(Self { p, chi, non_residue })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces any integer into [0, p).
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for 0.
    pub fn inv(&self, a: u64) -> Option<u64> {
        (a % self.p != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Legendre symbol (a/p) ∈ {−1, 0, 1}.
    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        self.chi[a as usize]
    }

    /// The least quadratic non-residue.
    pub fn non_residue(&self) -> u64 {
        self.non_residue
    }
}

/// u + v√d with d the least non-residue mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadElem {
    pub u: u64,
    pub v: u64,
}

/// F_{p²} = F_p(√d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtField {
    base: PrimeField,
}

impl QuadExtField {
    pub fn new(base: PrimeField) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn d(&self) -> u64 {
        self.base.non_residue
    }

    pub fn from_base(&self, a: u64) -> QuadElem {
        QuadElem { u: a, v: 0 }
    }

    #[inline]
    pub fn add(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        QuadElem { u: self.base.add(a.u, b.u), v: self.base.add(a.v, b.v) }
    }

    #[inline]
    pub fn mul(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        let f = &self.base;
        QuadElem {
            u: (a.u * b.u + f.mul(self.d(), a.v * b.v % f.p)) % f.p,
            v: (a.u * b.v + a.v * b.u) % f.p,
        }
    }

    pub fn pow(&self, mut a: QuadElem, mut e: u64) -> QuadElem {
        let mut r = self.from_base(1);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// N(u + v√d) = u² − d v² ∈ F_p.
    #[inline]
    pub fn norm(&self, a: QuadElem) -> u64 {
        let f = &self.base;
        f.sub(f.mul(a.u, a.u), f.mul(self.d(), f.mul(a.v, a.v)))
    }

    /// Quadratic character of F_{p²}. A nonzero z is a square iff its norm is
    /// a square in F_p (the norm maps F_{p²}^× onto F_p^× and squares onto squares).
    #[inline]
    pub fn chi(&self, a: QuadElem) -> i8 {
        self.base.chi(self.norm(a))
    }

    /// All p² elements, u varying fastest.
    pub fn elements(&self) -> impl Iterator<Item = QuadElem> + '_ {
        let p = self.base.p;
        (0..p).flat_map(move |v| (0..p).map(move |u| QuadElem { u, v }))
    }
}
