//! Laws of traces and related characters on USp(2g).
//!
//! * [`closed`]: closed-form densities and characteristic functions for
//!   g ≤ 2 and the SU(2)×SU(2) trace, plus the law of the second
//!   elementary symmetric function on USp(4);
//! * [`slice`]: the joint density ν_g of (s_1, …, s_g) and trace densities
//!   obtained by integrating it over hyperplane slices;
//! * [`moments`]: exact moment sequences;
//! * [`reconstruct`]: Legendre-series densities built from exact moments.
//!
//! Every density here is with respect to Lebesgue measure on the real line.

pub mod closed;
pub mod moments;
pub mod reconstruct;
pub mod slice;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{gk15, integrate_with_points};

pub use closed::{
    cdf_tau_g2, charfn, charfn_det, charfn_tau_g3_bessel_sum, f_rho, f_tau2, f_tau_g1, f_tau_g2,
    invert_charfn_tau_g2,
};
pub use moments::{moment_by_quadrature, moments, MomentSequence};
pub use reconstruct::{f_tau_g3_reconstruct, LegendreSeries};
pub use slice::{f_tau_slice, nu_density};

/// The random variables whose laws are implemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Character {
    /// Trace on USp(2) = SU(2) (semicircle law on [−2, 2]).
    TauG1,
    /// Trace on USp(4).
    TauG2,
    /// Trace on USp(6).
    TauG3,
    /// Trace on SU(2)×SU(2) embedded block-diagonally in USp(4).
    Rho,
    /// Second elementary symmetric function s_2 of t on USp(4), i.e. the
    /// trace of ∧² minus 2; mean −1, variance 1, support [−4, 4].
    Tau2,
    /// s_2 + 1, the standardised (mean 0, variance 1) version of [`Character::Tau2`].
    Chi2,
}

impl Character {
    pub const ALL: [Character; 6] = [
        Character::TauG1,
        Character::TauG2,
        Character::TauG3,
        Character::Rho,
        Character::Tau2,
        Character::Chi2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Character::TauG1 => "tau_g1",
            Character::TauG2 => "tau_g2",
            Character::TauG3 => "tau_g3",
            Character::Rho => "rho",
            Character::Tau2 => "tau2",
            Character::Chi2 => "chi2",
        }
    }

    /// The trace of USp(2g).
    pub fn tau(g: usize) -> Result<Self> {
        match g {
            1 => Ok(Character::TauG1),
            2 => Ok(Character::TauG2),
            3 => Ok(Character::TauG3),
            _ => Err(Error::InvalidRank(g)),
        }
    }

    /// Closed support [lo, hi] of the law.
    pub fn support(self) -> (f64, f64) {
        match self {
            Character::TauG1 => (-2.0, 2.0),
            Character::TauG2 | Character::Rho | Character::Tau2 => (-4.0, 4.0),
            Character::TauG3 => (-6.0, 6.0),
            Character::Chi2 => (-3.0, 5.0),
        }
    }

    /// Whether the law is invariant under x ↦ −x.
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Character::Tau2 | Character::Chi2)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Character {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Character::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown character '{s}'")))
    }
}

/// Evaluation routes for the USp(4) trace density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TauMethod {
    /// (1/4π) m⁴ ₂F₁(3/2, 5/2; 5; m), m = 1 − x²/16.
    Hypergeometric,
    /// Degree-½ associated Legendre function of order 2.
    Legendre,
    /// Complete elliptic integrals K(m), E(m).
    Elliptic,
    /// (6/π) G(x²/16) with the Meijer function written through P^{−2}_{1/2}.
    Meijer,
    /// Integral of the symmetric-coordinate density over the slice s_1 = x.
    Slice,
    /// Elliptic for |x| ≤ 3.5, hypergeometric beyond.
    Auto,
}

impl TauMethod {
    pub const ALL: [TauMethod; 6] = [
        TauMethod::Hypergeometric,
        TauMethod::Legendre,
        TauMethod::Elliptic,
        TauMethod::Meijer,
        TauMethod::Slice,
        TauMethod::Auto,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TauMethod::Hypergeometric => "hypergeometric",
            TauMethod::Legendre => "legendre",
            TauMethod::Elliptic => "elliptic",
            TauMethod::Meijer => "meijer",
            TauMethod::Slice => "slice",
            TauMethod::Auto => "auto",
        }
    }
}

impl fmt::Display for TauMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TauMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TauMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method '{s}'")))
    }
}

/// Default order of the Legendre reconstruction of the USp(6) trace density.
pub const DEFAULT_RECONSTRUCTION_ORDER: usize = 40;

/// Density of `which` at `x`.
///
/// `method` only matters for [`Character::TauG2`] (all five routes) and
/// [`Character::TauG3`] (`Slice` integrates ν₃, anything else uses the
/// Legendre reconstruction).
pub fn density(which: Character, method: TauMethod, x: f64) -> Result<f64> {
    match which {
        Character::TauG1 => Ok(f_tau_g1(x)),
        Character::TauG2 => f_tau_g2(x, method),
        Character::TauG3 => match method {
            TauMethod::Slice => f_tau_slice(3, x, 1e-9),
            _ => f_tau_g3_reconstruct(x, DEFAULT_RECONSTRUCTION_ORDER),
        },
        Character::Rho => f_rho(x),
        Character::Tau2 => f_tau2(x),
        Character::Chi2 => f_tau2(x - 1.0),
    }
}

/// A density sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityCurve {
    pub which: Character,
    pub method: TauMethod,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl DensityCurve {
    /// Evaluates the density at `n` equally spaced points of [xmin, xmax]
    /// (both ends included), in parallel over the grid.
    pub fn tabulate(which: Character, method: TauMethod, xmin: f64, xmax: f64, n: usize) -> Result<Self> {
        if n < 2 || !(xmax > xmin) {
            return Err(Error::InvalidInput(format!(
                "need n >= 2 and xmin < xmax (got n = {n}, [{xmin}, {xmax}])"
            )));
        }
        let h = (xmax - xmin) / (n - 1) as f64;
        let xs: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { xmax } else { xmin + h * i as f64 })
            .collect();
        let ys = xs
            .par_iter()
            .map(|&x| density(which, method, x))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { which, method, xs, ys })
    }

    /// Trapezoid-rule integral of the tabulated values.
    pub fn trapezoid(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.ys.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}

/// Cumulative distribution function of a density, tabulated once and then
/// evaluated by cubic Hermite interpolation (values and slopes are exact at
/// the nodes).
#[derive(Debug, Clone)]
pub struct CdfTable {
    xs: Vec<f64>,
    fs: Vec<f64>,
    ds: Vec<f64>,
}

impl CdfTable {
    /// Tabulates ∫_{lo}^{x} f on `cells` equal cells of [lo, hi] using one
    /// 15-point Kronrod rule per cell.
    pub fn new<F: Fn(f64) -> f64 + Sync>(f: F, lo: f64, hi: f64, cells: usize) -> Self {
        let h = (hi - lo) / cells as f64;
        let xs: Vec<f64> = (0..=cells).map(|i| lo + h * i as f64).collect();
        let pieces: Vec<f64> = (0..cells)
            .into_par_iter()
            .map(|i| gk15(&f, xs[i], xs[i + 1]).0)
            .collect();
        let mut fs = Vec::with_capacity(cells + 1);
        let mut acc = 0.0;
        fs.push(0.0);
        for p in pieces {
            acc += p;
            fs.push(acc);
        }
        let ds = xs.par_iter().map(|&x| f(x)).collect();
        Self { xs, fs, ds }
    }

    /// The USp(4) trace CDF Φ_τ on 4000 cells.
    pub fn tau_g2() -> Self {
        Self::new(|x| f_tau_g2(x, TauMethod::Auto).unwrap_or(0.0), -4.0, 4.0, 4000)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len() - 1;
        if x <= self.xs[0] {
            return 0.0;
        }
        if x >= self.xs[n] {
            return self.fs[n];
        }
        let h = self.xs[1] - self.xs[0];
        let i = (((x - self.xs[0]) / h) as usize).min(n - 1);
        let u = (x - self.xs[i]) / h;
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        (h00 * self.fs[i] + h10 * h * self.ds[i] + h01 * self.fs[i + 1] + h11 * h * self.ds[i + 1])
            .clamp(0.0, 1.0)
    }

    /// Total mass, which should be 1 up to quadrature error.
    pub fn total(&self) -> f64 {
        *self.fs.last().expect("at least one node")
    }
}

/// ∫_{lo}^{hi} f(x) dx for a density of `which` over its support, with
/// breakpoints at the origin and at the support ends.
pub(crate) fn integrate_density<F: Fn(f64) -> f64>(which: Character, f: F, tol: f64) -> Result<f64> {
    let (lo, hi) = which.support();
    let mut pts = vec![lo];
    if which == Character::Chi2 {
        pts.push(1.0);
    } else {
        pts.push(0.0);
    }
    pts.push(hi);
    integrate_with_points(f, &pts, tol, tol).map(|e| e.value)
}
