//! The Weyl measure on conjugacy classes of USp(2g).
//!
//! A class is determined by its Frobenius angles θ ∈ [0, π]^g up to order,
//! or equivalently by the coefficient vector t_j = 2 cos θ_j ∈ [−2, 2]^g.
//! Haar measure pushes forward to
//!
//! * δ_g(θ) = (1/g!) ∏ (2/π) sin²θ_j · ∏_{j<k} (2cos θ_k − 2cos θ_j)² on [0, π]^g,
//! * λ_g(t) = (1/((2π)^g g!)) · D₀(t) · √D₁(t) on [−2, 2]^g,
//!
//! with D₀ = ∏_{j<k}(t_k − t_j)² and D₁ = ∏(4 − t_j²).

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_chebyshev_u, integrate_box, Estimate};

/// Ranks with an implemented density and sampler.
pub const MAX_RANK: usize = 3;

/// Default evaluation budget for [`integrate`].
pub const DEFAULT_MAX_EVALS: usize = 40_000_000;

/// Samples produced per deterministic RNG stream in [`sample`].
const BLOCK: usize = 1 << 14;

fn check_rank(g: usize) -> Result<()> {
    if (1..=MAX_RANK).contains(&g) {
        Ok(())
    } else {
        Err(Error::InvalidRank(g))
    }
}

fn factorial(g: usize) -> f64 {
    (1..=g).product::<usize>() as f64
}

/// Canonical representative θ₁ ≥ θ₂ ≥ … ≥ θ_g of a class in USp(2g).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjugacyClass {
    theta: Vec<f64>,
}

impl ConjugacyClass {
    /// Builds the class of arbitrary real angles: each angle is folded into
    /// [0, π] (θ ↦ −θ and θ ↦ θ + 2π act trivially on classes) and the
    /// vector is sorted in decreasing order.
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        check_rank(theta.len())?;
        if theta.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("angles must be finite".into()));
        }
        let mut theta: Vec<f64> = theta
            .into_iter()
            .map(|x| {
                let r = x.rem_euclid(2.0 * PI);
                if r > PI {
                    2.0 * PI - r
                } else {
                    r
                }
            })
            .collect();
        theta.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { theta })
    }

    pub fn g(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Trace of the standard 2g-dimensional representation, Σ 2 cos θ_j.
    pub fn trace(&self) -> f64 {
        self.theta.iter().map(|x| 2.0 * x.cos()).sum()
    }
}

/// Coefficient vector t ∈ [−2, 2]^g, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientVector {
    t: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(mut t: Vec<f64>) -> Result<Self> {
        check_rank(t.len())?;
        if let Some(x) = t.iter().find(|x| !(x.abs() <= 2.0)) {
            return Err(Error::Domain(format!("coefficient {x} outside [-2, 2]")));
        }
        t.sort_by(f64::total_cmp);
        Ok(Self { t })
    }

    pub fn g(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn trace(&self) -> f64 {
        self.t.iter().sum()
    }
}

pub fn angles_to_t(c: &ConjugacyClass) -> CoefficientVector {
    // θ decreasing ⇒ 2cos θ increasing
    CoefficientVector {
        t: c.theta.iter().map(|x| 2.0 * x.cos()).collect(),
    }
}

pub fn t_to_angles(v: &CoefficientVector) -> ConjugacyClass {
    ConjugacyClass {
        theta: v.t.iter().map(|x| (x / 2.0).clamp(-1.0, 1.0).acos()).collect(),
    }
}

/// δ_g(θ) on [0, π]^g; accepts unsorted angles (the density is symmetric).
pub fn density_theta(theta: &[f64]) -> f64 {
    let g = theta.len();
    let t: Vec<f64> = theta.iter().map(|x| 2.0 * x.cos()).collect();
    let sines: f64 = theta.iter().map(|x| 2.0 / PI * x.sin().powi(2)).product();
    sines * vandermonde_sq(&t) / factorial(g)
}

/// D₀(t) = ∏_{j<k}(t_k − t_j)².
pub(crate) fn vandermonde_sq(t: &[f64]) -> f64 {
    let mut d = 1.0;
    for j in 0..t.len() {
        for k in j + 1..t.len() {
            d *= (t[k] - t[j]).powi(2);
        }
    }
    d
}

/// λ_g(t) on [−2, 2]^g.
pub fn density_t(t: &[f64]) -> Result<f64> {
    if let Some(x) = t.iter().find(|x| !(x.abs() <= 2.0)) {
        return Err(Error::Domain(format!("coefficient {x} outside [-2, 2]")));
    }
    Ok(density_t_unchecked(t))
}

#[inline]
fn density_t_unchecked(t: &[f64]) -> f64 {
    let g = t.len();
    let d1: f64 = t.iter().map(|x| 4.0 - x * x).product();
    vandermonde_sq(t) * d1.max(0.0).sqrt() / ((2.0 * PI).powi(g as i32) * factorial(g))
}

/// sup λ_g, attained at the zeros of the Chebyshev polynomial U_g(t/2).
pub fn envelope(g: usize) -> Result<f64> {
    check_rank(g)?;
    Ok(match g {
        1 => 1.0 / PI,
        2 => 2.0 / (PI * PI),
        _ => 9.0 / (2.0 * PI.powi(3)),
    })
}

/// ∫_{I_g} f(t) λ_g(t) dt for a symmetric `f`, to absolute accuracy `tol`.
///
/// The substitution t_j = 2 cos θ_j turns the integral into ∫ f(2cos θ) δ_g(θ)
/// over the cube [0, π]^g, which removes the square-root edge singularities;
/// the cube is then handled by adaptive tensor Gauss–Kronrod cubature.
pub fn integrate<F>(f: F, g: usize, tol: f64) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64,
{
    integrate_with_budget(f, g, tol, DEFAULT_MAX_EVALS)
}

pub fn integrate_with_budget<F>(f: F, g: usize, tol: f64, max_evals: usize) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64,
{
    check_rank(g)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let lo = vec![0.0; g];
    let hi = vec![PI; g];
    integrate_box(
        |theta: &[f64]| {
            let mut t = [0.0; MAX_RANK];
            for (tj, th) in t.iter_mut().zip(theta) {
                *tj = 2.0 * th.cos();
            }
            f(&t[..g]) * density_theta(theta)
        },
        &lo,
        &hi,
        tol,
        max_evals,
    )
}

/// Tensor Gauss–Chebyshev (second kind) rule for ∫ f λ_g dt with `n` nodes
/// per axis; exact when f·D₀ is a polynomial of degree < 2n in each t_j.
///
/// Works directly in t-coordinates and so provides an independent check of
/// the angle-space route used by [`integrate`].
pub fn integrate_chebyshev<F>(f: F, g: usize, n: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    check_rank(g)?;
    let (x, w) = gauss_chebyshev_u(n);
    // t = 2x: √(4 − t²) dt = 4 √(1 − x²) dx per axis
    let scale = 4.0f64.powi(g as i32) / ((2.0 * PI).powi(g as i32) * factorial(g));
    let mut idx = vec![0usize; g];
    let mut t = vec![0.0; g];
    let mut sum = 0.0;
    loop {
        let mut weight = 1.0;
        for d in 0..g {
            t[d] = 2.0 * x[idx[d]];
            weight *= w[idx[d]];
        }
        sum += weight * vandermonde_sq(&t) * f(&t);
        let mut d = 0;
        loop {
            if d == g {
                return Ok(sum * scale);
            }
            idx[d] += 1;
            if idx[d] < n {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Bookkeeping from a rejection-sampling run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SamplerStats {
    pub proposals: u64,
    pub accepted: u64,
    /// Largest λ_g(t)/M_g seen over all proposals; must stay ≤ 1.
    pub max_ratio: f64,
}

impl SamplerStats {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposals as f64
    }

    /// 1/(M_g · 4^g), the acceptance probability implied by the envelope.
    pub fn expected_rate(g: usize) -> Result<f64> {
        Ok(1.0 / (envelope(g)? * 4.0f64.powi(g as i32)))
    }

    fn merge(self, o: Self) -> Self {
        Self {
            proposals: self.proposals + o.proposals,
            accepted: self.accepted + o.accepted,
            max_ratio: self.max_ratio.max(o.max_ratio),
        }
    }
}

/// `n` independent classes distributed by the Weyl measure of USp(2g).
///
/// Deterministic in `seed`; independent of the size of the rayon pool.
pub fn sample(g: usize, n: usize, seed: u64) -> Result<Vec<ConjugacyClass>> {
    sample_with_stats(g, n, seed).map(|(v, _)| v)
}

/// [`sample`] together with proposal/acceptance counts.
///
/// Proposals t are uniform on [−2, 2]^g and are accepted with probability
/// λ_g(t)/M_g. Output block b (of up to 16384 classes) is drawn from the
/// ChaCha8 stream b of `seed`, so results do not depend on thread count.
///
/// # Panics
///
/// If a proposal ever has λ_g(t) > M_g: the envelope would then be wrong and
/// the output would not follow the Weyl law.
pub fn sample_with_stats(g: usize, n: usize, seed: u64) -> Result<(Vec<ConjugacyClass>, SamplerStats)> {
    check_rank(g)?;
    let m = envelope(g)?;
    let blocks = n.div_ceil(BLOCK);
    let parts: Vec<(Vec<ConjugacyClass>, SamplerStats)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let want = BLOCK.min(n - b * BLOCK);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let mut stats = SamplerStats::default();
            let mut out = Vec::with_capacity(want);
            let mut t = [0.0; MAX_RANK];
            while out.len() < want {
                for tj in t.iter_mut().take(g) {
                    *tj = rng.gen_range(-2.0..=2.0);
                }
                let ratio = density_t_unchecked(&t[..g]) / m;
                assert!(
                    ratio <= 1.0 + 1e-12,
                    "Weyl density {ratio}·M exceeds the envelope at t = {:?}",
                    &t[..g]
                );
                stats.proposals += 1;
                stats.max_ratio = stats.max_ratio.max(ratio);
                if rng.gen::<f64>() < ratio {
                    stats.accepted += 1;
                    let mut theta: Vec<f64> = t[..g].iter().map(|x| (x / 2.0).acos()).collect();
                    theta.sort_by(|a, b| b.total_cmp(a));
                    out.push(ConjugacyClass { theta });
                }
            }
            (out, stats)
        })
        .collect();
    let mut all = Vec::with_capacity(n);
    let mut stats = SamplerStats::default();
    for (v, s) in parts {
        all.extend(v);
        stats = stats.merge(s);
    }
    Ok((all, stats))
}
