//! Adaptive Gauss–Kronrod integration in one and several dimensions.
//!
//! The one-dimensional driver is a global-subdivision scheme in the style of
//! QUADPACK's QAG with the 7/15-point Gauss–Kronrod pair. The multivariate
//! driver applies the same pair as a tensor product on boxes and bisects the
//! box along the axis whose Gauss/Kronrod discrepancy dominates.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Result of a quadrature: value, claimed absolute error, evaluations used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evals: usize,
}

/// 15 abscissae on [−1, 1] in increasing order with Kronrod and embedded
/// Gauss weights (zero at Kronrod-only nodes).
fn tensor_rule() -> ([f64; 15], [f64; 15], [f64; 15]) {
    let mut x = [0.0; 15];
    let mut wk = [0.0; 15];
    let mut wg = [0.0; 15];
    for i in 0..7 {
        x[i] = -XGK[i];
        x[14 - i] = XGK[i];
        wk[i] = WGK[i];
        wk[14 - i] = WGK[i];
        if i % 2 == 1 {
            wg[i] = WG[i / 2];
            wg[14 - i] = WG[i / 2];
        }
    }
    wk[7] = WGK[7];
    wg[7] = WG[3];
    (x, wk, wg)
}

/// One application of the 15-point Kronrod rule on [a, b]: (value, error).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    let value = res_k * half;
    let res_asc = res_asc * half.abs();
    let res_abs = res_abs * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` over [a, b].
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
/// Returns [`Error::Accuracy`] with the best estimate when `max_intervals`
/// subintervals do not suffice.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate> {
    integrate_with_points(f, &[a, b], abs_tol, rel_tol)
}

/// Like [`integrate`] but starts from the partition given by `points`
/// (sorted, at least two), useful when the integrand has known kinks.
pub fn integrate_with_points<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate> {
    const MAX_INTERVALS: usize = 4000;
    assert!(points.len() >= 2, "need at least one interval");
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut evals = 0;
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (value, error) = gk15(&f, w[0], w[1]);
        evals += 15;
        total += value;
        total_err += error;
        heap.push(Interval {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }
    loop {
        let target = abs_tol.max(rel_tol * total.abs());
        if total_err <= target {
            return Ok(Estimate {
                value: total,
                error: total_err,
                evals,
            });
        }
        let worst = match heap.pop() {
            Some(w) => w,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if heap.len() + 2 > MAX_INTERVALS || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&f, worst.a, mid);
        let (v2, e2) = gk15(&f, mid, worst.b);
        evals += 30;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Interval {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Interval {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
    // Recompute the sums from scratch to shed accumulated rounding.
    let value: f64 = heap.iter().map(|i| i.value).sum();
    let error: f64 = heap.iter().map(|i| i.error).sum();
    let target = abs_tol.max(rel_tol * value.abs());
    if error <= target {
        Ok(Estimate {
            value,
            error,
            evals,
        })
    } else {
        Err(Error::Accuracy {
            estimate: value,
            error,
            target,
        })
    }
}

struct Cell {
    lo: Vec<f64>,
    hi: Vec<f64>,
    value: f64,
    error: f64,
    split_axis: usize,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Contract a tensor of shape [15; dim] with one weight vector per axis.
fn contract(values: &[f64], dim: usize, weights: &[&[f64; 15]]) -> f64 {
    let mut cur = values.to_vec();
    for axis in (0..dim).rev() {
        let w = weights[axis];
        let next_len = cur.len() / 15;
        let mut next = vec![0.0; next_len];
        for (i, slot) in next.iter_mut().enumerate() {
            let base = i * 15;
            *slot = (0..15).map(|k| w[k] * cur[base + k]).sum();
        }
        cur = next;
    }
    cur[0]
}

fn tensor_cell<F: Fn(&[f64]) -> f64>(f: &F, lo: &[f64], hi: &[f64]) -> Cell {
    let dim = lo.len();
    let (x, wk, wg) = tensor_rule();
    let n = 15usize.pow(dim as u32);
    let mut values = vec![0.0; n];
    let mut point = vec![0.0; dim];
    for (idx, slot) in values.iter_mut().enumerate() {
        let mut rem = idx;
        for d in (0..dim).rev() {
            let k = rem % 15;
            rem /= 15;
            let c = 0.5 * (lo[d] + hi[d]);
            let h = 0.5 * (hi[d] - lo[d]);
            point[d] = c + h * x[k];
        }
        *slot = f(&point);
    }
    let jac: f64 = lo.iter().zip(hi).map(|(a, b)| 0.5 * (b - a)).product();
    let all_k: Vec<&[f64; 15]> = vec![&wk; dim];
    let all_g: Vec<&[f64; 15]> = vec![&wg; dim];
    let k = contract(&values, dim, &all_k) * jac;
    let g = contract(&values, dim, &all_g) * jac;
    let mut split_axis = 0;
    let mut worst = -1.0;
    for d in 0..dim {
        let mut mixed = all_k.clone();
        mixed[d] = &wg;
        let e = (contract(&values, dim, &mixed) * jac - k).abs();
        if e > worst {
            worst = e;
            split_axis = d;
        }
    }
    let raw = (k - g).abs();
    let scale = k.abs().max(f64::MIN_POSITIVE);
    let error = raw.max(f64::EPSILON * 50.0 * scale);
    Cell {
        lo: lo.to_vec(),
        hi: hi.to_vec(),
        value: k,
        error,
        split_axis,
    }
}

/// Adaptive tensor-product Gauss–Kronrod cubature over the box [lo, hi].
///
/// Each cell costs 15^dim evaluations, so this is meant for dim ≤ 3.
pub fn integrate_box<F: Fn(&[f64]) -> f64>(
    f: F,
    lo: &[f64],
    hi: &[f64],
    abs_tol: f64,
    max_evals: usize,
) -> Result<Estimate> {
    assert_eq!(lo.len(), hi.len());
    assert!(!lo.is_empty() && lo.len() <= 4, "box dimension must be 1..=4");
    let per_cell = 15usize.pow(lo.len() as u32);
    let first = tensor_cell(&f, lo, hi);
    let mut evals = per_cell;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    while total_err > abs_tol {
        if evals + 2 * per_cell > max_evals {
            let value: f64 = heap.iter().map(|c| c.value).sum();
            let error: f64 = heap.iter().map(|c| c.error).sum();
            return Err(Error::Accuracy {
                estimate: value,
                error,
                target: abs_tol,
            });
        }
        let cell = heap.pop().expect("heap holds at least one cell");
        let d = cell.split_axis;
        let mid = 0.5 * (cell.lo[d] + cell.hi[d]);
        let mut hi_left = cell.hi.clone();
        hi_left[d] = mid;
        let mut lo_right = cell.lo.clone();
        lo_right[d] = mid;
        let left = tensor_cell(&f, &cell.lo, &hi_left);
        let right = tensor_cell(&f, &lo_right, &cell.hi);
        evals += 2 * per_cell;
        total_err += left.error + right.error - cell.error;
        heap.push(left);
        heap.push(right);
    }
    let value: f64 = heap.iter().map(|c| c.value).sum();
    let error: f64 = heap.iter().map(|c| c.error).sum();
    Ok(Estimate {
        value,
        error,
        evals,
    })
}

/// Gauss–Legendre nodes and weights on [−1, 1] (Newton iteration on Pₙ).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Gauss–Chebyshev rule of the second kind: ∫₋₁¹ √(1−x²) f(x) dx ≈ Σ wᵢ f(xᵢ),
/// exact for polynomials of degree < 2n.
pub fn gauss_chebyshev_u(n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = std::f64::consts::PI / (n as f64 + 1.0);
    (1..=n)
        .map(|k| {
            let a = k as f64 * h;
            (a.cos(), h * a.sin() * a.sin())
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn one_dimensional_smooth_and_singular() {
        let e = integrate(|x: f64| x.sin(), 0.0, PI, 1e-13, 0.0).unwrap();
        assert!((e.value - 2.0).abs() < 1e-13);
        let e = integrate(|x: f64| x.sqrt(), 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert!((e.value - 2.0 / 3.0).abs() < 1e-12);
        let e = integrate(|x: f64| (x * x).ln().abs(), -1.0, 1.0, 1e-10, 0.0).unwrap();
        assert!((e.value - 4.0).abs() < 1e-9);
    }

    #[test]
    fn tensor_box_polynomial_is_exact() {
        let e = integrate_box(
            |p: &[f64]| p[0] * p[0] * p[1].powi(4) * (1.0 + p[2]),
            &[0.0, -1.0, 0.0],
            &[1.0, 1.0, 2.0],
            1e-12,
            1_000_000,
        )
        .unwrap();
        assert!((e.value - (1.0 / 3.0) * 0.4 * 4.0).abs() < 1e-13);
    }

    #[test]
    fn box_reports_budget_exhaustion() {
        let err = integrate_box(
            |p: &[f64]| (1.0 / (p[0].abs() + 1e-12)).sqrt(),
            &[-1.0, -1.0],
            &[1.0, 1.0],
            1e-14,
            20_000,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Accuracy { .. }));
    }

    #[test]
    fn gauss_legendre_integrates_degree_2n_minus_1() {
        let (x, w) = gauss_legendre(6);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_u_rule_matches_semicircle_moments() {
        let (x, w) = gauss_chebyshev_u(5);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m0 - PI / 2.0).abs() < 1e-14);
        assert!((m2 - PI / 8.0).abs() < 1e-14);
    }
}
