//! Weighted empirical distributions on the real line.

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite weighted sample, stored as sorted atoms with merged duplicates.
///
/// Weights are non-negative and need not sum to one; every accessor
/// normalises by the total weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    atoms: Vec<f64>,
    weights: Vec<f64>,
    /// running sums of `weights`, so that cum[i] = Σ_{j ≤ i} weights[j]
    #[serde(skip)]
    cum: Vec<f64>,
    total: f64,
}

impl EmpiricalDistribution {
    /// Equally weighted samples.
    pub fn from_samples(samples: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::from_weighted(samples.into_iter().map(|x| (x, 1.0)))
    }

    /// (value, weight) pairs; values must be finite, weights finite and ≥ 0,
    /// and the total weight positive.
    pub fn from_weighted(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut v: Vec<(f64, f64)> = pairs.into_iter().collect();
        if let Some(&(x, w)) = v.iter().find(|(x, w)| !x.is_finite() || !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidInput(format!("bad sample ({x}, weight {w})")));
        }
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut atoms: Vec<f64> = Vec::new();
        let mut weights: Vec<f64> = Vec::new();
        for (x, w) in v {
            match atoms.last() {
                Some(&last) if last == x => *weights.last_mut().expect("parallel vectors") += w,
                _ => {
                    atoms.push(x);
                    weights.push(w);
                }
            }
        }
        let mut cum = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cum.push(acc);
        }
        if !(acc > 0.0) {
            return Err(Error::InvalidInput("empirical distribution needs positive total weight".into()));
        }
        Ok(Self { atoms, weights, cum, total: acc })
    }

    /// Distinct support points in increasing order.
    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    /// Unnormalised weight of each atom.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// E[X^n].
    pub fn moment(&self, n: u32) -> f64 {
        self.atoms.iter().zip(&self.weights).map(|(x, w)| w * x.powi(n as i32)).sum::<f64>() / self.total
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.atoms.iter().zip(&self.weights).map(|(x, w)| w * (x - m).powi(2)).sum::<f64>() / self.total
    }

    /// P(X ≤ x).
    pub fn cdf(&self, x: f64) -> f64 {
        let i = self.atoms.partition_point(|&a| a <= x);
        if i == 0 {
            0.0
        } else {
            self.cum[i - 1] / self.total
        }
    }

    /// P(X < x).
    pub fn cdf_left(&self, x: f64) -> f64 {
        let i = self.atoms.partition_point(|&a| a < x);
        if i == 0 {
            0.0
        } else {
            self.cum[i - 1] / self.total
        }
    }

    /// sup_x |F̂(x) − F(x)| against a continuous CDF `f` (the
    /// Kolmogorov–Smirnov statistic). The supremum is attained at an atom,
    /// approached from the left or the right.
    pub fn sup_distance<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        let mut below = 0.0;
        let mut worst: f64 = 0.0;
        for (x, c) in self.atoms.iter().zip(&self.cum) {
            let fx = f(*x);
            let above = c / self.total;
            worst = worst.max((fx - below).abs()).max((fx - above).abs());
            below = above;
        }
        worst
    }

    /// Normalised histogram on `bins` equal cells of [lo, hi]: the returned
    /// values are densities (mass / width). Mass outside [lo, hi] is dropped;
    /// an atom exactly at hi is put in the last cell.
    pub fn histogram(&self, lo: f64, hi: f64, bins: usize) -> Result<Vec<f64>> {
        if bins == 0 || !(hi > lo) {
            return Err(Error::InvalidInput(format!("bad histogram range [{lo}, {hi}] with {bins} bins")));
        }
        let width = (hi - lo) / bins as f64;
        let mut h = vec![0.0; bins];
        for (x, w) in self.atoms.iter().zip(&self.weights) {
            if *x < lo || *x > hi {
                continue;
            }
            let i = (((x - lo) / width) as usize).min(bins - 1);
            h[i] += w;
        }
        for v in &mut h {
            *v /= self.total * width;
        }
        Ok(h)
    }

    /// Smallest atom x with P(X ≤ x) ≥ q.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain(format!("quantile level {q} outside [0, 1]")));
        }
        let target = q * self.total;
        let i = self.cum.partition_point(|&c| c < target).min(self.atoms.len() - 1);
        Ok(self.atoms[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_weighs() {
        let e = EmpiricalDistribution::from_weighted([(1.0, 1.0), (0.0, 2.0), (1.0, 1.0)]).unwrap();
        assert_eq!(e.atoms(), &[0.0, 1.0]);
        assert_eq!(e.weights(), &[2.0, 2.0]);
        assert_eq!(e.mean(), 0.5);
        assert_eq!(e.variance(), 0.25);
        assert_eq!(e.cdf(0.0), 0.5);
        assert_eq!(e.cdf_left(0.0), 0.0);
        assert_eq!(e.cdf(1.0), 1.0);
        assert_eq!(e.quantile(0.5).unwrap(), 0.0);
        assert_eq!(e.quantile(0.51).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(EmpiricalDistribution::from_samples(Vec::<f64>::new()).is_err());
        assert!(EmpiricalDistribution::from_samples([f64::NAN]).is_err());
        assert!(EmpiricalDistribution::from_weighted([(0.0, -1.0)]).is_err());
    }

    #[test]
    fn ks_statistic_of_a_uniform_grid() {
        // atoms at (i + 1/2)/n against U(0, 1): the distance is exactly 1/(2n)
        let n = 100;
        let e = EmpiricalDistribution::from_samples((0..n).map(|i| (i as f64 + 0.5) / n as f64)).unwrap();
        let d = e.sup_distance(|x| x.clamp(0.0, 1.0));
        assert!((d - 0.005).abs() < 1e-15);
        // a single atom at 0 against U(−1, 1): jump from 0 to 1 where F = 1/2
        let e = EmpiricalDistribution::from_samples([0.0]).unwrap();
        assert_eq!(e.sup_distance(|x| ((x + 1.0) / 2.0).clamp(0.0, 1.0)), 0.5);
    }

    #[test]
    fn histogram_is_a_density() {
        let e = EmpiricalDistribution::from_samples((0..1000).map(|i| i as f64 / 999.0)).unwrap();
        let h = e.histogram(0.0, 1.0, 10).unwrap();
        let mass: f64 = h.iter().map(|v| v * 0.1).sum();
        assert!((mass - 1.0).abs() < 1e-12);
        assert!(h.iter().all(|&v| (v - 1.0).abs() < 0.02));
    }
}
