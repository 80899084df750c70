//! Scans over genus-2 models and comparison with the USp(4) trace law.
//!
//! The measure is uniform on squarefree models y² = f(x) with deg f ∈ {5, 6}
//! (leading coefficient any nonzero value), not on isomorphism classes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::{is_squarefree, HyperellipticCurve, PointCounter};
use super::weil::{weil_data_from_counts, WeilData};
use crate::distribution::{cdf_tau_g2, moments, Character};
use crate::empirical::EmpiricalDistribution;
use crate::error::{Error, Result};

/// Largest p for which every model is enumerated (≈ p⁷ models of degree 6).
pub const MAX_EXHAUSTIVE_P: u64 = 7;

/// Models (exhaustive) or samples (random) handled per work unit. Units are
/// fixed by index, so the result does not depend on the number of threads.
const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Every squarefree model, p ≤ [`MAX_EXHAUSTIVE_P`].
    Exhaustive,
    /// `n_samples` models drawn uniformly, singular draws rejected.
    Sample,
}

impl std::str::FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ScanMode::Exhaustive),
            "sample" => Ok(ScanMode::Sample),
            _ => Err(Error::InvalidInput(format!("unknown scan mode '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    /// Keep one [`CurveRecord`] per model.
    pub keep_records: bool,
    /// Test hook: add this to N1 of the first model before extracting its
    /// Weil data, which must then be rejected.
    pub corrupt_first_n1: i64,
}

/// One scanned model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRecord {
    pub deg: usize,
    /// f_0, …, f_deg
    pub f: Vec<u64>,
    pub weil: WeilData,
}

/// Exact accumulators over a set of models.
#[derive(Debug, Clone, Default, PartialEq)]
struct Sums {
    models: u64,
    by_degree: [u64; 2],
    /// Σ c1^k for k = 0..=6
    c1_pow: [i128; 7],
    c2: i128,
    n1: i128,
    c1_hist: BTreeMap<i64, u64>,
}

impl Sums {
    fn push(&mut self, deg: usize, w: &WeilData) {
        self.models += 1;
        self.by_degree[deg - 5] += 1;
        let mut x = 1i128;
        for s in self.c1_pow.iter_mut() {
            *s += x;
            x *= w.c1 as i128;
        }
        self.c2 += w.c2 as i128;
        self.n1 += w.n1 as i128;
        *self.c1_hist.entry(w.c1).or_default() += 1;
    }

    fn merge(mut self, o: Sums) -> Sums {
        self.models += o.models;
        for i in 0..2 {
            self.by_degree[i] += o.by_degree[i];
        }
        for i in 0..7 {
            self.c1_pow[i] += o.c1_pow[i];
        }
        self.c2 += o.c2;
        self.n1 += o.n1;
        for (k, v) in o.c1_hist {
            *self.c1_hist.entry(k).or_default() += v;
        }
        self
    }
}

/// The outcome of [`scan_curves`].
#[derive(Debug, Clone)]
pub struct CurveScan {
    pub p: u64,
    pub mode: ScanMode,
    sums: Sums,
    pub records: Option<Vec<CurveRecord>>,
}

impl CurveScan {
    pub fn models(&self) -> u64 {
        self.sums.models
    }

    /// Number of models of degree 5 and 6.
    pub fn models_by_degree(&self) -> [u64; 2] {
        self.sums.by_degree
    }

    /// Exact multiplicities of each value of c1.
    pub fn c1_histogram(&self) -> &BTreeMap<i64, u64> {
        &self.sums.c1_hist
    }

    /// Empirical law of the normalised trace a1 = c1/√p.
    pub fn trace_distribution(&self) -> EmpiricalDistribution {
        let sp = (self.p as f64).sqrt();
        EmpiricalDistribution::from_weighted(self.sums.c1_hist.iter().map(|(&c, &n)| (c as f64 / sp, n as f64)))
            .expect("a scan has at least one model")
    }

    /// E[a1^k] for k ≤ 6, from exact sums.
    pub fn moment_a1(&self, k: usize) -> f64 {
        self.sums.c1_pow[k] as f64 / (self.sums.models as f64 * (self.p as f64).powf(k as f64 / 2.0))
    }

    pub fn mean_a1(&self) -> f64 {
        self.moment_a1(1)
    }

    pub fn mean_a2(&self) -> f64 {
        self.sums.c2 as f64 / (self.sums.models as f64 * self.p as f64)
    }

    pub fn mean_n1(&self) -> f64 {
        self.sums.n1 as f64 / self.sums.models as f64
    }
}

fn models_of_degree(p: u64, deg: u32) -> u128 {
    (p as u128 - 1) * (p as u128).pow(deg)
}

/// The `i`-th model in the fixed enumeration: all degree-5 models, then all
/// degree-6 models; within a degree the leading coefficient varies fastest.
fn decode_model(p: u64, mut i: u128) -> Vec<u64> {
    let n5 = models_of_degree(p, 5);
    let deg = if i < n5 {
        5
    } else {
        i -= n5;
        6
    };
    let mut f = vec![0u64; deg + 1];
    f[deg] = 1 + (i % (p as u128 - 1)) as u64;
    i /= p as u128 - 1;
    for c in f.iter_mut().take(deg) {
        *c = (i % p as u128) as u64;
        i /= p as u128;
    }
    f
}

struct Partial {
    sums: Sums,
    records: Vec<CurveRecord>,
}

fn process(counter: &PointCounter, f: Vec<u64>, corrupt: i64, keep: bool, out: &mut Partial) -> Result<()> {
    let p = counter.field().p();
    let n1 = counter.count(&f, 1)? + corrupt;
    let n2 = counter.count(&f, 2)?;
    let w = weil_data_from_counts(p, n1, n2)?;
    let deg = f.len() - 1;
    out.sums.push(deg, &w);
    if keep {
        out.records.push(CurveRecord { deg, f, weil: w });
    }
    Ok(())
}

/// Scans genus-2 models over F_p.
///
/// `Exhaustive` visits every squarefree model (refused for p > 7, with the
/// model count in the error); `Sample` draws `n_samples` models uniformly
/// from the same set using `seed`. Any model whose counts fail Weil
/// validation aborts the scan with a counting-bug error.
pub fn scan_curves(p: u64, mode: ScanMode, n_samples: u64, seed: u64, opts: &ScanOptions) -> Result<CurveScan> {
    let counter = PointCounter::new(p)?;
    let total = models_of_degree(p, 5) + models_of_degree(p, 6);
    let units: u64 = match mode {
        ScanMode::Exhaustive => {
            if p > MAX_EXHAUSTIVE_P {
                return Err(Error::ExhaustiveTooLarge { p, models: total, max_p: MAX_EXHAUSTIVE_P });
            }
            total.div_ceil(BLOCK as u128) as u64
        }
        ScanMode::Sample => {
            if n_samples == 0 {
                return Err(Error::InvalidInput("sample mode needs n_samples > 0".into()));
            }
            n_samples.div_ceil(BLOCK)
        }
    };
    let keep = opts.keep_records;
    let partials = (0..units)
        .into_par_iter()
        .map(|unit| -> Result<Partial> {
            let counter = counter.clone();
            let field = counter.field().clone();
            let mut out = Partial { sums: Sums::default(), records: Vec::new() };
            let corrupt_for = |first: bool| if first { opts.corrupt_first_n1 } else { 0 };
            match mode {
                ScanMode::Exhaustive => {
                    let lo = unit as u128 * BLOCK as u128;
                    let hi = (lo + BLOCK as u128).min(total);
                    let mut first = unit == 0;
                    for i in lo..hi {
                        let f = decode_model(p, i);
                        if !is_squarefree(&field, &f) {
                            continue;
                        }
                        process(&counter, f, corrupt_for(first), keep, &mut out)?;
                        first = false;
                    }
                }
                ScanMode::Sample => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(unit);
                    let lo = unit * BLOCK;
                    let hi = (lo + BLOCK).min(n_samples);
                    for i in lo..hi {
                        let f = loop {
                            let f = decode_model(p, rng.gen_range(0..total));
                            if is_squarefree(&field, &f) {
                                break f;
                            }
                        };
                        process(&counter, f, corrupt_for(i == 0), keep, &mut out)?;
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<Partial>>>()?;

    let mut sums = Sums::default();
    let mut records = keep.then(Vec::new);
    for part in partials {
        sums = sums.merge(part.sums);
        if let Some(r) = records.as_mut() {
            r.extend(part.records);
        }
    }
    Ok(CurveScan { p, mode, sums, records })
}

/// Convenience wrapper: the curve of a record.
impl CurveRecord {
    pub fn curve(&self) -> HyperellipticCurve {
        HyperellipticCurve::from_reduced_unchecked(self.weil.p, self.f.clone())
    }
}

/// A scan set against the USp(4) predictions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub p: u64,
    pub mode: ScanMode,
    pub models: u64,
    pub models_deg5: u64,
    pub models_deg6: u64,
    pub mean_n1: f64,
    pub mean_a1: f64,
    pub mean_a2: f64,
    /// mean of s_2 = a2 − 2, predicted −1
    pub mean_tau2: f64,
    /// sup_x |F̂(x) − Φ_τ(x)| over the empirical law of a1
    pub sup_cdf_distance: f64,
    /// E[a1^k], k = 1..=6
    pub moments: Vec<f64>,
    /// the USp(4) trace moments M_1..M_6
    pub theory_moments: Vec<i64>,
    /// each discrepancy multiplied by √p (bounded if the error is O(p^{−1/2}))
    pub normalized: NormalizedResiduals,
    pub measure_note: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalizedResiduals {
    pub mean_a1: f64,
    pub mean_a2: f64,
    pub mean_tau2: f64,
    pub sup_cdf_distance: f64,
    pub moments: Vec<f64>,
}

pub const MEASURE_NOTE: &str = "averages are over squarefree models y^2 = f(x) with deg f in {5, 6}, \
not over isomorphism classes weighted by automorphisms; expect O(1/p) distortion";

pub fn compare_to_theory(scan: &CurveScan) -> Result<ReportRecord> {
    let e = scan.trace_distribution();
    let mut err = None;
    let sup = e.sup_distance(|x| {
        cdf_tau_g2(x).unwrap_or_else(|er| {
            err.get_or_insert(er);
            f64::NAN
        })
    });
    if let Some(er) = err {
        return Err(er);
    }
    let theory: Vec<i64> = moments(Character::TauG2, 6)?
        .as_f64()
        .into_iter()
        .skip(1)
        .map(|v| v as i64)
        .collect();
    let emp: Vec<f64> = (1..=6).map(|k| scan.moment_a1(k)).collect();
    let sp = (scan.p as f64).sqrt();
    let mean_tau2 = scan.mean_a2() - 2.0;
    let [d5, d6] = scan.models_by_degree();
    Ok(ReportRecord {
        p: scan.p,
        mode: scan.mode,
        models: scan.models(),
        models_deg5: d5,
        models_deg6: d6,
        mean_n1: scan.mean_n1(),
        mean_a1: scan.mean_a1(),
        mean_a2: scan.mean_a2(),
        mean_tau2,
        sup_cdf_distance: sup,
        normalized: NormalizedResiduals {
            mean_a1: scan.mean_a1() * sp,
            mean_a2: (scan.mean_a2() - 1.0) * sp,
            mean_tau2: (mean_tau2 + 1.0) * sp,
            sup_cdf_distance: sup * sp,
            moments: emp.iter().zip(&theory).map(|(m, t)| (m - *t as f64) * sp).collect(),
        },
        moments: emp,
        theory_moments: theory,
        measure_note: MEASURE_NOTE,
    })
}
