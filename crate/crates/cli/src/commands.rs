//! Subcommand implementations.

use std::io::Write;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use usptrace::distribution::{self, cdf_tau_g2, charfn, CdfTable, Character, DensityCurve, TauMethod};
use usptrace::frobenius::{
    compare_to_theory, scan_curves, validate_weil, validate_weil_float, weil_data, HyperellipticCurve,
    ReportRecord, ScanMode, ScanOptions, WeilData,
};
use usptrace::symmetric::in_sigma;
use usptrace::{weyl, PalindromicPolynomial, SymmetricPoint};

use crate::output::{jint, jreal, jreals, open, real, write_columns, write_json, Format, Meta};
use crate::{Cli, CliError, Command, Law, Method, Mode, Which};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    CliError::Usage(msg.into()).into()
}

fn character(law: &Law) -> Result<Character> {
    match (law.which, law.g) {
        (Which::Tau, g) => Character::tau(g).map_err(|_| usage(format!("--g must be 1, 2 or 3 for tau (got {g})"))),
        (_, 2) => Ok(match law.which {
            Which::Rho => Character::Rho,
            Which::Tau2 => Character::Tau2,
            _ => Character::Chi2,
        }),
        (w, g) => Err(usage(format!("{w:?} is only defined for --g 2 (got {g})").to_lowercase())),
    }
}

fn tau_method(which: Character, m: Method) -> Result<TauMethod> {
    let method = match m {
        Method::Auto => TauMethod::Auto,
        Method::Hypergeometric => TauMethod::Hypergeometric,
        Method::Legendre => TauMethod::Legendre,
        Method::Elliptic => TauMethod::Elliptic,
        Method::Meijer => TauMethod::Meijer,
        Method::Slice => TauMethod::Slice,
    };
    let ok = match which {
        Character::TauG2 => true,
        Character::TauG3 => matches!(method, TauMethod::Auto | TauMethod::Slice),
        _ => method == TauMethod::Auto,
    };
    if ok {
        Ok(method)
    } else {
        Err(usage(format!("--method {method} is not available for {which}")))
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(usage(format!("need n >= 2 and a finite range with min < max (got n = {n}, [{lo}, {hi}])")));
    }
    let h = (hi - lo) / (n - 1) as f64;
    Ok((0..n).map(|i| if i + 1 == n { hi } else { lo + h * i as f64 }).collect())
}

pub fn run(cli: &Cli, args: Vec<String>) -> Result<()> {
    let common = &cli.common;
    let name = match &cli.command {
        Command::Density { .. } => "density",
        Command::Cdf { .. } => "cdf",
        Command::Charfn { .. } => "charfn",
        Command::Moments { .. } => "moments",
        Command::Sample { .. } => "sample",
        Command::Alcove { .. } => "alcove",
        Command::WeilValidate(_) => "weil-validate",
        Command::Curves { .. } => "curves",
    };
    let meta = Meta { command: name, args, seed: common.seed };
    let fmt = common.format;

    // Validate and compute before opening the output, so that a failing run
    // does not leave a truncated file behind.
    match &cli.command {
        Command::Density { law, method, xmin, xmax, n } => {
            let which = character(law)?;
            let method = tau_method(which, *method)?;
            let (lo, hi) = which.support();
            let (a, b) = (xmin.unwrap_or(lo), xmax.unwrap_or(hi));
            grid(a, b, *n)?;
            let c = DensityCurve::tabulate(which, method, a, b, *n)?;
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Csv => write_columns(&mut w, &meta, &["x", "f"], &[&c.xs, &c.ys])?,
                Format::Json => {
                    let mut body = Map::new();
                    body.insert("which".into(), json!(which.as_str()));
                    body.insert("method".into(), json!(method.as_str()));
                    body.insert("x".into(), jreals(&c.xs));
                    body.insert("f".into(), jreals(&c.ys));
                    write_json(&mut w, &meta, body)?;
                }
            }
            w.flush()?;
        }
        Command::Cdf { law, xmin, xmax, n } => {
            let which = character(law)?;
            let (lo, hi) = which.support();
            let xs = grid(xmin.unwrap_or(lo), xmax.unwrap_or(hi), *n)?;
            let fs: Vec<f64> = if which == Character::TauG2 {
                xs.par_iter().map(|&x| cdf_tau_g2(x)).collect::<usptrace::Result<_>>()?
            } else {
                let table = CdfTable::new(
                    |x| distribution::density(which, TauMethod::Auto, x).unwrap_or(f64::NAN),
                    lo,
                    hi,
                    4000,
                );
                xs.iter().map(|&x| table.eval(x)).collect()
            };
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Csv => write_columns(&mut w, &meta, &["x", "F"], &[&xs, &fs])?,
                Format::Json => {
                    let mut body = Map::new();
                    body.insert("which".into(), json!(which.as_str()));
                    body.insert("x".into(), jreals(&xs));
                    body.insert("F".into(), jreals(&fs));
                    write_json(&mut w, &meta, body)?;
                }
            }
            w.flush()?;
        }
        Command::Charfn { law, tmin, tmax, n } => {
            let which = character(law)?;
            if matches!(which, Character::Tau2 | Character::Chi2) {
                return Err(usage(format!("no characteristic function for {which}")));
            }
            let ts = grid(*tmin, *tmax, *n)?;
            let phi: Vec<f64> = ts.par_iter().map(|&t| charfn(which, t)).collect::<usptrace::Result<_>>()?;
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Csv => write_columns(&mut w, &meta, &["t", "phi"], &[&ts, &phi])?,
                Format::Json => {
                    let mut body = Map::new();
                    body.insert("which".into(), json!(which.as_str()));
                    body.insert("t".into(), jreals(&ts));
                    body.insert("phi".into(), jreals(&phi));
                    write_json(&mut w, &meta, body)?;
                }
            }
            w.flush()?;
        }
        Command::Moments { law, count } => {
            let which = character(law)?;
            if *count == 0 {
                return Err(usage("--count must be positive"));
            }
            let m = distribution::moments(which, count - 1)?;
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Csv => {
                    meta.csv_header(&mut w)?;
                    writeln!(w, "n,moment")?;
                    for (n, v) in m.values.iter().enumerate() {
                        writeln!(w, "{n},{v}")?;
                    }
                }
                Format::Json => {
                    let mut body = Map::new();
                    body.insert("which".into(), json!(which.as_str()));
                    body.insert(
                        "moments".into(),
                        Value::Array(m.values.iter().map(|v| jint(&v.to_string())).collect()),
                    );
                    write_json(&mut w, &meta, body)?;
                }
            }
            w.flush()?;
        }
        Command::Sample { g, n } => {
            let (classes, stats) = weyl::sample_with_stats(*g, *n, common.seed)?;
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Csv => {
                    meta.csv_header(&mut w)?;
                    let mut cols: Vec<String> = (1..=*g).map(|j| format!("theta{j}")).collect();
                    cols.extend((1..=*g).map(|j| format!("t{j}")));
                    cols.push("trace".into());
                    writeln!(w, "{}", cols.join(","))?;
                    let mut line = String::new();
                    for c in &classes {
                        line.clear();
                        for th in c.theta() {
                            line.push_str(&real(*th));
                            line.push(',');
                        }
                        for th in c.theta() {
                            line.push_str(&real(2.0 * th.cos()));
                            line.push(',');
                        }
                        line.push_str(&real(c.trace()));
                        writeln!(w, "{line}")?;
                    }
                }
                Format::Json => {
                    let traces: Vec<f64> = classes.iter().map(|c| c.trace()).collect();
                    let e = usptrace::EmpiricalDistribution::from_samples(traces)?;
                    let mut body = Map::new();
                    body.insert("g".into(), json!(g));
                    body.insert("n".into(), json!(n));
                    body.insert("trace_mean".into(), jreal(e.mean()));
                    body.insert("trace_variance".into(), jreal(e.variance()));
                    body.insert("proposals".into(), json!(stats.proposals));
                    body.insert("accepted".into(), json!(stats.accepted));
                    body.insert("acceptance_rate".into(), jreal(stats.acceptance_rate()));
                    body.insert("expected_rate".into(), jreal(weyl::SamplerStats::expected_rate(*g)?));
                    body.insert("max_ratio".into(), jreal(stats.max_ratio));
                    write_json(&mut w, &meta, body)?;
                }
            }
            w.flush()?;
        }
        Command::Alcove { g, s } => {
            if s.len() != *g {
                return Err(usage(format!("--s needs exactly g = {g} values (got {})", s.len())));
            }
            let r = in_sigma(&SymmetricPoint::new(s.clone())?);
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Json => {
                    let mut body = Map::new();
                    body.insert("g".into(), json!(r.g));
                    body.insert("s".into(), jreals(&r.s));
                    body.insert("in_pi".into(), json!(r.in_pi));
                    body.insert("in_theta".into(), json!(r.in_theta));
                    body.insert("in_sigma".into(), json!(r.in_sigma));
                    body.insert("minors".into(), jreals(&r.minors));
                    body.insert("forms_plus".into(), jreals(&r.forms_plus));
                    body.insert("forms_minus".into(), jreals(&r.forms_minus));
                    write_json(&mut w, &meta, body)?;
                }
                Format::Csv => {
                    meta.csv_header(&mut w)?;
                    writeln!(w, "key,value")?;
                    writeln!(w, "g,{}", r.g)?;
                    for (i, v) in r.s.iter().enumerate() {
                        writeln!(w, "s{},{}", i + 1, real(*v))?;
                    }
                    writeln!(w, "in_pi,{}", r.in_pi)?;
                    writeln!(w, "in_theta,{}", r.in_theta)?;
                    writeln!(w, "in_sigma,{}", r.in_sigma)?;
                    for (i, v) in r.minors.iter().enumerate() {
                        writeln!(w, "minor{},{}", i + 1, real(*v))?;
                    }
                }
            }
            w.flush()?;
        }
        Command::WeilValidate(a) => {
            let fields = weil_validate(a)?;
            let mut w = open(common.out.as_deref())?;
            match fmt {
                Format::Json => write_json(&mut w, &meta, fields)?,
                Format::Csv => {
                    meta.csv_header(&mut w)?;
                    writeln!(w, "key,value")?;
                    for (k, v) in &fields {
                        match v {
                            Value::String(s) => writeln!(w, "{k},{s}")?,
                            other => writeln!(w, "{k},{other}")?,
                        }
                    }
                }
            }
            w.flush()?;
        }
        Command::Curves { p, mode, n, summary, inject_corrupt_count } => {
            let mode = match mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Sample => ScanMode::Sample,
            };
            let opts = ScanOptions { keep_records: fmt == Format::Csv, corrupt_first_n1: *inject_corrupt_count };
            let scan = scan_curves(*p, mode, *n, common.seed, &opts)?;
            let report = compare_to_theory(&scan)?;
            let mut body = summary_json(&report);
            let hist: Map<String, Value> =
                scan.c1_histogram().iter().map(|(c, k)| (c.to_string(), json!(k))).collect();
            body.insert("c1_histogram".into(), Value::Object(hist));
            match fmt {
                Format::Json => {
                    let mut w = open(common.out.as_deref())?;
                    write_json(&mut w, &meta, body)?;
                    w.flush()?;
                }
                Format::Csv => {
                    let mut w = open(common.out.as_deref())?;
                    meta.csv_header(&mut w)?;
                    writeln!(w, "p,deg,f,N1,N2,c1,c2,a1,a2")?;
                    for r in scan.records.as_deref().unwrap_or_default() {
                        let f: Vec<String> = r.f.iter().map(|c| c.to_string()).collect();
                        let wd = &r.weil;
                        writeln!(
                            w,
                            "{},{},{},{},{},{},{},{},{}",
                            wd.p,
                            r.deg,
                            f.join(":"),
                            wd.n1,
                            wd.n2,
                            wd.c1,
                            wd.c2,
                            real(wd.a1),
                            real(wd.a2)
                        )?;
                    }
                    w.flush()?;
                    if let Some(path) = summary {
                        let mut s = open(Some(path)).with_context(|| format!("opening {}", path.display()))?;
                        write_json(&mut s, &meta, body)?;
                        s.flush()?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn summary_json(r: &ReportRecord) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("p".into(), json!(r.p));
    m.insert("mode".into(), json!(r.mode));
    m.insert("models".into(), json!(r.models));
    m.insert("models_deg5".into(), json!(r.models_deg5));
    m.insert("models_deg6".into(), json!(r.models_deg6));
    m.insert("mean_n1".into(), jreal(r.mean_n1));
    m.insert("mean_a1".into(), jreal(r.mean_a1));
    m.insert("mean_a2".into(), jreal(r.mean_a2));
    m.insert("mean_tau2".into(), jreal(r.mean_tau2));
    m.insert("sup_cdf_distance".into(), jreal(r.sup_cdf_distance));
    m.insert("moments_a1".into(), jreals(&r.moments));
    m.insert("theory_moments".into(), json!(r.theory_moments));
    let n = &r.normalized;
    m.insert(
        "normalized_residuals".into(),
        json!({
            "mean_a1": jreal(n.mean_a1),
            "mean_a2": jreal(n.mean_a2),
            "mean_tau2": jreal(n.mean_tau2),
            "sup_cdf_distance": jreal(n.sup_cdf_distance),
            "moments_a1": jreals(&n.moments),
        }),
    );
    m.insert("measure_note".into(), json!(r.measure_note));
    m
}

fn weil_fields(w: &WeilData, m: &mut Map<String, Value>) {
    m.insert("p".into(), json!(w.p));
    m.insert("n1".into(), json!(w.n1));
    m.insert("n2".into(), json!(w.n2));
    m.insert("c1".into(), json!(w.c1));
    m.insert("c2".into(), json!(w.c2));
    m.insert("a1".into(), jreal(w.a1));
    m.insert("a2".into(), jreal(w.a2));
}

fn weil_validate(a: &crate::WeilArgs) -> Result<Map<String, Value>> {
    let mut m = Map::new();
    match (a.p, &a.curve, a.n1, a.n2, a.a1, a.a2) {
        (Some(p), Some(f), None, None, None, None) => {
            let c = HyperellipticCurve::new(p, f)?;
            // an honest count that fails validation is a bug: exit 4
            let w = weil_data(&c)?;
            m.insert("route".into(), json!("curve"));
            weil_fields(&w, &mut m);
            m.insert("valid".into(), json!(true));
        }
        (Some(p), None, Some(n1), Some(n2), None, None) => {
            usptrace::frobenius::PrimeField::new(p)?;
            let pi = p as i64;
            let c1 = pi + 1 - n1;
            let twice_c2 = c1 * c1 - (pi * pi + 1 - n2);
            m.insert("route".into(), json!("counts"));
            if twice_c2 % 2 != 0 {
                m.insert("p".into(), json!(p));
                m.insert("n1".into(), json!(n1));
                m.insert("n2".into(), json!(n2));
                m.insert("valid".into(), json!(false));
                m.insert("reason".into(), json!("c1^2 - P2 is odd"));
            } else {
                let c2 = twice_c2 / 2;
                let a1 = c1 as f64 / (p as f64).sqrt();
                let w = WeilData { p, n1, n2, c1, c2, a1, a2: c2 as f64 / p as f64, trace: a1 };
                weil_fields(&w, &mut m);
                m.insert("valid".into(), json!(validate_weil(&w)));
            }
        }
        (None, None, None, None, Some(a1), Some(a2)) => {
            let v = validate_weil_float(&PalindromicPolynomial::new(vec![1.0, a1, a2])?);
            m.insert("route".into(), json!("coefficients"));
            m.insert("a1".into(), jreal(a1));
            m.insert("a2".into(), jreal(a2));
            m.insert("valid".into(), json!(v));
        }
        _ => {
            return Err(usage(
                "give exactly one of: --p with --curve; --p with --n1 and --n2; --a1 with --a2",
            ))
        }
    }
    Ok(m)
}
