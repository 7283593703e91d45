//! |ln|ζ|| along diagonal approaches s = 1/2 + δ + i(γ − δ) to a point on
//! the critical line.

use std::collections::BTreeMap;

use critical_strip_core::prime_zeta::{prime_zeta_tail, TruncationPolicy};
use critical_strip_core::zeros::ZeroRecord;
use critical_strip_core::zeta::{eval_zeta, EvalOptions};
use critical_strip_core::Error as CoreError;
use num_complex::Complex64;
use serde_json::json;

use crate::error::{HarnessError, Result};
use crate::report::{CheckReport, Measured};

#[derive(Debug, Clone, PartialEq)]
pub struct BlowupProfile {
    pub center: Complex64,
    pub deltas: Vec<f64>,
    /// |ln|ζ(s_δ)||
    pub log_abs: Vec<f64>,
    /// |Re Q_m(s_δ)| = |ln|ζ| − Re Σ_{n≥m} P(ns)/n|
    pub q_abs: Vec<f64>,
    /// Steps among the last five where |ln|ζ|| failed to increase.
    pub violations: usize,
    /// Least-squares slope of |ln|ζ|| against ln(1/δ).
    pub growth_rate: f64,
}

fn check_deltas(deltas: &[f64]) -> Result<()> {
    let ok = deltas.len() >= 2
        && deltas.iter().all(|&d| d > 1e-6 && d <= 1e-1)
        && deltas.windows(2).all(|w| w[1] < w[0]);
    if ok {
        Ok(())
    } else {
        Err(HarnessError::Core(CoreError::Precondition(
            "deltas must be strictly descending within (1e-6, 1e-1]".into(),
        )))
    }
}

pub fn blowup_profile(gamma: f64, deltas: &[f64], m: usize) -> Result<BlowupProfile> {
    check_deltas(deltas)?;
    let center = Complex64::new(0.5, gamma);
    let policy = TruncationPolicy::default();
    let mut log_abs = Vec::with_capacity(deltas.len());
    let mut q_abs = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let s = center + Complex64::new(d, -d);
        let l = eval_zeta(s, EvalOptions::default())?.norm().ln();
        let tail = prime_zeta_tail(s, m, &policy)?;
        log_abs.push(l.abs());
        q_abs.push((l - tail.value.re).abs());
    }
    let start = log_abs.len().saturating_sub(5);
    let violations = log_abs[start..].windows(2).filter(|w| !(w[1] > w[0])).count();
    let xs: Vec<f64> = deltas.iter().map(|d| -d.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = log_abs.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&log_abs).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(BlowupProfile {
        center,
        deltas: deltas.to_vec(),
        log_abs,
        q_abs,
        violations,
        growth_rate: sxy / sxx,
    })
}

fn profile_values(p: &BlowupProfile) -> BTreeMap<String, Measured> {
    let mut values = BTreeMap::new();
    for (i, (l, q)) in p.log_abs.iter().zip(&p.q_abs).enumerate() {
        values.insert(format!("log_abs_{i}"), Measured::new(*l, "eval_zeta"));
        values.insert(format!("q_abs_{i}"), Measured::new(*q, "eval_zeta - prime_zeta_tail"));
    }
    values.insert("growth_rate".into(), Measured::new(p.growth_rate, "least squares vs ln(1/delta)"));
    values
}

/// Approach to zero `zero_index` (1-based). The residual counts the steps
/// among the last five that fail to increase strictly.
pub fn blowup_probe(zeros: &[ZeroRecord], zero_index: usize, deltas: &[f64], m: usize) -> Result<CheckReport> {
    let z = zeros
        .get(zero_index.wrapping_sub(1))
        .ok_or(HarnessError::Core(CoreError::MissingZero(zero_index)))?;
    let p = blowup_profile(z.ordinate, deltas, m)?;
    let params = BTreeMap::from([
        ("zero_index".to_string(), json!(zero_index)),
        ("gamma".to_string(), json!(z.ordinate)),
        ("m".to_string(), json!(m)),
        ("deltas".to_string(), json!(deltas)),
        ("control".to_string(), json!(false)),
    ]);
    Ok(CheckReport::new(format!("blowup.zero_{zero_index}"), params, profile_values(&p), p.violations as f64, 0.5))
}

/// The same approach aimed midway between zeros `zero_index` and the next
/// one, where ζ does not vanish. The residual is |growth rate|, which stays
/// near zero for a bounded profile.
pub fn control_probe(zeros: &[ZeroRecord], zero_index: usize, deltas: &[f64], m: usize) -> Result<CheckReport> {
    let (a, b) = match (zeros.get(zero_index.wrapping_sub(1)), zeros.get(zero_index)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(HarnessError::Core(CoreError::MissingZero(zero_index + 1))),
    };
    let gamma = 0.5 * (a.ordinate + b.ordinate);
    let p = blowup_profile(gamma, deltas, m)?;
    let params = BTreeMap::from([
        ("zero_index".to_string(), json!(zero_index)),
        ("gamma".to_string(), json!(gamma)),
        ("m".to_string(), json!(m)),
        ("deltas".to_string(), json!(deltas)),
        ("control".to_string(), json!(true)),
    ]);
    Ok(CheckReport::new(format!("blowup.control_{zero_index}"), params, profile_values(&p), p.growth_rate.abs(), 0.5))
}
