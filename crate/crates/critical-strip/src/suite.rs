//! Running checks on a work pool.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use crate::checks::{find, Check, Context, CHECKS};
use crate::config::SuiteConfig;
use crate::error::{HarnessError, Result};
use crate::report::{CheckReport, Measured};

pub fn select(cfg: &SuiteConfig) -> Result<Vec<&'static Check>> {
    match &cfg.checks {
        None => Ok(CHECKS.iter().collect()),
        Some(ids) => ids.iter().map(|id| find(id).ok_or_else(|| HarnessError::UnknownCheck(id.clone()))).collect(),
    }
}

pub fn tolerance(cfg: &SuiteConfig, check: &Check) -> f64 {
    cfg.tolerances.get(check.id).copied().unwrap_or(check.tolerance) * cfg.tol_scale
}

/// Runs one check; errors and panics become failing reports.
pub fn run_check(check: &Check, ctx: &Context) -> CheckReport {
    let tol = tolerance(&ctx.cfg, check);
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| (check.run)(ctx)));
    let elapsed = start.elapsed().as_secs_f64() * 1e3;
    let mut report = match result {
        Ok(Ok(o)) => CheckReport::new(check.id, o.params, o.values, o.residual, tol),
        Ok(Err(e)) => failed(check.id, tol, &e.to_string()),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            failed(check.id, tol, &msg)
        }
    };
    report.params.insert("module".into(), serde_json::json!(check.module));
    report.runtime_ms = elapsed;
    report
}

fn failed(id: &str, tol: f64, msg: &str) -> CheckReport {
    let mut values = std::collections::BTreeMap::new();
    values.insert("error".into(), Measured::new(f64::NAN, msg));
    CheckReport::new(id, Default::default(), values, f64::INFINITY, tol)
}

/// All selected checks, sorted by id. `jobs` sizes the pool (default: all
/// cores).
pub fn run_suite(cfg: &SuiteConfig, jobs: Option<usize>) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let checks = select(cfg)?;
    let ctx = Context::new(cfg.clone());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let mut reports: Vec<CheckReport> = pool.install(|| checks.par_iter().map(|c| run_check(c, &ctx)).collect());
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(reports)
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
