//! Suite configuration, read from TOML `key = value` text.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{io_err, HarnessError, Result};

/// Largest ordinate the suite will scan to.
pub const MAX_ORDINATE: f64 = 100.0;
/// Largest root index or series length.
pub const MAX_INDEX: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ZeroScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub step: f64,
}

impl Default for ZeroScanConfig {
    fn default() -> Self {
        Self { t_min: 10.0, t_max: 50.0, step: 0.02 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Multiplies every tolerance.
    pub tol_scale: f64,
    /// Restricts the run to these check ids; absent means all.
    pub checks: Option<Vec<String>>,
    /// Per-check tolerance overrides.
    pub tolerances: BTreeMap<String, f64>,
    pub zero_scan: ZeroScanConfig,
    /// 1-based rectangle indices.
    pub rectangles: Vec<usize>,
    pub m_values: Vec<usize>,
    pub epsilon: f64,
    pub a_values: Vec<f64>,
    /// Half-width of the k-range for factorization checks.
    pub k_window: f64,
    /// Half-width of the sampled ln R.
    pub k_max: f64,
    /// Half-width of the k-range for the reflection transform check.
    pub fourier_window: f64,
    /// Half-width of the k-range for norm aggregates.
    pub norm_window: f64,
    pub fourier_intervals: usize,
    pub random_points: usize,
    pub cross_route_points: usize,
    pub reflection_points: usize,
    pub sieve_limit: u64,
    pub direct_terms: u64,
    pub root_count: usize,
    pub residue_terms: usize,
    /// Zero indices probed for blow-up.
    pub blowup_zeros: Vec<usize>,
    pub blowup_deltas: Vec<f64>,
    pub out_dir: Option<PathBuf>,
    /// Prime table cache; `CRITICAL_STRIP_DATA` takes precedence.
    pub data_dir: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tol_scale: 1.0,
            checks: None,
            tolerances: BTreeMap::new(),
            zero_scan: ZeroScanConfig::default(),
            rectangles: vec![1, 2, 3],
            m_values: vec![40],
            epsilon: 0.06,
            a_values: vec![2.1, 2.5, 3.0, 10.0],
            k_window: 50.0,
            k_max: 1000.0,
            fourier_window: 20.0,
            norm_window: 200.0,
            fourier_intervals: 1 << 12,
            random_points: 1000,
            cross_route_points: 100,
            reflection_points: 50,
            sieve_limit: 10_000_000,
            direct_terms: 10_000_000,
            root_count: 1000,
            residue_terms: 500,
            blowup_zeros: vec![1, 2, 3],
            blowup_deltas: vec![1e-1, 1e-2, 1e-3, 1e-4, 1e-5],
            out_dir: None,
            data_dir: None,
        }
    }
}

impl SuiteConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        Self::from_toml_str(&text).map_err(|e| match e {
            HarnessError::Config(m) => HarnessError::Format { path: path.into(), message: m },
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(HarnessError::Config(m.into()));
        if !(self.tol_scale >= 0.0 && self.tol_scale.is_finite()) {
            return bad("tol_scale must be finite and non-negative");
        }
        if self.tolerances.values().any(|t| !(*t >= 0.0 && t.is_finite())) {
            return bad("tolerances must be finite and non-negative");
        }
        let z = &self.zero_scan;
        if !(z.t_min > 0.0 && z.t_min < z.t_max && z.t_max <= MAX_ORDINATE && z.step > 0.0) {
            return bad("zero scan needs 0 < t_min < t_max <= 100 and a positive step");
        }
        if self.rectangles.iter().any(|&n| n == 0 || n > MAX_INDEX) {
            return bad("rectangle indices must lie in 1..=1000");
        }
        if self.root_count == 0 || self.root_count > MAX_INDEX || self.residue_terms > MAX_INDEX {
            return bad("root_count and residue_terms must lie in 1..=1000");
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.125) {
            return bad("epsilon must lie in (0, 1/8)");
        }
        if self.m_values.iter().any(|&m| m == 0 || 2.0 / m as f64 > self.epsilon) {
            return bad("every m needs 2/m <= epsilon");
        }
        if self.a_values.iter().any(|&a| !(a > 2.0)) {
            return bad("kernel parameters must exceed 2");
        }
        if !(self.k_window > 0.0 && self.k_max >= 2.0 * self.k_window && self.k_max >= 1e3) {
            return bad("need k_max >= max(1000, 2 k_window)");
        }
        if self.fourier_intervals < 8 || self.fourier_intervals % 2 == 1 {
            return bad("fourier_intervals must be even and at least 8");
        }
        if self.sieve_limit < 100 {
            return bad("sieve_limit must be at least 100");
        }
        Ok(())
    }

    /// The directory for cached tables.
    pub fn data_dir(&self) -> PathBuf {
        if let Some(dir) = std::env::var_os("CRITICAL_STRIP_DATA") {
            return dir.into();
        }
        self.data_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("critical-strip"))
    }
}
