//! Tables on disk: prime lists, zeros, roots and transform grids.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use critical_strip_core::primes::{sieve_primes, PrimeTable};
use critical_strip_core::rh::RootRecord;
use critical_strip_core::zeros::ZeroRecord;
use num_complex::Complex64;

use crate::error::{io_err, HarnessError, Result};

fn format_err(path: &Path, message: impl Into<String>) -> HarnessError {
    HarnessError::Format { path: path.into(), message: message.into() }
}

/// Writes `limit=<N>` followed by one prime per line.
pub fn write_prime_table(table: &PrimeTable, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let mut go = || -> std::io::Result<()> {
        writeln!(w, "limit={}", table.limit())?;
        for p in table.primes() {
            writeln!(w, "{p}")?;
        }
        w.flush()
    };
    go().map_err(io_err(path))
}

pub fn read_prime_table(path: &Path) -> Result<PrimeTable> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| format_err(path, "empty prime table"))?
        .map_err(io_err(path))?;
    let limit: u64 = header
        .strip_prefix("limit=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| format_err(path, "missing `limit=<N>` header"))?;
    let mut primes = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let p = line
            .trim()
            .parse()
            .map_err(|_| format_err(path, format!("line {}: not an integer", i + 2)))?;
        primes.push(p);
    }
    PrimeTable::from_parts(limit, primes).map_err(|e| format_err(path, e.to_string()))
}

pub fn prime_cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes-{limit}.txt"))
}

/// The cached table if present and valid, otherwise a fresh sieve that is
/// written back to the cache (best effort).
pub fn cached_primes(dir: &Path, limit: u64) -> Result<PrimeTable> {
    let path = prime_cache_path(dir, limit);
    if path.exists() {
        if let Ok(t) = read_prime_table(&path) {
            return Ok(t);
        }
    }
    let table = sieve_primes(limit)?;
    if fs::create_dir_all(dir).is_ok() {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if write_prime_table(&table, &tmp).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(table)
}

pub fn zeros_csv(zeros: &[ZeroRecord]) -> String {
    let mut s = String::from("index,ordinate,bracket_lo,bracket_hi,multiplicity,residual\n");
    for (i, z) in zeros.iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{:.16e},{:.16e},{:.16e},{},{:.16e}",
            i + 1,
            z.ordinate,
            z.bracket.0,
            z.bracket.1,
            z.multiplicity,
            z.residual
        );
    }
    s
}

pub fn roots_csv(roots: &[RootRecord]) -> String {
    let mut s = String::from("family,n,beta,phi,t_re,t_im,residual,dbeta_da,dphi_da\n");
    for r in roots {
        let _ = writeln!(
            s,
            "{:?},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.family, r.n, r.beta, r.phi, r.t.re, r.t.im, r.residual, r.dbeta_da, r.dphi_da
        );
    }
    s
}

/// One transform sample: k, value and a free-form tag (I, J, F, …).
#[derive(Debug, Clone, PartialEq)]
pub struct TransformRow {
    pub k: Complex64,
    pub value: Complex64,
    pub tag: String,
}

pub fn transforms_csv(rows: &[TransformRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k_re", "k_im", "value_re", "value_im", "tag"])?;
    for r in rows {
        w.write_record([
            format!("{:.16e}", r.k.re),
            format!("{:.16e}", r.k.im),
            format!("{:.16e}", r.value.re),
            format!("{:.16e}", r.value.im),
            r.tag.clone(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(io_err(parent))?;
        }
    }
    fs::write(path, text).map_err(io_err(path))
}
