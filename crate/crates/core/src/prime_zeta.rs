//! The prime zeta function P(s) by direct summation and by Möbius
//! continuation, Chernoff's pseudo-zeta C(s), and the Q_m / F_m system.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Error, Result};
use crate::point::check_finite;
use crate::primes::{mobius, mobius_table, sieve_primes, PrimeTable};
use crate::zeta::{self, EvalOptions, Exclusions};

/// How tails of truncated series are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailBoundMode {
    /// Closed-form majorants.
    Analytic,
    /// Difference between the cutoff and half the cutoff.
    Doubling,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Outer cutoff n ≤ nmax of the Möbius series.
    pub mobius_nmax: usize,
    pub tail_bound_mode: TailBoundMode,
    /// Primes up to this cutoff are treated exactly inside Q_m tails.
    pub prime_cutoff: u64,
    /// Tail size above which a cutoff warning is raised.
    pub tolerance: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            mobius_nmax: 64,
            tail_bound_mode: TailBoundMode::Analytic,
            prime_cutoff: 100,
            tolerance: 1e-10,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        if self.mobius_nmax < 8 {
            return Err(precondition("mobius_nmax must be at least 8"));
        }
        if self.prime_cutoff < 17 {
            return Err(precondition("prime_cutoff must be at least 17"));
        }
        if !(self.tolerance > 0.0) {
            return Err(precondition("tolerance must be positive"));
        }
        Ok(())
    }

    /// Lowest admissible Re s for the continuation, 0.51 / nmax.
    pub fn delta(&self) -> f64 {
        0.51 / self.mobius_nmax as f64
    }

    pub fn doubled(&self) -> Self {
        Self { mobius_nmax: 2 * self.mobius_nmax, prime_cutoff: 2 * self.prime_cutoff, ..*self }
    }
}

/// A truncated series value with the bound on what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Set when the tail estimate exceeds the requested tolerance.
    pub cutoff_warning: bool,
}

/// Σ_{p>X} p^{−σ} ≤ 1.25506 σ X^{1−σ} / ((σ−1) ln X) for X ≥ 17, σ > 1,
/// from π(x) ≤ 1.25506 x / ln x.
pub fn prime_tail_bound(sigma: f64, x: f64) -> f64 {
    if sigma <= 1.0 {
        return f64::INFINITY;
    }
    1.255_06 * sigma * x.powf(1.0 - sigma) / ((sigma - 1.0) * x.ln())
}

fn sum_prime_powers(s: Complex64, primes: &[u64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    // smallest terms first
    for &p in primes.iter().rev() {
        acc += (-s * (p as f64).ln()).exp();
    }
    acc
}

/// Σ_{p ≤ limit} p^{−s}; errors unless the analytic tail bound is within
/// `tolerance`.
pub fn prime_zeta_sum(s: Complex64, table: &PrimeTable, tolerance: f64) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    if s.re <= 1.0 {
        return Err(Error::Divergent(s.re));
    }
    let bound = prime_tail_bound(s.re, table.limit().max(17) as f64);
    if bound > tolerance {
        return Err(Error::InsufficientTable { limit: table.limit(), tolerance });
    }
    Ok(SeriesValue {
        value: sum_prime_powers(s, table.primes()),
        tail_bound: bound,
        cutoff_warning: false,
    })
}

/// P(s) for Re s > 1 from the table.
///
/// When the analytic bound on the dropped primes exceeds `tolerance`, the
/// remainder Σ_{p>X} p^{−s} is recovered from the restricted Euler product
/// ln ζ_X(z) = ln ζ(z) + Σ_{p≤X} ln(1 − p^{−z}) by Möbius inversion,
/// P_{>X}(s) = Σ_j μ(j)/j · ln ζ_X(js).
pub fn prime_zeta_direct(s: Complex64, table: &PrimeTable, tolerance: f64) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    if s.re <= 1.0 {
        return Err(Error::Divergent(s.re));
    }
    let x = table.limit().max(17) as f64;
    let bound = prime_tail_bound(s.re, x);
    let head = sum_prime_powers(s, table.primes());
    if bound <= tolerance {
        return Ok(SeriesValue { value: head, tail_bound: bound, cutoff_warning: false });
    }
    let rest = prime_zeta_above(s, table.primes(), x, 256)?;
    Ok(SeriesValue { value: head + rest.value, tail_bound: rest.tail_bound, cutoff_warning: false })
}

/// ln ζ(z) + Σ_{p ≤ X} ln(1 − p^{−z}) for Re z > 1.
fn restricted_log_zeta(z: Complex64, primes: &[u64]) -> Result<Complex64> {
    let opts = EvalOptions::default();
    let mut acc = zeta::log_zeta(z, &Exclusions::default(), opts)?;
    for &p in primes.iter().rev() {
        let w = (-z * (p as f64).ln()).exp();
        acc += (-w).ln_1p_c();
    }
    Ok(acc)
}

trait Ln1p {
    fn ln_1p_c(self) -> Self;
}

impl Ln1p for Complex64 {
    /// ln(1 + w) without cancellation for small |w|.
    fn ln_1p_c(self) -> Self {
        let w = self;
        if w.norm() < 1e-4 {
            // w − w²/2 + w³/3 − w⁴/4
            let w2 = w * w;
            w - w2 * 0.5 + w2 * w / 3.0 - w2 * w2 * 0.25
        } else {
            (w + 1.0).ln()
        }
    }
}

/// Σ_{p > X} p^{−s} with `primes` the complete list up to X.
fn prime_zeta_above(s: Complex64, primes: &[u64], x: f64, jmax: usize) -> Result<SeriesValue> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for j in 1..=jmax {
        let sigma = j as f64 * s.re;
        let b = prime_tail_bound(sigma, x);
        if b < 1e-18 {
            tail = b;
            break;
        }
        let mu = mobius(j as u64);
        if mu != 0 {
            let lz = restricted_log_zeta(s * j as f64, primes)?;
            acc += lz * (mu as f64 / j as f64);
        }
        tail = b;
    }
    // eval_zeta error and rounding of the restricted sum
    Ok(SeriesValue { value: acc, tail_bound: tail + 1e-13, cutoff_warning: false })
}

/// ln ζ(x) ≤ ζ(x) − 1 ≤ 2^{−x}(1 + 2/(x−1)) for real x > 1.
fn log_zeta_majorant(x: f64) -> f64 {
    if x <= 1.0 {
        return f64::INFINITY;
    }
    (-x * core::f64::consts::LN_2).exp() * (1.0 + 2.0 / (x - 1.0))
}

/// P(s) = Σ_{n ≤ nmax} μ(n)/n · ln ζ(ns), valid for Re s > δ with the
/// standard branch of ln ζ supplied by `book`.
pub fn prime_zeta_continued(
    s: Complex64,
    policy: &TruncationPolicy,
    book: &BranchBook,
) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    policy.validate()?;
    if !(s.re > policy.delta()) {
        return Err(precondition("Re s must exceed 0.51 / mobius_nmax"));
    }
    let nmax = policy.mobius_nmax;
    let mu = mobius_table(nmax);
    let opts = EvalOptions::default();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut half = acc;
    for n in 1..=nmax {
        if mu[n] != 0 {
            let l = book.log_zeta(s * n as f64, opts)?;
            acc += l * (mu[n] as f64 / n as f64);
        }
        if n == nmax / 2 {
            half = acc;
        }
    }
    let tail_bound = match policy.tail_bound_mode {
        TailBoundMode::Analytic => {
            let mut b = 0.0;
            let mut n = nmax + 1;
            loop {
                let t = log_zeta_majorant(n as f64 * s.re) / n as f64;
                b += t;
                if !b.is_finite() || t < 1e-20 || n > 64 * nmax {
                    break;
                }
                n += 1;
            }
            b
        }
        TailBoundMode::Doubling => (acc - half).norm(),
    };
    Ok(SeriesValue { value: acc, tail_bound, cutoff_warning: !(tail_bound <= policy.tolerance) })
}

/// Chernoff's pseudo-zeta C(s) = Π_{n≥2} (1 − (n ln n)^{−s})^{−1}, Re s > 1.
pub fn chernoff_c(s: Complex64, cutoff: usize) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    if s.re <= 1.0 {
        return Err(Error::Divergent(s.re));
    }
    if cutoff < 2 {
        return Err(precondition("cutoff must be at least 2"));
    }
    let mut log = Complex64::new(0.0, 0.0);
    for n in (2..=cutoff).rev() {
        let nf = n as f64;
        let w = (-s * (nf * nf.ln()).ln()).exp();
        log -= (-w).ln_1p_c();
    }
    // |ln(1−w)| ≤ 2|w| for |w| ≤ 1/2 and Σ_{n>N} (n ln n)^{−σ} ≤
    // ∫_N^∞ (x ln x)^{−σ} dx ≤ N^{1−σ} / ((σ−1) (ln N)^σ)
    let nf = cutoff as f64;
    let tail = 2.0 * nf.powf(1.0 - s.re) / ((s.re - 1.0) * nf.ln().powf(s.re));
    Ok(SeriesValue { value: log.exp(), tail_bound: tail * log.exp().norm() * 1.01, cutoff_warning: false })
}

/// Zero ordinates that fix the standard branch of ln ζ and the sheet on
/// which the reflected logarithm must be taken.
///
/// Continuing ln ζ horizontally from Re = 2 to s and to 1 − s gives
/// ln ζ(s) − ln ζ(1−s) − F(s) = 2πi · sgn(t) · (N(|t|) − 1) with N(T) the
/// number of zeros with ordinate in (0, T).
#[derive(Debug, Clone, PartialEq)]
pub struct BranchBook {
    ordinates: Vec<f64>,
    complete_to: f64,
    exclusions: Exclusions,
}

impl BranchBook {
    /// `ordinates` must be all positive zero ordinates below `complete_to`.
    pub fn new(mut ordinates: Vec<f64>, complete_to: f64, margin: f64) -> Result<Self> {
        if ordinates.iter().any(|g| !(*g > 0.0) || !g.is_finite()) {
            return Err(precondition("zero ordinates must be positive and finite"));
        }
        ordinates.sort_by(f64::total_cmp);
        let exclusions = Exclusions::with_zero_ordinates(&ordinates, margin);
        Ok(Self { ordinates, complete_to, exclusions })
    }

    /// A book for heights below the first zero.
    pub fn below_first_zero() -> Self {
        Self { ordinates: Vec::new(), complete_to: 14.0, exclusions: Exclusions::default() }
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn complete_to(&self) -> f64 {
        self.complete_to
    }

    pub fn exclusions(&self) -> &Exclusions {
        &self.exclusions
    }

    pub fn zero_count_below(&self, t: f64) -> Result<usize> {
        if t.abs() > self.complete_to {
            return Err(precondition("branch book does not cover this height"));
        }
        Ok(self.ordinates.partition_point(|&g| g < t.abs()))
    }

    /// Integer k with ln ζ(s) − ln ζ(1−s) − F(s) = 2πik on standard branches.
    pub fn sheet(&self, s: Complex64) -> Result<i64> {
        if s.im == 0.0 {
            return Ok(0);
        }
        let n = self.zero_count_below(s.im)? as i64;
        Ok(if s.im > 0.0 { n - 1 } else { 1 - n })
    }

    /// Standard branch of ln ζ(s).
    pub fn log_zeta(&self, s: Complex64, opts: EvalOptions) -> Result<Complex64> {
        if s.re < 1.05 && s.im.abs() > self.complete_to {
            return Err(precondition("branch book does not cover this height"));
        }
        zeta::log_zeta(s, &self.exclusions, opts)
    }
}

/// Σ_{n≥m} w^n / n for |w| < 1.
fn log_tail_series(w: Complex64, m: usize) -> Complex64 {
    let r = w.norm();
    if r > 0.9 {
        let mut head = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for n in 1..m {
            pw *= w;
            head += pw / n as f64;
        }
        return -(-w).ln_1p_c() - head;
    }
    let mut pw = w.powu(m as u32);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut n = m;
    loop {
        let term = pw / n as f64;
        acc += term;
        if term.norm() < 1e-19 * (1.0 + acc.norm()) {
            break;
        }
        pw *= w;
        n += 1;
    }
    acc
}

/// Σ_{n ≥ m} P(ns)/n for Re s > 1/m.
///
/// Primes up to the policy cutoff X contribute Σ_{n≥m} p^{−ns}/n exactly;
/// the rest is Σ_{n≥m} P_{>X}(ns)/n through the restricted Euler product.
pub fn prime_zeta_tail(s: Complex64, m: usize, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    policy.validate()?;
    if m == 0 {
        return Err(precondition("m must be positive"));
    }
    if !(s.re > 1.0 / m as f64 + policy.delta()) {
        return Err(precondition("Re s must exceed 1/m + delta"));
    }
    let x = policy.prime_cutoff;
    let table = sieve_primes(x)?;
    let xf = x as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for &p in table.primes() {
        let w = (-s * (p as f64).ln()).exp();
        acc += log_tail_series(w, m);
    }
    let mut tail = 0.0;
    let mut n = m;
    let cap = m + policy.mobius_nmax;
    loop {
        let sigma = n as f64 * s.re;
        let b = prime_tail_bound(sigma, xf) / n as f64;
        if b < 1e-18 {
            // Σ_{n'≥n} of the same majorant is geometric with ratio ≤ X^{−Re s}
            tail += b / (1.0 - xf.powf(-s.re)).max(1e-3);
            break;
        }
        if n >= cap {
            tail += b / (1.0 - xf.powf(-s.re)).max(1e-3);
            break;
        }
        let jmax = policy.mobius_nmax;
        let above = prime_zeta_above(s * n as f64, table.primes(), xf, jmax)?;
        acc += above.value / n as f64;
        tail += 1e-13 / n as f64;
        n += 1;
    }
    Ok(SeriesValue { value: acc, tail_bound: tail, cutoff_warning: !(tail <= policy.tolerance) })
}

/// Q_m(s) = ln ζ(s) − Σ_{n≥m} P(ns)/n on the standard branch.
pub fn q_m(s: Complex64, m: usize, policy: &TruncationPolicy, book: &BranchBook) -> Result<SeriesValue> {
    let tail = prime_zeta_tail(s, m, policy)?;
    let l = book.log_zeta(s, EvalOptions::default())?;
    Ok(SeriesValue { value: l - tail.value, ..tail })
}

/// Q_m(1 − s) taken on the sheet that makes the reflection identity hold
/// at s: the standard branch shifted by 2πi times [`BranchBook::sheet`].
pub fn q_m_reflected(
    s: Complex64,
    m: usize,
    policy: &TruncationPolicy,
    book: &BranchBook,
) -> Result<SeriesValue> {
    let q = q_m(1.0 - s, m, policy, book)?;
    let k = book.sheet(s)? as f64;
    Ok(SeriesValue { value: q.value + Complex64::new(0.0, 2.0 * PI * k), ..q })
}

fn check_fm_strip(s: Complex64, m: usize) -> Result<()> {
    if m == 0 {
        return Err(precondition("m must be positive"));
    }
    let e = 2.0 / m as f64;
    if !(s.re > e && s.re < 1.0 - e) {
        return Err(precondition("F_m needs 2/m < Re s < 1 - 2/m"));
    }
    Ok(())
}

/// F_m(s) = F(s) − Σ_{n≥m} P(ns)/n + Σ_{n≥m} P(n(1−s))/n.
pub fn f_m(s: Complex64, m: usize, policy: &TruncationPolicy) -> Result<SeriesValue> {
    let s = check_finite(s)?;
    check_fm_strip(s, m)?;
    let f = zeta::f_factor(s, 2.0 / m as f64)?;
    let a = prime_zeta_tail(s, m, policy)?;
    let b = prime_zeta_tail(1.0 - s, m, policy)?;
    let tail_bound = a.tail_bound + b.tail_bound;
    Ok(SeriesValue {
        value: f - a.value + b.value,
        tail_bound,
        cutoff_warning: a.cutoff_warning || b.cutoff_warning,
    })
}

/// |Q_m(s) − Q_m(1−s) − F_m(s)| with the sheet bookkeeping of
/// [`q_m_reflected`].
pub fn reflection_residual(
    s: Complex64,
    m: usize,
    policy: &TruncationPolicy,
    book: &BranchBook,
) -> Result<f64> {
    let s = check_finite(s)?;
    check_fm_strip(s, m)?;
    let q = q_m(s, m, policy, book)?;
    let qr = q_m_reflected(s, m, policy, book)?;
    let f = f_m(s, m, policy)?;
    Ok((q.value - qr.value - f.value).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    const P2: f64 = 0.452_247_420_041_065_5;

    fn book() -> BranchBook {
        let zeros = alloc::vec![
            14.134_725_141_734_694,
            21.022_039_638_771_555,
            25.010_857_580_145_689,
            30.424_876_125_859_513,
            32.935_061_587_739_19,
            37.586_178_158_825_671,
            40.918_719_012_147_495,
            43.327_073_280_914_999,
            48.005_150_881_167_16,
            49.773_832_477_672_302,
        ];
        BranchBook::new(zeros, 50.0, 0.05).unwrap()
    }

    #[test]
    fn direct_route_small_table() {
        let table = sieve_primes(10_000).unwrap();
        let v = prime_zeta_direct(Complex64::new(2.0, 0.0), &table, 1e-12).unwrap();
        assert!((v.value.re - P2).abs() < 1e-12, "{v:?}");
        assert!(matches!(
            prime_zeta_sum(Complex64::new(2.0, 0.0), &table, 1e-12),
            Err(Error::InsufficientTable { .. })
        ));
        assert!(matches!(
            prime_zeta_direct(Complex64::new(1.0, 0.0), &table, 1e-8),
            Err(Error::Divergent(_))
        ));
        let p4 = prime_zeta_direct(Complex64::new(4.0, 0.0), &table, 1e-12).unwrap();
        assert!(p4.value.re < 0.082_323_233_711_138_2);
    }

    #[test]
    fn continued_matches_reference() {
        let b = book();
        let pol = TruncationPolicy::default();
        let v = prime_zeta_continued(Complex64::new(2.0, 0.0), &pol, &b).unwrap();
        assert!((v.value.re - P2).abs() < 1e-13);
        assert!(!v.cutoff_warning);
        let w = prime_zeta_continued(Complex64::new(2.0, 3.0), &pol, &b).unwrap();
        let r = Complex64::new(-0.208_651_587_960_591_83, -0.166_289_878_574_685_23);
        assert!((w.value - r).norm() < 1e-12);
    }

    #[test]
    fn continued_in_strip_is_stable() {
        let b = book();
        let pol = TruncationPolicy::default();
        let s = Complex64::new(0.75, 0.0);
        let a = prime_zeta_continued(s, &pol, &b).unwrap();
        let c = prime_zeta_continued(s, &pol.doubled(), &b).unwrap();
        assert!((a.value - c.value).norm() < 1e-8);
        assert!(a.value.is_finite());
        let low = TruncationPolicy { mobius_nmax: 8, ..pol };
        assert!(prime_zeta_continued(Complex64::new(0.05, 0.0), &low, &b).is_err());
    }

    #[test]
    fn telescoping() {
        let b = book();
        let pol = TruncationPolicy::default();
        let s = Complex64::new(2.0, 0.0);
        assert!(q_m(s, 1, &pol, &b).unwrap().value.norm() < 1e-10);
        assert!((q_m(s, 2, &pol, &b).unwrap().value.re - P2).abs() < 1e-9);
    }

    #[test]
    fn chernoff_values() {
        let a = chernoff_c(Complex64::new(3.0, 0.0), 4000).unwrap();
        let b = chernoff_c(Complex64::new(3.0, 0.0), 8000).unwrap();
        assert!((a.value - b.value).norm() < 1e-9);
        assert!(a.tail_bound < 1e-7);
        assert!(chernoff_c(Complex64::new(2.0, 0.0), 1000).unwrap().value.re > 1.0);
        assert!(matches!(chernoff_c(Complex64::new(1.0, 0.0), 100), Err(Error::Divergent(_))));
    }

    #[test]
    fn sheets() {
        let b = book();
        assert_eq!(b.sheet(Complex64::new(0.6, 14.0)).unwrap(), -1);
        assert_eq!(b.sheet(Complex64::new(0.6, 15.0)).unwrap(), 0);
        assert_eq!(b.sheet(Complex64::new(0.3, 30.0)).unwrap(), 2);
        assert_eq!(b.sheet(Complex64::new(0.6, -14.0)).unwrap(), 1);
        assert!(b.sheet(Complex64::new(0.6, 60.0)).is_err());
    }

    #[test]
    fn reflection_examples() {
        let b = book();
        let pol = TruncationPolicy::default();
        let r = reflection_residual(Complex64::new(0.6, 14.0), 40, &pol, &b).unwrap();
        assert!(r < 1e-8, "{r}");
        let r = reflection_residual(Complex64::new(0.5, 20.0), 40, &pol, &b).unwrap();
        assert!(r < 1e-8, "{r}");
        let r = reflection_residual(Complex64::new(0.3, 30.0), 40, &pol, &b).unwrap();
        assert!(r < 1e-7, "{r}");
        let s = Complex64::new(0.5, 20.0);
        let sum = f_m(s, 40, &pol).unwrap().value + f_m(1.0 - s, 40, &pol).unwrap().value;
        assert!(sum.norm() < 1e-9);
        assert!(f_m(Complex64::new(1.0 / 40.0, 5.0), 40, &pol).is_err());
    }

    #[test]
    fn tail_series_forms_agree() {
        let w = Complex64::new(0.85, 0.2);
        let direct = {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut pw = w.powu(5);
            for n in 5..2000 {
                acc += pw / n as f64;
                pw *= w;
            }
            acc
        };
        assert!((log_tail_series(w, 5) - direct).norm() < 1e-13);
    }
}
