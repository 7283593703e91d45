//! ζ(s) by Euler–Maclaurin summation, the completed zeta, continuous
//! branches of ln ζ and the reflection factor F(s).

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, precondition, Error, Result};
use crate::point::{check_finite, ComplexPoint};
use crate::quad;
use crate::special::{self, BERNOULLI_OVER_FACTORIAL};

/// Accuracy controls for [`eval_zeta`].
///
/// `target_abs_error` bounds the Euler–Maclaurin truncation error; the
/// floating-point rounding of the partial sum (a few ulps times the number
/// of terms) comes on top of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub target_abs_error: f64,
    pub max_terms: usize,
    pub em_order: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { target_abs_error: 1e-14, max_terms: 10_000, em_order: 30 }
    }
}

impl EvalOptions {
    pub fn new(target_abs_error: f64, max_terms: usize, em_order: usize) -> Result<Self> {
        if !(target_abs_error >= 1e-14) || !target_abs_error.is_finite() {
            return Err(precondition("target_abs_error must be finite and at least 1e-14"));
        }
        if max_terms < 16 {
            return Err(precondition("max_terms must be at least 16"));
        }
        if em_order == 0 || em_order > BERNOULLI_OVER_FACTORIAL.len() {
            return Err(precondition("em_order must lie in 1..=30"));
        }
        Ok(Self { target_abs_error, max_terms, em_order })
    }
}

/// ζ(s) for s ≠ 1.
///
/// The cutoff starts at N = 10 + ⌈|s|/2⌉ and doubles until the
/// Euler–Maclaurin remainder bound drops below the target.
pub fn eval_zeta(s: impl Into<Complex64>, opts: EvalOptions) -> Result<Complex64> {
    let s = check_finite(s.into())?;
    if s.re == 1.0 && s.im == 0.0 {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    let mut n = 10 + (0.5 * s.norm()).ceil() as usize;
    loop {
        if n > opts.max_terms {
            return Err(Error::AccuracyNotReached {
                target: opts.target_abs_error,
                max_terms: opts.max_terms,
            });
        }
        if let Some(v) = euler_maclaurin(s, n, opts) {
            return Ok(v);
        }
        n *= 2;
    }
}

fn euler_maclaurin(s: Complex64, n: usize, opts: EvalOptions) -> Option<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..n {
        acc += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let n_pow = (-s * nf.ln()).exp();
    acc += n_pow * nf / (s - 1.0) + n_pow * 0.5;

    let order = opts.em_order.min(BERNOULLI_OVER_FACTORIAL.len());
    let inv_n2 = 1.0 / (nf * nf);
    // term_k = B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut power = n_pow / nf;
    let mut term = rising * power * BERNOULLI_OVER_FACTORIAL[0];
    acc += term;
    for k in 1..order {
        let a = s + (2 * k - 1) as f64;
        let b = s + (2 * k) as f64;
        rising *= a * b;
        power *= inv_n2;
        let next = rising * power * BERNOULLI_OVER_FACTORIAL[k];
        // the remainder after `term` is at most |next|·|s+2k+1|/(σ+2k+1)
        let denom = s.re + (2 * k + 1) as f64;
        if denom > 0.0 {
            let bound = next.norm() * (s + (2 * k + 1) as f64).norm() / denom;
            if bound < opts.target_abs_error {
                return Some(acc);
            }
        }
        if next.norm() > term.norm() {
            return None;
        }
        acc += next;
        term = next;
    }
    None
}

/// Principal log Γ(s), continuous off the nonpositive real axis.
pub fn eval_log_gamma(s: impl Into<Complex64>) -> Result<Complex64> {
    special::log_gamma(s.into())
}

/// θ(x) = Σ_{n≥1} exp(−πn²x).
pub fn theta_sum(x: f64) -> Result<f64> {
    special::theta_sum(x)
}

/// π^{−s/2} Γ(s/2) ζ(s) computed along two independent routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedZeta {
    /// From [`eval_zeta`] and [`eval_log_gamma`].
    pub direct: Complex64,
    /// From 1/(s(s−1)) + ∫_1^∞ (x^{s/2−1} + x^{−(1+s)/2}) θ(x) dx.
    pub integral: Complex64,
    /// Quadrature error estimate plus the truncated tail bound.
    pub integral_error: f64,
}

impl CompletedZeta {
    pub fn discrepancy(&self) -> f64 {
        (self.direct - self.integral).norm()
    }
}

fn check_completed_poles(s: Complex64) -> Result<()> {
    if s.im == 0.0 && (s.re == 0.0 || s.re == 1.0) {
        return Err(Error::Pole { re: s.re, im: 0.0 });
    }
    Ok(())
}

fn completed_direct(s: Complex64, opts: EvalOptions) -> Result<Complex64> {
    let factor = (special::log_gamma(s * 0.5)? - s * 0.5 * PI.ln()).exp();
    Ok(factor * eval_zeta(s, opts)?)
}

pub fn completed_zeta(s: impl Into<Complex64>) -> Result<CompletedZeta> {
    let s = check_finite(s.into())?;
    check_completed_poles(s)?;
    let direct = completed_direct(s, EvalOptions::default())?;

    let a = s * 0.5 - 1.0;
    let b = -(s + 1.0) * 0.5;
    // beyond X the integrand is below x^{p} e^{−πx} with p = max exponent
    let p = a.re.max(b.re);
    let mut upper = 8.0_f64;
    while 2.0 * upper.powf(p) * (-PI * upper).exp() / PI > 1e-17 {
        upper += 1.0;
    }
    let tail = 2.0 * upper.powf(p) * (-PI * upper).exp() / PI * 1.01;
    let q = quad::adaptive(1.0, upper, 1e-13, 40, |x: f64| {
        let lx = x.ln();
        let th = special::theta_sum(x).unwrap_or(0.0);
        ((a * lx).exp() + (b * lx).exp()) * th
    });
    let integral = (s * (s - 1.0)).inv() + q.value;
    Ok(CompletedZeta { direct, integral, integral_error: q.error_estimate + tail })
}

/// |Λ(s) − Λ(1−s)| / (1 + |Λ(s)|) with Λ(s) = π^{−s/2}Γ(s/2)ζ(s).
pub fn functional_equation_residual(s: impl Into<Complex64>) -> Result<f64> {
    let s = check_finite(s.into())?;
    check_completed_poles(s)?;
    let opts = EvalOptions::default();
    let left = completed_direct(s, opts)?;
    let right = completed_direct(1.0 - s, opts)?;
    Ok((left - right).norm() / (1.0 + left.norm()))
}

/// Riemann–Siegel θ(t) = Im ln Γ(1/4 + it/2) − (t/2) ln π.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    let lg = special::log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * PI.ln())
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(1/2 + it), real for real t.
pub fn hardy_z(t: f64, opts: EvalOptions) -> Result<f64> {
    let theta = riemann_siegel_theta(t)?;
    let z = eval_zeta(Complex64::new(0.5, t), opts)?;
    Ok((Complex64::from_polar(1.0, theta) * z).re)
}

/// Points a branch path must keep away from, as half-width `margin` boxes.
/// The pole s = 1 is always excluded.
#[derive(Debug, Clone, PartialEq)]
pub struct Exclusions {
    points: Vec<Complex64>,
    margin: f64,
}

impl Default for Exclusions {
    fn default() -> Self {
        Self::new(0.05)
    }
}

impl Exclusions {
    pub fn new(margin: f64) -> Self {
        Self { points: alloc::vec![Complex64::new(1.0, 0.0)], margin }
    }

    /// Excludes 1/2 ± iγ for every ordinate γ.
    pub fn with_zero_ordinates(ordinates: &[f64], margin: f64) -> Self {
        let mut e = Self::new(margin);
        for &g in ordinates {
            e.push(Complex64::new(0.5, g));
            e.push(Complex64::new(0.5, -g));
        }
        e
    }

    pub fn push(&mut self, p: Complex64) {
        self.points.push(p);
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    fn check_segment(&self, a: Complex64, b: Complex64) -> Result<()> {
        for p in &self.points {
            if segment_meets_box(a, b, *p, self.margin) {
                return Err(Error::TooCloseToZero { re: p.re, im: p.im, margin: self.margin });
            }
        }
        Ok(())
    }
}

/// Liang–Barsky clip of the segment a→b against the open box |z − c|∞ < r.
fn segment_meets_box(a: Complex64, b: Complex64, c: Complex64, r: f64) -> bool {
    let d = b - a;
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    for (p0, dp, c0) in [(a.re, d.re, c.re), (a.im, d.im, c.im)] {
        let (min, max) = (c0 - r, c0 + r);
        if dp == 0.0 {
            if p0 <= min || p0 >= max {
                return false;
            }
        } else {
            let mut t0 = (min - p0) / dp;
            let mut t1 = (max - p0) / dp;
            if t0 > t1 {
                core::mem::swap(&mut t0, &mut t1);
            }
            lo = lo.max(t0);
            hi = hi.min(t1);
            if lo >= hi {
                return false;
            }
        }
    }
    lo < hi
}

/// Path along which ln ζ is continued from its principal value at the
/// anchor.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchPath {
    pub anchor: ComplexPoint,
    pub waypoints: Vec<ComplexPoint>,
    pub step_cap: f64,
    pub exclusions: Exclusions,
}

/// Largest phase change tolerated between consecutive waypoints.
pub const PHASE_STEP_CAP: f64 = PI / 2.0;

/// Default spacing of waypoints produced by the path builders.
pub const DEFAULT_SPACING: f64 = 0.01;

impl BranchPath {
    pub fn new(
        anchor: ComplexPoint,
        waypoints: Vec<ComplexPoint>,
        step_cap: f64,
        exclusions: Exclusions,
    ) -> Result<Self> {
        if !(step_cap > 0.0) {
            return Err(precondition("step_cap must be positive"));
        }
        let mut prev = anchor.value();
        for w in &waypoints {
            if (w.value() - prev).norm() >= step_cap {
                return Err(precondition("consecutive waypoints must be closer than step_cap"));
            }
            prev = w.value();
        }
        Ok(Self { anchor, waypoints, step_cap, exclusions })
    }

    /// Polyline through `corners` (the first is the anchor), subdivided so
    /// that waypoints are at most `spacing` apart.
    pub fn polyline(corners: &[Complex64], spacing: f64, exclusions: Exclusions) -> Result<Self> {
        let Some((&first, rest)) = corners.split_first() else {
            return Err(precondition("a path needs at least an anchor"));
        };
        if !(spacing > 0.0) {
            return Err(precondition("spacing must be positive"));
        }
        let anchor = ComplexPoint::try_from(first)?;
        let mut waypoints = Vec::new();
        let mut prev = first;
        for &c in rest {
            let len = (c - prev).norm();
            let pieces = ((len / spacing).ceil() as usize).max(1);
            for j in 1..=pieces {
                let z = prev + (c - prev) * (j as f64 / pieces as f64);
                waypoints.push(ComplexPoint::try_from(z)?);
            }
            prev = c;
        }
        Self::new(anchor, waypoints, spacing * 1.5, exclusions)
    }

    /// Standard path to `s`: horizontal from 2 + i·Im s. When the horizontal
    /// line would pass the pole, the path detours around it at height ±1/2
    /// on the side of Im s (above for real s).
    pub fn standard(s: Complex64, spacing: f64, exclusions: Exclusions) -> Result<Self> {
        let s = check_finite(s)?;
        let anchor = Complex64::new(2.0, s.im);
        let lift = if s.im < 0.0 { -0.5 } else { 0.5 };
        if s.im.abs() < lift.abs() && s.re < 1.0 + exclusions.margin {
            let up = Complex64::new(2.0, lift);
            let over = Complex64::new(s.re, lift);
            Self::polyline(&[anchor, up, over, s], spacing, exclusions)
        } else {
            Self::polyline(&[anchor, s], spacing, exclusions)
        }
    }

    pub fn endpoint(&self) -> ComplexPoint {
        self.waypoints.last().copied().unwrap_or(self.anchor)
    }
}

/// Continuous branch of ln ζ along `path`, starting from the principal
/// value at the anchor.
pub fn log_zeta_tracked(path: &BranchPath, opts: EvalOptions) -> Result<Complex64> {
    let mut prev_point = path.anchor.value();
    if prev_point.re < 1.05 {
        return Err(precondition("anchor must lie in Re s >= 1.05"));
    }
    path.exclusions.check_segment(prev_point, prev_point)?;
    let mut z = eval_zeta(prev_point, opts)?;
    let mut log = z.ln();
    for (index, w) in path.waypoints.iter().enumerate() {
        let w = w.value();
        if (w - prev_point).norm() >= path.step_cap {
            return Err(precondition("consecutive waypoints must be closer than step_cap"));
        }
        path.exclusions.check_segment(prev_point, w)?;
        let next = eval_zeta(w, opts)?;
        if next == Complex64::new(0.0, 0.0) {
            return Err(Error::TooCloseToZero { re: w.re, im: w.im, margin: 0.0 });
        }
        let jump = (next / z).arg();
        if jump.abs() > PHASE_STEP_CAP {
            return Err(Error::StepCap { index, jump });
        }
        log = Complex64::new(next.norm().ln(), log.im + jump);
        z = next;
        prev_point = w;
    }
    Ok(log)
}

/// ln ζ(s) on the standard branch: principal for Re s ≥ 1.05, where the
/// log-Euler series keeps |Im ln ζ| < π, and continued along
/// [`BranchPath::standard`] elsewhere.
pub fn log_zeta(s: Complex64, exclusions: &Exclusions, opts: EvalOptions) -> Result<Complex64> {
    let s = check_finite(s)?;
    if s.re >= 1.05 || (s.im == 0.0 && s.re > 1.0) {
        return Ok(eval_zeta(s, opts)?.ln());
    }
    let path = BranchPath::standard(s, DEFAULT_SPACING, exclusions.clone())?;
    log_zeta_tracked(&path, opts)
}

/// F(s) = (s/2) ln π − ln Γ(s/2) − ((1−s)/2) ln π + ln Γ((1−s)/2), defined
/// on ε < Re s < 1 − ε.
pub fn f_factor(s: impl Into<Complex64>, epsilon: f64) -> Result<Complex64> {
    let s = check_finite(s.into())?;
    if !(epsilon > 0.0) || !(s.re > epsilon && s.re < 1.0 - epsilon) {
        return Err(domain("F(s) needs epsilon > 0 and epsilon < Re s < 1 - epsilon"));
    }
    f_raw(s)
}

fn f_raw(s: Complex64) -> Result<Complex64> {
    let lp = PI.ln();
    let r = 1.0 - s;
    Ok(s * 0.5 * lp - special::log_gamma(s * 0.5)? - r * 0.5 * lp
        + special::log_gamma(r * 0.5)?)
}

/// Axis-aligned box in the strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripBox {
    pub re: (f64, f64),
    pub im: (f64, f64),
}

/// Sup of |F| and of |dF/dτ| (τ = Re s) over a sampled region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorSup {
    pub sup_abs: f64,
    pub sup_dtau: f64,
    pub samples: usize,
}

/// Grid scan of F over the closed boxes with `n_re × n_im` points each;
/// the derivative is a central difference with step 1e-5.
pub fn f_factor_sup(boxes: &[StripBox], n_re: usize, n_im: usize) -> Result<FactorSup> {
    if n_re < 2 || n_im < 2 {
        return Err(precondition("sup scan needs at least 2 points per axis"));
    }
    let h = 1e-5;
    let mut out = FactorSup { sup_abs: 0.0, sup_dtau: 0.0, samples: 0 };
    for b in boxes {
        if !(b.re.0 > 0.0 && b.re.1 < 1.0 && b.re.0 < b.re.1) {
            return Err(domain("box must lie inside the open strip"));
        }
        for i in 0..n_re {
            let x = b.re.0 + (b.re.1 - b.re.0) * i as f64 / (n_re - 1) as f64;
            for j in 0..n_im {
                let y = b.im.0 + (b.im.1 - b.im.0) * j as f64 / (n_im - 1) as f64;
                let s = Complex64::new(x, y);
                let f = f_raw(s)?;
                let d = (f_raw(s + h)? - f_raw(s - h)?) / (2.0 * h);
                if !(f.is_finite() && d.is_finite()) {
                    return Err(Error::NonFinite);
                }
                out.sup_abs = out.sup_abs.max(f.norm());
                out.sup_dtau = out.sup_dtau.max(d.norm());
                out.samples += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA2: f64 = 1.644_934_066_848_226_4;

    #[test]
    fn zeta_two_against_partial_sum_with_tail_bounds() {
        // Σ_{n≤M} n^{-2} + [1/(M+1), 1/M] brackets ζ(2); the bracket midpoint
        // with the next EM correction pins it far beyond 1e-13.
        let m = 100_000u32;
        let mut s = 0.0;
        for n in (1..=m).rev() {
            let n = n as f64;
            s += 1.0 / (n * n);
        }
        let mf = m as f64;
        let lo = s + 1.0 / (mf + 1.0);
        let hi = s + 1.0 / mf;
        let z = eval_zeta(Complex64::new(2.0, 0.0), EvalOptions::default()).unwrap();
        assert!(z.re > lo - 1e-15 && z.re < hi + 1e-15);
        let refined = s + 1.0 / mf - 0.5 / (mf * mf) + 1.0 / (6.0 * mf * mf * mf);
        assert!((z.re - refined).abs() < 1e-14);
        assert!((z.re - ZETA2).abs() < 1e-14);
        assert!(z.im == 0.0);
    }

    #[test]
    fn pole_and_options() {
        let opts = EvalOptions::default();
        assert!(matches!(eval_zeta(Complex64::new(1.0, 0.0), opts), Err(Error::Pole { .. })));
        assert!(EvalOptions::new(1e-15, 100, 10).is_err());
        assert!(EvalOptions::new(1e-12, 8, 10).is_err());
        let tight = EvalOptions { target_abs_error: 1e-14, max_terms: 16, em_order: 2 };
        assert!(matches!(
            eval_zeta(Complex64::new(0.5, 80.0), tight),
            Err(Error::AccuracyNotReached { .. })
        ));
    }

    #[test]
    fn reference_value_in_strip() {
        // mpmath, 30 digits
        let z = eval_zeta(Complex64::new(0.6, 14.0), EvalOptions::default()).unwrap();
        let r = Complex64::new(0.094_290_762_283_310_6, -0.084_203_356_824_352_3);
        assert!((z - r).norm() < 1e-13, "{z}");
        let zc = eval_zeta(Complex64::new(0.6, -14.0), EvalOptions::default()).unwrap();
        assert!((zc - z.conj()).norm() < 1e-14);
    }

    #[test]
    fn trivial_zero_and_negative_axis() {
        let opts = EvalOptions::default();
        let z = eval_zeta(Complex64::new(-1.0, 0.0), opts).unwrap();
        assert!((z.re + 1.0 / 12.0).abs() < 1e-14);
        let z0 = eval_zeta(Complex64::new(0.0, 0.0), opts).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-14);
    }

    #[test]
    fn completed_zeta_routes_agree() {
        let c = completed_zeta(Complex64::new(0.5, 14.0)).unwrap();
        assert!(c.discrepancy() < 1e-8, "{c:?}");
        assert!(c.integral_error < 1e-10);
        let a = completed_zeta(Complex64::new(0.3, 0.0)).unwrap();
        let b = completed_zeta(Complex64::new(0.7, 0.0)).unwrap();
        assert!((a.direct - b.direct).norm() < 1e-12);
        assert!((a.integral - b.integral).norm() < 1e-12);
        assert!(matches!(completed_zeta(Complex64::new(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(completed_zeta(Complex64::new(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn functional_equation_examples() {
        assert!(functional_equation_residual(Complex64::new(0.5, 21.0)).unwrap() < 1e-9);
        assert!(functional_equation_residual(Complex64::new(0.3, 5.0)).unwrap() < 1e-9);
        assert!(functional_equation_residual(Complex64::new(0.9, 40.0)).unwrap() < 1e-8);
    }

    #[test]
    fn siegel_theta_and_hardy_z() {
        // mpmath siegeltheta(1)
        let th = riemann_siegel_theta(1.0).unwrap();
        assert!((th + 1.767_547_952_812_290_4).abs() < 1e-13, "{th}");
        let z = hardy_z(14.134_725_141_734_694, EvalOptions::default()).unwrap();
        assert!(z.abs() < 1e-12);
        let z1 = hardy_z(14.0, EvalOptions::default()).unwrap();
        let z2 = hardy_z(14.3, EvalOptions::default()).unwrap();
        assert!(z1 * z2 < 0.0);
    }

    #[test]
    fn tracked_log_on_anchor_line() {
        let opts = EvalOptions::default();
        let s = Complex64::new(2.0, 7.0);
        let path = BranchPath::polyline(&[Complex64::new(2.0, 0.0), s], 0.05, Exclusions::default())
            .unwrap();
        let l = log_zeta_tracked(&path, opts).unwrap();
        assert!((l - eval_zeta(s, opts).unwrap().ln()).norm() < 1e-13);
    }

    #[test]
    fn tracked_log_round_trip_into_strip() {
        let opts = EvalOptions::default();
        let s = Complex64::new(0.6, 14.1);
        let path = BranchPath::polyline(&[Complex64::new(2.0, 14.1), s], 0.01, Exclusions::default())
            .unwrap();
        let l = log_zeta_tracked(&path, opts).unwrap();
        assert!((l.exp() - eval_zeta(s, opts).unwrap()).norm() < 1e-9);
    }

    #[test]
    fn tracked_log_detours_above_pole() {
        let opts = EvalOptions::default();
        let l = log_zeta(Complex64::new(0.75, 0.0), &Exclusions::default(), opts).unwrap();
        let z = eval_zeta(Complex64::new(0.75, 0.0), opts).unwrap();
        assert!(z.re < 0.0);
        assert!((l.re - z.norm().ln()).abs() < 1e-13);
        assert!((l.im + PI).abs() < 1e-12);
    }

    #[test]
    fn margin_and_step_cap_errors() {
        let opts = EvalOptions::default();
        let ex = Exclusions::with_zero_ordinates(&[14.134_725_141_734_694], 0.05);
        let path = BranchPath::polyline(
            &[Complex64::new(2.0, 14.13), Complex64::new(0.3, 14.13)],
            0.01,
            ex,
        )
        .unwrap();
        assert!(matches!(log_zeta_tracked(&path, opts), Err(Error::TooCloseToZero { .. })));

        // one giant step across the pole's neighbourhood trips the phase cap
        let coarse = BranchPath::new(
            ComplexPoint::new(2.0, 0.2).unwrap(),
            alloc::vec![ComplexPoint::new(0.5, 0.2).unwrap()],
            10.0,
            Exclusions::new(0.05),
        )
        .unwrap();
        assert!(matches!(log_zeta_tracked(&coarse, opts), Err(Error::StepCap { .. })));
        assert!(BranchPath::new(
            ComplexPoint::new(2.0, 0.0).unwrap(),
            alloc::vec![ComplexPoint::new(1.0, 1.0).unwrap()],
            0.5,
            Exclusions::default()
        )
        .is_err());
    }

    #[test]
    fn segment_box_geometry() {
        let c = Complex64::new(0.5, 14.0);
        assert!(segment_meets_box(Complex64::new(2.0, 14.0), Complex64::new(0.0, 14.0), c, 0.05));
        assert!(!segment_meets_box(Complex64::new(2.0, 14.1), Complex64::new(0.0, 14.1), c, 0.05));
        assert!(!segment_meets_box(Complex64::new(2.0, 14.0), Complex64::new(0.6, 14.0), c, 0.05));
    }

    #[test]
    fn f_factor_examples() {
        assert!(f_factor(Complex64::new(0.5, 0.0), 0.01).unwrap().norm() < 1e-15);
        let s = Complex64::new(0.3, 10.0);
        let sum = f_factor(s, 0.01).unwrap() + f_factor(1.0 - s, 0.01).unwrap();
        assert!(sum.norm() < 1e-10);
        assert!(f_factor(Complex64::new(0.005, 1.0), 0.01).is_err());
        assert!(f_factor(Complex64::new(1.0, 1.0), 0.01).is_err());
        let sup = f_factor_sup(
            &[StripBox { re: (0.01, 0.99), im: (10.69, 17.58) }],
            9,
            9,
        )
        .unwrap();
        assert!(sup.sup_abs.is_finite() && sup.sup_dtau.is_finite());
        assert_eq!(sup.samples, 81);
    }
}
