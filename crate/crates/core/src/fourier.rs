//! Finite Fourier transforms of the mollified Q_m along horizontal
//! segments Im s = ±α of the strip.
//!
//! Samples live on a uniform τ-mesh over [ε, 1 − ε]. Transforms integrate
//! the piecewise-linear interpolant exactly (a Filon rule), so at k = 0 they
//! reduce to the trapezoid rule. The mesh is symmetric under τ ↦ 1 − τ, which
//! makes the reflection identity hold on the discrete level as well.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Error, Result};
use crate::mollifier::{self, MollifierParams};
use crate::prime_zeta::{self, BranchBook, TruncationPolicy};
use crate::quad;
use crate::zeros::RectangleD;

/// Default number of mesh intervals, 2¹².
pub const DEFAULT_INTERVALS: usize = 1 << 12;

/// Smallest distance kept between α and any zero ordinate.
pub const ORDINATE_MARGIN: f64 = 1e-2;

/// Trapezoid error estimate above which a segment counts as under-resolved.
pub const MESH_TOLERANCE: f64 = 1e-6;

fn inv_sqrt_2pi() -> f64 {
    1.0 / (2.0 * PI).sqrt()
}

/// Q_ε = Q_m·μ_ε sampled along Im s = α and, for the mirrored segment,
/// Q_m(1 − s)·μ_ε on the reflected sheet, reindexed by τ ↦ 1 − τ so that it
/// stands for Q_ε(τ − iα). F_m·μ_ε is carried along for the identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct StripSegment {
    alpha: f64,
    epsilon: f64,
    m: usize,
    h: f64,
    samples: Vec<Complex64>,
    mirrored: Vec<Complex64>,
    f_samples: Vec<Complex64>,
    mesh_error: f64,
}

impl StripSegment {
    /// Wraps precomputed samples on the uniform mesh over [ε, 1 − ε].
    pub fn from_samples(
        alpha: f64,
        epsilon: f64,
        m: usize,
        samples: Vec<Complex64>,
        mirrored: Vec<Complex64>,
        f_samples: Vec<Complex64>,
    ) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.125) {
            return Err(precondition("epsilon must lie in (0, 1/8)"));
        }
        if m == 0 {
            return Err(precondition("m must be positive"));
        }
        let n = samples.len();
        if n < 9 || n % 2 == 0 {
            return Err(precondition("need an odd number of at least 9 samples"));
        }
        if mirrored.len() != n || f_samples.len() != n {
            return Err(precondition("sample sequences must have equal length"));
        }
        if samples.iter().chain(&mirrored).chain(&f_samples).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let h = (1.0 - 2.0 * epsilon) / (n - 1) as f64;
        let mesh_error = richardson_defect(h, &samples).max(richardson_defect(h, &mirrored));
        Ok(Self { alpha, epsilon, m, h, samples, mirrored, f_samples, mesh_error })
    }

    /// Samples Q_ε, its mirror and F_m·μ_ε with `intervals` (even) mesh
    /// intervals. α must lie strictly inside the rectangle's ordinate range,
    /// outside its center band, and at least 1e-2 from every known zero.
    pub fn build(
        alpha: f64,
        epsilon: f64,
        m: usize,
        intervals: usize,
        rect: &RectangleD,
        policy: &TruncationPolicy,
        book: &BranchBook,
    ) -> Result<Self> {
        if !rect.contains(Complex64::new(0.5 + 2.0 * epsilon, alpha)) {
            return Err(precondition("alpha must lie inside the rectangle, off its center band"));
        }
        if book.ordinates().iter().any(|g| (alpha.abs() - g).abs() < ORDINATE_MARGIN) {
            return Err(precondition("alpha is too close to a zero ordinate"));
        }
        if intervals < 8 || intervals % 2 == 1 {
            return Err(precondition("intervals must be even and at least 8"));
        }
        if !(2.0 / m as f64 <= epsilon) {
            return Err(precondition("F_m needs epsilon >= 2/m"));
        }
        let params = MollifierParams::with_epsilon(epsilon)?;
        let h = (1.0 - 2.0 * epsilon) / intervals as f64;
        let n = intervals + 1;
        let taus: Vec<f64> = (0..n).map(|j| epsilon + h * j as f64).collect();
        let mu: Vec<f64> = taus.iter().map(|&t| mollifier::mu(t, &params)).collect();
        let zero = Complex64::new(0.0, 0.0);
        let mut samples = alloc::vec![zero; n];
        let mut reflected = alloc::vec![zero; n];
        let mut f_samples = alloc::vec![zero; n];
        for j in 0..n {
            if mu[j] == 0.0 {
                continue;
            }
            // keep F_m off its open-strip boundary at the mesh ends
            let s = Complex64::new(taus[j].clamp(epsilon + 1e-12, 1.0 - epsilon - 1e-12), alpha);
            samples[j] = prime_zeta::q_m(s, m, policy, book)?.value * mu[j];
            reflected[j] = prime_zeta::q_m_reflected(s, m, policy, book)?.value * mu[j];
            f_samples[j] = prime_zeta::f_m(s, m, policy)?.value * mu[j];
        }
        // Q_m(1 − (τ + iα)) at τ is Q(τ′ − iα) at τ′ = 1 − τ, and μ is symmetric
        let mirrored = reflected.into_iter().rev().collect();
        Self::from_samples(alpha, epsilon, m, samples, mirrored, f_samples)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn tau(&self, j: usize) -> f64 {
        self.epsilon + self.h * j as f64
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn mirrored(&self) -> &[Complex64] {
        &self.mirrored
    }

    pub fn f_samples(&self) -> &[Complex64] {
        &self.f_samples
    }

    /// |T_h − T_{2h}|/3 for the k = 0 integrals of both segments.
    pub fn mesh_error(&self) -> f64 {
        self.mesh_error
    }

    /// Q_ε at τ by linear interpolation.
    pub fn value_at(&self, tau: f64) -> Complex64 {
        let x = ((tau - self.epsilon) / self.h).clamp(0.0, (self.samples.len() - 1) as f64);
        let j = (x.floor() as usize).min(self.samples.len() - 2);
        let w = x - j as f64;
        self.samples[j] * (1.0 - w) + self.samples[j + 1] * w
    }

    fn check_resolution(&self, k: Complex64) -> Result<()> {
        if k.re.abs() * self.h > PI {
            return Err(Error::InsufficientSampling(String::from(
                "mesh too coarse for this frequency",
            )));
        }
        Ok(())
    }
}

fn richardson_defect(h: f64, samples: &[Complex64]) -> f64 {
    let fine = quad::trapezoid_uniform(h, samples);
    let coarse: Vec<Complex64> = samples.iter().step_by(2).copied().collect();
    let coarse = quad::trapezoid_uniform(2.0 * h, &coarse);
    (fine - coarse).norm() / 3.0
}

/// I_ε(k, α) = (1/√2π) ∫ Q_ε(τ + iα) e^{−ikτ} dτ, for Im k ≤ 0.
pub fn transform_i(seg: &StripSegment, k: Complex64) -> Result<Complex64> {
    if k.im > 0.0 {
        return Err(precondition("I is evaluated for Im k <= 0"));
    }
    seg.check_resolution(k)?;
    Ok(quad::linear_fourier(seg.epsilon, seg.h, &seg.samples, k) * inv_sqrt_2pi())
}

/// J_ε(k, α) = (1/√2π) ∫ Q_ε(τ − iα) e^{ikτ} dτ, for Im k ≥ 0.
pub fn transform_j(seg: &StripSegment, k: Complex64) -> Result<Complex64> {
    if k.im < 0.0 {
        return Err(precondition("J is evaluated for Im k >= 0"));
    }
    seg.check_resolution(k)?;
    Ok(quad::linear_fourier(seg.epsilon, seg.h, &seg.mirrored, -k) * inv_sqrt_2pi())
}

/// F̃_ε(k, α) = (1/√2π) ∫ F_m(τ + iα) μ_ε(τ) e^{−ikτ} dτ.
pub fn transform_f(seg: &StripSegment, k: Complex64) -> Result<Complex64> {
    seg.check_resolution(k)?;
    Ok(quad::linear_fourier(seg.epsilon, seg.h, &seg.f_samples, k) * inv_sqrt_2pi())
}

/// |I − e^{−ik}J − F̃| at real k.
pub fn reflection_fourier_residual(seg: &StripSegment, k: f64) -> Result<f64> {
    let kc = Complex64::new(k, 0.0);
    let i = transform_i(seg, kc)?;
    let j = transform_j(seg, kc)?;
    let f = transform_f(seg, kc)?;
    Ok((i - Complex64::from_polar(1.0, -k) * j - f).norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionSup {
    pub sup: f64,
    pub at: f64,
    pub mesh_error: f64,
    /// Set when the mesh error alone could exceed [`MESH_TOLERANCE`].
    pub mesh_flagged: bool,
}

pub fn reflection_fourier_sup(seg: &StripSegment, ks: &[f64]) -> Result<ReflectionSup> {
    let mut sup = 0.0f64;
    let mut at = 0.0;
    for &k in ks {
        let r = reflection_fourier_residual(seg, k)?;
        if r > sup {
            sup = r;
            at = k;
        }
    }
    Ok(ReflectionSup {
        sup,
        at,
        mesh_error: seg.mesh_error,
        mesh_flagged: seg.mesh_error >= MESH_TOLERANCE,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QNorms {
    /// ∫|Q_ε| dτ
    pub l1: f64,
    /// ∫|Q_ε|² dτ
    pub l2_squared: f64,
    pub sup: f64,
    /// max |dQ_ε/dτ| by central differences
    pub dsup: f64,
}

impl QNorms {
    pub fn l2(&self) -> f64 {
        self.l2_squared.sqrt()
    }
}

pub fn q_norms(seg: &StripSegment) -> QNorms {
    let abs: Vec<f64> = seg.samples.iter().map(|v| v.norm()).collect();
    let sq: Vec<f64> = abs.iter().map(|v| v * v).collect();
    let sup = abs.iter().copied().fold(0.0, f64::max);
    let dsup = seg
        .samples
        .windows(3)
        .map(|w| (w[2] - w[0]).norm() / (2.0 * seg.h))
        .fold(0.0, f64::max);
    QNorms {
        l1: quad::trapezoid_uniform(seg.h, &abs),
        l2_squared: quad::trapezoid_uniform(seg.h, &sq),
        sup,
        dsup,
    }
}

/// |I(k − iY)| against ‖Q_ε‖₂·Y^{−1/2} and |J(k + iY)| against the same
/// bound for the mirrored segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCheck {
    pub y: f64,
    pub i_abs: f64,
    pub j_abs: f64,
    pub i_bound: f64,
    pub j_bound: f64,
}

impl DecayCheck {
    pub fn holds(&self) -> bool {
        self.i_abs <= self.i_bound && self.j_abs <= self.j_bound
    }
}

pub fn decay_check(seg: &StripSegment, k: f64, y: f64) -> Result<DecayCheck> {
    if !(y > 0.0) {
        return Err(precondition("decay is checked for Y > 0"));
    }
    let mirror_sq: Vec<f64> = seg.mirrored.iter().map(|v| v.norm_sqr()).collect();
    let j_l2 = quad::trapezoid_uniform(seg.h, &mirror_sq).sqrt();
    let i_abs = transform_i(seg, Complex64::new(k, -y))?.norm();
    let j_abs = transform_j(seg, Complex64::new(k, y))?.norm();
    Ok(DecayCheck {
        y,
        i_abs,
        j_abs,
        i_bound: q_norms(seg).l2() / y.sqrt(),
        j_bound: j_l2 / y.sqrt(),
    })
}

/// Simpson weights for an odd number of uniform samples.
fn simpson_sum(h: f64, values: impl ExactSizeIterator<Item = Complex64>) -> Complex64 {
    let n = values.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, v) in values.enumerate() {
        let w = if j == 0 || j == n - 1 {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += v * w;
    }
    acc * (h / 3.0)
}

/// k-grid with spacing at most 0.05 and an even number of intervals.
fn k_grid(k_max: f64) -> (Vec<f64>, f64) {
    let mut n = (2.0 * k_max / 0.05).ceil() as usize;
    n += n % 2;
    let h = 2.0 * k_max / n as f64;
    ((0..=n).map(|j| -k_max + h * j as f64).collect(), h)
}

/// ∫_{−K}^{K} |I(k)|² dk against ∫|Q_ε|² dτ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parseval {
    pub transform_l2_squared: f64,
    pub sample_l2_squared: f64,
}

impl Parseval {
    pub fn relative_defect(&self) -> f64 {
        if self.sample_l2_squared == 0.0 {
            return self.transform_l2_squared;
        }
        (self.transform_l2_squared - self.sample_l2_squared).abs() / self.sample_l2_squared
    }
}

pub fn parseval(seg: &StripSegment, k_max: f64) -> Result<Parseval> {
    let (ks, h) = k_grid(k_max);
    let mut vals = Vec::with_capacity(ks.len());
    for &k in &ks {
        vals.push(Complex64::new(transform_i(seg, Complex64::new(k, 0.0))?.norm_sqr(), 0.0));
    }
    Ok(Parseval {
        transform_l2_squared: simpson_sum(h, vals.into_iter()).re,
        sample_l2_squared: q_norms(seg).l2_squared,
    })
}

/// ∫|(I − F̃)/(k − ia)|² dk + ∫|J|² dk over |k| ≤ K.
pub fn aggregate_norm(seg: &StripSegment, a: f64, k_max: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(precondition("the weight pole must sit off the real line"));
    }
    let (ks, h) = k_grid(k_max);
    let mut vals = Vec::with_capacity(ks.len());
    for &k in &ks {
        let kc = Complex64::new(k, 0.0);
        let i = transform_i(seg, kc)?;
        let f = transform_f(seg, kc)?;
        let j = transform_j(seg, kc)?;
        let w = ((i - f) / Complex64::new(k, -a)).norm_sqr() + j.norm_sqr();
        vals.push(Complex64::new(w, 0.0));
    }
    Ok(simpson_sum(h, vals.into_iter()).re)
}

/// sup over `probes` of |(1/√2π)∫_{−N}^{N} I(k)e^{ikt} dk − Q_ε(t)|.
/// Probes must lie inside (ε, 1 − ε) and away from the band edges of ν.
pub fn inversion_check(seg: &StripSegment, n: f64, probes: &[f64]) -> Result<f64> {
    let params = MollifierParams::with_epsilon(seg.epsilon)?;
    for &t in probes {
        if !(t > seg.epsilon && t < 1.0 - seg.epsilon) {
            return Err(precondition("probe outside (epsilon, 1 - epsilon)"));
        }
        if params.edges().iter().any(|e| (t - e).abs() < seg.h) {
            return Err(precondition("probe sits on a jump of nu"));
        }
    }
    if !(n > 0.0) {
        return Err(precondition("N must be positive"));
    }
    let (ks, h) = k_grid(n);
    let mut transform = Vec::with_capacity(ks.len());
    for &k in &ks {
        transform.push(transform_i(seg, Complex64::new(k, 0.0))?);
    }
    let mut sup = 0.0f64;
    for &t in probes {
        let it = ks.iter().zip(&transform).map(|(&k, v)| v * Complex64::from_polar(1.0, k * t));
        let inverse = simpson_sum(h, it) * inv_sqrt_2pi();
        sup = sup.max((inverse - seg.value_at(t)).norm());
    }
    Ok(sup)
}

#[derive(Debug, Clone, PartialEq)]
pub struct InversionProfile {
    /// (N, sup error) for N = N₀, 2N₀, 4N₀, …
    pub levels: Vec<(f64, f64)>,
    /// Set when some doubling failed to shrink the error.
    pub nondecreasing: bool,
}

pub fn inversion_profile(
    seg: &StripSegment,
    n0: f64,
    doublings: usize,
    probes: &[f64],
) -> Result<InversionProfile> {
    let mut levels = Vec::with_capacity(doublings + 1);
    let mut n = n0;
    for _ in 0..=doublings {
        levels.push((n, inversion_check(seg, n, probes)?));
        n *= 2.0;
    }
    let nondecreasing = levels.windows(2).any(|w| w[1].1 >= w[0].1);
    Ok(InversionProfile { levels, nondecreasing })
}
