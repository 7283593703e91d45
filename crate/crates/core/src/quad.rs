//! Quadrature rules shared by the modules: Gauss–Legendre panels, adaptive
//! Gauss–Kronrod (7/15) and a composite piecewise-linear Fourier rule.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on P_n.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// ∫_a^b f with this rule on a single panel.
    pub fn integrate<T: Integrand>(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> T) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc * 1.0
    }

    /// Composite rule over `panels` equal panels of [a, b].
    pub fn integrate_panels<T: Integrand>(
        &self,
        a: f64,
        b: f64,
        panels: usize,
        mut f: impl FnMut(f64) -> T,
    ) -> T {
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        for j in 0..panels {
            let lo = a + h * j as f64;
            acc = acc + self.integrate(lo, lo + h, &mut f);
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature<T> {
    pub value: T,
    pub error_estimate: f64,
    pub converged: bool,
}

fn gk15<T: Integrand>(a: f64, b: f64, f: &mut impl FnMut(f64) -> T) -> (T, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let k = kronrod * h;
    let g = gauss * h;
    (k, (k - g).magnitude())
}

/// Adaptive Gauss–Kronrod 7/15 with absolute tolerance `tol`.
pub fn adaptive<T: Integrand>(
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
    mut f: impl FnMut(f64) -> T,
) -> Quadrature<T> {
    let mut converged = true;
    let (value, err) = adaptive_step(a, b, tol, max_depth, &mut f, &mut converged);
    Quadrature { value, error_estimate: err, converged }
}

fn adaptive_step<T: Integrand>(
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    f: &mut impl FnMut(f64) -> T,
    converged: &mut bool,
) -> (T, f64) {
    let (whole, err) = gk15(a, b, f);
    if err <= tol {
        return (whole, err);
    }
    if depth == 0 {
        *converged = false;
        return (whole, err);
    }
    let m = 0.5 * (a + b);
    let (l, el) = adaptive_step(a, m, 0.5 * tol, depth - 1, f, converged);
    let (r, er) = adaptive_step(m, b, 0.5 * tol, depth - 1, f, converged);
    (l + r, el + er)
}

/// Composite Simpson rule on uniform samples (odd count).
pub fn simpson_uniform<T: Integrand>(h: f64, samples: &[T]) -> T {
    let n = samples.len();
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd number of samples >= 3");
    let mut acc = samples[0] + samples[n - 1];
    for (j, v) in samples.iter().enumerate().take(n - 1).skip(1) {
        acc = acc + *v * if j % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * (h / 3.0)
}

/// Composite trapezoid rule on uniform samples.
pub fn trapezoid_uniform<T: Integrand>(h: f64, samples: &[T]) -> T {
    let n = samples.len();
    if n < 2 {
        return T::zero();
    }
    let mut acc = (samples[0] + samples[n - 1]) * 0.5;
    for v in &samples[1..n - 1] {
        acc = acc + *v;
    }
    acc * h
}

/// ∫ q(τ) e^{-iωτ} dτ where q is the piecewise-linear interpolant of
/// `samples` on the uniform mesh τ_j = start + j·h. Exact for that
/// interpolant at every ω, and equal to the trapezoid rule at ω = 0.
pub fn linear_fourier(start: f64, h: f64, samples: &[Complex64], omega: Complex64) -> Complex64 {
    let n = samples.len();
    if n < 2 {
        return Complex64::new(0.0, 0.0);
    }
    let (w_end, w_mid) = filon_weights(h, omega);
    let step = (-Complex64::i() * omega * h).exp();
    let mut phase = (-Complex64::i() * omega * start).exp();
    let mut acc = samples[0] * w_end.0 * phase;
    for (j, q) in samples.iter().enumerate().skip(1) {
        phase *= step;
        // periodically resynchronize the running phase
        if j % 256 == 0 {
            phase = (-Complex64::i() * omega * (start + h * j as f64)).exp();
        }
        let w = if j == n - 1 { w_end.1 } else { w_mid };
        acc += q * w * phase;
    }
    acc
}

/// Weights of the linear-interpolant Fourier rule relative to the node
/// phase: ((first, last), interior).
fn filon_weights(h: f64, omega: Complex64) -> ((Complex64, Complex64), Complex64) {
    let theta = omega * h;
    if theta.norm() < 1e-3 {
        // series of the closed forms below
        let t2 = theta * theta;
        let i = Complex64::i();
        let first = h * (0.5 - i * theta / 6.0 - t2 / 24.0 + i * t2 * theta / 120.0);
        let last = h * (0.5 + i * theta / 6.0 - t2 / 24.0 - i * t2 * theta / 120.0);
        let mid = h * (1.0 - t2 / 12.0 + t2 * t2 / 360.0);
        return ((first, last), mid);
    }
    let i = Complex64::i();
    let e_minus = (-i * theta).exp();
    let e_plus = (i * theta).exp();
    let t2 = theta * theta;
    // ∫_0^h (1 - u/h) e^{-iωu} du and ∫_{-h}^0 (1 + u/h) e^{-iωu} du
    let first = h * (1.0 - i * theta - e_minus) / t2;
    let last = h * (1.0 + i * theta - e_plus) / t2;
    let mid = first + last;
    ((first, last), mid)
}
