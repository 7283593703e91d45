//! The scalar Riemann–Hilbert problem with kernel R(k) = e^{−ik}/(k − ia) + 1.
//!
//! Cauchy integrals of sampled functions use two-term singularity
//! subtraction: f(s) = f(x) + f′(x)(s − x) + g(s), where the first two
//! terms are integrated in closed form and g(s)/(s − z) is smooth enough
//! for the trapezoid rule. Tails beyond the sampled window are modelled
//! either as a power law or as an e^{−iωs} oscillation.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Error, Result};
use crate::point::check_finite;
use crate::quad;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Off-axis offset for the boundary limits; Richardson uses h and 2h.
pub const BOUNDARY_OFFSET: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RKernel {
    a: f64,
}

impl RKernel {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 2.0) || !a.is_finite() {
            return Err(precondition("kernel parameter a must exceed 2"));
        }
        Ok(Self { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eval(&self, k: Complex64) -> Result<Complex64> {
        let k = check_finite(k)?;
        let d = k - I * self.a;
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::Pole { re: 0.0, im: self.a });
        }
        Ok((-I * k).exp() / d + 1.0)
    }

    /// R′(k) = −e^{−ik}/(k − ia) · (i + 1/(k − ia)).
    pub fn derivative(&self, k: Complex64) -> Complex64 {
        let d = k - I * self.a;
        let e = (-I * k).exp() / d;
        -e * (I + d.inv())
    }

    /// ln R on the real line. |R − 1| < 1/2 there, so the principal
    /// logarithm is already continuous.
    pub fn log_on_line(&self, k: f64) -> Complex64 {
        let d = Complex64::new(k, -self.a);
        let u = Complex64::from_polar(1.0, -k) / d;
        (u + 1.0).ln()
    }
}

/// R(k) at k; a free-function form of [`RKernel::eval`].
pub fn r_eval(k: Complex64, ker: &RKernel) -> Result<Complex64> {
    ker.eval(k)
}

/// Winding number of `f` along [−k_max, k_max] sampled with `step`, closed
/// by assuming f → 1 at ±∞ (the arcs out to infinity contribute
/// −arg f(k_max) and +arg f(−k_max)).
pub fn line_index(
    mut f: impl FnMut(f64) -> Result<Complex64>,
    k_max: f64,
    step: f64,
) -> Result<i64> {
    if !(k_max > 0.0 && step > 0.0) {
        return Err(precondition("line index needs positive k_max and step"));
    }
    let n = (2.0 * k_max / step).ceil() as usize;
    let start = f(-k_max)?;
    let mut prev = start;
    let mut total = 0.0;
    let mut max_jump = 0.0f64;
    for j in 1..=n {
        let k = -k_max + 2.0 * k_max * j as f64 / n as f64;
        let v = f(k)?;
        if v == Complex64::new(0.0, 0.0) {
            return Err(Error::AmbiguousWinding { turns: f64::NAN });
        }
        let d = (v / prev).arg();
        max_jump = max_jump.max(d.abs());
        total += d;
        prev = v;
    }
    total += start.arg() - prev.arg();
    let turns = total / (2.0 * PI);
    let k = turns.round();
    if (total - 2.0 * PI * k).abs() > 0.01 || max_jump > PI / 2.0 {
        return Err(Error::AmbiguousWinding { turns });
    }
    Ok(k as i64)
}

/// ind R over [−k_max, k_max], k_max ≥ 10³.
pub fn index_r(ker: &RKernel, k_max: f64) -> Result<i64> {
    if !(k_max >= 1e3) {
        return Err(precondition("index needs k_max >= 1e3"));
    }
    line_index(|k| ker.eval(Complex64::new(k, 0.0)), k_max, 0.01)
}

/// Samples of a function on the real line with a model for its tails.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledLineFunction {
    nodes: Vec<f64>,
    values: Vec<Complex64>,
    decay_exponent: f64,
    oscillation: Option<f64>,
}

impl SampledLineFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<Complex64>, decay_exponent: f64) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() < 4 {
            return Err(precondition("need at least 4 nodes and one value per node"));
        }
        if nodes.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(precondition("nodes must be strictly increasing"));
        }
        if !(decay_exponent > 0.5) {
            return Err(precondition("decay exponent must exceed 1/2"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { nodes, values, decay_exponent, oscillation: None })
    }

    pub fn from_fn(
        nodes: Vec<f64>,
        mut f: impl FnMut(f64) -> Complex64,
        decay_exponent: f64,
    ) -> Result<Self> {
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self::new(nodes, values, decay_exponent)
    }

    /// Declares the tails to behave like e^{−iωs} times a slowly varying
    /// factor.
    pub fn with_oscillation(mut self, omega: f64) -> Self {
        self.oscillation = Some(omega);
        self
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn decay_exponent(&self) -> f64 {
        self.decay_exponent
    }

    pub fn window(&self) -> (f64, f64) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    /// A function with the same nodes and new values.
    pub fn with_values(&self, values: Vec<Complex64>, decay_exponent: f64) -> Result<Self> {
        Self::new(self.nodes.clone(), values, decay_exponent)
    }

    fn bracket(&self, x: f64) -> usize {
        let n = self.nodes.len();
        self.nodes.partition_point(|&s| s <= x).clamp(1, n - 1) - 1
    }

    fn local_spacing(&self, j: usize) -> f64 {
        let n = self.nodes.len();
        let lo = j.saturating_sub(1);
        let hi = (j + 2).min(n - 1);
        let mut h = 0.0f64;
        for w in self.nodes[lo..=hi].windows(2) {
            h = h.max(w[1] - w[0]);
        }
        h
    }

    /// Value and slope of the cubic through the four nodes nearest `x`.
    pub fn interpolate(&self, x: f64) -> (Complex64, Complex64) {
        let n = self.nodes.len();
        let j = self.bracket(x);
        let start = j.saturating_sub(1).min(n - 4);
        let xs = &self.nodes[start..start + 4];
        let ys = &self.values[start..start + 4];
        let mut value = Complex64::new(0.0, 0.0);
        let mut slope = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            let mut li = 1.0;
            let mut dli = 0.0;
            for m in 0..4 {
                if m == i {
                    continue;
                }
                let denom = xs[i] - xs[m];
                // product rule for the derivative of the Lagrange basis
                dli = dli * (x - xs[m]) / denom + li / denom;
                li *= (x - xs[m]) / denom;
            }
            value += ys[i] * li;
            slope += ys[i] * dli;
        }
        (value, slope)
    }

    fn tail_integrals(&self, z: Complex64) -> Result<Complex64> {
        let (a, b) = self.window();
        let fa = self.values[0];
        let fb = self.values[self.values.len() - 1];
        if let Some(omega) = self.oscillation {
            let right = fb / ((b - z) * I * omega);
            let left = -fa / ((a - z) * I * omega);
            return Ok(right + left);
        }
        let p = self.decay_exponent;
        let right = if b > 0.0 { fb * power_tail_series(z / b, p)? } else { Complex64::new(0.0, 0.0) };
        let left = if a < 0.0 { -fa * power_tail_series(-z / -a, p)? } else { Complex64::new(0.0, 0.0) };
        Ok(right + left)
    }
}

/// Σ_{k≥0} w^k / (p + k) for |w| < 1.
fn power_tail_series(w: Complex64, p: f64) -> Result<Complex64> {
    if w.norm() >= 0.95 {
        return Err(Error::InsufficientSampling(String::from(
            "evaluation point too close to the window edge for the tail model",
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    for k in 0..2000 {
        let term = pw / (p + k as f64);
        acc += term;
        if term.norm() < 1e-17 {
            break;
        }
        pw *= w;
    }
    Ok(acc)
}

/// Uniform nodes with spacing at most `h` on [−l, l].
pub fn uniform_mesh(l: f64, h: f64) -> Vec<f64> {
    let n = (2.0 * l / h).ceil() as usize;
    (0..=n).map(|j| -l + 2.0 * l * j as f64 / n as f64).collect()
}

/// Nodes s = c·sinh(u) for `n` uniform u covering [−l, l]: fine near the
/// origin, coarse in the tails.
pub fn sinh_mesh(l: f64, c: f64, n: usize) -> Vec<f64> {
    let u_max = (l / c).asinh();
    (0..n)
        .map(|j| c * (-u_max + 2.0 * u_max * j as f64 / (n - 1) as f64).sinh())
        .collect()
}

/// Largest local node spacing tolerated at x: max(1/2, |x|/20).
fn spacing_limit(x: f64) -> f64 {
    (0.5f64).max(0.05 * x.abs())
}

/// Cauchy integrals (1/2πi)∫ f(s)/(s − z) ds at several z sharing Re z = x.
fn cauchy_family<const N: usize>(
    f: &SampledLineFunction,
    x: f64,
    etas: [f64; N],
) -> Result<[Complex64; N]> {
    let (a, b) = f.window();
    if !(x >= a && x <= b) {
        return Err(Error::InsufficientSampling(String::from("point outside the sampled window")));
    }
    let j = f.bracket(x);
    if f.local_spacing(j) > spacing_limit(x) {
        return Err(Error::InsufficientSampling(String::from("mesh too coarse near the point")));
    }
    let (f0, f1) = f.interpolate(x);
    let nodes = &f.nodes;
    let vals = &f.values;
    let n = nodes.len();
    let mut out = [Complex64::new(0.0, 0.0); N];
    let zs: [Complex64; N] = core::array::from_fn(|i| Complex64::new(x, etas[i]));
    // trapezoid on the nonuniform mesh: weight_j = (s_{j+1} − s_{j−1})/2
    for i in 0..n {
        let s = nodes[i];
        let w = 0.5 * (nodes[(i + 1).min(n - 1)] - nodes[i.saturating_sub(1)]);
        let g = vals[i] - f0 - f1 * (s - x);
        for (o, z) in out.iter_mut().zip(zs.iter()) {
            let d = s - *z;
            // g/(s − x) → f′(x) − f1 ≈ 0 at a coincident node
            if d.norm() > 1e-9 * w {
                *o += g * (w / d);
            }
        }
    }
    for (o, z) in out.iter_mut().zip(zs.iter()) {
        let log = if z.im == 0.0 {
            Complex64::new(((b - x) / (x - a)).abs().ln(), 0.0)
        } else {
            (b - *z).ln() - (a - *z).ln()
        };
        let analytic = f0 * log + f1 * ((b - a) + (*z - x) * log);
        let tails = f.tail_integrals(*z)?;
        *o = (*o + analytic + tails) / (2.0 * PI * I);
    }
    Ok(out)
}

/// (1/2πi)∫ f(s)/(s − z) ds for z off the real line.
pub fn cauchy_integral(f: &SampledLineFunction, z: Complex64) -> Result<Complex64> {
    let z = check_finite(z)?;
    if z.im == 0.0 {
        return Err(precondition("use cauchy_project for points on the line"));
    }
    let (a, b) = f.window();
    if z.re >= a && z.re <= b && z.im.abs() < 1.0 {
        return Ok(cauchy_family(f, z.re, [z.im])?[0]);
    }
    // far from the axis the plain trapezoid rule is accurate
    let nodes = &f.nodes;
    let n = nodes.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let w = 0.5 * (nodes[(i + 1).min(n - 1)] - nodes[i.saturating_sub(1)]);
        acc += f.values[i] * (w / (nodes[i] - z));
    }
    Ok((acc + f.tail_integrals(z)?) / (2.0 * PI * I))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
    Principal,
}

/// T₊f(x) and T₋f(x) by Richardson extrapolation of the Cauchy integral
/// at x ± ih and x ± 2ih, together with the closed-form limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValues {
    pub plus: Complex64,
    pub minus: Complex64,
    /// The same limits from the principal value ± f(x)/2.
    pub plus_limit: Complex64,
    pub minus_limit: Complex64,
}

pub fn boundary_values(f: &SampledLineFunction, x: f64) -> Result<BoundaryValues> {
    let h = BOUNDARY_OFFSET;
    let [p1, p2, m1, m2, pv] = cauchy_family(f, x, [h, 2.0 * h, -h, -2.0 * h, 0.0])?;
    let half = f.interpolate(x).0 * 0.5;
    Ok(BoundaryValues {
        plus: p1 * 2.0 - p2,
        minus: m1 * 2.0 - m2,
        plus_limit: pv + half,
        minus_limit: pv - half,
    })
}

/// T₊, T₋ or T = (T₊ + T₋)/2 applied to `f` at the real point `x`.
pub fn cauchy_project(f: &SampledLineFunction, x: f64, side: Side) -> Result<Complex64> {
    let bv = boundary_values(f, x)?;
    Ok(match side {
        Side::Plus => bv.plus,
        Side::Minus => bv.minus,
        Side::Principal => (bv.plus + bv.minus) * 0.5,
    })
}

/// The projection evaluated at every node. Nodes in the outer tenth of
/// the window, where the tail model is unreliable, are continued from the
/// innermost of them as c/s.
pub fn project_all(f: &SampledLineFunction, side: Side) -> Result<SampledLineFunction> {
    let (a, b) = f.window();
    let n = f.nodes.len();
    let mut values = alloc::vec![Complex64::new(0.0, 0.0); n];
    let inner = |x: f64| x >= 0.9 * a && x <= 0.9 * b;
    let mut first = None;
    let mut last = 0;
    for (i, &x) in f.nodes.iter().enumerate() {
        if inner(x) {
            values[i] = cauchy_project(f, x, side)?;
            first.get_or_insert(i);
            last = i;
        }
    }
    let first = first.ok_or_else(|| precondition("window has no interior nodes"))?;
    for i in 0..first {
        values[i] = values[first] * (f.nodes[first] / f.nodes[i]);
    }
    for i in last + 1..n {
        values[i] = values[last] * (f.nodes[last] / f.nodes[i]);
    }
    f.with_values(values, 1.0)
}

/// sqrt(Σ |r_j|² w_j) over nodes with |s| ≤ window, trapezoid weights.
pub fn discrete_l2(nodes: &[f64], residual: &[Complex64], window: f64) -> f64 {
    let n = nodes.len();
    let mut acc = 0.0;
    for i in 0..n {
        if nodes[i].abs() > window {
            continue;
        }
        let w = 0.5 * (nodes[(i + 1).min(n - 1)] - nodes[i.saturating_sub(1)]);
        acc += residual[i].norm_sqr() * w;
    }
    acc.sqrt()
}

/// Defects of the five projection identities in discrete L₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionDefects {
    /// ‖TTf − f/4‖
    pub tt: f64,
    /// ‖TT₊f − T₊f/2‖
    pub t_tplus: f64,
    /// ‖TT₋f + T₋f/2‖
    pub t_tminus: f64,
    /// ‖T₊f − (T + I/2)f‖
    pub plus_split: f64,
    /// ‖T₋f − (T − I/2)f‖
    pub minus_split: f64,
}

impl ProjectionDefects {
    pub fn max(&self) -> f64 {
        self.tt.max(self.t_tplus).max(self.t_tminus).max(self.plus_split).max(self.minus_split)
    }
}

pub fn projection_defects(f: &SampledLineFunction, window: f64) -> Result<ProjectionDefects> {
    let tp = project_all(f, Side::Plus)?;
    let tm = project_all(f, Side::Minus)?;
    let t = project_all(f, Side::Principal)?;
    let tt = project_all(&t, Side::Principal)?;
    let ttp = project_all(&tp, Side::Principal)?;
    let ttm = project_all(&tm, Side::Principal)?;
    let nodes = f.nodes();
    let n = nodes.len();
    let norm = |g: &dyn Fn(usize) -> Complex64| {
        let r: Vec<Complex64> = (0..n).map(g).collect();
        discrete_l2(nodes, &r, window)
    };
    let fv = f.values();
    Ok(ProjectionDefects {
        tt: norm(&|i| tt.values[i] - fv[i] * 0.25),
        t_tplus: norm(&|i| ttp.values[i] - tp.values[i] * 0.5),
        t_tminus: norm(&|i| ttm.values[i] + tm.values[i] * 0.5),
        plus_split: norm(&|i| tp.values[i] - t.values[i] - fv[i] * 0.5),
        minus_split: norm(&|i| tm.values[i] - t.values[i] + fv[i] * 0.5),
    })
}

/// Sign in front of the Cauchy integrals defining Γ±.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// Γ±(k) = −(1/2πi)∫ ln R(t) dt/(t − k ∓ i0).
    Negative,
    /// The same without the leading minus.
    Positive,
}

/// Γ±, X± = exp Γ± at a real point, and |X₋/X₊ − R|.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorValues {
    pub gamma_plus: Complex64,
    pub gamma_minus: Complex64,
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub residual: f64,
}

/// Sampled ln R on [−k_max, k_max] and the factorization built from it.
#[derive(Debug, Clone)]
pub struct Factorization {
    ker: RKernel,
    log_r: SampledLineFunction,
    convention: SignConvention,
    /// |X₋/X₊ − R| at the probe points for each convention.
    pub probe_residuals: [(SignConvention, f64); 2],
}

/// Mesh spacing of the sampled ln R.
pub const LOG_R_SPACING: f64 = 0.05;

impl Factorization {
    pub fn new(ker: RKernel, k_max: f64) -> Result<Self> {
        if !(k_max >= 100.0) {
            return Err(precondition("factorization window must reach at least 100"));
        }
        let index = line_index(|k| ker.eval(Complex64::new(k, 0.0)), k_max, 0.01)?;
        if index != 0 {
            return Err(precondition("ln R is single-valued only for index 0"));
        }
        let nodes = uniform_mesh(k_max, LOG_R_SPACING);
        // unwrapped from −k_max, where R ≈ 1
        let mut values = Vec::with_capacity(nodes.len());
        let mut phase = 0.0;
        let mut prev = Complex64::new(1.0, 0.0);
        for (j, &k) in nodes.iter().enumerate() {
            let r = ker.eval(Complex64::new(k, 0.0))?;
            if j == 0 {
                phase = r.arg();
            } else {
                phase += (r / prev).arg();
            }
            prev = r;
            values.push(Complex64::new(r.norm().ln(), phase));
        }
        let log_r = SampledLineFunction::new(nodes, values, 1.0)?.with_oscillation(1.0);
        let mut fact = Self {
            ker,
            log_r,
            convention: SignConvention::Negative,
            probe_residuals: [(SignConvention::Negative, 0.0), (SignConvention::Positive, 0.0)],
        };
        for (slot, conv) in [SignConvention::Negative, SignConvention::Positive].iter().enumerate() {
            fact.convention = *conv;
            let mut worst = 0.0f64;
            for k in [-5.0, 0.0, 1.0, 5.0] {
                worst = worst.max(fact.at(k)?.residual);
            }
            fact.probe_residuals[slot] = (*conv, worst);
        }
        fact.convention = if fact.probe_residuals[0].1 <= fact.probe_residuals[1].1 {
            SignConvention::Negative
        } else {
            SignConvention::Positive
        };
        Ok(fact)
    }

    pub fn kernel(&self) -> &RKernel {
        &self.ker
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    pub fn log_r(&self) -> &SampledLineFunction {
        &self.log_r
    }

    fn sign(&self) -> f64 {
        match self.convention {
            SignConvention::Negative => -1.0,
            SignConvention::Positive => 1.0,
        }
    }

    pub fn at(&self, k: f64) -> Result<FactorValues> {
        let bv = boundary_values(&self.log_r, k)?;
        let gamma_plus = bv.plus * self.sign();
        let gamma_minus = bv.minus * self.sign();
        let x_plus = gamma_plus.exp();
        let x_minus = gamma_minus.exp();
        let r = self.ker.eval(Complex64::new(k, 0.0))?;
        Ok(FactorValues {
            gamma_plus,
            gamma_minus,
            x_plus,
            x_minus,
            residual: (x_minus / x_plus - r).norm(),
        })
    }

    /// X₊(z) = exp(Γ₊(z)) for Im z > 0.
    pub fn x_plus_above(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im > 0.0) {
            return Err(precondition("X+ is continued into Im z > 0 only"));
        }
        Ok((cauchy_integral(&self.log_r, z)? * self.sign()).exp())
    }

    /// X₋ continued into Im z > 0 as R(z)·X₊(z).
    pub fn x_minus_above(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.ker.eval(z)? * self.x_plus_above(z)?)
    }

    /// X₋′(z) by central difference with step 1e-5.
    pub fn x_minus_derivative(&self, z: Complex64) -> Result<Complex64> {
        let h = 1e-5;
        Ok((self.x_minus_above(z + h)? - self.x_minus_above(z - h)?) / (2.0 * h))
    }
}

/// Γ±, X± at k from a fresh factorization over [−k_max, k_max].
pub fn factorize(ker: &RKernel, k: f64, k_max: f64) -> Result<FactorValues> {
    Factorization::new(*ker, k_max)?.at(k)
}

/// Which family a root of R belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootFamily {
    /// t = 2πn + φ + iβ, φ = π − arctan((β − a)/(2πn + φ)), n ≥ 0.
    Principal,
    /// t = 2πm + φ + iβ, φ = −arctan((β − a)/(2πm + φ)), m ≤ 0.
    Companion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootRecord {
    pub family: RootFamily,
    pub n: i64,
    pub beta: f64,
    pub phi: f64,
    pub t: Complex64,
    pub residual: f64,
    pub dbeta_da: f64,
    pub dphi_da: f64,
}

const ROOT_ITERATIONS: usize = 200;

fn root_raw(n: i64, family: RootFamily, a: f64) -> Result<(Complex64, f64)> {
    let base = 2.0 * PI * n as f64;
    let offset = match family {
        RootFamily::Principal => PI,
        RootFamily::Companion => 0.0,
    };
    // damped fixed point on (β, φ)
    let mut phi = offset;
    let mut beta = (base + phi).abs().max(1.0).ln();
    for _ in 0..ROOT_ITERATIONS {
        let x = base + phi;
        let phi_new = offset - ((beta - a) / x).atan();
        let beta_new = 0.5 * (x * x + (beta - a) * (beta - a)).ln();
        let dp = phi_new - phi;
        let db = beta_new - beta;
        phi += 0.5 * dp;
        beta += 0.5 * db;
        if dp.abs() + db.abs() < 1e-6 {
            break;
        }
    }
    // Newton polish on h(t) = e^{−it} + t − ia = (t − ia)R(t)
    let mut t = Complex64::new(base + phi, beta);
    let ia = I * a;
    for _ in 0..60 {
        let e = (-I * t).exp();
        let h = e + t - ia;
        let dh = -I * e + 1.0;
        let step = h / dh;
        t -= step;
        if step.norm() < 1e-15 * t.norm().max(1.0) {
            break;
        }
    }
    let ker = RKernel::new(a)?;
    let residual = ker.eval(t)?.norm();
    if !(residual < 1e-12) {
        return Err(Error::NoConvergence { iterations: ROOT_ITERATIONS, residual });
    }
    Ok((t, residual))
}

fn solve_root(n: i64, family: RootFamily, ker: &RKernel) -> Result<RootRecord> {
    let a = ker.a();
    let (t, residual) = root_raw(n, family, a)?;
    let da = 1e-4;
    let (tp, _) = root_raw(n, family, a + da)?;
    let (tm, _) = root_raw(n, family, a - da)?;
    let base = 2.0 * PI * n as f64;
    Ok(RootRecord {
        family,
        n,
        beta: t.im,
        phi: t.re - base,
        t,
        residual,
        dbeta_da: (tp.im - tm.im) / (2.0 * da),
        dphi_da: (tp.re - tm.re) / (2.0 * da),
    })
}

/// Root t_n of R in the principal family; n = 0 is allowed.
pub fn solve_t_n(n: u64, ker: &RKernel) -> Result<RootRecord> {
    solve_root(n as i64, RootFamily::Principal, ker)
}

/// Root of the companion family with Re t < 0, for m ≤ 0.
pub fn solve_companion(m: i64, ker: &RKernel) -> Result<RootRecord> {
    if m > 0 {
        return Err(precondition("companion roots are indexed by m <= 0"));
    }
    solve_root(m, RootFamily::Companion, ker)
}

/// Principal roots n = 0..=count and companion roots m = 0..=−count, in
/// that order.
pub fn residue_roots(ker: &RKernel, count: usize) -> Result<Vec<RootRecord>> {
    let mut out = Vec::with_capacity(2 * count + 2);
    for n in 0..=count as u64 {
        out.push(solve_t_n(n, ker)?);
    }
    for m in 0..=count as i64 {
        out.push(solve_companion(-m, ker)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueSeries {
    /// 2πi Σ G(t_n) / (X₋′(t_n)(t_n − k)).
    pub value: Complex64,
    /// Outermost term of each family times n/2, for terms decaying like n^{−3}.
    pub tail_estimate: f64,
    pub terms: usize,
}

/// The residue sum over `roots` (from [`residue_roots`]) with `g_at_roots`
/// aligned to them. Closing ∫ G/(X₋(t)(t − k)) dt in the upper half-plane
/// picks up every root of R, hence the factor 2πi.
pub fn residue_series_i1(
    k: Complex64,
    g_at_roots: &[Complex64],
    roots: &[RootRecord],
    fact: &Factorization,
) -> Result<ResidueSeries> {
    if !(k.im < 0.0) {
        return Err(precondition("residue series needs Im k < 0"));
    }
    if g_at_roots.len() != roots.len() {
        return Err(precondition("one G value per root"));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    // outermost term of each family, with its index
    let mut outer = [(0u64, 0.0f64); 2];
    for (g, r) in g_at_roots.iter().zip(roots) {
        if *g == Complex64::new(0.0, 0.0) {
            continue;
        }
        let d = fact.x_minus_derivative(r.t)?;
        let term = *g / (d * (r.t - k));
        acc += term;
        let slot = &mut outer[usize::from(r.family == RootFamily::Companion)];
        if r.n.unsigned_abs() >= slot.0 {
            *slot = (r.n.unsigned_abs(), term.norm());
        }
    }
    let tail_estimate = outer.iter().map(|&(n, t)| t * n as f64 / 2.0).sum();
    Ok(ResidueSeries { value: acc * (2.0 * PI * I), tail_estimate, terms: g_at_roots.len() })
}

/// ∫ G(t)/(X₋(t)(t − k)) dt along the real line by adaptive quadrature on
/// [−l, l] plus a power-law tail, for Im k < 0 and |G| ~ t^{−p}.
pub fn residue_quadrature(
    g: impl Fn(f64) -> Complex64,
    p: f64,
    k: Complex64,
    fact: &Factorization,
    l: f64,
) -> Result<Complex64> {
    let mut failure = None;
    let integrand = |t: f64| {
        let xm = match fact.at(t) {
            Ok(v) => v.x_minus,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(1.0, 0.0)
            }
        };
        g(t) / (xm * (t - k))
    };
    let panels = 2 * l.ceil() as usize;
    let rule = quad::GaussLegendre::new(16);
    let body = rule.integrate_panels(-l, l, panels, integrand);
    if let Some(e) = failure {
        return Err(e);
    }
    // beyond ±l: X₋ → 1 and G/(t − k) ≈ c·t^{−p−1}
    let right = g(l) / (l - k) * (l / p);
    let left = g(-l) / (-l - k) * (l / p);
    Ok(body + right + left)
}

/// Boundary values Ψ± of the Riemann–Hilbert problem Ψ₋ = RΨ₊ + G on a
/// grid, from Ψ₊ = −X₊T₊[G/X₋] and Ψ₋ = −X₋T₋[G/X₋].
#[derive(Debug, Clone, PartialEq)]
pub struct RhSolution {
    pub k: Vec<f64>,
    pub psi_plus: Vec<Complex64>,
    pub psi_minus: Vec<Complex64>,
    /// |Ψ₋ − RΨ₊ − G| at each grid point.
    pub jump_residual: Vec<f64>,
}

impl RhSolution {
    pub fn max_jump_residual(&self) -> f64 {
        self.jump_residual.iter().copied().fold(0.0, f64::max)
    }
}

pub fn solve_rh(g: &SampledLineFunction, fact: &Factorization, k_grid: &[f64]) -> Result<RhSolution> {
    let mut ratio = Vec::with_capacity(g.nodes().len());
    for (&s, &v) in g.nodes().iter().zip(g.values()) {
        if v == Complex64::new(0.0, 0.0) {
            ratio.push(v);
        } else {
            ratio.push(v / fact.at(s)?.x_minus);
        }
    }
    let h = g.with_values(ratio, g.decay_exponent())?;
    let homogeneous = g.values().iter().all(|v| *v == Complex64::new(0.0, 0.0));
    let mut out = RhSolution {
        k: k_grid.to_vec(),
        psi_plus: Vec::with_capacity(k_grid.len()),
        psi_minus: Vec::with_capacity(k_grid.len()),
        jump_residual: Vec::with_capacity(k_grid.len()),
    };
    for &k in k_grid {
        let f = fact.at(k)?;
        let (pp, pm) = if homogeneous {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            let bv = boundary_values(&h, k)?;
            (-f.x_plus * bv.plus, -f.x_minus * bv.minus)
        };
        let r = fact.kernel().eval(Complex64::new(k, 0.0))?;
        let gk = g.interpolate(k).0;
        out.psi_plus.push(pp);
        out.psi_minus.push(pm);
        out.jump_residual.push((pm - r * pp - gk).norm());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ker() -> RKernel {
        RKernel::new(3.0).unwrap()
    }

    #[test]
    fn kernel_values() {
        let r = ker().eval(Complex64::new(0.0, 0.0)).unwrap();
        assert!((r - Complex64::new(1.0, 1.0 / 3.0)).norm() < 1e-15);
        assert!(matches!(ker().eval(Complex64::new(0.0, 3.0)), Err(Error::Pole { .. })));
        assert!(RKernel::new(2.0).is_err());
        for x in [-40.0, -3.0, 0.0, 2.5, 17.0] {
            for y in [0.0, -0.5, -4.0] {
                assert!(ker().eval(Complex64::new(x, y)).unwrap().re > 0.0);
            }
        }
        let far = ker().eval(Complex64::new(1e4, 0.0)).unwrap();
        assert!((far - 1.0).norm() < 1.1e-4);
        let k = Complex64::new(0.7, 0.3);
        let h = 1e-6;
        let fd = (ker().eval(k + h).unwrap() - ker().eval(k - h).unwrap()) / (2.0 * h);
        assert!((fd - ker().derivative(k)).norm() < 1e-8);
    }

    #[test]
    fn indices() {
        for a in [2.1, 2.5, 3.0, 10.0] {
            assert_eq!(index_r(&RKernel::new(a).unwrap(), 1e3).unwrap(), 0);
        }
        let mobius = |k: f64| Ok(Complex64::new(k, -1.0) / Complex64::new(k, 1.0));
        assert_eq!(line_index(mobius, 1e3, 0.01).unwrap(), 1);
    }

    #[test]
    fn interpolation_is_cubic_exact() {
        let nodes = sinh_mesh(10.0, 1.0, 41);
        let f = SampledLineFunction::from_fn(nodes, |x| Complex64::new(x * x * x - x, 1.0), 1.0)
            .unwrap();
        let (v, d) = f.interpolate(0.37);
        assert!((v - Complex64::new(0.37f64.powi(3) - 0.37, 1.0)).norm() < 1e-12);
        assert!((d - Complex64::new(3.0 * 0.37 * 0.37 - 1.0, 0.0)).norm() < 1e-11);
    }

    fn upper_analytic() -> SampledLineFunction {
        SampledLineFunction::from_fn(sinh_mesh(1000.0, 1.0, 4001), |s| Complex64::new(s, 1.0).inv(), 1.0)
            .unwrap()
    }

    #[test]
    fn projections_of_upper_analytic_function() {
        let f = upper_analytic();
        let bv = boundary_values(&f, 0.0).unwrap();
        assert!((bv.plus - Complex64::new(0.0, -1.0)).norm() < 2e-3, "{bv:?}");
        assert!(bv.minus.norm() < 2e-3);
        assert!((bv.plus - bv.plus_limit).norm() < 1e-5);
        assert!((bv.minus - bv.minus_limit).norm() < 1e-5);
        let off = cauchy_integral(&f, Complex64::new(0.3, 2.0)).unwrap();
        assert!((off - Complex64::new(0.3, 3.0).inv()).norm() < 2e-3);
        let below = cauchy_integral(&f, Complex64::new(0.3, -2.0)).unwrap();
        assert!(below.norm() < 2e-3);
    }

    #[test]
    fn projection_identities() {
        let f = upper_analytic();
        let d = projection_defects(&f, 20.0).unwrap();
        assert!(d.max() < 5e-3, "{d:?}");
    }

    #[test]
    fn coarse_mesh_is_rejected() {
        let f = SampledLineFunction::from_fn(uniform_mesh(50.0, 2.0), |s| Complex64::new(s, 1.0).inv(), 1.0)
            .unwrap();
        assert!(matches!(cauchy_project(&f, 0.0, Side::Plus), Err(Error::InsufficientSampling(_))));
        assert!(matches!(cauchy_project(&f, 80.0, Side::Plus), Err(Error::InsufficientSampling(_))));
    }

    #[test]
    fn factorization_at_five() {
        let fact = Factorization::new(ker(), 1000.0).unwrap();
        assert_eq!(fact.convention(), SignConvention::Negative);
        let v = fact.at(5.0).unwrap();
        assert!((v.x_plus - 1.0).norm() < 5e-3);
        let r = ker().eval(Complex64::new(5.0, 0.0)).unwrap();
        assert!((v.x_minus - r).norm() < 5e-3);
        assert!(v.residual < 5e-3);
    }

    #[test]
    fn first_roots() {
        let r1 = solve_t_n(1, &ker()).unwrap();
        assert!((r1.t - Complex64::new(9.503_047_451_375_709, 2.254_678_720_658_555)).norm() < 1e-12);
        assert!((r1.phi - 3.219_862_144_196_123).abs() < 1e-12);
        assert!(r1.residual < 1e-12);
        let r0 = solve_t_n(0, &ker()).unwrap();
        assert!((r0.t - Complex64::new(3.5704, 1.3676)).norm() < 1e-4);
        let c0 = solve_companion(0, &ker()).unwrap();
        assert!((c0.t - Complex64::new(-1.0953, 0.8725)).norm() < 1e-4);
        let c1 = solve_companion(-1, &ker()).unwrap();
        assert!((c1.t - Complex64::new(-6.4550, 1.8797)).norm() < 1e-4);
        let r100 = solve_t_n(100, &ker()).unwrap();
        assert!((r100.beta - (200.0 * PI).ln() - 0.004_993_8).abs() < 1e-6);
        assert!((r100.phi - PI + 0.005_460_4).abs() < 1e-6);
        // implicit differentiation: dt/da = i / h′(t)
        let e = (-I * r100.t).exp();
        let dt = I / (-I * e + 1.0);
        assert!((r100.dbeta_da - dt.im).abs() < 1e-8);
        assert!((r100.dphi_da - dt.re).abs() < 1e-8);
    }

    #[test]
    fn residue_series_matches_quadrature() {
        let k = Complex64::new(0.7, -0.5);
        let g = |t: Complex64| (t + I).powi(-2);
        let fact = Factorization::new(ker(), 2.0 * PI * 42.0 + 200.0).unwrap();
        let roots = residue_roots(&ker(), 40).unwrap();
        let gs: Vec<Complex64> = roots.iter().map(|r| g(r.t)).collect();
        let series = residue_series_i1(k, &gs, &roots, &fact).unwrap();
        let reference = Complex64::new(0.362_218, -0.331_995);
        assert!((series.value - reference).norm() < 1e-3, "{series:?}");
        let zero = residue_series_i1(k, &alloc::vec![Complex64::new(0.0, 0.0); roots.len()], &roots, &fact)
            .unwrap();
        assert_eq!(zero.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rh_solve_rational_and_homogeneous() {
        let fact = Factorization::new(ker(), 1000.0).unwrap();
        let nodes = sinh_mesh(200.0, 1.0, 2001);
        let g = SampledLineFunction::from_fn(nodes.clone(), |k| Complex64::new(1.0 / (k * k + 4.0), 0.0), 2.0)
            .unwrap();
        let grid: Vec<f64> = (-20..=20).map(|j| j as f64).collect();
        let sol = solve_rh(&g, &fact, &grid).unwrap();
        assert!(sol.max_jump_residual() < 5e-3, "{}", sol.max_jump_residual());
        let zero = SampledLineFunction::from_fn(nodes, |_| Complex64::new(0.0, 0.0), 2.0).unwrap();
        let sol0 = solve_rh(&zero, &fact, &grid).unwrap();
        assert!(sol0.psi_plus.iter().chain(&sol0.psi_minus).all(|v| v.norm() == 0.0));
    }
}
