//! Zeros on the critical line, their multiplicities, and the zero-free
//! rectangles D(n, ε) between consecutive zeros.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Error, Result};
use crate::zeta::{eval_zeta, hardy_z, EvalOptions, StripBox};

/// Default scan step below ordinate 100.
pub const DEFAULT_STEP: f64 = 0.02;
/// Half-width of the band around a rectangle's centre line that numerical
/// scans skip.
pub const CENTER_BAND: f64 = 1e-3;

const BISECTION_WIDTH: f64 = 1e-9;
const CONFIRM_RESIDUAL: f64 = 1e-6;
const WINDING_RADIUS: f64 = 1e-3;
const WINDING_SAMPLES: usize = 256;
const BACKLUND_C0: f64 = 2.0;

/// A zero 1/2 + iγ located by bisection of Hardy's Z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub ordinate: f64,
    pub bracket: (f64, f64),
    pub multiplicity: u32,
    /// |ζ(1/2 + iγ)| at the reported ordinate.
    pub residual: f64,
}

impl ZeroRecord {
    pub fn point(&self) -> Complex64 {
        Complex64::new(0.5, self.ordinate)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanWarning {
    /// Three samples around `t` fit a parabola that crosses zero although
    /// no sign change was seen: a close pair may have been stepped over.
    StepTooCoarse { t: f64 },
    /// A sign change whose midpoint failed the |ζ| confirmation.
    Unconfirmed { t: f64, residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroScan {
    pub zeros: Vec<ZeroRecord>,
    pub warnings: Vec<ScanWarning>,
}

impl ZeroScan {
    pub fn ordinates(&self) -> Vec<f64> {
        self.zeros.iter().map(|z| z.ordinate).collect()
    }
}

/// All sign changes of Z(t) on [t_min, t_max], bisected to 1e-9.
pub fn scan_zeros(t_min: f64, t_max: f64, step: f64) -> Result<ZeroScan> {
    if !(t_min > 0.0 && t_min < t_max && t_max <= 100.0) {
        return Err(precondition("scan needs 0 < t_min < t_max <= 100"));
    }
    if !(step > 0.0 && step <= 0.05) {
        return Err(precondition("scan step must lie in (0, 0.05]"));
    }
    let opts = EvalOptions::default();
    let count = ((t_max - t_min) / step).ceil() as usize;
    let mut ts = Vec::with_capacity(count + 1);
    let mut zs = Vec::with_capacity(count + 1);
    for j in 0..=count {
        let t = (t_min + step * j as f64).min(t_max);
        ts.push(t);
        zs.push(hardy_z(t, opts)?);
    }

    let mut out = ZeroScan { zeros: Vec::new(), warnings: Vec::new() };
    for j in 0..count {
        let (a, b) = (zs[j], zs[j + 1]);
        if a == 0.0 {
            let rec = confirm(ts[j], (ts[j], ts[j]), opts)?;
            push_confirmed(&mut out, rec);
            continue;
        }
        if a * b < 0.0 {
            let rec = bisect(ts[j], ts[j + 1], a, opts)?;
            push_confirmed(&mut out, rec);
        } else if j > 0 {
            let (p, q, r) = (zs[j - 1], a, b);
            let curv = p - 2.0 * q + r;
            if curv != 0.0 && p * q > 0.0 {
                let vertex = q - (r - p) * (r - p) / (8.0 * curv);
                let inside = {
                    let x = (p - r) / (2.0 * curv);
                    x.abs() <= 1.0
                };
                if inside && vertex * q < 0.0 {
                    out.warnings.push(ScanWarning::StepTooCoarse { t: ts[j] });
                }
            }
        }
    }
    for z in &mut out.zeros {
        z.multiplicity = multiplicity(z)?.count;
    }
    Ok(out)
}

fn push_confirmed(out: &mut ZeroScan, rec: ZeroRecord) {
    if rec.residual <= CONFIRM_RESIDUAL {
        out.zeros.push(rec);
    } else {
        out.warnings.push(ScanWarning::Unconfirmed { t: rec.ordinate, residual: rec.residual });
    }
}

fn bisect(mut lo: f64, mut hi: f64, mut z_lo: f64, opts: EvalOptions) -> Result<ZeroRecord> {
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        let z = hardy_z(mid, opts)?;
        if z == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if z * z_lo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            z_lo = z;
        }
    }
    confirm(0.5 * (lo + hi), (lo, hi), opts)
}

fn confirm(t: f64, bracket: (f64, f64), opts: EvalOptions) -> Result<ZeroRecord> {
    let residual = eval_zeta(Complex64::new(0.5, t), opts)?.norm();
    Ok(ZeroRecord { ordinate: t, bracket, multiplicity: 1, residual })
}

/// Net number of turns of `f` around the circle |s − center| = radius,
/// from phase accumulation over `samples` points.
pub fn winding_number(
    mut f: impl FnMut(Complex64) -> Result<Complex64>,
    center: Complex64,
    radius: f64,
    samples: usize,
) -> Result<i64> {
    if samples < 8 || !(radius > 0.0) {
        return Err(precondition("winding needs at least 8 samples and a positive radius"));
    }
    let at = |k: usize| center + Complex64::from_polar(radius, 2.0 * PI * k as f64 / samples as f64);
    let first = f(at(0))?;
    let mut prev = first;
    let mut total = 0.0;
    let mut max_jump = 0.0f64;
    for k in 1..=samples {
        let v = if k == samples { first } else { f(at(k))? };
        if v == Complex64::new(0.0, 0.0) || !v.is_finite() {
            return Err(Error::AmbiguousWinding { turns: f64::NAN });
        }
        let d = (v / prev).arg();
        max_jump = max_jump.max(d.abs());
        total += d;
        prev = v;
    }
    let turns = total / (2.0 * PI);
    let k = turns.round();
    if (total - 2.0 * PI * k).abs() > 0.01 || max_jump > PI / 2.0 {
        return Err(Error::AmbiguousWinding { turns });
    }
    Ok(k as i64)
}

/// Winding count of ζ around a located zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Multiplicity {
    pub count: u32,
    /// ρ < 2 ln|s_n|.
    pub backlund_ok: bool,
    /// More than one zero inside the circle: a multiple zero or a cluster.
    pub flagged: bool,
}

pub fn multiplicity(z: &ZeroRecord) -> Result<Multiplicity> {
    if z.bracket.1 - z.bracket.0 > 1e-6 {
        return Err(precondition("zero must be bracketed to 1e-6"));
    }
    let opts = EvalOptions::default();
    let center = z.point();
    let turns = winding_number(|s| eval_zeta(s, opts), center, WINDING_RADIUS, WINDING_SAMPLES)?;
    count_report(turns, center.norm())
}

/// Multiplicity of an arbitrary analytic `f` around `center`.
pub fn multiplicity_of(
    f: impl FnMut(Complex64) -> Result<Complex64>,
    center: Complex64,
    radius: f64,
) -> Result<Multiplicity> {
    let turns = winding_number(f, center, radius, WINDING_SAMPLES)?;
    count_report(turns, center.norm())
}

fn count_report(turns: i64, modulus: f64) -> Result<Multiplicity> {
    if turns < 1 {
        return Err(Error::AmbiguousWinding { turns: turns as f64 });
    }
    let count = turns as u32;
    Ok(Multiplicity {
        count,
        backlund_ok: (count as f64) < BACKLUND_C0 * modulus.ln(),
        flagged: count > 1,
    })
}

/// D(n, ε) = {ε < Re s < 1 − ε, |Im s − γ_n| < d_n, Im s ≠ γ_n} and its
/// mirror in the real axis, with d_n = (γ_{n+1} − γ_n)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleD {
    pub n: usize,
    pub epsilon: f64,
    pub center: f64,
    pub half_height: f64,
    pub re_range: (f64, f64),
    pub im_range: (f64, f64),
    pub mirror_im_range: (f64, f64),
    /// Smallest |ζ| found by the floor scan; positive on a zero-free interior.
    pub floor_min: f64,
}

impl RectangleD {
    /// Strict membership, excluding the band |Im s ∓ γ_n| < [`CENTER_BAND`].
    pub fn contains(&self, s: Complex64) -> bool {
        let inside_re = s.re > self.re_range.0 && s.re < self.re_range.1;
        let t = s.im.abs();
        let inside_im = t > self.im_range.0 && t < self.im_range.1;
        inside_re && inside_im && (t - self.center).abs() >= CENTER_BAND
    }

    pub fn boxes(&self) -> [StripBox; 2] {
        [
            StripBox { re: self.re_range, im: self.im_range },
            StripBox { re: self.re_range, im: self.mirror_im_range },
        ]
    }
}

/// Rectangle `n` (1-based) from the ordered zero list.
pub fn build_rectangle(zeros: &[ZeroRecord], n: usize, epsilon: f64) -> Result<RectangleD> {
    if !(epsilon > 0.0 && epsilon < 0.125) {
        return Err(precondition("epsilon must lie in (0, 1/8)"));
    }
    if n == 0 || n > zeros.len() {
        return Err(Error::MissingZero(n));
    }
    if n + 1 > zeros.len() {
        return Err(Error::MissingZero(n + 1));
    }
    let g = zeros[n - 1].ordinate;
    let d = (zeros[n].ordinate - g) / 2.0;
    let mut rect = RectangleD {
        n,
        epsilon,
        center: g,
        half_height: d,
        re_range: (epsilon, 1.0 - epsilon),
        im_range: (g - d, g + d),
        mirror_im_range: (-(g + d), -(g - d)),
        floor_min: 0.0,
    };
    rect.floor_min = floor_scan(&rect, 12, 24)?;
    Ok(rect)
}

/// Minimum of |ζ| on an interior grid of the upper rectangle (the mirror
/// has the same moduli).
fn floor_scan(rect: &RectangleD, n_re: usize, n_im: usize) -> Result<f64> {
    let opts = EvalOptions::default();
    let mut min = f64::INFINITY;
    let (a, b) = rect.re_range;
    let (c, d) = rect.im_range;
    for i in 1..n_re {
        let x = a + (b - a) * i as f64 / n_re as f64;
        for j in 1..n_im {
            let y = c + (d - c) * j as f64 / n_im as f64;
            let y = if (y - rect.center).abs() < CENTER_BAND {
                rect.center + CENTER_BAND.copysign(y - rect.center)
            } else {
                y
            };
            min = min.min(eval_zeta(Complex64::new(x, y), opts)?.norm());
        }
    }
    Ok(min)
}
