//! Reference implementations used as oracles. They share no code with the
//! library.

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// B_2, B_4, …, B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Plain Euler–Maclaurin with a fixed cutoff of 60 terms, good to ~1e-12
/// for |Im s| ≤ 100.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = 60.0f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..60 {
        acc += (-s * (k as f64).ln()).exp();
    }
    let nps = (-s * n.ln()).exp();
    acc += nps * n / (s - 1.0) + nps * 0.5;
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = nps / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc += rising * npow * (*b / fact);
        let k = 2 * j + 2;
        rising *= (s + k as f64 - 1.0) * (s + k as f64);
        fact *= ((k + 1) * (k + 2)) as f64;
        npow /= n * n;
    }
    acc
}

/// Asymptotic Riemann–Siegel θ, accurate to ~1e-10 for t ≥ 10.
pub fn theta(t: f64) -> f64 {
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

pub fn hardy_z(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta(t)) * zeta(Complex64::new(0.5, t))).re
}

/// Zero ordinates in (t_min, t_max) from sign changes of Z on a 0.01
/// grid, refined by bisection to 1e-12.
pub fn zero_ordinates(t_min: f64, t_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let steps = ((t_max - t_min) / 0.01).ceil() as usize;
    let mut a = t_min;
    let mut za = hardy_z(a);
    for j in 1..=steps {
        let b = (t_min + 0.01 * j as f64).min(t_max);
        let zb = hardy_z(b);
        if za * zb < 0.0 {
            let (mut lo, mut hi, mut zlo) = (a, b, za);
            while hi - lo > 1e-12 {
                let mid = 0.5 * (lo + hi);
                let zm = hardy_z(mid);
                if zm * zlo <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    zlo = zm;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        a = b;
        za = zb;
    }
    out
}

/// Σ_{n≤N} n^{−s} with Neumaier compensation.
pub fn direct_sum(s: Complex64, n: u64) -> Complex64 {
    let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 1..=n {
        let v = (-s * (k as f64).ln()).exp();
        for (sum, comp, x) in [(&mut sr, &mut cr, v.re), (&mut si, &mut ci, v.im)] {
            let t = *sum + x;
            if sum.abs() >= x.abs() {
                *comp += (*sum - t) + x;
            } else {
                *comp += (x - t) + *sum;
            }
            *sum = t;
        }
    }
    Complex64::new(sr + cr, si + ci)
}

/// First ten ordinates, mpmath.zetazero at 30 digits.
pub const ZERO_ORDINATES: [f64; 10] = [
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
