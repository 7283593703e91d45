//! The cutoff ν_ε, the bump ψ and the plateau function μ_ε = ψ_ε * ν_ε.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Result};
use crate::quad::{self, GaussLegendre};

/// 1/σ = ∫_{−1}^{1} exp(1/(t²−1)) dt.
pub const BUMP_MASS: f64 = 0.443_993_816_168_079_4;

/// σ, the normalization of ψ.
pub const BUMP_NORMALIZATION: f64 = 2.252_283_621_043_581;

#[derive(Debug, Clone)]
pub struct MollifierParams {
    epsilon: f64,
    quad_points: usize,
    rule: GaussLegendre,
}

impl MollifierParams {
    pub fn new(epsilon: f64, quad_points: usize) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.125) {
            return Err(precondition("epsilon must lie in (0, 1/8)"));
        }
        if quad_points < 2 {
            return Err(precondition("quad_points must be at least 2"));
        }
        Ok(Self { epsilon, quad_points, rule: GaussLegendre::new(quad_points) })
    }

    /// 64 Gauss–Legendre points.
    pub fn with_epsilon(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 64)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn quad_points(&self) -> usize {
        self.quad_points
    }

    /// Band edges ε, 1/2 − 2ε, 1/2 + 2ε, 1 − ε.
    pub fn edges(&self) -> [f64; 4] {
        let e = self.epsilon;
        [e, 0.5 - 2.0 * e, 0.5 + 2.0 * e, 1.0 - e]
    }
}

/// 1 on (ε, 1/2 − 2ε) ∪ (1/2 + 2ε, 1 − ε), 0 elsewhere.
pub fn nu(x: f64, p: &MollifierParams) -> u8 {
    let [a, b, c, d] = p.edges();
    u8::from((x > a && x < b) || (x > c && x < d))
}

/// ψ(t) = σ exp(1/(t²−1)) on |t| < 1, zero outside.
pub fn psi(t: f64) -> f64 {
    let q = t * t - 1.0;
    if q >= 0.0 {
        0.0
    } else {
        BUMP_NORMALIZATION * (1.0 / q).exp()
    }
}

/// ∫_{−1}^{1} exp(1/(t²−1)) dt by adaptive Gauss–Kronrod.
pub fn bump_mass() -> f64 {
    let f = |t: f64| {
        let q = t * t - 1.0;
        if q >= 0.0 {
            0.0
        } else {
            (1.0 / q).exp()
        }
    };
    quad::adaptive(-1.0, 0.0, 1e-14, 20, f).value + quad::adaptive(0.0, 1.0, 1e-14, 20, f).value
}

/// μ_ε(x) with an error estimate from doubling the panels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuValue {
    pub value: f64,
    pub error_estimate: f64,
    /// Set when the estimate exceeds 1e-10.
    pub warning: bool,
}

/// μ_ε(x) = ∫ ψ(u) ν_ε(x − εu) du, Gauss–Legendre on two panels per
/// constant piece of the integrand.
pub fn mu(x: f64, p: &MollifierParams) -> f64 {
    mu_panels(x, p, 2)
}

pub fn mu_with_estimate(x: f64, p: &MollifierParams) -> MuValue {
    let coarse = mu_panels(x, p, 2);
    let fine = mu_panels(x, p, 4);
    let error_estimate = (fine - coarse).abs();
    MuValue { value: fine, error_estimate, warning: error_estimate > 1e-10 }
}

fn mu_panels(x: f64, p: &MollifierParams, panels: usize) -> f64 {
    let eps = p.epsilon;
    // ν(x − εu) jumps where x − εu hits an edge, i.e. at u = (x − e)/ε
    let mut cuts = [0.0f64; 6];
    let mut n = 0;
    cuts[n] = -1.0;
    n += 1;
    let mut inner = [0.0f64; 4];
    let mut k = 0;
    for e in p.edges() {
        let u = (x - e) / eps;
        if u > -1.0 && u < 1.0 {
            inner[k] = u;
            k += 1;
        }
    }
    inner[..k].sort_by(f64::total_cmp);
    for u in &inner[..k] {
        cuts[n] = *u;
        n += 1;
    }
    cuts[n] = 1.0;
    n += 1;

    let mut acc = 0.0;
    for w in cuts[..n].windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let mid = 0.5 * (a + b);
        if nu(x - eps * mid, p) == 1 {
            acc += p.rule.integrate_panels(a, b, panels, psi);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::E;

    #[test]
    fn nu_bands() {
        let p = MollifierParams::with_epsilon(0.01).unwrap();
        assert_eq!(nu(0.5, &p), 0);
        assert_eq!(nu(0.25, &p), 1);
        assert_eq!(nu(0.75, &p), 1);
        assert_eq!(nu(0.005, &p), 0);
        assert_eq!(nu(0.995, &p), 0);
        assert!(MollifierParams::with_epsilon(0.125).is_err());
        assert!(MollifierParams::with_epsilon(0.0).is_err());
    }

    #[test]
    fn psi_shape() {
        assert_eq!(psi(1.0), 0.0);
        assert_eq!(psi(-1.5), 0.0);
        assert!((psi(0.0) - BUMP_NORMALIZATION / E).abs() < 1e-15);
        assert_eq!(psi(0.3), psi(-0.3));
    }

    #[test]
    fn normalization_constants() {
        let mass = bump_mass();
        assert!((mass - BUMP_MASS).abs() < 1e-14, "{mass}");
        assert!((1.0 / mass - BUMP_NORMALIZATION).abs() < 1e-13);
        let p = MollifierParams::new(0.05, 64).unwrap();
        let total = p.rule.integrate(-1.0, 1.0, psi);
        assert!((total - 1.0).abs() < 1e-11);
        let split = p.rule.integrate_panels(-1.0, 1.0, 2, psi);
        assert!((split - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mu_plateau_centre_and_symmetry() {
        let p = MollifierParams::with_epsilon(0.05).unwrap();
        assert!(mu(0.5, &p).abs() < 1e-15);
        for x in [0.66, 0.7, 0.8, 0.84] {
            assert!((mu(x, &p) - 1.0).abs() < 1e-10, "{x}");
            assert!((mu(1.0 - x, &p) - 1.0).abs() < 1e-10);
        }
        for x in [0.02, 0.05, 0.07, 0.4, 0.43, 0.6, 0.97] {
            assert!((mu(x, &p) - mu(1.0 - x, &p)).abs() < 1e-12);
            let v = mu_with_estimate(x, &p);
            assert!(!v.warning, "{x}: {v:?}");
            assert!((0.0..=1.0 + 1e-12).contains(&v.value));
        }
        // halfway across an edge the bump splits evenly
        assert!((mu(0.05, &p) - 0.5).abs() < 1e-12);
    }
}
