use critical_strip_core::mollifier::{mu, psi, MollifierParams};
use critical_strip_core::quad::adaptive;
use proptest::prelude::*;

proptest! {
    #[test]
    fn symmetric_and_in_range(eps in 0.005f64..0.12, x in -0.2f64..1.2) {
        let p = MollifierParams::with_epsilon(eps).unwrap();
        let v = mu(x, &p);
        prop_assert!((v - mu(1.0 - x, &p)).abs() < 1e-10);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
    }

    #[test]
    fn plateau(eps in 0.005f64..0.12, u in 0.0f64..1.0) {
        let p = MollifierParams::with_epsilon(eps).unwrap();
        let (a, b) = (0.5 + 3.0 * eps, 1.0 - 3.0 * eps);
        prop_assume!(b > a);
        let x = a + (b - a) * u;
        prop_assert!((mu(x, &p) - 1.0).abs() < 1e-10);
        prop_assert!((mu(1.0 - x, &p) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn psi_is_even(t in -1.5f64..1.5) {
        prop_assert_eq!(psi(t), psi(-t));
    }

    #[test]
    fn second_differences_settle(eps in 0.02f64..0.12, x in 0.0f64..1.0) {
        let p = MollifierParams::with_epsilon(eps).unwrap();
        let d2 = |h: f64| (mu(x + h, &p) - 2.0 * mu(x, &p) + mu(x - h, &p)) / (h * h);
        let (a, b) = (d2(1e-3 * eps), d2(5e-4 * eps));
        // ψ is smooth, so μ″ is bounded by a multiple of ε^{−2}
        prop_assert!(a.abs() * eps * eps < 20.0);
        prop_assert!((a - b).abs() * eps * eps < 1e-2);
    }
}

#[test]
fn psi_has_unit_mass() {
    let half = adaptive(0.0, 1.0, 1e-15, 16, psi);
    assert!(half.converged);
    assert!((2.0 * half.value - 1.0).abs() < 1e-12);
}
