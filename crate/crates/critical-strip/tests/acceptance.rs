//! End-to-end acceptance run. One line per criterion; exits nonzero if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use critical_strip::checks::{rational_family, rh_cases};
use critical_strip::probe::blowup_profile;
use critical_strip_core::fourier::{decay_check, inversion_profile, reflection_fourier_sup, StripSegment};
use critical_strip_core::mollifier::{mu, MollifierParams};
use critical_strip_core::prime_zeta::{
    prime_zeta_continued, prime_zeta_direct, q_m, reflection_residual, BranchBook, TruncationPolicy,
};
use critical_strip_core::primes::sieve_primes;
use critical_strip_core::rh::{
    index_r, projection_defects, residue_quadrature, residue_roots, residue_series_i1, sinh_mesh,
    solve_rh, solve_t_n, Factorization, RKernel, SampledLineFunction,
};
use critical_strip_core::zeros::{build_rectangle, multiplicity, scan_zeros, ZeroRecord};
use critical_strip_core::zeta::{eval_zeta, functional_equation_residual, EvalOptions};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn require(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn zeros() -> Vec<ZeroRecord> {
    scan_zeros(10.0, 50.0, 0.02).expect("zero scan").zeros
}

fn book(zs: &[ZeroRecord]) -> BranchBook {
    BranchBook::new(zs.iter().map(|z| z.ordinate).collect(), 50.0, 0.05).expect("branch book")
}

fn functional_equation() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut fe, mut vs) = (0.0f64, 0.0f64);
    for i in 0..1000 {
        let s = Complex64::new(rng.gen_range(0.01..0.99), rng.gen_range(-50.0..50.0));
        fe = fe.max(functional_equation_residual(s).map_err(|e| e.to_string())?);
        if i % 20 == 0 {
            let z = eval_zeta(s, EvalOptions::default()).map_err(|e| e.to_string())?;
            let o = oracle::zeta(s);
            vs = vs.max((z - o).norm() / o.norm().max(1.0));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    require(
        fe < 1e-8 && vs < 1e-8 && secs < 60.0,
        format!("max residual {fe:.2e}, vs oracle {vs:.2e}, {secs:.1} s"),
    )
}

fn mobius_continuation() -> Outcome {
    let start = Instant::now();
    let table = sieve_primes(10_000_000).map_err(|e| e.to_string())?;
    let zs = zeros();
    let b = book(&zs);
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s = Complex64::new(rng.gen_range(1.1..3.0), rng.gen_range(-30.0..30.0));
        let c = prime_zeta_continued(s, &policy, &b).map_err(|e| e.to_string())?;
        let d = prime_zeta_direct(s, &table, 1e-12).map_err(|e| e.to_string())?;
        worst = worst.max((c.value - d.value).norm());
    }
    let secs = start.elapsed().as_secs_f64();
    require(worst < 1e-8 && secs < 120.0, format!("max difference {worst:.2e}, {secs:.1} s with sieve"))
}

fn telescoping() -> Outcome {
    let table = sieve_primes(10_000_000).map_err(|e| e.to_string())?;
    let b = book(&zeros());
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut q1, mut q2) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let s = Complex64::new(rng.gen_range(1.1..3.0), rng.gen_range(-30.0..30.0));
        q1 = q1.max(q_m(s, 1, &policy, &b).map_err(|e| e.to_string())?.value.norm());
        let p = prime_zeta_direct(s, &table, 1e-12).map_err(|e| e.to_string())?.value;
        q2 = q2.max((q_m(s, 2, &policy, &b).map_err(|e| e.to_string())?.value - p).norm());
    }
    require(q1 < 1e-9 && q2 < 1e-9, format!("|Q1| {q1:.2e}, |Q2 - P| {q2:.2e}"))
}

fn reflection() -> Outcome {
    let zs = zeros();
    let b = book(&zs);
    let ords: Vec<f64> = zs.iter().map(|z| z.ordinate).collect();
    let policy = TruncationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut used = 0;
    while used < 50 {
        let rect = build_rectangle(&zs, used % 3 + 1, 0.06).map_err(|e| e.to_string())?;
        let x = rng.gen_range(0.07..0.93);
        let y = rect.center + rect.half_height * rng.gen_range(-0.95..0.95);
        if ords.iter().any(|g| (y - g).abs() < 0.06) {
            continue;
        }
        let s = Complex64::new(x, if rng.gen_bool(0.5) { y } else { -y });
        if !rect.contains(s) {
            continue;
        }
        used += 1;
        worst = worst.max(reflection_residual(s, 40, &policy, &b).map_err(|e| e.to_string())?);
    }
    require(worst < 1e-7, format!("max residual {worst:.2e} at 50 points, m = 40"))
}

fn mollifier() -> Outcome {
    let (mut sym, mut plat) = (0.0f64, 0.0f64);
    for eps in [0.01, 0.03, 0.05, 0.06, 0.08] {
        let p = MollifierParams::with_epsilon(eps).map_err(|e| e.to_string())?;
        for j in 0..=1000 {
            let x = -0.05 + 1.1 * j as f64 / 1000.0;
            sym = sym.max((mu(x, &p) - mu(1.0 - x, &p)).abs());
        }
        let (a, b) = (0.5 + 3.0 * eps, 1.0 - 3.0 * eps);
        for j in 1..500 {
            let x = a + (b - a) * j as f64 / 500.0;
            plat = plat.max((mu(x, &p) - 1.0).abs());
        }
    }
    require(sym < 1e-10 && plat < 1e-10, format!("asymmetry {sym:.2e}, plateau defect {plat:.2e}"))
}

fn zero_location() -> Outcome {
    let zs = zeros();
    let expected = oracle::zero_ordinates(10.0, 50.0);
    if zs.len() != expected.len() || zs.len() != 10 {
        return Err(format!("found {} zeros, oracle {}", zs.len(), expected.len()));
    }
    let dev = zs.iter().zip(&expected).map(|(z, g)| (z.ordinate - g).abs()).fold(0.0, f64::max);
    let mut simple = true;
    for z in &zs {
        let m = multiplicity(z).map_err(|e| e.to_string())?;
        simple &= m.count == 1 && m.backlund_ok;
    }
    require(dev < 1e-6 && simple, format!("max deviation {dev:.2e}, all simple with Backlund bound: {simple}"))
}

fn factorization() -> Outcome {
    let mut worst = 0.0f64;
    let mut indices = Vec::new();
    for a in [2.1, 2.5, 3.0, 10.0] {
        let ker = RKernel::new(a).map_err(|e| e.to_string())?;
        indices.push(index_r(&ker, 1000.0).map_err(|e| e.to_string())?);
        let f = Factorization::new(ker, 1000.0).map_err(|e| e.to_string())?;
        for j in -200..=200 {
            let k = 0.25 * j as f64;
            let v = f.at(k).map_err(|e| e.to_string())?;
            let r = ker.eval(Complex64::new(k, 0.0)).map_err(|e| e.to_string())?;
            worst = worst.max((v.x_plus - 1.0).norm()).max((v.x_minus - r).norm());
        }
    }
    require(
        indices.iter().all(|i| *i == 0) && worst < 5e-3,
        format!("indices {indices:?}, max |X+ - 1|, |X- - R| = {worst:.2e}"),
    )
}

fn projections() -> Outcome {
    let nodes = sinh_mesh(1000.0, 1.0, 4001);
    let mut worst = 0.0f64;
    for (_, f, p) in rational_family() {
        let g = SampledLineFunction::from_fn(nodes.clone(), f, p).map_err(|e| e.to_string())?;
        worst = worst.max(projection_defects(&g, 20.0).map_err(|e| e.to_string())?.max());
    }
    require(worst < 5e-3, format!("max defect {worst:.2e} over five identities, four functions"))
}

fn roots() -> Outcome {
    let start = Instant::now();
    let ker = RKernel::new(3.0).map_err(|e| e.to_string())?;
    let rs = (1..=1000u64).map(|n| solve_t_n(n, &ker)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let res = rs.iter().map(|r| r.residual).fold(0.0, f64::max);
    let defect = |i: usize| (rs[i].beta - (2.0 * PI * (i + 1) as f64).ln()).abs();
    let decreasing = (9..999).all(|i| defect(i + 1) < defect(i));
    let (mut phi_c, mut dbeta_c, mut implicit) = (0.0f64, 0.0f64, 0.0f64);
    for (i, r) in rs.iter().enumerate().skip(1) {
        let n = (i + 1) as f64;
        phi_c = phi_c.max((r.phi - PI).abs() * n / n.ln());
        dbeta_c = dbeta_c.max(r.dbeta_da.abs() * n * n / n.ln());
        // dt/da = i/h'(t) for h(t) = e^{-it} + t - ia
        let dh = -Complex64::i() * (-Complex64::i() * r.t).exp() + 1.0;
        implicit = implicit.max((r.dbeta_da - (Complex64::i() / dh).im).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    require(
        res < 1e-12 && decreasing && phi_c < 10.0 && dbeta_c.is_finite() && implicit < 1e-6 && secs < 60.0,
        format!(
            "max |R(t_n)| {res:.2e}, defect decreasing {decreasing}, phi constant {phi_c:.3}, \
             dbeta constant {dbeta_c:.3}, vs implicit {implicit:.1e}, {secs:.1} s"
        ),
    )
}

fn rh_solve() -> Outcome {
    let fact = Factorization::new(RKernel::new(3.0).map_err(|e| e.to_string())?, 1000.0).map_err(|e| e.to_string())?;
    let nodes = sinh_mesh(200.0, 1.0, 2001);
    let grid: Vec<f64> = (-40..=40).map(|j| 0.5 * j as f64).collect();
    let mut worst = 0.0f64;
    for (_, g, p) in rh_cases() {
        let gs = SampledLineFunction::from_fn(nodes.clone(), g, p).map_err(|e| e.to_string())?;
        worst = worst.max(solve_rh(&gs, &fact, &grid).map_err(|e| e.to_string())?.max_jump_residual());
    }
    let zero = SampledLineFunction::from_fn(nodes, |_| Complex64::new(0.0, 0.0), 2.0).map_err(|e| e.to_string())?;
    let sol = solve_rh(&zero, &fact, &grid).map_err(|e| e.to_string())?;
    let hom = sol.psi_plus.iter().chain(&sol.psi_minus).all(|v| *v == Complex64::new(0.0, 0.0));
    require(worst < 5e-3 && hom, format!("max jump residual {worst:.2e}, homogeneous identically zero: {hom}"))
}

fn residue_series() -> Outcome {
    let ker = RKernel::new(3.0).map_err(|e| e.to_string())?;
    let n = 500;
    let k = Complex64::new(0.7, -0.5);
    let g = |t: Complex64| (t + Complex64::i()).powi(-2);
    let wide = Factorization::new(ker, 2.0 * PI * (n as f64 + 1.0) + 200.0).map_err(|e| e.to_string())?;
    let rs = residue_roots(&ker, n).map_err(|e| e.to_string())?;
    let gs: Vec<Complex64> = rs.iter().map(|r| g(r.t)).collect();
    let series = residue_series_i1(k, &gs, &rs, &wide).map_err(|e| e.to_string())?;
    let fact = Factorization::new(ker, 1000.0).map_err(|e| e.to_string())?;
    let quad = residue_quadrature(|t| g(Complex64::new(t, 0.0)), 2.0, k, &fact, 100.0).map_err(|e| e.to_string())?;
    let d = (series.value - quad).norm();
    require(d < 1e-3, format!("series {:.6} vs quadrature {:.6}: {d:.2e}", series.value, quad))
}

fn fourier_strip() -> Outcome {
    let zs = zeros();
    let b = book(&zs);
    let policy = TruncationPolicy::default();
    let ks: Vec<f64> = (-200..=200).map(|j| 0.1 * j as f64).collect();
    let (mut refl, mut decay_ok, mut monotone) = (0.0f64, true, true);
    let mut final_errors = Vec::new();
    for n in 1..=3 {
        let rect = build_rectangle(&zs, n, 0.06).map_err(|e| e.to_string())?;
        let seg = StripSegment::build(rect.center + 0.5 * rect.half_height, 0.06, 40, 4096, &rect, &policy, &b)
            .map_err(|e| e.to_string())?;
        refl = refl.max(reflection_fourier_sup(&seg, &ks).map_err(|e| e.to_string())?.sup);
        for y in [10.0, 100.0, 1000.0] {
            for k in [-20.0, -5.0, 0.0, 5.0, 20.0] {
                decay_ok &= decay_check(&seg, k, y).map_err(|e| e.to_string())?.holds();
            }
        }
        let probes = [0.15, 0.2, 0.3, 0.7, 0.8, 0.85];
        let prof = inversion_profile(&seg, 50.0, 3, &probes).map_err(|e| e.to_string())?;
        monotone &= prof.levels.windows(2).all(|w| w[1].1 < w[0].1);
        final_errors.push(format!("{:.1e}", prof.levels.last().map(|l| l.1).unwrap_or(f64::NAN)));
    }
    require(
        refl < 1e-6 && decay_ok && monotone,
        format!(
            "reflection sup {refl:.2e}, decay bounds hold {decay_ok}, inversion shrinking {monotone} \
             (final errors {})",
            final_errors.join(", ")
        ),
    )
}

fn blowup() -> Outcome {
    let zs = zeros();
    let deltas = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
    let mut lines = Vec::new();
    let mut ok = true;
    for z in &zs[..3] {
        let p = blowup_profile(z.ordinate, &deltas, 40).map_err(|e| e.to_string())?;
        ok &= p.violations == 0 && p.log_abs.windows(2).all(|w| w[1] > w[0]);
        // same approach through the independent zeta
        let o: Vec<f64> = deltas
            .iter()
            .map(|d| oracle::zeta(Complex64::new(0.5 + d, z.ordinate - d)).norm().ln().abs())
            .collect();
        ok &= o.windows(2).all(|w| w[1] > w[0]);
        lines.push(format!("{:.2}", p.log_abs.last().copied().unwrap_or(f64::NAN)));
    }
    require(ok, format!("strictly increasing at zeros 1-3, final |ln|zeta|| {}", lines.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("functional equation", functional_equation),
        ("Mobius continuation", mobius_continuation),
        ("telescoping identities", telescoping),
        ("reflection identity", reflection),
        ("mollifier symmetry and plateau", mollifier),
        ("zero location", zero_location),
        ("index and factorization", factorization),
        ("projection identities", projections),
        ("roots of R", roots),
        ("RH solve", rh_solve),
        ("residue series", residue_series),
        ("Fourier strip", fourier_strip),
        ("blow-up probe", blowup),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {name:<32} {tag} ({secs:.1} s) {detail}", i + 1);
    }
    println!("{} of 13 criteria passed", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
