//! The registered checks. Each one is a pure function of the suite
//! configuration; random points come from a generator seeded by the suite
//! seed and the check id, so a check gives the same numbers alone or
//! inside a full run.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use critical_strip_core::fourier::{
    aggregate_norm, decay_check, inversion_profile, parseval, q_norms, reflection_fourier_sup,
    StripSegment,
};
use critical_strip_core::mollifier::{bump_mass, mu, MollifierParams, BUMP_MASS};
use critical_strip_core::prime_zeta::{
    prime_zeta_continued, prime_zeta_direct, q_m, reflection_residual, BranchBook,
    TruncationPolicy,
};
use critical_strip_core::primes::PrimeTable;
use critical_strip_core::rh::{
    line_index, index_r, projection_defects, residue_quadrature, residue_roots,
    residue_series_i1, sinh_mesh, solve_rh, solve_t_n, Factorization, RKernel,
    SampledLineFunction,
};
use critical_strip_core::zeros::{build_rectangle, multiplicity, scan_zeros, RectangleD, ZeroScan};
use critical_strip_core::zeta::{
    completed_zeta, eval_zeta, f_factor, functional_equation_residual, log_zeta, EvalOptions,
    Exclusions,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::SuiteConfig;
use crate::error::{HarnessError, Result};
use crate::io::cached_primes;
use crate::probe::{blowup_profile, control_probe};
use crate::report::Measured;

/// First ten zero ordinates (mpmath.zetazero, 30 digits).
pub const REFERENCE_ORDINATES: [f64; 10] = [
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

/// What a check computed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub params: BTreeMap<String, serde_json::Value>,
    pub values: BTreeMap<String, Measured>,
    pub residual: f64,
}

impl Outcome {
    pub fn new(residual: f64) -> Self {
        Self { residual, ..Self::default() }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null));
        self
    }

    pub fn value(mut self, key: &str, v: f64, route: &str) -> Self {
        self.values.insert(key.into(), Measured::new(v, route));
        self
    }
}

pub struct Check {
    pub id: &'static str,
    pub module: &'static str,
    pub tolerance: f64,
    pub run: fn(&Context) -> Result<Outcome>,
}

/// Shared inputs, computed once per suite run.
pub struct Context {
    pub cfg: SuiteConfig,
    scan: OnceLock<std::result::Result<ZeroScan, critical_strip_core::Error>>,
    primes: OnceLock<std::result::Result<PrimeTable, String>>,
    segments: OnceLock<std::result::Result<Vec<StripSegment>, critical_strip_core::Error>>,
}

impl Context {
    pub fn new(cfg: SuiteConfig) -> Self {
        Self { cfg, scan: OnceLock::new(), primes: OnceLock::new(), segments: OnceLock::new() }
    }

    pub fn scan(&self) -> Result<&ZeroScan> {
        let z = &self.cfg.zero_scan;
        self.scan
            .get_or_init(|| scan_zeros(z.t_min, z.t_max, z.step))
            .as_ref()
            .map_err(|e| e.clone().into())
    }

    pub fn book(&self) -> Result<BranchBook> {
        Ok(BranchBook::new(self.scan()?.ordinates(), self.cfg.zero_scan.t_max, 0.05)?)
    }

    pub fn primes(&self) -> Result<&PrimeTable> {
        self.primes
            .get_or_init(|| cached_primes(&self.cfg.data_dir(), self.cfg.sieve_limit).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| HarnessError::Config(e.clone()))
    }

    pub fn rectangle(&self, n: usize, epsilon: f64) -> Result<RectangleD> {
        Ok(build_rectangle(&self.scan()?.zeros, n, epsilon)?)
    }

    fn m(&self) -> usize {
        self.cfg.m_values.first().copied().unwrap_or(40)
    }

    /// One segment per configured rectangle at α = γ_n + d/2.
    pub fn segments(&self) -> Result<&[StripSegment]> {
        let built = self.segments.get_or_init(|| {
            let scan = self.scan().map_err(|_| critical_strip_core::Error::MissingZero(1))?;
            let book = BranchBook::new(scan.ordinates(), self.cfg.zero_scan.t_max, 0.05)?;
            let policy = TruncationPolicy::default();
            let mut out = Vec::new();
            for &n in &self.cfg.rectangles {
                let rect = build_rectangle(&scan.zeros, n, self.cfg.epsilon)?;
                let alpha = rect.center + 0.5 * rect.half_height;
                out.push(StripSegment::build(
                    alpha,
                    self.cfg.epsilon,
                    self.m(),
                    self.cfg.fourier_intervals,
                    &rect,
                    &policy,
                    &book,
                )?);
            }
            Ok(out)
        });
        built.as_deref().map_err(|e| e.clone().into())
    }

    pub fn rng(&self, id: &str) -> ChaCha8Rng {
        // FNV-1a of the id, mixed with the suite seed
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in id.bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.cfg.seed ^ h)
    }
}

fn strip_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let x = rng.gen_range(0.1..=0.9);
    let y: f64 = rng.gen_range(1.0..=50.0);
    Complex64::new(x, if rng.gen_bool(0.5) { -y } else { y })
}

fn half_plane_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let x = 1.1 + rng.gen_range(0.0..1.0) * 1.9;
    let x = if x <= 1.1 { 1.1 + 1e-9 } else { x };
    Complex64::new(x, rng.gen_range(-30.0..=30.0))
}

/// Horizontal branch paths run at height Im s, so both s and 1 − s are
/// unusable when Im s is close to an ordinate.
fn near_known_zero(s: Complex64, ordinates: &[f64], r: f64) -> bool {
    ordinates.iter().any(|g| (s.im.abs() - g).abs() < r)
}

fn worst(acc: &mut (f64, Complex64), r: f64, s: Complex64) {
    if !(r <= acc.0) {
        acc.0 = r;
        acc.1 = s;
    }
}

fn functional_equation(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("zeta.functional_equation");
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    for _ in 0..ctx.cfg.random_points {
        let s = strip_point(&mut rng);
        worst(&mut w, functional_equation_residual(s)?, s);
    }
    Ok(Outcome::new(w.0)
        .param("points", ctx.cfg.random_points)
        .value("max_residual", w.0, "functional_equation_residual")
        .value("worst_re", w.1.re, "sampled point")
        .value("worst_im", w.1.im, "sampled point"))
}

fn neumaier_sum(s: Complex64, n: u64) -> Complex64 {
    let (mut sr, mut cr, mut si, mut ci) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for k in 1..=n {
        let v = (-s * (k as f64).ln()).exp();
        for (sum, comp, x) in [(&mut sr, &mut cr, v.re), (&mut si, &mut ci, v.im)] {
            let t = *sum + x;
            *comp += if sum.abs() >= x.abs() { (*sum - t) + x } else { (x - t) + *sum };
            *sum = t;
        }
    }
    Complex64::new(sr + cr, si + ci)
}

fn direct_sum(ctx: &Context) -> Result<Outcome> {
    let n = ctx.cfg.direct_terms;
    let nf = n as f64;
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    for t in [0.0, 3.0, 17.5, -40.0] {
        let s = Complex64::new(2.0, t);
        let nps = (-s * nf.ln()).exp();
        let direct = neumaier_sum(s, n) + nps * nf / (s - 1.0) - nps * 0.5;
        let em = eval_zeta(s, EvalOptions::default())?;
        worst(&mut w, (em - direct).norm(), s);
    }
    Ok(Outcome::new(w.0)
        .param("terms", n)
        .value("max_difference", w.0, "eval_zeta vs compensated direct sum + integral tail"))
}

fn log_round_trip(ctx: &Context) -> Result<Outcome> {
    let ords = ctx.scan()?.ordinates();
    let ex = Exclusions::with_zero_ordinates(&ords, 0.05);
    let mut rng = ctx.rng("zeta.log_round_trip");
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    let mut used = 0;
    while used < 200 {
        let s = strip_point(&mut rng);
        if near_known_zero(s, &ords, 0.06) || s.im.abs() > ctx.cfg.zero_scan.t_max {
            continue;
        }
        used += 1;
        let l = log_zeta(s, &ex, EvalOptions::default())?;
        let z = eval_zeta(s, EvalOptions::default())?;
        worst(&mut w, (l.exp() - z).norm() / z.norm().max(1.0), s);
    }
    Ok(Outcome::new(w.0).param("points", used).value("max_relative", w.0, "exp(log_zeta) vs eval_zeta"))
}

fn f_antisymmetry(ctx: &Context) -> Result<Outcome> {
    let mut rng = ctx.rng("zeta.f_antisymmetry");
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    for _ in 0..200 {
        let s = strip_point(&mut rng);
        worst(&mut w, (f_factor(s, 0.05)? + f_factor(1.0 - s, 0.05)?).norm(), s);
    }
    Ok(Outcome::new(w.0).param("points", 200).value("max_defect", w.0, "|F(s) + F(1-s)|"))
}

fn completed_routes(_: &Context) -> Result<Outcome> {
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    for x in [0.2, 0.5, 0.8, 1.5, -0.5] {
        for y in [0.5, 1.0, 7.5, 20.0] {
            let s = Complex64::new(x, y);
            worst(&mut w, completed_zeta(s)?.discrepancy(), s);
        }
    }
    Ok(Outcome::new(w.0).value("max_discrepancy", w.0, "direct vs theta-integral route"))
}

fn cross_route(ctx: &Context) -> Result<Outcome> {
    let table = ctx.primes()?;
    let book = ctx.book()?;
    let policy = TruncationPolicy::default();
    let mut rng = ctx.rng("prime_zeta.cross_route");
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    for _ in 0..ctx.cfg.cross_route_points {
        let s = half_plane_point(&mut rng);
        let c = prime_zeta_continued(s, &policy, &book)?;
        let d = prime_zeta_direct(s, table, 1e-12)?;
        worst(&mut w, (c.value - d.value).norm(), s);
    }
    Ok(Outcome::new(w.0)
        .param("points", ctx.cfg.cross_route_points)
        .param("sieve_limit", table.limit())
        .value("max_difference", w.0, "prime_zeta_continued vs prime_zeta_direct"))
}

fn telescoping(ctx: &Context) -> Result<Outcome> {
    let table = ctx.primes()?;
    let book = ctx.book()?;
    let policy = TruncationPolicy::default();
    let mut rng = ctx.rng("prime_zeta.telescoping");
    let (mut q1, mut q2) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let s = half_plane_point(&mut rng);
        q1 = q1.max(q_m(s, 1, &policy, &book)?.value.norm());
        let p = prime_zeta_direct(s, table, 1e-12)?.value;
        q2 = q2.max((q_m(s, 2, &policy, &book)?.value - p).norm());
    }
    Ok(Outcome::new(q1.max(q2))
        .value("max_q1", q1, "|Q_1|")
        .value("max_q2_minus_p", q2, "|Q_2 - P| with P direct"))
}

fn reflection(ctx: &Context) -> Result<Outcome> {
    let book = ctx.book()?;
    let ords = book.ordinates().to_vec();
    let policy = TruncationPolicy::default();
    let mut rng = ctx.rng("prime_zeta.reflection");
    let mut w = (0.0, Complex64::new(0.0, 0.0));
    let rects: Vec<RectangleD> =
        ctx.cfg.rectangles.iter().map(|&n| ctx.rectangle(n, ctx.cfg.epsilon)).collect::<Result<_>>()?;
    let mut out = Outcome::new(0.0).param("rectangles", &ctx.cfg.rectangles).param("points", ctx.cfg.reflection_points);
    for &m in &ctx.cfg.m_values {
        let lo = (2.0 / m as f64).max(ctx.cfg.epsilon) + 1e-3;
        let mut used = 0;
        while used < ctx.cfg.reflection_points {
            let rect = &rects[used % rects.len()];
            let x = lo + (1.0 - 2.0 * lo) * rng.gen_range(0.0..1.0);
            let y = rect.center + rect.half_height * rng.gen_range(-0.95..0.95);
            let s = Complex64::new(x, if rng.gen_bool(0.5) { y } else { -y });
            if near_known_zero(s, &ords, 0.06) {
                continue;
            }
            used += 1;
            worst(&mut w, reflection_residual(s, m, &policy, &book)?, s);
        }
        out = out.param("m", m);
    }
    out.residual = w.0;
    Ok(out.value("max_residual", w.0, "reflection_residual with sheet bookkeeping"))
}

fn mollifier_symmetry(ctx: &Context) -> Result<Outcome> {
    let p = MollifierParams::with_epsilon(ctx.cfg.epsilon)?;
    let mut rng = ctx.rng("mollifier.symmetry");
    let mut w = 0.0f64;
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(-0.1..1.1);
        w = w.max((mu(x, &p) - mu(1.0 - x, &p)).abs());
    }
    Ok(Outcome::new(w).param("epsilon", ctx.cfg.epsilon).value("max_asymmetry", w, "|mu(x) - mu(1-x)|"))
}

fn mollifier_plateau(ctx: &Context) -> Result<Outcome> {
    let e = ctx.cfg.epsilon;
    let p = MollifierParams::with_epsilon(e)?;
    let (a, b) = (0.5 + 3.0 * e, 1.0 - 3.0 * e);
    let mut w = 0.0f64;
    for j in 1..200 {
        let x = a + (b - a) * j as f64 / 200.0;
        w = w.max((mu(x, &p) - 1.0).abs()).max((mu(1.0 - x, &p) - 1.0).abs());
    }
    Ok(Outcome::new(w).param("epsilon", e).value("max_plateau_defect", w, "|mu - 1| on both plateaus"))
}

fn bump_normalization(_: &Context) -> Result<Outcome> {
    let mass = bump_mass();
    let r = (mass - BUMP_MASS).abs() * (1.0 / BUMP_MASS);
    Ok(Outcome::new(r).value("bump_mass", mass, "adaptive Gauss-Kronrod"))
}

fn zero_ordinates(ctx: &Context) -> Result<Outcome> {
    let scan = ctx.scan()?;
    let expected: Vec<f64> = REFERENCE_ORDINATES
        .iter()
        .copied()
        .filter(|g| *g > ctx.cfg.zero_scan.t_min && *g < ctx.cfg.zero_scan.t_max)
        .collect();
    let found: Vec<f64> = scan.ordinates().into_iter().filter(|g| *g < REFERENCE_ORDINATES[9] + 0.5).collect();
    let mut out = Outcome::new(0.0).param("t_min", ctx.cfg.zero_scan.t_min).param("t_max", ctx.cfg.zero_scan.t_max);
    if found.len() != expected.len() {
        out.residual = f64::INFINITY;
    } else {
        out.residual = found.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    }
    out = out.value("found", found.len() as f64, "scan_zeros").value("expected", expected.len() as f64, "reference table");
    let r = out.residual;
    Ok(out.value("max_deviation", r, "scan vs reference ordinates"))
}

fn zero_multiplicity(ctx: &Context) -> Result<Outcome> {
    let scan = ctx.scan()?;
    let mut failures = 0;
    for z in &scan.zeros {
        let m = multiplicity(z)?;
        if m.count != 1 || !m.backlund_ok || m.flagged {
            failures += 1;
        }
    }
    Ok(Outcome::new(failures as f64)
        .value("zeros", scan.zeros.len() as f64, "scan_zeros")
        .value("failures", failures as f64, "winding number + Backlund bound"))
}

fn rectangle_floors(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new(0.0).param("rectangles", &ctx.cfg.rectangles);
    let mut bad = 0;
    for &n in &ctx.cfg.rectangles {
        let r = ctx.rectangle(n, ctx.cfg.epsilon)?;
        if !(r.floor_min > 0.0) {
            bad += 1;
        }
        out = out.value(&format!("floor_{n}"), r.floor_min, "grid minimum of |zeta|");
    }
    out.residual = bad as f64;
    Ok(out)
}

fn kernel_index(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new(0.0).param("a", &ctx.cfg.a_values).param("k_max", ctx.cfg.k_max);
    let mut r = 0.0;
    for &a in &ctx.cfg.a_values {
        let ind = index_r(&RKernel::new(a)?, ctx.cfg.k_max)?;
        r += (ind as f64).abs();
        out = out.value(&format!("index_a{a}"), ind as f64, "unwrapped phase with closure");
    }
    let synthetic = line_index(|k| Ok(Complex64::new(k, -1.0) / Complex64::new(k, 1.0)), ctx.cfg.k_max, 0.01)?;
    r += (synthetic as f64 - 1.0).abs();
    out.residual = r;
    Ok(out.value("index_synthetic", synthetic as f64, "(k-i)/(k+i)"))
}

fn factorization(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new(0.0).param("a", &ctx.cfg.a_values).param("k_window", ctx.cfg.k_window);
    let mut w = 0.0f64;
    for &a in &ctx.cfg.a_values {
        let ker = RKernel::new(a)?;
        let fact = Factorization::new(ker, ctx.cfg.k_max)?;
        let (mut worst_a, mut lo, mut hi) = (0.0f64, f64::INFINITY, 0.0f64);
        let steps = (2.0 * ctx.cfg.k_window / 0.5).round() as i64;
        for j in 0..=steps {
            let k = -ctx.cfg.k_window + 0.5 * j as f64;
            let v = fact.at(k)?;
            let r = ker.eval(Complex64::new(k, 0.0))?;
            worst_a = worst_a.max((v.x_plus - 1.0).norm()).max((v.x_minus - r).norm());
            lo = lo.min(v.x_minus.norm());
            hi = hi.max(v.x_minus.norm());
        }
        w = w.max(worst_a);
        out = out
            .value(&format!("max_defect_a{a}"), worst_a, "|X+ - 1|, |X- - R|")
            .value(&format!("min_abs_xminus_a{a}"), lo, "sweep")
            .value(&format!("max_abs_xminus_a{a}"), hi, "sweep")
            .value(&format!("probe_negative_a{a}"), fact.probe_residuals[0].1, "Gamma = -T ln R")
            .value(&format!("probe_positive_a{a}"), fact.probe_residuals[1].1, "Gamma = +T ln R");
    }
    out.residual = w;
    Ok(out)
}

/// f, its decay exponent and a label.
pub fn rational_family() -> Vec<(&'static str, fn(f64) -> Complex64, f64)> {
    vec![
        ("1/(s+i)", |s| Complex64::new(s, 1.0).inv(), 1.0),
        ("1/(s-2i)", |s| Complex64::new(s, -2.0).inv(), 1.0),
        ("1/(s^2+4)", |s| Complex64::new(1.0 / (s * s + 4.0), 0.0), 2.0),
        ("s/(s^2+1)^2", |s| Complex64::new(s / (s * s + 1.0).powi(2), 0.0), 3.0),
    ]
}

fn projections(_: &Context) -> Result<Outcome> {
    let nodes = sinh_mesh(1000.0, 1.0, 4001);
    let mut out = Outcome::new(0.0).param("window", 20.0).param("nodes", nodes.len());
    let mut w = 0.0f64;
    for (name, f, p) in rational_family() {
        let g = SampledLineFunction::from_fn(nodes.clone(), f, p)?;
        let d = projection_defects(&g, 20.0)?;
        w = w.max(d.max());
        out = out.value(&format!("max_defect {name}"), d.max(), "discrete L2 over |s| <= 20");
    }
    out.residual = w;
    Ok(out)
}

fn roots(ctx: &Context) -> Result<Outcome> {
    let ker = RKernel::new(3.0)?;
    let mut w = 0.0f64;
    for n in 1..=ctx.cfg.root_count as u64 {
        w = w.max(solve_t_n(n, &ker)?.residual);
    }
    let r1 = solve_t_n(1, &ker)?;
    Ok(Outcome::new(w)
        .param("a", 3.0)
        .param("count", ctx.cfg.root_count)
        .value("max_residual", w, "|R(t_n)| after Newton polish")
        .value("t1_re", r1.t.re, "solve_t_n")
        .value("t1_im", r1.t.im, "solve_t_n"))
}

fn root_asymptotics(ctx: &Context) -> Result<Outcome> {
    let ker = RKernel::new(3.0)?;
    let rs: Vec<_> = (1..=ctx.cfg.root_count as u64).map(|n| solve_t_n(n, &ker)).collect::<std::result::Result<_, _>>()?;
    let mut monotone = true;
    let mut decreasing = true;
    let (mut phi_c, mut dbeta_c) = (0.0f64, 0.0f64);
    for (i, r) in rs.iter().enumerate() {
        let n = (i + 1) as f64;
        if i > 0 && !(r.beta > rs[i - 1].beta) {
            monotone = false;
        }
        if n >= 10.0 && i + 1 < rs.len() {
            let d = (r.beta - (2.0 * PI * n).ln()).abs();
            let dn = (rs[i + 1].beta - (2.0 * PI * (n + 1.0)).ln()).abs();
            decreasing &= dn < d;
        }
        if n >= 2.0 {
            phi_c = phi_c.max((r.phi - PI).abs() * n / n.ln());
            dbeta_c = dbeta_c.max(r.dbeta_da.abs() * n * n / n.ln());
        }
    }
    let residual = if monotone && decreasing && dbeta_c.is_finite() { phi_c } else { f64::INFINITY };
    let defect = |n: usize| (rs[n - 1].beta - (2.0 * PI * n as f64).ln()).abs();
    let mut out = Outcome::new(residual)
        .param("a", 3.0)
        .value("phi_constant", phi_c, "max |phi_n - pi| n/ln n")
        .value("dbeta_constant", dbeta_c, "max |dbeta/da| n^2/ln n, central difference")
        .value("beta_monotone", f64::from(u8::from(monotone)), "beta_n")
        .value("defect_decreasing", f64::from(u8::from(decreasing)), "|beta_n - ln(2 pi n)|, n >= 10");
    for n in [10, 100, 1000] {
        if n <= rs.len() {
            out = out.value(&format!("beta_defect_{n}"), defect(n), "|beta_n - ln(2 pi n)|");
        }
    }
    Ok(out)
}

/// Right-hand sides for the RH regression cases.
pub fn rh_cases() -> Vec<(&'static str, fn(f64) -> Complex64, f64)> {
    const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
    vec![
        ("1/(k^2+4)", |k| Complex64::new(1.0 / (k * k + 4.0), 0.0), 2.0),
        ("1/(k+i)^2", |k| (Complex64::new(k, 0.0) + I).powi(-2), 2.0),
        ("k/(k-2i)^3", |k| Complex64::new(k, 0.0) / (Complex64::new(k, 0.0) - 2.0 * I).powi(3), 2.0),
    ]
}

fn rh_solve(ctx: &Context) -> Result<Outcome> {
    let fact = Factorization::new(RKernel::new(3.0)?, ctx.cfg.k_max)?;
    let nodes = sinh_mesh(200.0, 1.0, 2001);
    let grid: Vec<f64> = (-40..=40).map(|j| 0.5 * j as f64).collect();
    let mut out = Outcome::new(0.0).param("a", 3.0);
    let mut w = 0.0f64;
    for (name, g, p) in rh_cases() {
        let gs = SampledLineFunction::from_fn(nodes.clone(), g, p)?;
        let sol = solve_rh(&gs, &fact, &grid)?;
        w = w.max(sol.max_jump_residual());
        out = out.value(&format!("jump {name}"), sol.max_jump_residual(), "|Psi- - R Psi+ - G|");
    }
    let zero = SampledLineFunction::from_fn(nodes, |_| Complex64::new(0.0, 0.0), 2.0)?;
    let sol = solve_rh(&zero, &fact, &grid)?;
    let hom = sol.psi_plus.iter().chain(&sol.psi_minus).map(|v| v.norm()).fold(0.0, f64::max);
    if hom != 0.0 {
        w = f64::INFINITY;
    }
    out.residual = w;
    Ok(out.value("homogeneous_max", hom, "G = 0"))
}

fn residue_series(ctx: &Context) -> Result<Outcome> {
    let ker = RKernel::new(3.0)?;
    let n = ctx.cfg.residue_terms;
    let k = Complex64::new(0.7, -0.5);
    let g = |t: Complex64| (t + Complex64::new(0.0, 1.0)).powi(-2);
    let wide = Factorization::new(ker, 2.0 * PI * (n as f64 + 1.0) + 200.0)?;
    let rs = residue_roots(&ker, n)?;
    let gs: Vec<Complex64> = rs.iter().map(|r| g(r.t)).collect();
    let series = residue_series_i1(k, &gs, &rs, &wide)?;
    let fact = Factorization::new(ker, ctx.cfg.k_max)?;
    let quad = residue_quadrature(|t| g(Complex64::new(t, 0.0)), 2.0, k, &fact, 100.0)?;
    let d = (series.value - quad).norm();
    Ok(Outcome::new(d)
        .param("a", 3.0)
        .param("terms", n)
        .param("k", [k.re, k.im])
        .value("series_re", series.value.re, "2 pi i sum over both root families")
        .value("series_im", series.value.im, "2 pi i sum over both root families")
        .value("quadrature_re", quad.re, "Gauss-Legendre on [-100, 100] + tail")
        .value("quadrature_im", quad.im, "Gauss-Legendre on [-100, 100] + tail")
        .value("tail_estimate", series.tail_estimate, "outer terms"))
}

fn fourier_reflection(ctx: &Context) -> Result<Outcome> {
    let w = ctx.cfg.fourier_window;
    let steps = (2.0 * w / 0.1).round() as i64;
    let ks: Vec<f64> = (0..=steps).map(|j| -w + 0.1 * j as f64).collect();
    let mut out = Outcome::new(0.0).param("window", w).param("rectangles", &ctx.cfg.rectangles).param("m", ctx.m());
    let mut sup = 0.0f64;
    for (seg, n) in ctx.segments()?.iter().zip(&ctx.cfg.rectangles) {
        let r = reflection_fourier_sup(seg, &ks)?;
        sup = sup.max(r.sup);
        out = out
            .value(&format!("sup_rect{n}"), r.sup, "|I - e^{-ik} J - F~|")
            .value(&format!("mesh_error_rect{n}"), r.mesh_error, "trapezoid h vs 2h");
    }
    out.residual = sup;
    Ok(out)
}

fn fourier_decay(ctx: &Context) -> Result<Outcome> {
    let mut ratio = 0.0f64;
    for seg in ctx.segments()? {
        for y in [10.0, 100.0, 1000.0] {
            for k in [-20.0, -5.0, 0.0, 5.0, 20.0] {
                let d = decay_check(seg, k, y)?;
                ratio = ratio.max(d.i_abs / d.i_bound).max(d.j_abs / d.j_bound);
            }
        }
    }
    Ok(Outcome::new(ratio).param("y", [10.0, 100.0, 1000.0]).value("max_ratio", ratio, "|I(k - iY)| / (||Q||_2 Y^{-1/2})"))
}

fn fourier_inversion(ctx: &Context) -> Result<Outcome> {
    let seg = &ctx.segments()?[0];
    let e = seg.epsilon();
    let probes: Vec<f64> = [0.15, 0.2, 0.25, 0.3, 0.7, 0.75, 0.8, 0.85]
        .into_iter()
        .filter(|t| *t > e + 0.01 && *t < 1.0 - e - 0.01)
        .collect();
    let profile = inversion_profile(seg, 50.0, 3, &probes)?;
    let worst_ratio = profile.levels.windows(2).map(|w| w[1].1 / w[0].1).fold(0.0, f64::max);
    let mut out = Outcome::new(worst_ratio).param("probes", &probes).param("n0", 50.0).param("doublings", 3);
    for (n, err) in &profile.levels {
        out = out.value(&format!("sup_error_N{n}"), *err, "finite-N inverse transform vs samples");
    }
    Ok(out)
}

fn fourier_parseval(ctx: &Context) -> Result<Outcome> {
    let mut w = 0.0f64;
    for seg in ctx.segments()? {
        w = w.max(parseval(seg, ctx.cfg.norm_window)?.relative_defect());
    }
    Ok(Outcome::new(w).param("window", ctx.cfg.norm_window).value("max_relative_defect", w, "int |I|^2 dk vs int |Q|^2"))
}

fn fourier_aggregate(ctx: &Context) -> Result<Outcome> {
    let mut out = Outcome::new(0.0).param("a", 3.0).param("window", ctx.cfg.norm_window);
    let mut finite = true;
    for (seg, n) in ctx.segments()?.iter().zip(&ctx.cfg.rectangles) {
        let v = aggregate_norm(seg, 3.0, ctx.cfg.norm_window)?;
        let q = q_norms(seg);
        finite &= v.is_finite();
        out = out
            .value(&format!("aggregate_rect{n}"), v, "int |(I - F~)/(k - ia)|^2 + |J|^2")
            .value(&format!("q_l1_rect{n}"), q.l1, "trapezoid")
            .value(&format!("q_l2sq_rect{n}"), q.l2_squared, "trapezoid")
            .value(&format!("q_sup_rect{n}"), q.sup, "mesh max")
            .value(&format!("q_dsup_rect{n}"), q.dsup, "central differences");
    }
    out.residual = if finite { 0.0 } else { f64::INFINITY };
    Ok(out)
}

fn q_sup(ctx: &Context) -> Result<Outcome> {
    let book = ctx.book()?;
    let ords = book.ordinates().to_vec();
    let policy = TruncationPolicy::default();
    let m = ctx.m();
    let mut out = Outcome::new(0.0).param("m", m).param("rectangles", &ctx.cfg.rectangles);
    let mut finite = true;
    for &n in &ctx.cfg.rectangles {
        let rect = ctx.rectangle(n, ctx.cfg.epsilon)?;
        let mut sup = 0.0f64;
        for i in 1..8 {
            let x = rect.re_range.0 + (rect.re_range.1 - rect.re_range.0) * i as f64 / 8.0;
            for j in 1..16 {
                let y = rect.im_range.0 + (rect.im_range.1 - rect.im_range.0) * j as f64 / 16.0;
                let s = Complex64::new(x, y);
                if near_known_zero(s, &ords, 0.06) {
                    continue;
                }
                sup = sup.max(q_m(s, m, &policy, &book)?.value.norm());
            }
        }
        finite &= sup.is_finite();
        out = out.value(&format!("sup_rect{n}"), sup, "grid max of |Q_m|");
    }
    out.residual = if finite { 0.0 } else { f64::INFINITY };
    Ok(out)
}

fn blowup(ctx: &Context) -> Result<Outcome> {
    let scan = ctx.scan()?;
    let m = ctx.m();
    let mut out = Outcome::new(0.0).param("zeros", &ctx.cfg.blowup_zeros).param("deltas", &ctx.cfg.blowup_deltas);
    let mut violations = 0;
    for &z in &ctx.cfg.blowup_zeros {
        let rec = scan.zeros.get(z.wrapping_sub(1)).ok_or(critical_strip_core::Error::MissingZero(z))?;
        let p = blowup_profile(rec.ordinate, &ctx.cfg.blowup_deltas, m)?;
        violations += p.violations;
        out = out
            .value(&format!("growth_zero{z}"), p.growth_rate, "slope of |ln|zeta|| vs ln(1/delta)")
            .value(&format!("last_zero{z}"), *p.log_abs.last().unwrap_or(&0.0), "eval_zeta");
    }
    out.residual = violations as f64;
    Ok(out)
}

fn blowup_control(ctx: &Context) -> Result<Outcome> {
    let scan = ctx.scan()?;
    let z = ctx.cfg.blowup_zeros.first().copied().unwrap_or(1);
    let r = control_probe(&scan.zeros, z, &ctx.cfg.blowup_deltas, ctx.m())?;
    Ok(Outcome { params: r.params, values: r.values, residual: r.residual })
}

pub static CHECKS: &[Check] = &[
    Check { id: "blowup.approach", module: "harness", tolerance: 0.5, run: blowup },
    Check { id: "blowup.control", module: "harness", tolerance: 0.5, run: blowup_control },
    Check { id: "fourier.aggregate", module: "fourier-strip", tolerance: 1.0, run: fourier_aggregate },
    Check { id: "fourier.decay", module: "fourier-strip", tolerance: 1.0, run: fourier_decay },
    Check { id: "fourier.inversion", module: "fourier-strip", tolerance: 1.0, run: fourier_inversion },
    Check { id: "fourier.parseval", module: "fourier-strip", tolerance: 0.02, run: fourier_parseval },
    Check { id: "fourier.reflection", module: "fourier-strip", tolerance: 1e-6, run: fourier_reflection },
    Check { id: "mollifier.normalization", module: "mollifier", tolerance: 1e-12, run: bump_normalization },
    Check { id: "mollifier.plateau", module: "mollifier", tolerance: 1e-10, run: mollifier_plateau },
    Check { id: "mollifier.symmetry", module: "mollifier", tolerance: 1e-10, run: mollifier_symmetry },
    Check { id: "prime_zeta.cross_route", module: "prime-zeta", tolerance: 1e-8, run: cross_route },
    Check { id: "prime_zeta.reflection", module: "prime-zeta", tolerance: 1e-7, run: reflection },
    Check { id: "prime_zeta.telescoping", module: "prime-zeta", tolerance: 1e-9, run: telescoping },
    Check { id: "rh.factorization", module: "hilbert-rh", tolerance: 5e-3, run: factorization },
    Check { id: "rh.index", module: "hilbert-rh", tolerance: 0.5, run: kernel_index },
    Check { id: "rh.projections", module: "hilbert-rh", tolerance: 5e-3, run: projections },
    Check { id: "rh.residue_series", module: "hilbert-rh", tolerance: 1e-3, run: residue_series },
    Check { id: "rh.root_asymptotics", module: "hilbert-rh", tolerance: 10.0, run: root_asymptotics },
    Check { id: "rh.roots", module: "hilbert-rh", tolerance: 1e-12, run: roots },
    Check { id: "rh.solve", module: "hilbert-rh", tolerance: 5e-3, run: rh_solve },
    Check { id: "strip.q_sup", module: "prime-zeta", tolerance: 1.0, run: q_sup },
    Check { id: "zeros.multiplicity", module: "zeros-strip", tolerance: 0.5, run: zero_multiplicity },
    Check { id: "zeros.ordinates", module: "zeros-strip", tolerance: 1e-6, run: zero_ordinates },
    Check { id: "zeros.rectangles", module: "zeros-strip", tolerance: 0.5, run: rectangle_floors },
    Check { id: "zeta.completed_routes", module: "zeta-engine", tolerance: 1e-8, run: completed_routes },
    Check { id: "zeta.direct_sum", module: "zeta-engine", tolerance: 1e-12, run: direct_sum },
    Check { id: "zeta.f_antisymmetry", module: "zeta-engine", tolerance: 1e-10, run: f_antisymmetry },
    Check { id: "zeta.functional_equation", module: "zeta-engine", tolerance: 1e-8, run: functional_equation },
    Check { id: "zeta.log_round_trip", module: "zeta-engine", tolerance: 1e-9, run: log_round_trip },
];

pub fn find(id: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.id == id)
}
