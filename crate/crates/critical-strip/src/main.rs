use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use critical_strip::checks::Context;
use critical_strip::config::SuiteConfig;
use critical_strip::core::mollifier::{mu, psi, MollifierParams};
use critical_strip::core::prime_zeta::{f_m, prime_zeta_continued, q_m, TruncationPolicy};
use critical_strip::core::primes::sieve_primes;
use critical_strip::core::rh::{residue_roots, Factorization, RKernel};
use critical_strip::core::zeta::{
    completed_zeta, eval_log_gamma, eval_zeta, f_factor, hardy_z, riemann_siegel_theta, EvalOptions,
};
use critical_strip::io::{roots_csv, write_prime_table, write_text, zeros_csv};
use critical_strip::report::{read_reports, write_reports, Format};
use critical_strip::suite::{all_pass, run_suite};
use critical_strip::Result;
use num_complex::Complex64;
use serde_json::json;

#[derive(Parser)]
#[command(name = "critical-strip", version, about = "Numerical checks for zeta, prime zeta and the RH kernel")]
struct Cli {
    /// TOML file with suite settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    tol_scale: Option<f64>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at one point and print JSON.
    Eval {
        /// zeta, log_gamma, completed, hardy_z, theta, f, prime_zeta, q_m, f_m, mu, psi, r
        function: String,
        re: f64,
        #[arg(default_value_t = 0.0, allow_negative_numbers = true)]
        im: f64,
        #[arg(long, default_value_t = 40)]
        m: usize,
        #[arg(long, default_value_t = 0.06)]
        epsilon: f64,
        #[arg(long, default_value_t = 3.0)]
        a: f64,
    },
    /// Scan for zeros and write zeros.csv.
    Zeros,
    /// Build the configured rectangles and print them as JSON.
    Rects,
    /// Roots, factorization samples and the residue series for one kernel.
    Rh {
        #[arg(long, default_value_t = 3.0)]
        a: f64,
        #[arg(long, default_value_t = 20)]
        roots: usize,
    },
    /// Run the check suite and write the report.
    Suite {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Convert a report between formats, or write a prime table.
    Export {
        /// Report to convert (JSON or CSV).
        #[arg(long, conflicts_with = "primes")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Sieve to this limit and save the table.
        #[arg(long)]
        primes: Option<u64>,
    },
}

fn config(cli: &Cli) -> Result<SuiteConfig> {
    let mut cfg = match &cli.config {
        Some(p) => SuiteConfig::load(p)?,
        None => SuiteConfig::default(),
    };
    if let Some(t) = cli.tol_scale {
        cfg.tol_scale = t;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.out_dir = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn out_dir(cfg: &SuiteConfig) -> PathBuf {
    cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn c(z: Complex64) -> serde_json::Value {
    json!([z.re, z.im])
}

fn eval(function: &str, s: Complex64, m: usize, epsilon: f64, a: f64, cfg: &SuiteConfig) -> Result<serde_json::Value> {
    let opts = EvalOptions::default();
    let policy = TruncationPolicy::default();
    let v = match function {
        "zeta" => c(eval_zeta(s, opts)?),
        "log_gamma" => c(eval_log_gamma(s)?),
        "completed" => {
            let z = completed_zeta(s)?;
            json!({ "discrepancy": z.discrepancy(), "value": format!("{z:?}") })
        }
        "hardy_z" => json!(hardy_z(s.re, opts)?),
        "theta" => json!(riemann_siegel_theta(s.re)?),
        "f" => c(f_factor(s, epsilon)?),
        "prime_zeta" => c(prime_zeta_continued(s, &policy, &Context::new(cfg.clone()).book()?)?.value),
        "q_m" => c(q_m(s, m, &policy, &Context::new(cfg.clone()).book()?)?.value),
        "f_m" => c(f_m(s, m, &policy)?.value),
        "mu" => json!(mu(s.re, &MollifierParams::with_epsilon(epsilon)?)),
        "psi" => json!(psi(s.re)),
        "r" => c(RKernel::new(a)?.eval(s)?),
        other => return Err(critical_strip::HarnessError::Config(format!("unknown function `{other}`"))),
    };
    Ok(json!({ "function": function, "s": c(s), "value": v }))
}

fn rh(a: f64, count: usize, cfg: &SuiteConfig, dir: &Path) -> Result<serde_json::Value> {
    let ker = RKernel::new(a)?;
    let roots = residue_roots(&ker, count)?;
    let roots_path = dir.join("roots.csv");
    write_text(&roots_path, &roots_csv(&roots))?;
    let fact = Factorization::new(ker, cfg.k_max)?;
    let mut samples = Vec::new();
    for j in -10..=10 {
        let k = 5.0 * j as f64;
        let v = fact.at(k)?;
        samples.push(json!({ "k": k, "x_plus": c(v.x_plus), "x_minus": c(v.x_minus), "residual": v.residual }));
    }
    Ok(json!({
        "a": a,
        "convention": format!("{:?}", fact.convention()),
        "roots": roots_path,
        "factorization": samples,
    }))
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = config(cli)?;
    let dir = out_dir(&cfg);
    match &cli.command {
        Command::Eval { function, re, im, m, epsilon, a } => {
            let v = eval(function, Complex64::new(*re, *im), *m, *epsilon, *a, &cfg)?;
            println!("{v}");
        }
        Command::Zeros => {
            let ctx = Context::new(cfg);
            let scan = ctx.scan()?;
            let path = dir.join("zeros.csv");
            write_text(&path, &zeros_csv(&scan.zeros))?;
            for w in &scan.warnings {
                eprintln!("warning: {w:?}");
            }
            println!("{} zeros -> {}", scan.zeros.len(), path.display());
        }
        Command::Rects => {
            let ctx = Context::new(cfg.clone());
            let mut out = Vec::new();
            for &n in &cfg.rectangles {
                let r = ctx.rectangle(n, cfg.epsilon)?;
                out.push(json!({
                    "n": r.n, "epsilon": r.epsilon, "center": r.center, "half_height": r.half_height,
                    "re_range": r.re_range, "im_range": r.im_range, "floor_min": r.floor_min,
                }));
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Rh { a, roots } => {
            println!("{}", serde_json::to_string_pretty(&rh(*a, *roots, &cfg, &dir)?)?);
        }
        Command::Suite { format } => {
            let reports = run_suite(&cfg, cli.jobs)?;
            for r in &reports {
                println!(
                    "{:<28} {} residual {:.3e} tolerance {:.3e} ({:.0} ms)",
                    r.id,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.residual,
                    r.tolerance,
                    r.runtime_ms
                );
            }
            let ext = match format {
                Format::Json => "json",
                Format::Csv => "csv",
            };
            let path = dir.join(format!("report.{ext}"));
            write_reports(&reports, &path, *format)?;
            println!("{} checks -> {}", reports.len(), path.display());
            return Ok(all_pass(&reports));
        }
        Command::Export { input, format, primes } => {
            if let Some(limit) = primes {
                let table = sieve_primes(*limit)?;
                let path = dir.join(format!("primes-{limit}.txt"));
                write_prime_table(&table, &path)?;
                println!("{} primes -> {}", table.len(), path.display());
            } else if let Some(input) = input {
                let reports = read_reports(input)?;
                let ext = match format {
                    Format::Json => "json",
                    Format::Csv => "csv",
                };
                let path = dir.join(format!("report.{ext}"));
                write_reports(&reports, &path, *format)?;
                println!("{} reports -> {}", reports.len(), path.display());
            } else {
                return Err(critical_strip::HarnessError::Config("export needs --input or --primes".into()));
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
