mod config;

use clap::{Parser, Subcommand, ValueEnum};
use rlab_core::besself::{bessel_schlafli, bessel_series, classify_regime, BesselJ};
use rlab_core::experiments::{render_csv, render_summary, run_suite, Suite, SuiteConfig, Verdict};
use rlab_core::extension::{extension_direct, extension_modal, rescale_dyadic, SpacetimePoint, MODAL_TIME_SIGN};
use rlab_core::norms::exponent_table;
use rlab_core::spherical::parse_surface_function;
use rlab_core::{Error, QuadratureSpec, Result};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rlab", version, about = "Fourier extension on the paraboloid: evaluation and scaling experiments")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "RLAB_THREADS")]
    threads: Option<usize>,
    /// Print per-claim results to stderr
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bessel functions of real order
    Bessel {
        #[command(subcommand)]
        command: BesselCommand,
    },
    /// Evaluate the extension of a surface function
    Extension {
        #[command(subcommand)]
        command: ExtensionCommand,
    },
    /// Run an experiment suite
    Experiment {
        suite: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Exponents of the angular-loss estimate
    Exponents {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
    },
}

#[derive(Subcommand)]
enum BesselCommand {
    /// Print `value method est_error`
    Eval {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        r: f64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Print the regime of (nu, r)
    Regime {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        r: f64,
    },
    /// Same as `experiment bessel`
    Suite {
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Series,
    Schlafli,
}

#[derive(Subcommand)]
enum ExtensionCommand {
    /// CSV of (t, r, theta, re, im) over the product of the given coordinates.
    /// In n=3, theta is the polar angle in the x-z plane.
    Eval {
        /// Surface function file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExtMethod::Modal)]
        method: ExtMethod,
        /// Evaluate g(xi/M) instead of g
        #[arg(long = "rescale-M", alias = "rescale-m")]
        rescale_m: Option<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        t: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        r: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        theta: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtMethod {
    Direct,
    Modal,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Config file (key = value, with [suite] sections)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::TailNotControlled(_) | Error::NonConvergent(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: cannot start {t} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Bessel { command } => bessel(command, cli.verbose),
        Command::Extension { command } => extension(command),
        Command::Experiment { suite, run } => suite.parse().and_then(|s| experiment(s, &run, cli.verbose)),
        Command::Exponents { n, q } => exponent_table(n, q).map(|t| {
            println!("{}", serde_json::to_string_pretty(&t).expect("plain struct"));
            0
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn bessel(cmd: BesselCommand, verbose: bool) -> Result<u8> {
    let quad = QuadratureSpec::default();
    match cmd {
        BesselCommand::Eval { nu, r, method } => {
            let v = match method {
                Method::Auto => BesselJ::with_spec(nu, quad).eval(r)?,
                Method::Series => bessel_series(nu, r, &quad)?,
                Method::Schlafli => bessel_schlafli(nu, r, &quad)?,
            };
            println!("{} {} {}", real(v.value), v.method, real(v.est_error));
            Ok(0)
        }
        BesselCommand::Regime { nu, r } => {
            if !(nu >= 0.0) || !(r > 0.0) {
                return Err(Error::DomainError(format!("regimes need nu >= 0 and r > 0 (got nu={nu}, r={r})")));
            }
            println!("{}", classify_regime(nu, r));
            Ok(0)
        }
        BesselCommand::Suite { run } => experiment(Suite::Bessel, &run, verbose),
    }
}

fn extension(cmd: ExtensionCommand) -> Result<u8> {
    let ExtensionCommand::Eval { input, method, rescale_m, t, r, theta } = cmd;
    let text = std::fs::read_to_string(&input).map_err(|e| Error::Config(format!("{}: {e}", input.display())))?;
    let mut g = parse_surface_function(&text)?;
    if let Some(m) = rescale_m {
        if !(m > 0.0) {
            return Err(Error::DomainError(format!("rescale factor must be positive (got {m})")));
        }
        g = rescale_dyadic(&g, m);
    }
    let quad = QuadratureSpec::default();
    let n = g.n();
    let mut out = String::from("t,r,theta,re,im\n");
    for &tt in &t {
        for &rr in &r {
            for &th in &theta {
                let dir = match n {
                    2 => vec![th.cos(), th.sin()],
                    3 => vec![th.sin(), 0.0, th.cos()],
                    _ => {
                        let mut d = vec![0.0; n];
                        d[0] = th.cos();
                        d[n - 1] = th.sin();
                        d
                    }
                };
                let p = SpacetimePoint::polar(tt, rr, dir)?;
                let v = match method {
                    ExtMethod::Direct => extension_direct(&g, &p, &quad)?,
                    ExtMethod::Modal => extension_modal(&g, &p, &quad)?,
                };
                writeln!(out, "{},{},{},{},{}", real(tt), real(rr), real(th), real(v.re), real(v.im)).expect("string write");
            }
        }
    }
    print!("{out}");
    Ok(0)
}

fn config_hash(cfg: &SuiteConfig) -> String {
    let json = serde_json::to_string(cfg).expect("config serializes");
    Sha256::digest(json.as_bytes()).iter().fold(String::new(), |mut s, b| {
        write!(s, "{b:02x}").expect("string write");
        s
    })
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Config(format!("{}: {e}", dir.join(name).display()));
    let tmp = dir.join(format!(".{name}.tmp"));
    std::fs::write(&tmp, contents).map_err(io)?;
    std::fs::rename(&tmp, dir.join(name)).map_err(io)
}

fn experiment(suite: Suite, run: &RunArgs, verbose: bool) -> Result<u8> {
    let mut cfg = match &run.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            config::load(&text, suite)?
        }
        None => SuiteConfig::defaults(suite),
    };
    if let Some(s) = run.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    std::fs::create_dir_all(&run.out).map_err(|e| Error::Config(format!("{}: {e}", run.out.display())))?;

    let outcome = run_suite(suite, &cfg)?;
    let header = vec![
        ("rlab_version".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("suite".to_string(), suite.name().to_string()),
        ("seed".to_string(), cfg.seed.to_string()),
        ("config_hash".to_string(), config_hash(&cfg)),
        ("modal_time_sign".to_string(), format!("{MODAL_TIME_SIGN:+}")),
    ];
    let csv = render_csv(&outcome, &header)?;
    let summary = render_summary(&outcome, &header);
    write_atomic(&run.out, &format!("{suite}.csv"), &csv)?;
    write_atomic(&run.out, &format!("{suite}.summary.json"), &summary)?;

    for r in &outcome.reports {
        let line = format!(
            "{:<44} {:<12} slope={:<10} C={:.4e}{}",
            r.claim,
            r.verdict.to_string(),
            r.slope.map(|s| format!("{s:.4}")).unwrap_or_else(|| "-".into()),
            r.constant,
            if r.informational { " (info)" } else { "" }
        );
        if verbose {
            eprintln!("{line}  {}", r.note);
        } else if r.verdict == Verdict::Violated && !r.informational {
            println!("{line}");
        }
    }
    let violated = outcome.violated().count();
    println!("{suite}: {} claims, {violated} violated", outcome.reports.len());
    Ok(if violated > 0 { 1 } else { 0 })
}
