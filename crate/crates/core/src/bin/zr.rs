use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use zeta_resonance::campaign::{
    emit_report, hunt_with_interrupt, parse_config, render_report, run_verify, Report, ReportFormat, VerifyKind,
};
use zeta_resonance::gcd::gcd_sum;
use zeta_resonance::resonator::{
    build_critical_resonator, build_sigma1_resonator, build_strip_resonator, resonator_stats, strip_params_from_n,
    CriticalSeed, Resonator,
};
use zeta_resonance::zeta::{EvalPoint, ZetaEvaluator, DEFAULT_PRECISION};
use zeta_resonance::{Result, ZrError};

static INTERRUPTED: AtomicBool = AtomicBool::new(false);

#[derive(Parser)]
#[command(name = "zr", version, about = "Large values of the Riemann zeta function along progressions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the zeta function.
    Zeta {
        #[command(subcommand)]
        action: ZetaAction,
    },
    /// Build and save resonators.
    Resonator {
        #[command(subcommand)]
        action: ResonatorAction,
    },
    /// Gcd-sum of a saved resonator.
    Gcdsum {
        #[arg(long)]
        resonator: PathBuf,
        #[arg(long)]
        sigma: f64,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Run the full parameter grid.
        #[arg(long)]
        grid: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a hunt campaign from a config file.
    Hunt {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Overrides `output` from the config file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        with_timing: bool,
    },
}

#[derive(Subcommand)]
enum ZetaAction {
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Strip,
    Sigma1,
    Critical,
}

#[derive(Subcommand)]
enum ResonatorAction {
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long = "T")]
        big_t: Option<u64>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        classes: Option<u32>,
        /// Derive strip parameters from N and delta.
        #[arg(long = "from-N")]
        from_n: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Poisson,
    Gcdsum,
    Reduction,
    Moments,
    #[value(name = "sigma1-ratio")]
    Sigma1Ratio,
    #[value(name = "mean-square")]
    MeanSquare,
    Gallagher,
}

impl From<Check> for VerifyKind {
    fn from(c: Check) -> Self {
        match c {
            Check::Poisson => VerifyKind::Poisson,
            Check::Gcdsum => VerifyKind::Gcdsum,
            Check::Reduction => VerifyKind::Reduction,
            Check::Moments => VerifyKind::Moments,
            Check::Sigma1Ratio => VerifyKind::Sigma1Ratio,
            Check::MeanSquare => VerifyKind::MeanSquare,
            Check::Gallagher => VerifyKind::Gallagher,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| ZrError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| ZrError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn missing(flag: &str) -> ZrError {
    ZrError::Validation(format!("--{flag} is required for this resonator kind"))
}

#[allow(clippy::too_many_arguments)]
fn build_resonator(
    kind: Kind,
    x: Option<f64>,
    ell: Option<u32>,
    big_t: Option<u64>,
    kappa: Option<f64>,
    gamma: Option<f64>,
    classes: Option<u32>,
    from_n: Option<f64>,
    delta: Option<f64>,
) -> Result<Resonator> {
    match kind {
        Kind::Strip => match from_n {
            Some(n) => {
                let p = strip_params_from_n(n, delta.ok_or_else(|| missing("delta"))?)?;
                build_strip_resonator(p.x, p.ell)
            }
            None => build_strip_resonator(x.ok_or_else(|| missing("x"))?, ell.ok_or_else(|| missing("ell"))?),
        },
        Kind::Sigma1 => build_sigma1_resonator(x.ok_or_else(|| missing("x"))?),
        Kind::Critical => {
            let d = CriticalSeed::default();
            let seed = CriticalSeed {
                gamma: gamma.unwrap_or(d.gamma),
                classes: classes.unwrap_or(d.classes),
            };
            build_critical_resonator(big_t.ok_or_else(|| missing("T"))?, kappa.unwrap_or(0.4), seed)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Zeta {
            action: ZetaAction::Eval { sigma, t, precision },
        } => {
            let v = ZetaEvaluator::default().evaluate(EvalPoint::new(sigma, t)?, precision)?;
            let out = json!({
                "sigma": sigma,
                "t": t,
                "re": v.value.re,
                "im": v.value.im,
                "modulus": v.value.norm(),
                "truncation_bound": v.truncation_bound,
                "terms": v.terms,
                "method": format!("{:?}", v.method),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Resonator {
            action:
                ResonatorAction::Build {
                    kind,
                    x,
                    ell,
                    big_t,
                    kappa,
                    gamma,
                    classes,
                    from_n,
                    delta,
                    out,
                },
        } => {
            let r = build_resonator(kind, x, ell, big_t, kappa, gamma, classes, from_n, delta)?;
            write(&out, &r.to_json()?)?;
            let summary = match resonator_stats(&r) {
                Ok(s) => serde_json::to_value(s)?,
                Err(_) => json!({"norm2": r.norm2(), "card": r.card()}),
            };
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Gcdsum { resonator, sigma } => {
            let r = Resonator::from_json(&read(&resonator)?)?;
            println!("{}", serde_json::to_string_pretty(&gcd_sum(&r, sigma)?)?);
        }
        Command::Verify {
            check,
            grid,
            format,
            out,
        } => {
            let records = run_verify(check.into(), grid)?;
            let report = Report::Verify(&records);
            match out {
                Some(p) => emit_report(&report, format.into(), &p, false)?,
                None => print!("{}", render_report(&report, format.into(), false)?),
            }
            return Ok(records.iter().all(|r| r.pass));
        }
        Command::Hunt {
            config,
            format,
            out,
            with_timing,
        } => {
            let cfg = parse_config(&read(&config)?)?;
            ctrlc::set_handler(|| INTERRUPTED.store(true, Ordering::Relaxed))
                .map_err(|e| ZrError::Validation(format!("cannot install interrupt handler: {e}")))?;
            let report = hunt_with_interrupt(&cfg, &INTERRUPTED)?;
            if report.interrupted {
                eprintln!("interrupted; writing the partial result");
            }
            let reports = [report];
            let r = Report::Hunt(&reports);
            match out.or_else(|| cfg.output_path.as_ref().map(PathBuf::from)) {
                Some(p) => emit_report(&r, format.into(), &p, with_timing)?,
                None => print!("{}", render_report(&r, format.into(), with_timing)?),
            }
        }
    }
    Ok(true)
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ZR_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ZrError::Validation(format!("ZR_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ZrError::Validation(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("zr: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("zr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
