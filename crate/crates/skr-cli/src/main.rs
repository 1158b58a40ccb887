use clap::{Parser, Subcommand, ValueEnum};
use skr_cli::config::{Format, RunConfig};
use skr_cli::report::Report;
use skr_cli::suites::{self, Suite};
use skr_cli::{dump, exit_code, table, EXIT_DISAGREE, EXIT_PASS, EXIT_USAGE};
use skr_core::error::{Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

/// Saito–Kurokawa restricted norms and the numerics behind them.
#[derive(Parser, Debug)]
#[command(name = "skr", version)]
struct Cli {
    /// Flat key = value configuration file; flags and SKR_* variables override it.
    #[arg(long, global = true, env = "SKR_CONFIG")]
    config: Option<PathBuf>,
    /// Working precision in bits for eigenforms.
    #[arg(long, global = true, env = "SKR_PREC")]
    prec: Option<u32>,
    /// Series cutoff constant C in X = C·k².
    #[arg(long = "cutoff-c", global = true, env = "SKR_CUTOFF_C")]
    cutoff_c: Option<f64>,
    /// Coefficient cache directory.
    #[arg(long, global = true, env = "SKR_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, env = "SKR_FORMAT", value_parser = ["csv", "text"])]
    format: Option<String>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, env = "SKR_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// N(F_f) beside the published values.
    Table {
        /// Even weights: 12, 10..20 or 10,12,16.
        #[arg(long, default_value = "10..20")]
        ell: String,
    },
    /// Run one verification suite.
    Verify {
        /// gauss, weil, petersson, bessel, proposition-a, euler, nv1, ichino or kz; defaults to the configured suite.
        suite: Option<String>,
        #[arg(long)]
        cmax: Option<u64>,
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long = "mn-max")]
        mn_max: Option<u64>,
        #[arg(long = "K")]
        k: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        ell: Option<String>,
    },
    /// Write coefficient files.
    Dump {
        kind: DumpKind,
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long)]
        ell: Option<u32>,
        /// Coefficients per eigenform.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Largest n, m for SK coefficients.
        #[arg(long, default_value_t = 6)]
        max: i64,
        /// Largest discriminant for Jacobi coefficients.
        #[arg(long = "dmax", default_value_t = 200)]
        d_max: usize,
        /// Output directory; files are concatenated on stdout without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The trace formula at one (m, n).
    Petersson {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 10_000)]
        cmax: u64,
    },
    /// Print the effective configuration, optionally saving it.
    Config {
        #[arg(long)]
        write: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DumpKind {
    Eigen,
    Jacobi,
    Sk,
    Restriction,
}

fn effective_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(p) = cli.prec {
        cfg.prec_bits = p;
    }
    if let Some(c) = cli.cutoff_c {
        cfg.cutoff_c = c;
    }
    if let Some(c) = &cli.cache {
        cfg.cache = Some(c.clone());
    }
    if let Some(f) = &cli.format {
        cfg.format = f.parse::<Format>()?;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{flag} is required")))
}

/// Some(report) for pass/fail commands, None for plain output.
fn run(cli: &Cli, cfg: &mut RunConfig) -> Result<Option<Report>> {
    match &cli.cmd {
        Cmd::Table { ell } => Ok(Some(table::table(&table::parse_ells(ell)?, cfg)?)),
        Cmd::Verify { suite, cmax, weight, mn_max, k, gamma, ell } => {
            let name = match suite {
                Some(s) => s.clone(),
                None => need(cfg.suite.clone(), "a suite name")?,
            };
            let s: Suite = name.parse()?;
            cfg.suite = Some(name);
            let report = match s {
                Suite::Gauss => suites::gauss(cmax.unwrap_or(500))?,
                Suite::Weil => suites::weil(mn_max.unwrap_or(20) as i64, cmax.unwrap_or(200))?,
                Suite::Petersson => {
                    let ws = weight.map(|w| vec![w]).unwrap_or_else(|| vec![12, 22]);
                    suites::petersson(&ws, &suites::square_pairs(mn_max.unwrap_or(6)), cmax.unwrap_or(10_000))?
                }
                Suite::Bessel => {
                    let ks = k.map(|k| vec![k]).unwrap_or_else(|| vec![64.0, 128.0, 256.0]);
                    let gs = gamma.map(|g| vec![g]).unwrap_or_else(|| vec![0.2, 0.5, 0.8]);
                    suites::bessel(&ks, &gs)?
                }
                Suite::PropositionA => suites::proposition_a()?,
                Suite::Euler => suites::euler(cfg.seed)?,
                Suite::Nv1 => {
                    let ells = table::parse_ells(ell.as_deref().unwrap_or("10..30"))?;
                    suites::nv1(&ells)?
                }
                Suite::Ichino => suites::ichino(weight.unwrap_or(24), cfg.cutoff_c)?,
                Suite::Kz => suites::kz(weight.unwrap_or(12))?,
            };
            Ok(Some(report))
        }
        Cmd::Dump { kind, weight, ell, n, max, d_max, out } => {
            let dumps = match kind {
                DumpKind::Eigen => dump::eigen(need(*weight, "--weight")?, *n, cfg.prec_bits, cfg.cache.as_deref())?,
                DumpKind::Jacobi => dump::jacobi(need(*ell, "--ell")?, *d_max)?,
                DumpKind::Sk => dump::sk(need(*ell, "--ell")?, *max)?,
                DumpKind::Restriction => dump::restriction(need(*ell, "--ell")?, *n)?,
            };
            print!("{}", dump::emit(&dumps, out.as_deref())?);
            Ok(None)
        }
        Cmd::Petersson { weight, m, n, cmax } => Ok(Some(suites::petersson(&[*weight], &[(*m, *n)], *cmax)?)),
        Cmd::Config { write } => {
            if let Some(p) = write {
                cfg.save(p)?;
            }
            print!("{}", cfg.to_file_string());
            Ok(None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match effective_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("skr: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let code = match run(&cli, &mut cfg) {
        Ok(Some(report)) => {
            print!("{}", report.render(cfg.format));
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_DISAGREE
            }
        }
        Ok(None) => EXIT_PASS,
        Err(e) => {
            eprintln!("skr: {e}");
            exit_code(&e)
        }
    };
    ExitCode::from(code as u8)
}
