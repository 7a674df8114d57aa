//! `coarse` — verifiable computations in coarse geometry.
//!
//! Subcommands: `verify` (machine-readable pass/fail/demonstrated reports),
//! `spaces growth|distort`, `filling scale`, `weyl inspect`,
//! `asym beta|phi`. Exit codes: 0 all checks passed or demonstrated,
//! 1 verification failure, 2 usage error, 3 aborted run.
//!
//! Output goes to stdout, or to `--out FILE`; relative `--out` paths land
//! in `$COARSE_OUT_DIR` when that is set.

use clap::{Parser, Subcommand, ValueEnum};
use coarse_cli::config::{
    self, RunConfig, SuiteKind, UsageError, DEFAULT_N_MAX, DEFAULT_SEED, DEFAULT_TRIALS,
};
use coarse_cli::tables::{self, TableFormat};
use coarse_toolkit::asymptotics::{beta_sequence, PhiFamily};
use coarse_toolkit::filling::ScalingFamily;
use coarse_toolkit::weyl::{root_system, Family};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "coarse",
    version,
    about = "Verifiable coarse-geometry computations: exact parallelepiped chains, \
             Weyl sectors, growth tables, filling oracles, exponent sequences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and print a `report-v1` JSON document.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: SuiteArg,
        /// RNG seed; identical config and seed give byte-identical reports.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Randomized instances per check.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: u32,
        /// Largest parallelepiped degree in the chain sweeps.
        #[arg(long = "n-max", default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model-space tables.
    Spaces {
        #[command(subcommand)]
        cmd: SpacesCmd,
    },
    /// Filling experiments.
    Filling {
        #[command(subcommand)]
        cmd: FillingCmd,
    },
    /// Root-system data.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Exponent sequences and φ-families.
    Asym {
        #[command(subcommand)]
        cmd: AsymCmd,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Chains,
    Weyl,
    Spaces,
    Filling,
    Asym,
    All,
}

impl SuiteArg {
    fn kinds(self) -> Vec<SuiteKind> {
        match self {
            SuiteArg::Chains => vec![SuiteKind::Chains],
            SuiteArg::Weyl => vec![SuiteKind::Weyl],
            SuiteArg::Spaces => vec![SuiteKind::Spaces],
            SuiteArg::Filling => vec![SuiteKind::Filling],
            SuiteArg::Asym => vec![SuiteKind::Asym],
            SuiteArg::All => SuiteKind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> TableFormat {
        match f {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Json => TableFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum SpacesCmd {
    /// ε-volume growth bounds per radius (CSV columns: r,lower,upper).
    Growth {
        /// Space name: z<n>, t<d>, half:<spacing>, prod:<a>,<b>,…
        #[arg(long, default_value = "z2")]
        space: String,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
        #[arg(long, default_value_t = 8)]
        rmax: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Horosphere distortion profile (CSV columns: r,d_image,2ln_r,gap).
    Distort {
        /// Map name: horo1, horo2, horo3.
        #[arg(long, default_value = "horo1")]
        map: String,
        #[arg(long, default_value_t = 10_000)]
        rmax: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScaleFamilyArg {
    Z2,
    Tree,
}

#[derive(Subcommand)]
enum FillingCmd {
    /// Fill mass against cycle size (CSV columns: ell,fill_mass).
    Scale {
        #[arg(long, value_enum, default_value_t = ScaleFamilyArg::Z2)]
        family: ScaleFamilyArg,
        #[arg(long, default_value_t = 40)]
        lmin: u64,
        #[arg(long, default_value_t = 400)]
        lmax: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    A,
    B,
    C,
    D,
    G,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
            FamilyArg::C => Family::C,
            FamilyArg::D => Family::D,
            FamilyArg::G => Family::G,
        }
    }
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Print a root system's exact data as JSON.
    Inspect {
        /// Family: a, b, c, d, or g.
        #[arg(long = "type", value_enum)]
        family: FamilyArg,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PhiFamilyArg {
    Beta,
    Harmonic,
}

#[derive(Subcommand)]
enum AsymCmd {
    /// Generate the β exponent sequence of length k with its reports.
    Beta {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a φ-family over a log grid.
    Phi {
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, value_enum, default_value_t = PhiFamilyArg::Beta)]
        family: PhiFamilyArg,
        /// Grid spec, e.g. log:1e2:1e6:9.
        #[arg(long, default_value = "log:1e2:1e6:9")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(Failure::Usage(UsageError(msg))) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

enum Failure {
    Usage(UsageError),
    Io(std::io::Error),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Verify {
            suite,
            seed,
            trials,
            n_max,
            out,
        } => {
            if n_max == 0 {
                return Err(UsageError("--n-max must be at least 1".to_string()).into());
            }
            let cfg = RunConfig {
                seed,
                trials,
                n_max,
                suites: suite.kinds(),
            };
            let report = coarse_cli::run_verify(&cfg);
            emit(&report.to_json(), out.as_deref())?;
            Ok(report.exit_code())
        }
        Cmd::Spaces { cmd } => match cmd {
            SpacesCmd::Growth {
                space,
                eps,
                rmax,
                format,
                out,
            } => {
                let sp = config::parse_space(&space)?;
                let text = tables::growth(&sp, eps, rmax, format.into())?;
                emit(&text, out.as_deref())?;
                Ok(0)
            }
            SpacesCmd::Distort {
                map,
                rmax,
                format,
                out,
            } => {
                if rmax == 0 {
                    return Err(UsageError("--rmax must be at least 1".to_string()).into());
                }
                let m = config::parse_map(&map)?;
                let text = tables::distort(&m, rmax, format.into())?;
                emit(&text, out.as_deref())?;
                Ok(0)
            }
        },
        Cmd::Filling { cmd } => match cmd {
            FillingCmd::Scale {
                family,
                lmin,
                lmax,
                format,
                out,
            } => {
                let fam = match family {
                    ScaleFamilyArg::Z2 => ScalingFamily::Z2Rectangles,
                    ScaleFamilyArg::Tree => ScalingFamily::TreeEndpoints,
                };
                let text = tables::scale(fam, lmin, lmax, format.into())?;
                emit(&text, out.as_deref())?;
                Ok(0)
            }
        },
        Cmd::Weyl { cmd } => match cmd {
            WeylCmd::Inspect { family, rank, out } => {
                let rs = root_system(family.into(), rank)
                    .map_err(|e| UsageError(e.to_string()))?;
                emit(&tables::inspect(&rs), out.as_deref())?;
                Ok(0)
            }
        },
        Cmd::Asym { cmd } => match cmd {
            AsymCmd::Beta { k, out } => {
                let seq = beta_sequence(k).map_err(|e| UsageError(e.to_string()))?;
                emit(&tables::beta(&seq), out.as_deref())?;
                Ok(0)
            }
            AsymCmd::Phi {
                k,
                family,
                grid,
                out,
            } => {
                let grid = config::parse_grid(&grid)?;
                let (fam, label) = match family {
                    PhiFamilyArg::Beta => {
                        let seq = beta_sequence(k).map_err(|e| UsageError(e.to_string()))?;
                        (PhiFamily::from_beta(seq), "beta")
                    }
                    PhiFamilyArg::Harmonic => (PhiFamily::harmonic(), "harmonic"),
                };
                let text = tables::phi(&fam, k, &grid, label)?;
                emit(&text, out.as_deref())?;
                Ok(0)
            }
        },
    }
}

/// Prints to stdout, or writes to the resolved `--out` path (relative paths
/// land in `$COARSE_OUT_DIR` when set).
fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let target = resolve_out(path);
            if let Some(parent) = target.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(&target, text)?;
            eprintln!("wrote {}", target.display());
            Ok(())
        }
    }
}

fn resolve_out(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("COARSE_OUT_DIR") {
        Some(dir) if !dir.is_empty() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}
