//! `tsl`: analyze Toeplitz-like operators with rational symbols that may
//! have poles on the unit circle.
//!
//! Exit codes: 0 success, 1 usage errors, 2 domain errors (not invertible,
//! argument outside the domain, unsupported symbol class), 3 numerical
//! failures (root finding did not converge).

mod demo;
mod render;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use toeplitz_core::encode::{
    ApplyJson, FactorJson, GrowthJson, KernelJson, MatrixJson, PolyJson, ReportJson, SymbolJson,
};
use toeplitz_core::factor::factorize;
use toeplitz_core::fredholm::{analyze, apply_inverse, kernel_basis};
use toeplitz_core::matrixrep::{growth_check, symbol_coefficients, truncated_matrix};
use toeplitz_core::symbol::{apply_toeplitz, RationalFn};
use toeplitz_core::{Error, Tolerances};

/// Tolerance profile environment variable: `standard`, `strict` or
/// `relaxed`.
const PROFILE_ENV: &str = "TSL_TOLERANCE_PROFILE";

#[derive(Parser)]
#[command(
    name = "tsl",
    about = "Fredholm analysis, factorization and matrix representations of Toeplitz-like operators with rational symbols",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Half-width of the band classified as "on the unit circle".
    #[arg(long, global = true)]
    tol_circle: Option<f64>,

    /// Radius for merging nearby roots into one multiple root.
    #[arg(long, global = true)]
    tol_cluster: Option<f64>,

    /// Residual bound for accepting a polynomial root.
    #[arg(long, global = true)]
    tol_root: Option<f64>,

    /// Residual bound for accepting reconstruction identities.
    #[arg(long, global = true)]
    tol_res: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Fredholm report: index, kernel dimension, range codimension,
    /// invertibility, zero/pole censuses.
    Analyze {
        /// Symbol as inline JSON or a path to a JSON file.
        #[arg(long)]
        symbol: String,
    },
    /// Wiener-Hopf-like factorization into inside, circle and outside
    /// factors.
    Factor {
        #[arg(long)]
        symbol: String,
    },
    /// Basis of the operator's kernel.
    Kernel {
        #[arg(long)]
        symbol: String,
    },
    /// Finite section of the Toeplitz matrix representation.
    Matrix {
        #[arg(long)]
        symbol: String,
        /// Section size N (the matrix is N x N).
        #[arg(long, default_value_t = 8)]
        size: usize,
        /// Coefficient window for the growth diagnostics.
        #[arg(long)]
        window: Option<usize>,
        /// Append coefficient growth diagnostics.
        #[arg(long, default_value_t = false)]
        check_growth: bool,
    },
    /// Apply the operator to a rational argument analytic on the closed
    /// disc.
    Apply {
        #[arg(long)]
        symbol: String,
        /// Argument as polynomial or symbol JSON (inline or file path).
        #[arg(long)]
        arg: String,
    },
    /// Apply the inverse operator (symbol must be Fredholm of index zero).
    Invert {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        arg: String,
    },
    /// Run the built-in demo corpus and report PASS/FAIL per case.
    Demo,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NoConvergence { .. } => 3,
        Error::Precondition(_) => 1,
        _ => 2,
    }
}

fn tolerances(cli: &Cli) -> Result<Tolerances<f64>, String> {
    let mut tol = match std::env::var(PROFILE_ENV) {
        Ok(name) => Tolerances::profile(&name)
            .ok_or_else(|| format!("unknown tolerance profile {name:?} in {PROFILE_ENV}"))?,
        Err(_) => Tolerances::standard(),
    };
    if let Some(v) = cli.tol_circle {
        tol.circle_tol = v;
    }
    if let Some(v) = cli.tol_cluster {
        tol.delta_cluster = v;
    }
    if let Some(v) = cli.tol_root {
        tol.tau_root = v;
    }
    if let Some(v) = cli.tol_res {
        tol.tau_res = v;
    }
    if !(tol.circle_tol > 0.0 && tol.delta_cluster > 0.0 && tol.tau_root > 0.0 && tol.tau_res > 0.0)
    {
        return Err("tolerances must be positive".to_string());
    }
    Ok(tol)
}

/// Inline JSON (starts with '{') or a file path.
fn read_inline_or_file(value: &str) -> Result<String, String> {
    let trimmed = value.trim_start();
    if trimmed.starts_with('{') {
        Ok(value.to_string())
    } else {
        std::fs::read_to_string(value).map_err(|e| format!("cannot read {value}: {e}"))
    }
}

fn parse_symbol(value: &str, tol: &Tolerances<f64>) -> Result<RationalFn<f64>, Error> {
    let text = read_inline_or_file(value).map_err(Error::Precondition)?;
    let json = SymbolJson::parse(&text)?;
    json.to_rational(tol)
}

/// Arguments accept either a full symbol or a bare polynomial.
fn parse_argument(value: &str, tol: &Tolerances<f64>) -> Result<RationalFn<f64>, Error> {
    let text = read_inline_or_file(value).map_err(Error::Precondition)?;
    if let Ok(sym) = SymbolJson::parse(&text) {
        return sym.to_rational(tol);
    }
    let poly: PolyJson = serde_json::from_str(&text)
        .map_err(|e| Error::Precondition(format!("invalid polynomial JSON: {e}")))?;
    let fac = poly.to_factored(tol)?;
    RationalFn::from_factored(
        fac,
        toeplitz_core::symbol::Factored::new(Vec::new(), toeplitz_core::C64::new(1.0, 0.0)),
        tol,
    )
}

fn run(cli: &Cli) -> Result<String, Error> {
    let tol = tolerances(cli).map_err(Error::Precondition)?;
    match &cli.command {
        Command::Analyze { symbol } => {
            let omega = parse_symbol(symbol, &tol)?;
            let report = analyze(&omega, &tol)?;
            let json = ReportJson::from_report(&report);
            Ok(match cli.format {
                Format::Text => render::report_text(&report),
                _ => to_pretty_json(&json),
            })
        }
        Command::Factor { symbol } => {
            let omega = parse_symbol(symbol, &tol)?;
            let wh = factorize(&omega, &tol)?;
            let residual = wh.reconstruction_residual(&omega, 64);
            let json = FactorJson {
                omega_minus: SymbolJson::from_rational(&wh.omega_minus),
                kappa: wh.kappa,
                omega0: SymbolJson::from_rational(&wh.omega0),
                omega_plus: SymbolJson::from_rational(&wh.omega_plus),
                reconstruction_residual: residual,
            };
            Ok(match cli.format {
                Format::Text => render::factor_text(&wh, residual),
                _ => to_pretty_json(&json),
            })
        }
        Command::Kernel { symbol } => {
            let omega = parse_symbol(symbol, &tol)?;
            let basis = kernel_basis(&omega, &tol)?;
            let json = KernelJson {
                dimension: basis.len(),
                basis: basis.iter().map(SymbolJson::from_rational).collect(),
            };
            Ok(match cli.format {
                Format::Text => render::kernel_text(&basis),
                _ => to_pretty_json(&json),
            })
        }
        Command::Matrix {
            symbol,
            size,
            window,
            check_growth,
        } => {
            let omega = parse_symbol(symbol, &tol)?;
            let m = truncated_matrix(&omega, *size, &tol)?;
            let growth = if *check_growth {
                let w = window.unwrap_or(64).max(16);
                let sc = symbol_coefficients(&omega, w, &tol)?;
                let g = growth_check(&sc);
                Some(GrowthJson::from_growth(&sc, &g))
            } else {
                None
            };
            match cli.format {
                Format::Csv => Ok(render::matrix_csv(&m, growth.as_ref())),
                Format::Text => Ok(render::matrix_text(&m, growth.as_ref())),
                Format::Json => {
                    let mut json = MatrixJson::from_matrix(&m);
                    json.growth = growth;
                    Ok(to_pretty_json(&json))
                }
            }
        }
        Command::Apply { symbol, arg } => {
            let omega = parse_symbol(symbol, &tol)?;
            let g = parse_argument(arg, &tol)?;
            let app = apply_toeplitz(&omega, &g, &tol)?;
            Ok(match cli.format {
                Format::Text => render::apply_text(&app),
                _ => to_pretty_json(&ApplyJson::from_application(&app)),
            })
        }
        Command::Invert { symbol, arg } => {
            let omega = parse_symbol(symbol, &tol)?;
            let h = parse_argument(arg, &tol)?;
            let g = apply_inverse(&omega, &h, &tol)?;
            #[derive(serde::Serialize)]
            struct InvertJson {
                result: SymbolJson,
            }
            Ok(match cli.format {
                Format::Text => format!("result: {g}\n"),
                _ => to_pretty_json(&InvertJson {
                    result: SymbolJson::from_rational(&g),
                }),
            })
        }
        Command::Demo => {
            let (out, all_ok) = demo::run(&tol);
            if all_ok {
                Ok(out)
            } else {
                // Report text on stdout, failure through the exit code.
                print!("{out}");
                Err(Error::NotSupported("demo corpus failed".to_string()))
            }
        }
    }
}

fn to_pretty_json<S: serde::Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if kind == ClapErrorKind::DisplayHelp || kind == ClapErrorKind::DisplayVersion {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Shared with the demo module: human-readable one-line complex formatting.
pub(crate) fn fmt_complex(re: f64, im: f64) -> String {
    let mut s = String::new();
    if im == 0.0 {
        let _ = write!(s, "{re}");
    } else {
        let _ = write!(s, "{re}{im:+}i");
    }
    s
}
