//! `hecke`: construct and verify Temperley-Lieb type Hecke symmetries.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on input errors.

mod commands;
mod instance;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_core::gram::{Planting, ScanConfig, DEFAULT_SCAN_TOL};
use hecke_core::tlhecke::TLInstance;
use serde_json::{Map, Value};

use commands::{GramOptions, VerifyOptions};

/// Malformed input: unreadable files, bad JSON, bad field-element strings,
/// constraint violations, out-of-range flags.
#[derive(Debug)]
pub struct InputError(pub String);

#[derive(Parser)]
#[command(
    name = "hecke",
    version,
    about = "Exact checks for Temperley-Lieb type Hecke symmetries"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArg {
    /// Instance file (JSON with n, field, u, v, branch).
    instance: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance and echo it in canonical form.
    Construct(InstanceArg),
    /// Run every check on an instance.
    Verify {
        #[command(flatten)]
        file: InstanceArg,
        /// Largest tensor power for the Temperley-Lieb relations.
        #[arg(long, default_value_t = 3)]
        tl_m: usize,
        /// Largest word length for the pairing checks.
        #[arg(long, default_value_t = 2)]
        word_degree: usize,
        /// Largest degree of the Poincaré tables.
        #[arg(long, default_value_t = 4)]
        lmax: usize,
        /// Largest i, j in the dimension product rule.
        #[arg(long, default_value_t = 5)]
        imax: u32,
    },
    /// Pair two elements, e.g. `t[1,2]*t[2,1]` and `q*t[1,1] - t[2,2]`.
    Pair {
        #[command(flatten)]
        file: InstanceArg,
        left: String,
        right: String,
        /// Normalization constant of the pairing.
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Gram determinant of the pairing on the generators.
    Gram {
        #[command(flatten)]
        file: InstanceArg,
        #[arg(long, default_value = "1")]
        c: String,
        /// Include the full matrix of field-element strings.
        #[arg(long)]
        dump_matrix: bool,
        /// Check the squared determinant against the product formula.
        #[arg(long)]
        closed_form: bool,
    },
    /// Seeded random search for degenerate Gram matrices over C.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance: flagged when |det| < tol * scale^(n^2).
        #[arg(long, default_value_t = DEFAULT_SCAN_TOL)]
        tol: f64,
        /// Fixed sigma as `re,im`; random per sample when absent.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        sigma: Option<(f64, f64)>,
        /// Draw samples on a degeneracy locus instead.
        #[arg(long)]
        planted: bool,
    },
    /// Dimensions of the quadratic algebras and their identities.
    Poincare {
        #[command(flatten)]
        file: InstanceArg,
        #[arg(long, default_value_t = 5)]
        lmax: usize,
        /// Also check the product rule of the symmetric dimensions for
        /// i, j up to this bound.
        #[arg(long, value_name = "IMAX")]
        check_product_rule: Option<u32>,
    },
    /// Action of an element on a basis tensor, e.g. `t[1,1]` on `1,2`.
    Act {
        #[command(flatten)]
        file: InstanceArg,
        element: String,
        /// 1-based multi-index such as `1,2`.
        basis: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
}

fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let p = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("{t:?} is not a finite number"))
    };
    Ok((p(re)?, p(im)?))
}

fn load(a: &InstanceArg) -> Result<TLInstance, InputError> {
    instance::load(&a.instance)
}

fn run(cmd: &Command) -> Result<(&'static str, Map<String, Value>), InputError> {
    Ok(match cmd {
        Command::Construct(a) => ("construct", commands::construct(&load(a)?)),
        Command::Verify {
            file,
            tl_m,
            word_degree,
            lmax,
            imax,
        } => {
            let opts = VerifyOptions {
                tl_m: *tl_m,
                word_degree: *word_degree,
                lmax: *lmax,
                imax: *imax,
            };
            ("verify", commands::verify(&load(file)?, &opts)?)
        }
        Command::Pair {
            file,
            left,
            right,
            c,
        } => ("pair", commands::pair(&load(file)?, left, right, c)?),
        Command::Gram {
            file,
            c,
            dump_matrix,
            closed_form,
        } => {
            let opts = GramOptions {
                c,
                dump_matrix: *dump_matrix,
                closed_form: *closed_form,
            };
            ("gram", commands::gram(&load(file)?, &opts)?)
        }
        Command::Scan {
            n,
            samples,
            seed,
            tol,
            sigma,
            planted,
        } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(InputError(format!("--tol {tol} must be positive")));
            }
            let mut cfg = ScanConfig::new(*n, *samples, *seed);
            cfg.tol = *tol;
            cfg.sigma = *sigma;
            if *planted {
                cfg.planting = Planting::Degenerate;
            }
            ("scan", commands::scan_cmd(&cfg)?)
        }
        Command::Poincare {
            file,
            lmax,
            check_product_rule,
        } => (
            "poincare",
            commands::poincare(&load(file)?, *lmax, *check_product_rule)?,
        ),
        Command::Act {
            file,
            element,
            basis,
            c,
        } => ("act", commands::act_cmd(&load(file)?, element, basis, c)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((name, body)) => {
            let report = report::envelope(name, body);
            let failed = report::any_failed(&report);
            if cli.json {
                print!("{}", report::to_json(&report));
            } else {
                print!("{}", report::to_text(&report));
            }
            ExitCode::from(u8::from(failed))
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
