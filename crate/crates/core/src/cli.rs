//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 on usage errors, 1 on domain errors (the error
//! text, prefixed with its kind, goes to the error stream).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cosets::{coset, coset_reps, omega_enumerate};
use crate::decimation::phi_rational_iterate;
use crate::error::{Error, Result};
use crate::exactnum::CycloNum;
use crate::fixedpoints::{basis, decompose, is_fixed, psi, shift_reduce, transport, Decomposition};
use crate::ratfunc::{
    canonical_text, expand_series, parse_expression_with_limit, quotient_text, RationalFunction,
    DEFAULT_CONDUCTOR_LIMIT,
};

/// Environment variable capping the cyclotomic conductor of any input.
pub const CONDUCTOR_ENV: &str = "CYCLOFIX_MAX_CONDUCTOR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclofix",
    version,
    about = "Exact fixed points of the coefficient-decimation operators on rational functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; csv is accepted only by `omega`.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
}

#[derive(Debug, Args)]
struct Pair {
    /// Decimation step s.
    #[arg(short = 's', allow_negative_numbers = true)]
    s: i64,
    /// Decimation offset t.
    #[arg(short = 't', allow_negative_numbers = true)]
    t: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the distinguished integers r ≤ max.
    Omega {
        #[command(flatten)]
        pair: Pair,
        #[arg(long = "max")]
        max: u64,
    },
    /// The cyclotomic coset of n mod r under multiplication by s.
    Coset {
        #[arg(short = 's', allow_negative_numbers = true)]
        s: i64,
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
    },
    /// Minimal coset representatives of the units mod r.
    Reps {
        #[arg(short = 's', allow_negative_numbers = true)]
        s: i64,
        #[arg(short = 'r')]
        r: u64,
    },
    /// One basis fixed point.
    Psi {
        #[command(flatten)]
        pair: Pair,
        #[arg(short = 'r')]
        r: u64,
        #[arg(short = 'n')]
        n: u64,
    },
    /// All basis fixed points with pole order at most max.
    Basis {
        #[command(flatten)]
        pair: Pair,
        #[arg(long = "max")]
        max: u64,
    },
    /// Decide whether an expression is fixed.
    Check {
        #[command(flatten)]
        pair: Pair,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coordinates of a fixed point in the basis.
    Decompose {
        #[command(flatten)]
        pair: Pair,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply the operator k times.
    Apply {
        #[command(flatten)]
        pair: Pair,
        #[arg(short = 'k', default_value_t = 1)]
        k: u32,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Laurent coefficients up to index N.
    Expand {
        #[arg(short = 'N', default_value_t = 20, allow_negative_numbers = true)]
        n_max: i64,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// `check` result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub s: i64,
    pub t: i64,
    pub fixed: bool,
}

/// `reps` result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepsReport {
    pub s: i64,
    pub r: u64,
    pub reps: Vec<u64>,
}

/// `decompose` result. `u` is nonzero when `t` lay outside `[0, s - 1]`:
/// the coordinates then belong to `x^{u} R` with offset `t - u(s - 1)`, i.e.
/// to the transported elements `x^{-u} ψ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub u: i64,
    pub decomposition: Decomposition,
}

fn conductor_limit() -> Result<u64> {
    match std::env::var(CONDUCTOR_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&v| v >= 1)
            .ok_or_else(|| {
                Error::BadParameter(format!("{CONDUCTOR_ENV} must be a positive integer"))
            }),
        Err(_) => Ok(DEFAULT_CONDUCTOR_LIMIT),
    }
}

fn check_conductor(r: u64, limit: u64) -> Result<()> {
    if r > limit {
        return Err(Error::ConductorLimit {
            conductor: r,
            limit,
        });
    }
    Ok(())
}

fn coeff_text(c: &CycloNum) -> String {
    c.with_minimal_conductor().to_expr_text()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn expression(src: &str, limit: u64) -> Result<RationalFunction> {
    parse_expression_with_limit(src, limit)
}

/// Splits `t` as `t' + u(s - 1)` with `t'` in `[0, s - 1]`, keeping `u = 0`
/// whenever `t` already lies there.
fn reduce_offset(s: i64, t: i64) -> Result<(i64, i64)> {
    if s >= 2 && (0..s).contains(&t) {
        return Ok((t, 0));
    }
    shift_reduce(s, t)
}

fn execute(cli: Cli, limit: u64) -> Result<String> {
    let fmt = cli.format;
    let text = fmt == Format::Text;
    Ok(match cli.command {
        Command::Omega { pair, max } => {
            if pair.s < 2 {
                return Err(Error::BadParameter(format!(
                    "omega needs s >= 2, got {}",
                    pair.s
                )));
            }
            let table = omega_enumerate(pair.s, pair.t, max);
            match fmt {
                Format::Text => table.members.iter().map(|r| format!("{r}\n")).collect(),
                Format::Json => json(&table),
                Format::Csv => table.to_csv()?,
            }
        }
        Command::Coset { s, r, n } => {
            let c = coset(s, r, n)?;
            if text {
                let members: Vec<String> = c.members.iter().map(u64::to_string).collect();
                format!(
                    "members: {}\nrep: {}\nord: {}\n",
                    members.join(" "),
                    c.rep,
                    c.ord
                )
            } else {
                json(&c)
            }
        }
        Command::Reps { s, r } => {
            let report = RepsReport {
                s,
                r,
                reps: coset_reps(s, r)?,
            };
            if text {
                report.reps.iter().map(|n| format!("{n}\n")).collect()
            } else {
                json(&report)
            }
        }
        Command::Psi { pair, r, n } => {
            check_conductor(r, limit)?;
            let e = psi(pair.s, pair.t, r, n)?;
            if text {
                let mut out = format!("id: {}\n", e.id());
                out += &format!("terms: {}\n", canonical_text(&e.reduced));
                out += &format!("reduced: {}\n", quotient_text(&e.reduced));
                out
            } else {
                json(&e)
            }
        }
        Command::Basis { pair, max } => {
            check_conductor(max, limit)?;
            let b = basis(pair.s, pair.t, max)?;
            if text {
                b.elements
                    .iter()
                    .map(|e| format!("{}\t{}\n", e.id(), canonical_text(&e.reduced)))
                    .collect()
            } else {
                json(&b)
            }
        }
        Command::Check { pair, expr } => {
            let r = expression(&expr, limit)?;
            let report = CheckReport {
                s: pair.s,
                t: pair.t,
                fixed: is_fixed(&r, pair.s, pair.t),
            };
            if text {
                format!("fixed: {}\n", report.fixed)
            } else {
                json(&report)
            }
        }
        Command::Decompose { pair, expr } => {
            let r = expression(&expr, limit)?;
            let (t_red, u) = reduce_offset(pair.s, pair.t)?;
            let decomposition = decompose(&transport(&r, -u), pair.s, t_red)?;
            let report = DecomposeReport { u, decomposition };
            if text {
                let mut out = String::new();
                if u != 0 {
                    out += &format!("transport: u={u} t'={t_red}\n");
                }
                for (id, c) in &report.decomposition.combo {
                    out += &format!("{id}\t{}\n", coeff_text(c));
                }
                out += &format!("residual_ok: {}\n", report.decomposition.residual_ok);
                out
            } else {
                json(&report)
            }
        }
        Command::Apply { pair, k, expr } => {
            let r = expression(&expr, limit)?;
            let image = phi_rational_iterate(&r, pair.s, pair.t, k)?;
            if text {
                format!("{}\n", canonical_text(&image))
            } else {
                json(&image)
            }
        }
        Command::Expand { n_max, expr } => {
            let r = expression(&expr, limit)?;
            if n_max < r.x_shift() {
                return Err(Error::BadParameter(format!(
                    "N = {n_max} lies below the first index {} of the expansion",
                    r.x_shift()
                )));
            }
            let series = expand_series(&r, n_max);
            if text {
                let mut out = String::new();
                for (i, c) in series.coeffs.iter().enumerate() {
                    out += &format!("{}\t{}\n", series.n_min + i as i64, coeff_text(c));
                }
                out
            } else {
                json(&series)
            }
        }
    })
}

/// Runs the tool on `argv` (including the program name) and returns the
/// exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    if cli.format == Format::Csv && !matches!(cli.command, Command::Omega { .. }) {
        let _ = writeln!(err, "error: --format csv is only available for `omega`");
        return 2;
    }
    let result = conductor_limit().and_then(|limit| execute(cli, limit));
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "{e}");
            1
        }
    }
}
