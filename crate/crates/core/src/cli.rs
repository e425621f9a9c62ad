//! The `planar` command line.
//!
//! Exit codes: 0 on success or a passing verification, 1 when a verifier
//! reports a mismatch, 2 on usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::calculus::{derivative, differential, verify_chain_rule, verify_special_chain_rule};
use crate::error::Error;
use crate::expr::{format_canonical, format_json, format_pretty, parse, pretty_monomial};
use crate::report::Report;
use crate::series::Series;
use crate::special_series::{
    exp_k, h4_discrepancy_report, h_closed_form, log_k, verify_exp_derivative,
    verify_exp_functional_equation, verify_h_recurrence, verify_log_ode, verify_omega_equation,
};
use crate::substitution::substitute;
use crate::trees::{enumerate_monomials, orbit_sum, Label, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Canonical,
    Pretty,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "planar",
    about = "Exact planar power series over reduced planar rooted trees"
)]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct KArgs {
    /// Arity of the exponential.
    #[arg(short = 'k', default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    k: u32,
    /// Precision: largest x-degree computed.
    #[arg(short = 'N', default_value_t = 6)]
    precision: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct PrecisionArg {
    /// Precision that parsed polynomials are lifted to.
    #[arg(short = 'N', default_value_t = 6)]
    precision: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The k-ary exponential Exp_k(x).
    Exp(KArgs),
    /// The k-ary logarithm Log_k(1+x).
    Log(KArgs),
    /// The printed closed form of the degree-n slice of Log_k(1+x), n <= 4.
    HClosedForm {
        #[arg(short = 'k', default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
        #[arg(short = 'n')]
        degree: usize,
    },
    /// Derivative d/dx.
    Diff {
        expr: String,
        #[command(flatten)]
        prec: PrecisionArg,
    },
    /// Universal differential d (dx = y).
    Differential {
        expr: String,
        #[command(flatten)]
        prec: PrecisionArg,
    },
    /// Substitute x -> G and y -> H in F.
    Subst {
        f: String,
        #[arg(long = "x")]
        g: String,
        #[arg(long = "y", default_value = "y")]
        h: String,
        #[command(flatten)]
        prec: PrecisionArg,
    },
    /// Members of the orbit {T} of a monomial.
    Orbit { monomial: String },
    /// All monomials of a given total degree.
    Enumerate {
        #[arg(short = 'n')]
        degree: usize,
        /// Leaf labels to use.
        #[arg(long, default_value = "x")]
        labels: String,
    },
    /// Coefficient of a monomial in a series.
    Coeff {
        monomial: String,
        #[command(flatten)]
        source: CoeffSource,
        #[command(flatten)]
        params: KArgs,
    },
    /// Identity verifiers.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct CoeffSource {
    /// Look the coefficient up in Exp_k.
    #[arg(long)]
    exp: bool,
    /// Look the coefficient up in Log_k(1+x).
    #[arg(long)]
    log: bool,
    /// Look the coefficient up in a parsed series.
    #[arg(long)]
    expr: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// (dphi_g)(df) = d(f(g)).
    ChainRule {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        prec: PrecisionArg,
    },
    /// d/dx f(g) = ((1+x) d/dx f)(g) with g = Exp_k - 1; every monomial of
    /// degree <= 3 unless --f is given.
    SpecialChainRule {
        #[arg(long)]
        f: Option<String>,
        #[command(flatten)]
        params: KArgs,
    },
    /// Exp_k(kx) = Exp_k(x)^k.
    ExpFunctional(KArgs),
    /// d/dx Exp_k = Exp_k.
    ExpDerivative(KArgs),
    /// k^n w_n = sum of Leibniz terms, w = d Exp_k.
    Omega(KArgs),
    /// ((1+x) d/dx) Log_k(1+x) = 1.
    LogOde(KArgs),
    /// h_(n+1)' = -n h_n.
    HRecurrence(KArgs),
    /// Printed h_4 against the reversion, orbit by orbit.
    H4Report {
        #[arg(short = 'k', default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        k: u32,
    },
}

enum Outcome {
    Text(String),
    Reports(Vec<Report>),
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(Outcome::Text(text)) => {
            let _ = writeln!(out, "{text}");
            0
        }
        Ok(Outcome::Reports(reports)) => {
            if cli.format == Format::Json {
                let doc = if reports.len() == 1 {
                    reports[0].to_json()
                } else {
                    json!(reports.iter().map(Report::to_json).collect::<Vec<_>>())
                };
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                for r in &reports {
                    let _ = writeln!(out, "{r}");
                }
            }
            if reports.iter().all(Report::passed) {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn render(f: &Series, format: Format, k: Option<u32>) -> String {
    match format {
        Format::Canonical => format_canonical(f),
        Format::Pretty => format_pretty(f),
        Format::Json => format_json(f, k),
    }
}

/// Parsed input is an exact polynomial, so it is known to any precision.
fn parse_lifted(text: &str, precision: usize) -> Result<Series, Error> {
    let f = parse(text)?;
    Ok(f.as_polynomial(f.precision().max(precision)))
}

fn parse_monomial(text: &str) -> Result<Monomial, Error> {
    let f = parse(text)?;
    let mut terms = f.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if num_traits::One::is_one(c) => Ok(m.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("'{text}' is not a single monomial"),
        }),
    }
}

fn monomial_list(ms: &[Monomial], format: Format) -> String {
    match format {
        Format::Json => {
            serde_json::to_string_pretty(&ms.iter().map(|m| m.encoding()).collect::<Vec<_>>())
                .unwrap()
        }
        Format::Canonical => ms
            .iter()
            .map(|m| m.encoding())
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Pretty => ms
            .iter()
            .map(pretty_monomial)
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    let text = |s: String| Ok(Outcome::Text(s));
    let one = |r: Report| Ok(Outcome::Reports(vec![r]));
    match &cli.command {
        Command::Exp(a) => text(render(&exp_k(a.k, a.precision)?, fmt, Some(a.k))),
        Command::Log(a) => text(render(&log_k(a.k, a.precision)?, fmt, Some(a.k))),
        Command::HClosedForm { k, degree } => {
            text(render(&h_closed_form(*k, *degree)?, fmt, Some(*k)))
        }
        Command::Diff { expr, prec } => {
            let f = parse_lifted(expr, prec.precision)?;
            text(render(&derivative(&f)?, fmt, None))
        }
        Command::Differential { expr, prec } => {
            let f = parse_lifted(expr, prec.precision)?;
            text(render(&differential(&f)?, fmt, None))
        }
        Command::Subst { f, g, h, prec } => {
            let p = prec.precision;
            let (f, g, h) = (
                parse_lifted(f, p)?,
                parse_lifted(g, p)?,
                parse_lifted(h, p)?,
            );
            let p = f.precision().min(g.precision()).min(h.precision());
            text(render(
                &substitute(&f, &g.as_polynomial(p), &h.as_polynomial(p))?,
                fmt,
                None,
            ))
        }
        Command::Orbit { monomial } => {
            let m = parse_monomial(monomial)?;
            text(monomial_list(&orbit_sum(&m), fmt))
        }
        Command::Enumerate { degree, labels } => {
            let mut ls = Vec::new();
            for ch in labels.chars() {
                match ch {
                    'x' => ls.push(Label::X),
                    'y' => ls.push(Label::Y),
                    ',' | ' ' => {}
                    other => {
                        return Err(Error::Parse {
                            pos: 0,
                            msg: format!("unknown label '{other}'"),
                        })
                    }
                }
            }
            text(monomial_list(&enumerate_monomials(*degree, &ls), fmt))
        }
        Command::Coeff {
            monomial,
            source,
            params,
        } => {
            let m = parse_monomial(monomial)?;
            let series = if source.exp {
                exp_k(params.k, params.precision)?
            } else if source.log {
                log_k(params.k, params.precision)?
            } else {
                let e = source.expr.as_deref().unwrap_or("0");
                parse_lifted(e, params.precision)?
            };
            let c = series.coefficient(&m)?;
            match fmt {
                Format::Json => text(
                    serde_json::to_string_pretty(&json!({
                        "monomial": m.encoding(),
                        "coeff": c.to_string(),
                        "precision": series.precision(),
                    }))
                    .unwrap(),
                ),
                _ => text(c.to_string()),
            }
        }
        Command::Verify(v) => match v {
            Verify::ChainRule { f, g, prec } => {
                let f = parse_lifted(f, prec.precision)?;
                let g = parse_lifted(g, prec.precision)?;
                one(verify_chain_rule(&f, &g))
            }
            Verify::SpecialChainRule { f, params } => {
                let p = params.precision;
                let g = &exp_k(params.k, p)? - &Series::one(p);
                let fs: Vec<Series> = match f {
                    Some(text) => vec![parse_lifted(text, p)?],
                    None => (0..=3)
                        .flat_map(|d| enumerate_monomials(d, &[Label::X]))
                        .map(|m| Series::monomial(m, num_traits::One::one(), p))
                        .collect(),
                };
                let reports = fs
                    .iter()
                    .map(|f| {
                        let mut r = verify_special_chain_rule(f, &g);
                        r.check =
                            format!("special-chain-rule k={} f={}", params.k, format_pretty(f));
                        r
                    })
                    .collect();
                Ok(Outcome::Reports(reports))
            }
            Verify::ExpFunctional(a) => one(verify_exp_functional_equation(a.k, a.precision)?),
            Verify::ExpDerivative(a) => one(verify_exp_derivative(a.k, a.precision)?),
            Verify::Omega(a) => one(verify_omega_equation(a.k, a.precision)?),
            Verify::LogOde(a) => one(verify_log_ode(a.k, a.precision)?),
            Verify::HRecurrence(a) => one(verify_h_recurrence(a.k, a.precision)?),
            Verify::H4Report { k } => one(h4_discrepancy_report(*k)?),
        },
    }
}
