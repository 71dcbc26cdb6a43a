//! Command-line front end. `run` parses arguments, writes to the given
//! streams and returns the process exit code: 0 success, 1 mismatch or
//! failed check, 2 usage error.

use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::flype;
use crate::matrix_model::{bare_model, link_asymptotics, renormalized_model, AsymptoticConstants};
use crate::oracle::{self, DiagramFilter, OracleError, SearchOptions};
use crate::series::{decimal, BivariateSeries, PowerSeries, Rational};
use crate::skeleton;
use crate::verify::{self, Fault};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "tangles", version, about = "Exact generating functions for alternating links and tangles")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of a generating function.
    Series {
        #[arg(long, value_enum)]
        function: SeriesFunction,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Adds a decimal rendering with this many digits.
        #[arg(long)]
        digits: Option<usize>,
    },
    /// Radius of convergence, growth constant and exponent.
    Asymptotics {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Brute-force diagram count compared with the analytic coefficient.
    Oracle {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        n: usize,
        /// Worker threads.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        parallel: u32,
        /// Allows n beyond the default caps.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Runs every check of the verification suite.
    Verify {
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, hide = true)]
        inject: Option<Fault>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Links,
    Tangles,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    FreeEnergy,
    TwoPoint,
    Tangles,
    #[value(name = "2pi")]
    TwoPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesFunction {
    #[value(name = "a2")]
    A2,
    #[value(name = "F")]
    F,
    #[value(name = "G2")]
    G2,
    #[value(name = "G4")]
    G4,
    #[value(name = "G4c")]
    G4c,
    #[value(name = "alpha")]
    Alpha,
    #[value(name = "sigma_prime")]
    SigmaPrime,
    #[value(name = "Gamma")]
    Gamma,
    #[value(name = "F1")]
    F1,
    #[value(name = "D")]
    D,
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "g_of_Gamma")]
    GOfGamma,
    #[value(name = "zeta_of_Gamma")]
    ZetaOfGamma,
    #[value(name = "Gamma_template")]
    GammaTemplate,
    #[value(name = "Gamma_tilde")]
    GammaTilde,
    #[value(name = "F1_tilde")]
    F1Tilde,
    #[value(name = "Gamma_tilde_template")]
    GammaTildeTemplate,
}

impl SeriesFunction {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

enum Computed {
    Univariate(PowerSeries),
    Bivariate(BivariateSeries),
}

/// Evaluates at a working order of at least 2 and truncates, so that small
/// requested orders still get every provable coefficient.
fn compute(function: SeriesFunction, order: usize) -> Result<Computed, String> {
    use SeriesFunction::*;
    let work = order.max(2);
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let uni = |s: PowerSeries| Computed::Univariate(s.truncate(order));
    Ok(match function {
        A2 => uni(bare_model(work).a2_bare),
        F => uni(bare_model(work).f),
        G2 => uni(bare_model(work).g2),
        G4 => uni(bare_model(work).g4),
        G4c => uni(bare_model(work).g4c),
        Alpha => uni(renormalized_model(work).alpha),
        SigmaPrime => uni(renormalized_model(work).sigma_prime),
        Gamma => uni(renormalized_model(work).gamma),
        F1 => uni(renormalized_model(work).f1),
        D | Zeta => {
            let (d, zeta) = skeleton::d_series(&renormalized_model(work).gamma).map_err(|e| err(&e))?;
            uni(if function == D { d } else { zeta })
        }
        GOfGamma => uni(skeleton::g_of_gamma(work)),
        ZetaOfGamma => uni(skeleton::zeta_of_gamma(work)),
        GammaTilde => uni(flype::gamma_tilde_series(work).map_err(|e| err(&e))?),
        F1Tilde => uni(flype::f1_tilde_series(work).map_err(|e| err(&e))?),
        GammaTemplate => Computed::Bivariate(skeleton::gamma_template(order)),
        GammaTildeTemplate => Computed::Bivariate(flype::gamma_tilde_template(order)),
    })
}

/// Lowest-terms `p/q`, keeping `/1` for integers.
pub fn fraction(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn render_value(x: &Rational, format: Format) -> String {
    match format {
        Format::Text => x.to_string(),
        Format::Json | Format::Csv => fraction(x),
    }
}

#[derive(Serialize)]
struct UnivariateRecord<'a> {
    function: &'a str,
    degree: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimal: Option<String>,
}

#[derive(Serialize)]
struct BivariateRecord<'a> {
    function: &'a str,
    m: usize,
    n: usize,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimal: Option<String>,
}

/// `((m, n), value)` rows, `n` only for bivariate series; a zero constant
/// term is omitted.
fn rows(computed: &Computed) -> Vec<((usize, Option<usize>), Rational)> {
    match computed {
        Computed::Univariate(s) => s
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(k, c)| *k > 0 || !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| ((k, None), c.clone()))
            .collect(),
        Computed::Bivariate(b) => b
            .terms()
            .filter(|(m, n, c)| m + n > 0 || !num_traits::Zero::is_zero(*c))
            .map(|(m, n, c)| ((m, Some(n)), c.clone()))
            .collect(),
    }
}

fn write_series(out: &mut dyn Write, function: SeriesFunction, computed: &Computed, format: Format, digits: Option<usize>) -> io::Result<()> {
    let name = function.name();
    let name = name.as_str();
    let rows = rows(computed);
    let dec = |c: &Rational| digits.map(|d| decimal(c, d));
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["function", "degree", "value"];
            if digits.is_some() {
                header.push("decimal");
            }
            w.write_record(&header)?;
            for ((m, n), c) in &rows {
                let degree = match n {
                    Some(n) => format!("{m}:{n}"),
                    None => m.to_string(),
                };
                let mut record = vec![name.to_string(), degree, fraction(c)];
                record.extend(dec(c));
                w.write_record(&record)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for ((m, n), c) in &rows {
                let line = match n {
                    Some(n) => serde_json::to_string(&BivariateRecord { function: name, m: *m, n: *n, value: fraction(c), decimal: dec(c) }),
                    None => serde_json::to_string(&UnivariateRecord { function: name, degree: *m, value: fraction(c), decimal: dec(c) }),
                }
                .map_err(io::Error::other)?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Text => {
            writeln!(out, "{name}")?;
            for ((m, n), c) in &rows {
                let monomial = match n {
                    Some(n) => format!("g^{m} zeta^{n}"),
                    None => format!("g^{m}"),
                };
                match dec(c) {
                    Some(d) => writeln!(out, "{monomial}: {} ({d})", render_value(c, format))?,
                    None => writeln!(out, "{monomial}: {}", render_value(c, format))?,
                }
            }
        }
    }
    Ok(())
}

fn write_asymptotics(out: &mut dyn Write, which: Which, constants: &AsymptoticConstants, digits: usize, format: Format) -> io::Result<()> {
    let label = match which {
        Which::Links => "links",
        Which::Tangles => "tangles",
    };
    let rows = [
        ("radius", constants.radius.to_string(), Some(constants.radius_decimal(digits))),
        ("growth", constants.growth.to_string(), Some(constants.growth_decimal(digits))),
        ("exponent", constants.exponent.to_string(), None),
    ];
    match format {
        Format::Text => {
            writeln!(out, "{label}")?;
            for (quantity, exact, dec) in &rows {
                match dec {
                    Some(d) => writeln!(out, "{quantity}: {exact} = {d}")?,
                    None => writeln!(out, "{quantity}: {exact}")?,
                }
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["which", "quantity", "exact", "decimal"])?;
            for (quantity, exact, dec) in &rows {
                w.write_record([label, quantity, exact, dec.as_deref().unwrap_or("")])?;
            }
            w.flush()?;
        }
        Format::Json => {
            for (quantity, exact, dec) in &rows {
                let mut record = serde_json::Map::new();
                record.insert("which".into(), label.into());
                record.insert("quantity".into(), (*quantity).into());
                record.insert("exact".into(), exact.as_str().into());
                if let Some(d) = dec {
                    record.insert("decimal".into(), d.as_str().into());
                }
                writeln!(out, "{}", serde_json::Value::Object(record))?;
            }
        }
    }
    Ok(())
}

fn oracle_values(target: Target, n: usize, options: &SearchOptions) -> Result<(Rational, Rational), String> {
    let oracle_err = |e: OracleError| e.to_string();
    let coeff = |s: &PowerSeries| s.coeffs()[n].clone();
    let work = n.max(1);
    match target {
        Target::FreeEnergy => Ok((oracle::count_free_energy(n, options).map_err(oracle_err)?, coeff(&bare_model(work).f))),
        Target::TwoPoint => Ok((oracle::count_two_point(n, options).map_err(oracle_err)?, coeff(&bare_model(work).g2))),
        Target::Tangles => {
            let count = oracle::count_tangles(n, DiagramFilter::no_self_energy(), options).map_err(oracle_err)?;
            Ok((Rational::from_integer(count.into()), coeff(&renormalized_model(work).gamma)))
        }
        Target::TwoPi => {
            let count = oracle::count_tangles(n, DiagramFilter::two_pi_both(), options).map_err(oracle_err)?;
            let (d, _) = skeleton::d_series(&renormalized_model(work).gamma).map_err(|e| e.to_string())?;
            Ok((Rational::from_integer(count.into()), coeff(&d)))
        }
    }
}

fn write_oracle(out: &mut dyn Write, target: Target, n: usize, found: &Rational, analytic: &Rational, format: Format) -> io::Result<()> {
    let name = target.to_possible_value().expect("no skipped variants").get_name().to_string();
    let verdict = if found == analytic { "MATCH" } else { "MISMATCH" };
    match format {
        Format::Text => writeln!(out, "oracle {found}, analytic {analytic}, {verdict}"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["target", "n", "oracle", "analytic", "verdict"])?;
            w.write_record([name, n.to_string(), fraction(found), fraction(analytic), verdict.to_string()])?;
            w.flush()
        }
        Format::Json => {
            let record = serde_json::json!({
                "target": name,
                "n": n,
                "oracle": fraction(found),
                "analytic": fraction(analytic),
                "verdict": verdict,
            });
            writeln!(out, "{record}")
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match cli.command {
        Command::Series { function, order, format, digits } => match compute(function, order) {
            Ok(computed) => write_series(out, function, &computed, format, digits).map(|_| EXIT_OK),
            Err(e) => writeln!(err, "error: {e}").map(|_| EXIT_FAILURE),
        },
        Command::Asymptotics { which, digits, format } => {
            let constants = match which {
                Which::Links => link_asymptotics(),
                Which::Tangles => match flype::tangle_asymptotics() {
                    Ok(c) => c,
                    Err(e) => return writeln!(err, "error: {e}").map(|_| EXIT_FAILURE),
                },
            };
            write_asymptotics(out, which, &constants, digits as usize, format).map(|_| EXIT_OK)
        }
        Command::Oracle { target, n, parallel, force, format } => {
            let options = SearchOptions { workers: parallel as usize, force, ..SearchOptions::default() };
            match oracle_values(target, n, &options) {
                Ok((found, analytic)) => {
                    write_oracle(out, target, n, &found, &analytic, format)?;
                    Ok(if found == analytic { EXIT_OK } else { EXIT_FAILURE })
                }
                Err(e) => writeln!(err, "error: {e}").map(|_| EXIT_USAGE),
            }
        }
        Command::Verify { order, inject } => match verify::run(order, inject) {
            Ok(report) => {
                for check in &report.checks {
                    writeln!(out, "{check}")?;
                }
                let failed = report.failures().count();
                writeln!(out, "{} checks, {} failed", report.checks.len(), failed)?;
                Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
            }
            Err(e) => writeln!(err, "error: {e}").map(|_| EXIT_USAGE),
        },
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}
