//! `gasf`: root data, weight multiplicities, coweight strata and affine
//! Springer fiber invariants from the command line.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use gasf_core::coxeter::{count_coxeter, enumerate_coxeter};
use gasf_core::multiplicity::{freudenthal, kostant_mult, weyl_dimension_of};
use gasf_core::rational::{fmt_q, parse_q};
use gasf_core::springer::{verify_lower_bound, Springer};
use gasf_core::strata::{
    dominant_below, leq_q, meet, smallest_integral_approximation, steinberg_contains,
};
use gasf_core::verify::{self, SuiteResult};
use gasf_core::{Error, LaurentSeries, RootDatum, TorusElement};
use serde_json::json;

const TRUNCATION_VAR: &str = "SPRINGER_TRUNCATION";

#[derive(Parser)]
#[command(
    name = "gasf",
    version,
    about = "Invariants of generalized affine Springer fibers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Root data.
    #[command(subcommand)]
    Datum(DatumCmd),
    /// Coxeter elements.
    #[command(subcommand)]
    Cox(CoxCmd),
    /// Weight multiplicities m_{λμ} of the dual group.
    #[command(subcommand)]
    Mult(MultCmd),
    /// Dominance order, meets and strata of the coweight cone.
    #[command(subcommand)]
    Strata(StrataCmd),
    /// Truncated Laurent series arithmetic.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Fiber invariants.
    #[command(subcommand)]
    Springer(SpringerCmd),
    /// Batch verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args)]
struct DatumArg {
    /// Type such as A2, B3, A1*A2, GL3, A2*T1, inline JSON or a .json file.
    #[arg(long, visible_alias = "type")]
    datum: String,
}

impl DatumArg {
    fn load(&self) -> Result<RootDatum, Error> {
        RootDatum::parse(&self.datum)
    }
}

#[derive(Subcommand)]
enum DatumCmd {
    Show {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CoxCmd {
    /// One reduced word per line.
    Enum {
        #[command(flatten)]
        datum: DatumArg,
    },
    Count {
        #[command(flatten)]
        datum: DatumArg,
    },
}

#[derive(Subcommand)]
enum MultCmd {
    /// TSV of every dominant μ ≤ λ with both multiplicity algorithms.
    Table {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    Get {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Dimension of the irreducible representation V_λ.
    Dim {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum StrataCmd {
    /// Smallest integral approximation of a rational dominant coweight.
    Approx {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    Meet {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Whether `mu ≤ lambda` in the rational dominance order.
    Leq {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Whether χ(γ) lies in the Steinberg stratum of λ.
    Contains {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    Valuation {
        /// Series JSON, inline or a file path.
        series: String,
    },
    Mul {
        a: String,
        b: String,
    },
    Inv {
        a: String,
        /// Relative precision for exact inputs.
        #[arg(long)]
        precision: Option<i64>,
    },
    /// Rational power of a principal unit 1 + O(ϖ).
    Pow {
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        exponent: String,
        #[arg(long, default_value_t = 16)]
        precision: i64,
    },
}

#[derive(Subcommand)]
enum SpringerCmd {
    Report {
        #[command(flatten)]
        datum: DatumArg,
        /// γ JSON, inline or a file path.
        #[arg(long)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        json: bool,
    },
    /// Newton point, profile, d, r and c of γ.
    Invariants {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long)]
        gamma: String,
    },
    VerifyLowerBound {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long)]
        tsv: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    All {
        #[arg(long)]
        small: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    Coxeter {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values_t = default_types())]
        types: Vec<String>,
    },
    Multiplicities {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values_t = mult_types())]
        types: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max: i64,
    },
    DimensionSum {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values_t = mult_types())]
        types: Vec<String>,
        #[arg(long, default_value_t = 3)]
        max: i64,
    },
    LowerBound {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 3)]
        radius: i64,
    },
    Gl2,
    Meet {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values = ["A2", "B2"])]
        types: Vec<String>,
        #[arg(long, default_value_t = 4)]
        radius: i64,
    },
    Strata {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values = ["A2", "GL3"])]
        types: Vec<String>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        radius: i64,
        #[arg(long)]
        seed: u64,
    },
    Equivalence {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values = ["GL2", "GL3"])]
        types: Vec<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long)]
        seed: u64,
    },
    Discriminant {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Without a seed only the fixtures are checked.
        #[arg(long)]
        seed: Option<u64>,
    },
    Enhanced {
        #[arg(long = "datum", visible_alias = "type", num_args = 1.., default_values = ["A1", "A2"])]
        types: Vec<String>,
        #[arg(long, default_value_t = 3)]
        radius: i64,
    },
    Ramified,
}

fn default_types() -> Vec<String> {
    ["A1", "A2", "A3", "A4", "B2", "B3", "G2", "A1*A1", "A1*A2"]
        .map(String::from)
        .to_vec()
}

fn mult_types() -> Vec<String> {
    ["A1", "A2", "A3", "B2", "G2"].map(String::from).to_vec()
}

enum Failure {
    Domain(Error),
    Suites(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<String, Failure>;

/// Inline JSON, or the contents of the named file.
fn read_json(arg: &str) -> Result<String, Error> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg))
        .map_err(|e| Error::MalformedSpec(format!("cannot read {arg}: {e}")))
}

fn env_truncation() -> Result<Option<i64>, Error> {
    match std::env::var(TRUNCATION_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<i64>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::MalformedSpec(format!(
                "{TRUNCATION_VAR} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn load_gamma(datum: &RootDatum, arg: &str) -> Result<TorusElement, Error> {
    let g = TorusElement::from_json(datum, &read_json(arg)?)?;
    match (env_truncation()?, g) {
        (Some(n), TorusElement::Concrete { mu, units }) => {
            let units = units
                .iter()
                .map(|u| {
                    if u.is_exact() {
                        u.truncate(n)
                    } else {
                        u.clone()
                    }
                })
                .collect();
            TorusElement::concrete(datum, mu, units)
        }
        (_, g) => Ok(g),
    }
}

fn load_series(arg: &str) -> Result<LaurentSeries, Error> {
    LaurentSeries::parse_json(&read_json(arg)?)
}

fn series_json(s: &LaurentSeries) -> String {
    serde_json::to_string(s).expect("series serialize")
}

fn datum_show(datum: &RootDatum, as_json: bool) -> String {
    let w0 = datum.w0().word_string();
    if as_json {
        return json!({
            "name": datum.name(),
            "rank": datum.rank(),
            "central_rank": datum.central_rank(),
            "cartan": datum.cartan(),
            "positive_roots": datum.positive_roots(),
            "weyl_order": datum.weyl_order().to_string(),
            "coxeter_elements": count_coxeter(datum).to_string(),
            "w0": w0,
        })
        .to_string();
    }
    let mut out = String::new();
    let _ = writeln!(out, "name\t{}", datum.name());
    let _ = writeln!(out, "rank\t{}", datum.rank());
    let _ = writeln!(out, "central_rank\t{}", datum.central_rank());
    let cartan: Vec<String> = datum
        .cartan()
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    let _ = writeln!(out, "cartan\t{}", cartan.join("; "));
    let _ = writeln!(out, "positive_roots\t{}", datum.num_positive_roots());
    let _ = writeln!(out, "weyl_order\t{}", datum.weyl_order());
    let _ = writeln!(out, "coxeter_elements\t{}", count_coxeter(datum));
    let _ = write!(out, "w0\t{w0}");
    out
}

fn mult_table(datum: &RootDatum, lambda: &str) -> Outcome {
    let lam = datum.parse_coweight(lambda)?;
    if !datum.is_integral(&lam) {
        return Err(Error::NotIntegral(lambda.into()).into());
    }
    if !datum.is_dominant(&lam) {
        return Err(Error::NotDominant(lambda.into()).into());
    }
    let mut out = String::from("type\tlambda\tmu\tm_freudenthal\tm_kostant\tagree");
    let mut mus = vec![lam.clone()];
    mus.extend(dominant_below(datum, &lam, None));
    for mu in mus {
        let f = freudenthal(datum, &lam, &mu)?;
        let k = kostant_mult(datum, &lam, &mu)?;
        let _ = write!(
            out,
            "\n{}\t{}\t{}\t{f}\t{k}\t{}",
            datum.name(),
            datum.format_coweight(&lam),
            datum.format_coweight(&mu),
            i64::try_from(f) == Ok(k)
        );
    }
    Ok(out)
}

fn suites_outcome(results: Vec<SuiteResult>) -> Outcome {
    let text = results
        .iter()
        .map(SuiteResult::line)
        .collect::<Vec<_>>()
        .join("\n");
    if results.iter().all(|r| r.passed) {
        Ok(text)
    } else {
        Err(Failure::Suites(text))
    }
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Datum(DatumCmd::Show { datum, json }) => Ok(datum_show(&datum.load()?, json)),
        Command::Cox(CoxCmd::Enum { datum }) => {
            let words: Vec<String> = enumerate_coxeter(&datum.load()?)?
                .iter()
                .map(|w| w.word_string())
                .collect();
            Ok(words.join("\n"))
        }
        Command::Cox(CoxCmd::Count { datum }) => Ok(count_coxeter(&datum.load()?).to_string()),
        Command::Mult(MultCmd::Table { datum, lambda }) => mult_table(&datum.load()?, &lambda),
        Command::Mult(MultCmd::Get { datum, lambda, mu }) => {
            let d = datum.load()?;
            let (lam, mu) = (d.parse_coweight(&lambda)?, d.parse_coweight(&mu)?);
            let f = freudenthal(&d, &lam, &mu)?;
            let k = kostant_mult(&d, &lam, &mu)?;
            if i64::try_from(f) != Ok(k) {
                return Err(Error::Inconsistent(format!("Freudenthal {f}, Kostant {k}")).into());
            }
            Ok(f.to_string())
        }
        Command::Mult(MultCmd::Dim { datum, lambda }) => {
            let d = datum.load()?;
            Ok(weyl_dimension_of(&d, &d.parse_coweight(&lambda)?)?.to_string())
        }
        Command::Strata(StrataCmd::Approx { datum, nu }) => {
            let d = datum.load()?;
            let a = smallest_integral_approximation(&d, &d.parse_coweight(&nu)?)?;
            Ok(a.to_json(&d).to_string())
        }
        Command::Strata(StrataCmd::Meet { datum, a, b }) => {
            let d = datum.load()?;
            let (x, y) = (d.parse_coweight(&a)?, d.parse_coweight(&b)?);
            let m = meet(&d, &x, &y)?;
            let user = |c| d.coweight_to_user(c).iter().map(fmt_q).collect::<Vec<_>>();
            Ok(json!({ "a": user(&x), "b": user(&y), "meet": user(&m) }).to_string())
        }
        Command::Strata(StrataCmd::Leq { datum, mu, lambda }) => {
            let d = datum.load()?;
            Ok(leq_q(&d, &d.parse_coweight(&mu)?, &d.parse_coweight(&lambda)?).to_string())
        }
        Command::Strata(StrataCmd::Contains {
            datum,
            gamma,
            lambda,
        }) => {
            let d = datum.load()?;
            let g = load_gamma(&d, &gamma)?;
            Ok(steinberg_contains(&d, &g, &d.parse_coweight(&lambda)?)?.to_string())
        }
        Command::Series(SeriesCmd::Valuation { series }) => {
            Ok(serde_json::to_string(&load_series(&series)?.valuation())
                .expect("valuation serialize"))
        }
        Command::Series(SeriesCmd::Mul { a, b }) => {
            Ok(series_json(&load_series(&a)?.mul(&load_series(&b)?)))
        }
        Command::Series(SeriesCmd::Inv { a, precision }) => {
            let s = load_series(&a)?;
            let p = match precision {
                Some(p) => Some(p),
                None => env_truncation()?,
            };
            let inv = match p {
                Some(p) => s.inv_with_precision(p)?,
                None => s.inv()?,
            };
            Ok(series_json(&inv))
        }
        Command::Series(SeriesCmd::Pow {
            a,
            exponent,
            precision,
        }) => {
            let s = load_series(&a)?;
            Ok(series_json(
                &s.principal_unit_power(&parse_q(&exponent)?, precision)?,
            ))
        }
        Command::Springer(SpringerCmd::Report {
            datum,
            gamma,
            lambda,
            json,
        }) => {
            let d = datum.load()?;
            let g = load_gamma(&d, &gamma)?;
            let report = Springer::new(&d)?.full_report(&g, &d.parse_coweight(&lambda)?)?;
            let wire = report.to_wire(&d);
            if json {
                return Ok(serde_json::to_string_pretty(&wire).expect("report serialize"));
            }
            let value = serde_json::to_value(&wire).expect("report serialize");
            let lines: Vec<String> = value
                .as_object()
                .expect("report object")
                .iter()
                .map(|(k, v)| match v {
                    serde_json::Value::String(s) => format!("{k}\t{s}"),
                    serde_json::Value::Array(a) => {
                        format!(
                            "{k}\t{}",
                            a.iter()
                                .map(|x| x.as_str().map_or(x.to_string(), String::from))
                                .collect::<Vec<_>>()
                                .join(",")
                        )
                    }
                    serde_json::Value::Object(o) => format!(
                        "{k}\t{} ({})",
                        o["value"]
                            .as_str()
                            .map_or(o["value"].to_string(), String::from),
                        o["tag"].as_str().unwrap_or_default()
                    ),
                    other => format!("{k}\t{other}"),
                })
                .collect();
            Ok(lines.join("\n"))
        }
        Command::Springer(SpringerCmd::Invariants { datum, gamma }) => {
            let d = datum.load()?;
            let inv = load_gamma(&d, &gamma)?.invariants(&d)?;
            Ok(json!({
                "newton": d.coweight_to_user(&inv.newton).iter().map(fmt_q).collect::<Vec<_>>(),
                "profile": inv.profile.to_json(),
                "d": fmt_q(&inv.d),
                "r": fmt_q(&inv.r),
                "c": inv.c,
                "warnings": inv.warnings,
            })
            .to_string())
        }
        Command::Springer(SpringerCmd::VerifyLowerBound { datum, radius, tsv }) => {
            let scan = verify_lower_bound(&datum.load()?, radius)?;
            let mut out = String::new();
            if tsv {
                out.push_str("lambda\tmu\tmultiplicity\tkostant\tbound\tstatus");
                for r in &scan.rows {
                    let ints =
                        |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
                    let _ = write!(
                        out,
                        "\n{}\t{}\t{}\t{}\t{}\t{}",
                        ints(&r.lambda),
                        ints(&r.mu),
                        r.multiplicity,
                        r.kostant,
                        r.bound,
                        if r.passed() { "ok" } else { "FAILED" }
                    );
                }
            } else {
                let min = scan
                    .minimum()
                    .map_or("-".to_string(), |r| r.multiplicity.to_string());
                let _ = write!(
                    out,
                    "{}\tradius={}\tbound={}\trows={}\tfailed={}\tminimum={min}",
                    scan.datum,
                    scan.radius,
                    scan.bound,
                    scan.rows.len(),
                    scan.failed()
                );
            }
            if scan.passed() {
                Ok(out)
            } else {
                Err(Failure::Suites(out))
            }
        }
        Command::Verify(cmd) => suites_outcome(match cmd {
            VerifyCmd::All { small, seed } => verify::all_suites(small, seed),
            VerifyCmd::Coxeter { types } => vec![verify::suite_coxeter(&strs(&types))],
            VerifyCmd::Multiplicities { types, max } => {
                vec![verify::suite_multiplicities(&strs(&types), max)]
            }
            VerifyCmd::DimensionSum { types, max } => {
                vec![verify::suite_dimension_sum(&strs(&types), max)]
            }
            VerifyCmd::LowerBound { datum, radius } => {
                vec![verify::suite_lower_bound(&[(datum.datum.as_str(), radius)])]
            }
            VerifyCmd::Gl2 => vec![verify::suite_gl2_fixture()],
            VerifyCmd::Meet { types, radius } => vec![verify::suite_meet(&strs(&types), radius)],
            VerifyCmd::Strata {
                types,
                samples,
                radius,
                seed,
            } => {
                vec![verify::suite_strata(&strs(&types), samples, radius, seed)]
            }
            VerifyCmd::Equivalence {
                types,
                trials,
                radius,
                seed,
            } => {
                vec![verify::suite_equivalence(
                    &strs(&types),
                    trials,
                    radius,
                    seed,
                )]
            }
            VerifyCmd::Discriminant { samples, seed } => {
                vec![verify::suite_discriminant(
                    if seed.is_some() { samples } else { 0 },
                    seed.unwrap_or(0),
                )]
            }
            VerifyCmd::Enhanced { types, radius } => {
                vec![verify::suite_enhanced(&strs(&types), radius)]
            }
            VerifyCmd::Ramified => vec![verify::suite_ramified()],
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            let code = if e.is_malformed_input() { 1 } else { 2 };
            eprintln!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(code)
        }
        Err(Failure::Suites(text)) => {
            println!("{text}");
            eprintln!(
                "{}",
                json!({ "error": "SuiteFailed", "message": "at least one check failed" })
            );
            ExitCode::from(2)
        }
    }
}
