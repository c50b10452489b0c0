//! The `braces` command line: compute braces, run verification suites and
//! manipulate truncated series.
//!
//! Exit codes: 0 success or pass, 1 failed verification or singular series,
//! 2 usage error.

pub mod input;
pub mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use braces_core::braces::{BraceFamily, Mutation};
use braces_core::coalgebra::{pullback_brace, CoFlavor};
use braces_core::homotopy::{check_a_infinity, check_l_infinity, VerificationReport};
use braces_core::series::{
    alternating_composition_sum, c_from_series, c_table_from_series, compose, invert, preset, random_invertible,
    Convention, Preset, TruncatedSeries,
};
use braces_core::{Error, Flavor, ParityVector, Scalar};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "braces", version, about = "Exact higher braces: closed forms, pullbacks and homotopy checks")]
pub struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a brace on generators a1..an.
    Brace(BraceArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Invert, compose, or extract brace coefficients from a series.
    Series(SeriesArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Factorial,
    Plain,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Factorial => Convention::Factorial,
            ConventionArg::Plain => Convention::Plain,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Symmetric,
    Tensor,
}

impl From<Side> for CoFlavor {
    fn from(s: Side) -> Self {
        match s {
            Side::Symmetric => CoFlavor::Symmetric,
            Side::Tensor => CoFlavor::Tensor,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct SeriesInput {
    /// Named series: exp-minus-one, log-one-plus, geometric, alt-geometric, identity.
    #[arg(long)]
    pub preset: Option<String>,
    /// Comma-separated coefficients f_1, f_2, … as integers or p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Truncation order.
    #[arg(long)]
    pub order: Option<usize>,
    /// How the coefficients are read.
    #[arg(long, value_enum, default_value_t = ConventionArg::Factorial)]
    pub convention: ConventionArg,
}

impl SeriesInput {
    fn given(&self) -> bool {
        self.preset.is_some() || self.coeffs.is_some()
    }

    fn build(&self, default_order: usize) -> Result<TruncatedSeries, Failure> {
        input::series(
            self.preset.as_deref(),
            self.coeffs.as_deref(),
            self.order,
            self.convention.into(),
            default_order,
        )
        .map_err(Failure::Usage)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BraceKindArg {
    Koszul,
    Borjeson,
    General,
}

#[derive(Args, Debug)]
pub struct BraceArgs {
    pub kind: BraceKindArg,
    /// Number of arguments.
    #[arg(long)]
    pub n: usize,
    /// Comma-separated parities of a1..an (default all even).
    #[arg(long)]
    pub parities: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Coalgebra side for `general`.
    #[arg(long, value_enum, default_value_t = Side::Symmetric)]
    pub side: Side,
    #[command(flatten)]
    pub series: SeriesInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PullbackKoszul,
    PullbackBorjeson,
    PullbackGeneral,
    Linf,
    Ainf,
    CIdentity,
    SeriesInverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Koszul,
    Borjeson,
    Trivial,
    General,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Largest arity checked (default depends on the suite).
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Largest coefficient index for c-identity.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Corrupt one brace term: phi<n>-sign[:k], b<n>-sign[:k], b<n>-drop:k, b3-drop-last.
    #[arg(long)]
    pub mutate: Option<String>,
    /// Brace family for linf/ainf.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Restrict pullback-general to one side.
    #[arg(long, value_enum)]
    pub side: Option<Side>,
    /// Seed for pseudo-random series.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of pseudo-random series.
    #[arg(long)]
    pub count: Option<usize>,
    /// Rendering of a failing residual.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub series: SeriesInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesAction {
    Invert,
    Compose,
    CoeffsC,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    pub action: SeriesAction,
    #[command(flatten)]
    pub series: SeriesInput,
    /// Inner series of a composition, as a preset.
    #[arg(long)]
    pub inner_preset: Option<String>,
    /// Inner series of a composition, as coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub inner_coeffs: Option<String>,
    /// Largest index printed by coeffs-c.
    #[arg(long)]
    pub r_max: Option<usize>,
    /// Side whose coefficients `coeffs-c` computes.
    #[arg(long, value_enum, default_value_t = Side::Symmetric)]
    pub side: Side,
}

/// What a command produced: the result text, diagnostics, and an exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Singular(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularSeries => Failure::Singular(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Brace(a) => brace(a),
        Command::Verify(a) => verify(a),
        Command::Series(a) => series(a),
    };
    match result {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => Outcome {
            stderr: format!("error: {msg}\n"),
            code: 2,
            ..Outcome::default()
        },
        Err(Failure::Singular(msg)) => Outcome {
            stderr: format!("error: {msg}\n"),
            code: 1,
            ..Outcome::default()
        },
    }
}

fn brace(a: &BraceArgs) -> Result<Outcome, Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let pv = input::parse_parities(a.parities.as_deref(), a.n).map_err(Failure::Usage)?;
    let args = pv.generator_words();
    let (family, flavor) = match a.kind {
        BraceKindArg::Koszul => (BraceFamily::koszul(), Flavor::Commutative),
        BraceKindArg::Borjeson => (BraceFamily::borjeson(), Flavor::Noncommutative),
        BraceKindArg::General => {
            let side: CoFlavor = a.side.into();
            let f = a.series.build(a.n)?.with_convention(side.convention());
            let flavor = side.algebra_flavor();
            (BraceFamily::generalized_from_series(f, a.n, flavor)?, flavor)
        }
    };
    let e = family.evaluate(&args, flavor)?;
    Ok(Outcome {
        stdout: render::render(&e, a.format) + "\n",
        ..Outcome::default()
    })
}

fn parse_mutation(s: &str) -> Result<Mutation, Failure> {
    let bad = || Failure::Usage(format!("unknown mutation {s:?}"));
    if let Some(rest) = s.strip_prefix("phi") {
        let (arity, term) = rest.split_once("-sign").ok_or_else(bad)?;
        let arity = arity.parse().map_err(|_| bad())?;
        let term = match term.strip_prefix(':') {
            Some(k) => k.parse().map_err(|_| bad())?,
            None if term.is_empty() => 1,
            None => return Err(bad()),
        };
        return Ok(Mutation::FlipKoszulTerm { arity, term });
    }
    let rest = s.strip_prefix('b').ok_or_else(bad)?;
    let (arity, op) = rest.split_once('-').ok_or_else(bad)?;
    let arity: usize = arity.parse().map_err(|_| bad())?;
    let last = match arity {
        1 => 0,
        2 => 2,
        _ => 3,
    };
    match op {
        "sign" => Ok(Mutation::FlipBorjesonTerm { arity, term: 1 }),
        "drop-last" => Ok(Mutation::DropBorjesonTerm { arity, term: last }),
        _ => {
            if let Some(k) = op.strip_prefix("sign:") {
                Ok(Mutation::FlipBorjesonTerm {
                    arity,
                    term: k.parse().map_err(|_| bad())?,
                })
            } else if let Some(k) = op.strip_prefix("drop:") {
                Ok(Mutation::DropBorjesonTerm {
                    arity,
                    term: k.parse().map_err(|_| bad())?,
                })
            } else {
                Err(bad())
            }
        }
    }
}

fn random_series(seed: u64, count: usize, order: usize, convention: Convention) -> Vec<TruncatedSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_invertible(&mut rng, order, convention)).collect()
}

struct Report {
    lines: String,
    passed: bool,
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if a.mutate.is_some() && !matches!(a.suite, Suite::Linf | Suite::Ainf) {
        return Err(Failure::Usage("--mutate applies only to linf and ainf".into()));
    }
    let name = a.suite.to_possible_value().expect("no skipped variants").get_name().to_string();
    let start = Instant::now();
    let report = match a.suite {
        Suite::PullbackKoszul => verify_pullback(a, &name, BraceFamily::koszul(), Side::Symmetric, 6)?,
        Suite::PullbackBorjeson => verify_pullback(a, &name, BraceFamily::borjeson(), Side::Tensor, 7)?,
        Suite::PullbackGeneral => verify_pullback_general(a, &name)?,
        Suite::Linf | Suite::Ainf => verify_homotopy(a, &name)?,
        Suite::CIdentity => verify_c_identity(a, &name)?,
        Suite::SeriesInverse => verify_series_inverse(a, &name)?,
    };
    Ok(Outcome {
        stdout: report.lines,
        stderr: format!("{name}: {:.3} s\n", start.elapsed().as_secs_f64()),
        code: if report.passed { 0 } else { 1 },
    })
}

fn n_max(a: &VerifyArgs, default: usize) -> Result<usize, Failure> {
    match a.n_max.unwrap_or(default) {
        0 => Err(Failure::Usage("--n-max must be at least 1".into())),
        n => Ok(n),
    }
}

/// Compares `family` with the pullback over `f` for every arity and parity
/// vector, returning the first mismatch.
fn compare_with_pullback(
    family: &BraceFamily,
    f: &TruncatedSeries,
    side: Side,
    n_max: usize,
) -> Result<(usize, Option<(ParityVector, String)>), Failure> {
    let co: CoFlavor = side.into();
    let mut count = 0;
    for n in 1..=n_max {
        for pv in ParityVector::all(n) {
            let lhs = family.evaluate(&pv.generator_words(), co.algebra_flavor())?;
            let rhs = pullback_brace(&pv.generators(), f, co)?;
            count += 1;
            if lhs != rhs {
                let diff = render::text(&(&lhs - &rhs));
                return Ok((count, Some((pv, diff))));
            }
        }
    }
    Ok((count, None))
}

fn verify_pullback(
    a: &VerifyArgs,
    name: &str,
    family: BraceFamily,
    side: Side,
    default_n: usize,
) -> Result<Report, Failure> {
    let n = n_max(a, default_n)?;
    let f = match side {
        Side::Symmetric => preset(Preset::ExpMinusOne, n, Convention::Factorial)?,
        Side::Tensor => preset(Preset::Geometric, n, Convention::Plain)?,
    };
    let (count, mismatch) = compare_with_pullback(&family, &f, side, n)?;
    Ok(match mismatch {
        None => Report {
            lines: format!("PASS {name}: {count} instances, n = 1..{n}\n"),
            passed: true,
        },
        Some((pv, diff)) => Report {
            lines: format!("FAIL {name}: arity {}, parities {pv}\ndifference: {diff}\n", pv.len()),
            passed: false,
        },
    })
}

fn verify_pullback_general(a: &VerifyArgs, name: &str) -> Result<Report, Failure> {
    let n = n_max(a, 5)?;
    let sides = match a.side {
        Some(s) => vec![s],
        None => vec![Side::Symmetric, Side::Tensor],
    };
    let mut total = 0;
    let mut series_count = 0;
    for side in sides {
        let co: CoFlavor = side.into();
        let list = if a.series.given() {
            vec![a.series.build(n)?.with_convention(co.convention())]
        } else {
            random_series(a.seed, a.count.unwrap_or(20), n, co.convention())
        };
        for (k, f) in list.iter().enumerate() {
            let family = BraceFamily::generalized_from_series(f.clone(), n, co.algebra_flavor())?;
            let (count, mismatch) = compare_with_pullback(&family, f, side, n)?;
            total += count;
            series_count += 1;
            if let Some((pv, diff)) = mismatch {
                return Ok(Report {
                    lines: format!(
                        "FAIL {name}: {side:?} side, series #{k} [{f}], arity {}, parities {pv}\ndifference: {diff}\n",
                        pv.len()
                    ),
                    passed: false,
                });
            }
        }
    }
    Ok(Report {
        lines: format!("PASS {name}: {total} instances over {series_count} series, n = 1..{n}\n"),
        passed: true,
    })
}

fn verify_homotopy(a: &VerifyArgs, name: &str) -> Result<Report, Failure> {
    let linf = a.suite == Suite::Linf;
    let default_family = if linf { FamilyArg::Koszul } else { FamilyArg::Borjeson };
    let family_arg = a.family.unwrap_or(default_family);
    let n = n_max(a, if linf { 5 } else { 6 })?;
    let mut family = match family_arg {
        FamilyArg::Koszul => BraceFamily::koszul(),
        FamilyArg::Borjeson => BraceFamily::borjeson(),
        FamilyArg::Trivial => BraceFamily::trivial(),
        FamilyArg::General => {
            let (flavor, conv) = if linf {
                (Flavor::Commutative, Convention::Factorial)
            } else {
                (Flavor::Noncommutative, Convention::Plain)
            };
            let f = if a.series.given() {
                a.series.build(n)?.with_convention(conv)
            } else {
                random_series(a.seed, 1, n, conv).remove(0)
            };
            BraceFamily::generalized_from_series(f, n, flavor)?
        }
    };
    let mut label = family.name().to_string();
    if let Some(m) = &a.mutate {
        family = family.with_mutation(parse_mutation(m)?)?;
        let _ = write!(label, ", mutated {m}");
    }
    let report: VerificationReport = if linf {
        check_l_infinity(&family, n)?
    } else {
        check_a_infinity(&family, n)?
    };
    Ok(match &report.first_failure {
        None => Report {
            lines: format!(
                "PASS {name} ({label}): arities 1..{n}, {} parity vectors\n",
                report.parity_vectors_checked
            ),
            passed: true,
        },
        Some(f) => Report {
            lines: format!(
                "FAIL {name} ({label}): arity {}, parities {}, {} parity vectors checked\nresidual: {}\n",
                f.arity,
                f.parities,
                report.parity_vectors_checked,
                render::render(&f.residual, a.format)
            ),
            passed: false,
        },
    })
}

fn sign_pow(r: usize) -> Scalar {
    Scalar::from_integer(if r.is_multiple_of(2) { 1.into() } else { (-1).into() })
}

fn verify_c_identity(a: &VerifyArgs, name: &str) -> Result<Report, Failure> {
    let r_max = a.r_max.unwrap_or(12);
    if r_max == 0 {
        return Err(Failure::Usage("--r-max must be at least 1".into()));
    }
    for r in 1..=r_max {
        let got = alternating_composition_sum(r);
        if got != sign_pow(r) {
            return Ok(Report {
                lines: format!("FAIL {name}: r = {r} gives {got}\n"),
                passed: false,
            });
        }
    }
    // The same numbers as brace coefficients of exp(a) - 1.
    let f = preset(Preset::ExpMinusOne, r_max + 1, Convention::Factorial)?;
    let c = c_from_series(&f, &invert(&f)?, r_max)?;
    if let Some(r) = (0..=r_max).find(|&r| c.get(r) != Some(&sign_pow(r))) {
        return Ok(Report {
            lines: format!("FAIL {name}: c_{r} of exp-minus-one is {}\n", c.get(r).unwrap()),
            passed: false,
        });
    }
    Ok(Report {
        lines: format!("PASS {name}: r = 1..{r_max}\n"),
        passed: true,
    })
}

fn verify_series_inverse(a: &VerifyArgs, name: &str) -> Result<Report, Failure> {
    let order = a.series.order.unwrap_or(12);
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let mut cases: Vec<(String, TruncatedSeries)> = Vec::new();
    if a.series.given() {
        cases.push(("given series".into(), a.series.build(order)?));
    } else {
        for p in [Preset::ExpMinusOne, Preset::LogOnePlus, Preset::Geometric, Preset::AltGeometric] {
            for conv in [Convention::Factorial, Convention::Plain] {
                cases.push((format!("{} ({conv})", p.name()), preset(p, order, conv)?));
            }
        }
        let count = a.count.unwrap_or(50);
        for (k, f) in random_series(a.seed, count, order, Convention::Plain).into_iter().enumerate() {
            cases.push((format!("random #{k}"), f));
        }
    }
    for (label, f) in &cases {
        let g = invert(f)?;
        let ok = invert(&g)?.same_series(f) && compose(f, &g)?.is_identity() && compose(&g, f)?.is_identity();
        if !ok {
            return Ok(Report {
                lines: format!("FAIL {name}: {label}\n"),
                passed: false,
            });
        }
    }
    Ok(Report {
        lines: format!("PASS {name}: {} series, order {order}\n", cases.len()),
        passed: true,
    })
}

fn series(a: &SeriesArgs) -> Result<Outcome, Failure> {
    let text = match a.action {
        SeriesAction::Invert => {
            let f = a.series.build(8)?;
            format!("{}\n", invert(&f)?)
        }
        SeriesAction::Compose => {
            let outer = a.series.build(8)?;
            let inner = input::series(
                a.inner_preset.as_deref(),
                a.inner_coeffs.as_deref(),
                Some(outer.order()),
                a.series.convention.into(),
                outer.order(),
            )
            .map_err(|e| Failure::Usage(format!("inner series: {e}")))?;
            format!("{}\n", compose(&outer, &inner)?)
        }
        SeriesAction::CoeffsC => {
            let r_max = a.r_max.unwrap_or(6);
            let side: CoFlavor = a.side.into();
            let f = a.series.build(r_max + 1)?.with_convention(side.convention());
            let g = invert(&f)?;
            match a.side {
                Side::Symmetric => {
                    let c = c_from_series(&f, &g, r_max)?;
                    let parts: Vec<String> = c.values().iter().map(|v| v.to_string()).collect();
                    format!("{}\n", parts.join(", "))
                }
                Side::Tensor => {
                    let table = c_table_from_series(&f, &g, r_max)?;
                    let mut out = String::new();
                    for p in 0..=r_max {
                        let row: Vec<String> =
                            (0..=r_max - p).map(|s| table.get(p, s).unwrap().to_string()).collect();
                        let _ = writeln!(out, "C({p}, ·): {}", row.join(", "));
                    }
                    out
                }
            }
        }
    };
    Ok(Outcome {
        stdout: text,
        ..Outcome::default()
    })
}
