//! `chatelet-verify`: runs the verification pipeline and prints a summary or
//! a canonical JSON certificate.
//!
//! Exit codes: 0 success, 1 contradiction, 2 undecided, 64 usage, 65 bad
//! input.

use std::process::ExitCode;

use chatelet::chatelet::{
    hasse_violation_report, ChateletSurface, ElsReport, HasseReport, SearchOptions,
    SolvabilityVerdict, DEFAULT_DEPTH,
};
use chatelet::family::{
    fiber_at, theorem_one_scan, verify_fiber_irreducible, ProjectivePoint, ScanOptions, ScanReport,
    ScanStatus,
};
use chatelet::genus1::{curve_evidence, CurveEvidence, NamedCurve};
use chatelet::json::Document;
use chatelet::quartic::{
    factorization_oracle, IrreducibilityVerdict, PolyFactorization, QuarticPoly,
};
use chatelet::{Error, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

const EXIT_CONTRADICTION: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BAD_INPUT: u8 = 65;

#[derive(Parser, Debug)]
#[command(
    name = "chatelet-verify",
    version,
    about = "Exact verification for Chatelet surface bundles"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Print the JSON certificate instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "CHATELET_WORKERS", value_parser = clap::value_parser!(u64).range(1..=1024))]
    workers: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Scan every fiber of height at most --height.
    VerifyTheorem {
        #[arg(long, default_value_t = 10, value_parser = positive)]
        height: u64,
        /// Height bound of each fiber's point search.
        #[arg(long, default_value_t = 50, value_parser = positive)]
        search: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH, value_parser = clap::value_parser!(u32).range(1..=64))]
        depth: u32,
    },
    /// Report on a single fiber.
    Fiber {
        /// A rational `u` for the point `(u : 1)`, or `inf` for `(1 : 0)`.
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        search: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH, value_parser = clap::value_parser!(u32).range(1..=64))]
        depth: u32,
    },
    /// Point search and local evidence on a curve of the argument.
    Curves {
        #[arg(long, value_enum)]
        which: WhichCurve,
        #[arg(long, default_value_t = 1000, value_parser = positive)]
        bound: u64,
    },
    /// Hasse report for `y^2 - alpha z^2 = P(x)`.
    Surface {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Coefficients of P from x^4 down to the constant, space separated.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value_t = 200, value_parser = positive)]
        search: u64,
        #[arg(long, default_value_t = DEFAULT_DEPTH, value_parser = clap::value_parser!(u32).range(1..=64))]
        depth: u32,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WhichCurve {
    #[value(name = "C")]
    C,
    #[value(name = "Cprime")]
    Cprime,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// The single-fiber certificate.
#[derive(Serialize, Deserialize)]
struct FiberBody {
    point: ProjectivePoint,
    polynomial: QuarticPoly,
    /// Absent over `(1 : 0)`, whose polynomial factors by construction.
    irreducibility: Option<IrreducibilityVerdict>,
    factorization: PolyFactorizationView,
    report: HasseReport,
}

#[derive(Serialize, Deserialize)]
struct PolyFactorizationView {
    unit: Rational,
    factors: Vec<QuarticPoly>,
}

impl From<&PolyFactorization> for PolyFactorizationView {
    fn from(f: &PolyFactorization) -> Self {
        PolyFactorizationView {
            unit: f.unit.clone(),
            factors: f
                .factor_polys()
                .iter()
                .map(|p| QuarticPoly::from_poly(p).expect("degree at most 4"))
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceBody {
    surface: ChateletSurface,
    report: HasseReport,
}

enum Failure {
    BadInput(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidSurface(_)
            | Error::InseparableInput(_)
            | Error::DegenerateFiber(_) => Failure::BadInput(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let outcome = chatelet::with_workers(cli.common.workers.map(|n| n as usize), || {
        run(&cli, arguments)
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONTRADICTION)
        }
    }
}

fn run(cli: &Cli, arguments: Vec<String>) -> Result<u8, Failure> {
    let json = cli.common.json;
    match &cli.command {
        Command::VerifyTheorem {
            height,
            search,
            depth,
        } => {
            let report = theorem_one_scan(&ScanOptions {
                height_bound: *height,
                search_bound: *search,
                depth: *depth,
                // Already inside the pool sized by --workers.
                workers: None,
            })?;
            let code = match report.status {
                ScanStatus::Verified => 0,
                ScanStatus::Undecided => EXIT_UNDECIDED,
                ScanStatus::Contradiction => EXIT_CONTRADICTION,
            };
            emit(json, "verify-theorem", arguments, &report, summarize_scan);
            Ok(code)
        }
        Command::Fiber { u, search, depth } => {
            let point: ProjectivePoint = u.parse()?;
            let surface = fiber_at(&point)?;
            let irreducibility = if point.is_affine() {
                Some(verify_fiber_irreducible(&point)?)
            } else {
                None
            };
            let factorization = factorization_oracle(surface.poly())?;
            let report = hasse_violation_report(&surface, &SearchOptions::new(*search), *depth)?;
            let code = fiber_exit_code(&point, irreducibility.as_ref(), &report);
            let body = FiberBody {
                polynomial: surface.poly().clone(),
                point,
                irreducibility,
                factorization: (&factorization).into(),
                report,
            };
            emit(json, "fiber", arguments, &body, summarize_fiber);
            Ok(code)
        }
        Command::Curves { which, bound } => {
            let named = match which {
                WhichCurve::C => NamedCurve::C,
                WhichCurve::Cprime => NamedCurve::CPrime,
            };
            let evidence = curve_evidence(named, *bound);
            let code = if evidence.consistent() {
                0
            } else {
                EXIT_CONTRADICTION
            };
            emit(json, "curves", arguments, &evidence, summarize_curve);
            Ok(code)
        }
        Command::Surface {
            alpha,
            p,
            search,
            depth,
        } => {
            let alpha: Rational = alpha.parse()?;
            let coeffs = p
                .split_whitespace()
                .map(str::parse::<Rational>)
                .collect::<Result<Vec<_>, _>>()?;
            let poly = QuarticPoly::from_descending(&coeffs)?;
            let surface = ChateletSurface::new(alpha, poly)?;
            let report = hasse_violation_report(&surface, &SearchOptions::new(*search), *depth)?;
            let code = match report {
                HasseReport::Undecided { .. } => EXIT_UNDECIDED,
                _ => 0,
            };
            emit(
                json,
                "surface",
                arguments,
                &SurfaceBody { surface, report },
                summarize_surface,
            );
            Ok(code)
        }
    }
}

/// An affine fiber must be irreducible with a point; `(1 : 0)` must be a
/// candidate violation.
fn fiber_exit_code(
    point: &ProjectivePoint,
    irr: Option<&IrreducibilityVerdict>,
    report: &HasseReport,
) -> u8 {
    if irr.is_some_and(|v| !v.irreducible) {
        return EXIT_CONTRADICTION;
    }
    match (point.is_affine(), report) {
        (_, HasseReport::Undecided { .. }) => EXIT_UNDECIDED,
        (true, HasseReport::HasPoint { .. }) => 0,
        (false, HasseReport::CandidateHasseViolation { .. }) => 0,
        // A search to the bound is not a proof, so an empty affine search
        // is undecided rather than contradictory.
        (true, HasseReport::CandidateHasseViolation { .. }) => EXIT_UNDECIDED,
        _ => EXIT_CONTRADICTION,
    }
}

fn emit<T: Serialize>(
    json: bool,
    command: &str,
    arguments: Vec<String>,
    body: &T,
    summary: fn(&T) -> String,
) {
    if json {
        println!("{}", Document::new(command, arguments, body).to_json());
    } else {
        print!("{}", summary(body));
    }
}

fn verdict_label(v: &SolvabilityVerdict) -> &'static str {
    match v {
        SolvabilityVerdict::Solvable { .. } => "solvable",
        SolvabilityVerdict::NotSolvable { .. } => "not solvable",
        SolvabilityVerdict::Unknown { .. } => "unknown",
    }
}

fn summarize_local(local: &ElsReport) -> String {
    let mut s = String::new();
    for e in &local.entries {
        s += &format!("  place {}: {}\n", e.place, verdict_label(&e.verdict));
    }
    s += &format!(
        "  primes outside {:?}: {}\n",
        local
            .good_primes
            .bad_primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>(),
        local.good_primes.justification
    );
    s
}

fn summarize_report(r: &HasseReport) -> String {
    let mut s = format!("classification: {}\n", r.label());
    match r {
        HasseReport::HasPoint { point, .. } => s += &format!("  point {point}\n"),
        HasseReport::CandidateHasseViolation { height_bound, .. }
        | HasseReport::Undecided { height_bound, .. } => {
            s += &format!("  no point of height <= {height_bound}\n")
        }
        HasseReport::LocallyObstructed { place, .. } => s += &format!("  obstruction at {place}\n"),
    }
    s + &summarize_local(r.local())
}

fn summarize_scan(r: &ScanReport) -> String {
    let found = r
        .fibers
        .iter()
        .filter(|f| f.rational_point.is_some())
        .count();
    let mut s = format!(
        "status: {:?}\naffine fibers of height <= {}: {}, with a point: {}\n",
        r.status,
        r.height_bound,
        r.fibers.len(),
        found
    );
    for pt in &r.undecided {
        s += &format!("  undecided: {pt}\n");
    }
    for f in &r.failures {
        s += &format!("  failure: {f}\n");
    }
    s += &format!(
        "fiber over {}: {}\n",
        r.infinity.point, r.infinity.polynomial
    );
    s + &summarize_report(&r.infinity.report)
}

fn summarize_fiber(b: &FiberBody) -> String {
    let mut s = format!("fiber over {}: y^2 + z^2 = {}\n", b.point, b.polynomial);
    if let Some(v) = &b.irreducibility {
        s += &format!("irreducible: {}\n", v.irreducible);
    }
    s += &format!(
        "factors: {}\n",
        b.factorization
            .factors
            .iter()
            .map(|f| format!("({f})"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    s + &summarize_report(&b.report)
}

fn summarize_curve(e: &CurveEvidence) -> String {
    let mut s = format!(
        "w^2 = {}\naffine points of height <= {}: {}\npoints at infinity: {}\n",
        e.f,
        e.height_bound,
        e.affine_points.len(),
        e.at_infinity.count
    );
    for p in &e.affine_points {
        s += &format!("  (t, w) = ({}, {})\n", p.t, p.w);
    }
    if let Some(sym) = &e.symmetry {
        s += &format!(
            "t = 0: w^2 = {} ({})\nw = 0: t^2 in {:?} ({})\n",
            sym.t_zero_value,
            if sym.t_zero_has_point {
                "point"
            } else {
                "no point"
            },
            sym.w_zero_t_squared
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>(),
            if sym.w_zero_has_point {
                "point"
            } else {
                "no point"
            },
        );
    }
    for l in e.local.iter().filter(|l| l.solvable != Some(true)) {
        let what = if l.solvable == Some(false) {
            "no local points"
        } else {
            "undecided"
        };
        s += &format!("place {}: {what}\n", l.place);
    }
    s + &format!(
        "trusted: {} ({})\n",
        e.trusted_input.statement, e.trusted_input.consequence
    )
}

fn summarize_surface(b: &SurfaceBody) -> String {
    format!("{}\n", b.surface) + &summarize_report(&b.report)
}
