//! Command-line front end for `wildrep`.
//!
//! Curves arrive as JSON Lines (`{"id", "a_invariants": [5 strings],
//! "residue_degree"}`) or inline via `--curve`. Every subcommand writes one
//! JSON document per line to standard output.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use wildrep::counting::{self, CountError, ReducedCurve};
use wildrep::galrep::{self, GalrepError};
use wildrep::serde_rat::parse_rat;
use wildrep::weierstrass::{invariants, tate_algorithm, CurveError, TateError};
use wildrep::{GaloisRepReport, InertiaImage, LocalData, Rat, WeierstrassModel};

pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_OUT_OF_SCOPE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "wildrep", version, about = "Galois representations of elliptic curves over unramified 3-adic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local data and image of inertia.
    Classify(CurveArgs),
    /// Full representation report.
    Rep {
        #[command(flatten)]
        curves: CurveArgs,
        /// Report the dual representation on etale cohomology.
        #[arg(long)]
        etale: bool,
    },
    /// Self-checks of the point counts and the sigma Frob trace.
    Verify {
        /// Degrees to check.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        n: Vec<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Point counts over F_{3^n}, or fixed points of sigma Frob with --sys.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        /// Reduced curve y^2 = x^3 + a x^2 + b x + c as "a,b,c" (default: y^2 = x^3 - x).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "sys")]
        reduced: Option<String>,
        /// Count solutions of x = x^(3^n) + 1, y = y^(3^n) on y^2 = x^3 - x.
        #[arg(long)]
        sys: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// JSON Lines file of curves ("-" for standard input).
    #[arg(long, conflicts_with = "curve", required_unless_present = "curve")]
    pub input: Option<PathBuf>,
    /// Inline curve "a1,a2,a3,a4,a6".
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Residue degree(s) for --curve.
    #[arg(long, value_delimiter = ',', conflicts_with = "input")]
    pub n: Option<Vec<u32>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OutputArgs {
    /// Compact JSON, one document per line (the default).
    #[arg(long, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON.
    #[arg(long)]
    pub pretty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub a_invariants: Vec<String>,
    pub residue_degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    OutOfScope,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub local_data: LocalData,
    #[serde(with = "wildrep::serde_rat")]
    pub j_invariant: Rat,
    pub inertia: InertiaImage,
    pub inertia_order: u32,
    pub fired_cases: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<CurveInput>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<GaloisRepReport>,
    /// Local data of an out-of-scope curve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_data: Option<LocalData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl ReportDocument {
    fn new(command: &str, line: Option<usize>, input: Option<CurveInput>) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            line,
            input,
            status: Status::Ok,
            classification: None,
            representation: None,
            local_data: None,
            error: None,
        }
    }

    fn fail(mut self, kind: &str, message: String) -> Self {
        self.status = Status::Error;
        self.error = Some(ErrorInfo { kind: kind.into(), message, line: self.line });
        self
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Ok => EXIT_OK,
            Status::OutOfScope => EXIT_OUT_OF_SCOPE,
            Status::Error => EXIT_ERROR,
        }
    }
}

/// Input problem for a single curve.
#[derive(Debug)]
struct InputError {
    kind: &'static str,
    message: String,
}

impl CurveInput {
    pub fn to_model(&self) -> Result<WeierstrassModel, String> {
        self.model().map_err(|e| e.message)
    }

    fn model(&self) -> Result<WeierstrassModel, InputError> {
        let parse_err = |message: String| InputError { kind: "PARSE_ERROR", message };
        if self.a_invariants.len() != 5 {
            return Err(parse_err(format!("expected 5 a-invariants, got {}", self.a_invariants.len())));
        }
        let mut coeffs: [Rat; 5] = Default::default();
        for (c, s) in coeffs.iter_mut().zip(&self.a_invariants) {
            *c = parse_rat(s).ok_or_else(|| parse_err(format!("invalid rational {s:?}")))?;
        }
        WeierstrassModel::new(coeffs, self.residue_degree).map_err(|e| InputError {
            kind: "INVALID_INPUT",
            message: match e {
                CurveError::SingularModel => "singular model (discriminant is zero)".into(),
                CurveError::InvalidResidueDegree => "residue_degree must be at least 1".into(),
            },
        })
    }
}

/// Parses "a1,a2,a3,a4,a6".
pub fn parse_curve_arg(text: &str, residue_degree: u32) -> CurveInput {
    CurveInput {
        id: None,
        a_invariants: text.split(',').map(|s| s.trim().to_string()).collect(),
        residue_degree,
    }
}

fn galrep_error_doc(doc: ReportDocument, err: GalrepError) -> ReportDocument {
    match err {
        GalrepError::OutOfScope(ld) => {
            let mut doc = doc;
            doc.status = Status::OutOfScope;
            doc.local_data = Some(*ld);
            doc.error = Some(ErrorInfo {
                kind: "OUT_OF_SCOPE".into(),
                message: "potentially multiplicative reduction (v(j) < 0)".into(),
                line: doc.line,
            });
            doc
        }
        GalrepError::Count(CountError::CapacityExceeded { what, n, max }) => {
            doc.fail("CAPACITY_EXCEEDED", format!("{what}: n = {n} exceeds {max}"))
        }
        GalrepError::ClassifierContradiction(m) => doc.fail("CLASSIFIER_CONTRADICTION", m),
        GalrepError::Tate(TateError::InternalContradiction(m)) => doc.fail("INTERNAL_ERROR", m),
        other => doc.fail("INTERNAL_ERROR", other.to_string()),
    }
}

pub fn classify_one(input: CurveInput, line: Option<usize>) -> ReportDocument {
    let doc = ReportDocument::new("classify", line, Some(input.clone()));
    let model = match input.model() {
        Ok(m) => m,
        Err(e) => return doc.fail(e.kind, e.message),
    };
    let result = tate_algorithm(&model).map_err(GalrepError::from).and_then(|ld| {
        let inertia = galrep::classify_inertia(&ld)?;
        Ok(Classification {
            j_invariant: invariants(&model).j,
            inertia,
            inertia_order: inertia.order(),
            fired_cases: if inertia == InertiaImage::Trivial { 0 } else { galrep::fired_cases(&ld) },
            local_data: ld,
        })
    });
    match result {
        Ok(c) => ReportDocument { classification: Some(c), ..doc },
        Err(e) => galrep_error_doc(doc, e),
    }
}

pub fn rep_one(input: CurveInput, line: Option<usize>, etale: bool) -> ReportDocument {
    let doc = ReportDocument::new("rep", line, Some(input.clone()));
    let model = match input.model() {
        Ok(m) => m,
        Err(e) => return doc.fail(e.kind, e.message),
    };
    match galrep::build_representation(&model, etale) {
        Ok(r) => ReportDocument { representation: Some(r), ..doc },
        Err(e) => galrep_error_doc(doc, e),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T, output: OutputArgs) -> io::Result<()> {
    let text = if output.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
        .expect("documents serialize");
    writeln!(out, "{text}")
}

/// Runs `f` on every curve named by the arguments and returns the exit code.
fn for_each_curve(
    args: &CurveArgs,
    command: &str,
    out: &mut dyn Write,
    f: &dyn Fn(CurveInput, Option<usize>) -> ReportDocument,
) -> io::Result<u8> {
    let mut docs = Vec::new();
    if let Some(path) = &args.input {
        let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
            Box::new(io::stdin().lock())
        } else {
            match std::fs::File::open(path) {
                Ok(f) => Box::new(io::BufReader::new(f)),
                Err(e) => {
                    let doc = ReportDocument::new(command, None, None)
                        .fail("IO_ERROR", format!("{}: {e}", path.display()));
                    write_json(out, &doc, args.output)?;
                    return Ok(EXIT_ERROR);
                }
            }
        };
        for (i, text) in reader.lines().enumerate() {
            let text = text?;
            let line = i + 1;
            if text.trim().is_empty() {
                continue;
            }
            let doc = match serde_json::from_str::<CurveInput>(&text) {
                Ok(input) => f(input, Some(line)),
                Err(e) => ReportDocument::new(command, Some(line), None).fail("PARSE_ERROR", e.to_string()),
            };
            write_json(out, &doc, args.output)?;
            docs.push(doc.exit_code());
        }
    } else if let Some(curve) = &args.curve {
        for &n in args.n.as_deref().unwrap_or(&[1]) {
            let doc = f(parse_curve_arg(curve, n), None);
            write_json(out, &doc, args.output)?;
            docs.push(doc.exit_code());
        }
    }
    Ok(combine_exit_codes(&docs))
}

/// Errors dominate out-of-scope results, which dominate success.
pub fn combine_exit_codes(codes: &[u8]) -> u8 {
    if codes.contains(&EXIT_ERROR) {
        EXIT_ERROR
    } else if codes.contains(&EXIT_OUT_OF_SCOPE) {
        EXIT_OUT_OF_SCOPE
    } else {
        EXIT_OK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub n: u32,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryLine {
    pub summary: VerifySummary,
}

fn row(check: &str, n: u32, expected: String, actual: String) -> CheckRow {
    let status = if expected == actual { CheckStatus::Pass } else { CheckStatus::Fail };
    CheckRow { check: check.into(), n, status, expected: Some(expected), actual: Some(actual), reason: None }
}

fn skip(check: &str, n: u32, reason: String) -> CheckRow {
    CheckRow { check: check.into(), n, status: CheckStatus::Skip, expected: None, actual: None, reason: Some(reason) }
}

fn failed(check: &str, n: u32, reason: String) -> CheckRow {
    CheckRow { check: check.into(), n, status: CheckStatus::Fail, expected: None, actual: None, reason: Some(reason) }
}

/// Capacity limits skip a check; any other error fails it.
fn from_error(check: &str, n: u32, e: GalrepError) -> CheckRow {
    match e {
        GalrepError::Count(CountError::CapacityExceeded { .. }) => skip(check, n, e.to_string()),
        e => failed(check, n, e.to_string()),
    }
}

/// `3^n + (-3)^((n+1)/2)` for odd n.
pub fn sys_formula(n: u32) -> i128 {
    3i128.pow(n) + (-3i128).pow(n.div_ceil(2))
}

pub fn verify_rows(n: u32) -> Vec<CheckRow> {
    let mut rows = Vec::new();

    let check = "sys_count";
    if n % 2 == 0 {
        rows.push(skip(check, n, "defined for odd n only".into()));
    } else {
        rows.push(match counting::count_sys_solutions(n) {
            Ok(c) => row(check, n, sys_formula(n).to_string(), c.to_string()),
            Err(e) => from_error(check, n, e.into()),
        });
    }

    let check = "point_count";
    let curve = ReducedCurve::x3_minus_x();
    rows.push(match (counting::count_points(&curve, n), counting::frobenius_trace(&curve, n)) {
        (Ok(c), Ok(t)) => row(check, n, t.point_count.to_string(), c.to_string()),
        (Err(e), _) | (_, Err(e)) => from_error(check, n, e.into()),
    });

    let check = "sigma_frob_trace";
    if n % 2 == 0 {
        rows.push(skip(check, n, "defined for odd n only".into()));
    } else {
        rows.push(match galrep::verify_sigma_frob_trace(n) {
            Ok(c) => row(check, n, c.from_characters.to_string(), c.from_count.to_string()),
            Err(e) => from_error(check, n, e),
        });
    }
    rows
}

fn run_verify(ns: &[u32], output: OutputArgs, out: &mut dyn Write) -> io::Result<u8> {
    let mut summary = VerifySummary { pass: 0, fail: 0, skip: 0 };
    for &n in ns {
        for r in verify_rows(n) {
            match r.status {
                CheckStatus::Pass => summary.pass += 1,
                CheckStatus::Fail => summary.fail += 1,
                CheckStatus::Skip => summary.skip += 1,
            }
            write_json(out, &r, output)?;
        }
    }
    write_json(out, &SummaryLine { summary: summary.clone() }, output)?;
    Ok(if summary.fail == 0 { EXIT_OK } else { EXIT_ERROR })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<ReducedCurve>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_count: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sys_solutions: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_frob_trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

fn count_error(e: CountError) -> ErrorInfo {
    let kind = match e {
        CountError::CapacityExceeded { .. } => "CAPACITY_EXCEEDED",
        CountError::InvalidArgument(_) | CountError::SingularCurve(..) => "INVALID_INPUT",
        _ => "INTERNAL_ERROR",
    };
    ErrorInfo { kind: kind.into(), message: e.to_string(), line: None }
}

pub fn parse_reduced(text: &str) -> Result<ReducedCurve, String> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| format!("invalid coefficient {s:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [a, b, c] = parts[..] else { return Err(format!("expected 3 coefficients, got {}", parts.len())) };
    ReducedCurve::new(a, b, c).map_err(|e| e.to_string())
}

pub fn count_row(n: u32, curve: Option<ReducedCurve>, sys: bool) -> CountRow {
    let mut r = CountRow {
        n,
        curve: None,
        point_count: None,
        frobenius_trace: None,
        sys_solutions: None,
        sigma_frob_trace: None,
        error: None,
    };
    let result = if sys {
        counting::count_sys_solutions(n).map(|c| {
            r.sys_solutions = Some(c.to_string());
            r.sigma_frob_trace = Some((3i128.pow(n) - c as i128).to_string());
        })
    } else {
        let curve = curve.unwrap_or_else(ReducedCurve::x3_minus_x);
        r.curve = Some(curve);
        counting::frobenius_trace(&curve, n).map(|t| {
            r.point_count = Some(t.point_count.to_string());
            r.frobenius_trace = Some(t.a_n.to_string());
        })
    };
    if let Err(e) = result {
        r.error = Some(count_error(e));
    }
    r
}

fn run_count(ns: &[u32], reduced: Option<&str>, sys: bool, output: OutputArgs, out: &mut dyn Write) -> io::Result<u8> {
    let curve = match reduced.map(parse_reduced).transpose() {
        Ok(c) => c,
        Err(message) => {
            let info = ErrorInfo { kind: "PARSE_ERROR".into(), message, line: None };
            write_json(out, &serde_json::json!({ "error": info }), output)?;
            return Ok(EXIT_ERROR);
        }
    };
    let mut code = EXIT_OK;
    for &n in ns {
        let r = count_row(n, curve, sys);
        if r.error.is_some() {
            code = EXIT_ERROR;
        }
        write_json(out, &r, output)?;
    }
    Ok(code)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> io::Result<u8> {
    match &cli.command {
        Command::Classify(args) => for_each_curve(args, "classify", out, &classify_one),
        Command::Rep { curves, etale } => {
            let etale = *etale;
            for_each_curve(curves, "rep", out, &move |input, line| rep_one(input, line, etale))
        }
        Command::Verify { n, output } => run_verify(n, *output, out),
        Command::Count { n, reduced, sys, output } => run_count(n, reduced.as_deref(), *sys, *output, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sys_formula_values() {
        assert_eq!([1, 3, 5].map(sys_formula), [0, 36, 216]);
    }

    #[test]
    fn exit_code_precedence() {
        assert_eq!(combine_exit_codes(&[]), EXIT_OK);
        assert_eq!(combine_exit_codes(&[0, 2, 0]), EXIT_OUT_OF_SCOPE);
        assert_eq!(combine_exit_codes(&[2, 1]), EXIT_ERROR);
    }

    #[test]
    fn curve_argument_parsing() {
        let c = parse_curve_arg("0, 0, 0, -1.5, 1/3", 2);
        assert_eq!(c.a_invariants, ["0", "0", "0", "-1.5", "1/3"]);
        assert_eq!(c.residue_degree, 2);
        assert!(c.to_model().is_ok());
        assert!(parse_curve_arg("0,0,0,0", 1).to_model().is_err());
        assert!(parse_curve_arg("0,0,0,0,x", 1).to_model().is_err());
        assert!(parse_curve_arg("0,0,0,0,0", 1).to_model().unwrap_err().contains("singular"));
    }

    #[test]
    fn reduced_curve_parsing() {
        assert_eq!(parse_reduced("0,-1,0").unwrap(), ReducedCurve::x3_minus_x());
        assert!(parse_reduced("0,0,0").unwrap_err().contains("repeated root"));
        assert!(parse_reduced("1,2").is_err());
    }

    #[test]
    fn verify_rows_statuses() {
        let rows = verify_rows(1);
        assert!(rows.iter().all(|r| r.status == CheckStatus::Pass), "{rows:?}");
        let rows = verify_rows(7);
        assert_eq!(rows[0].status, CheckStatus::Skip);
        assert_eq!(rows[1].status, CheckStatus::Pass);
        assert_eq!(rows[2].status, CheckStatus::Skip);
        let rows = verify_rows(9);
        assert_eq!(rows[1].status, CheckStatus::Skip);
    }
}
