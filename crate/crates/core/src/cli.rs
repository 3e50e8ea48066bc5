//! Command-line front end: argument parsing, report rendering and atomic output.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::check::Check;
use crate::qscalar::{QScalar, RootOrder};
use crate::spectra::{self, HighestWeight, SpectraError};
use crate::{combinatorics, grassmann, qscalar, sphere_algebra, uqsl};

pub const THREADS_ENV: &str = "QPROJECTIVE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Normalization {
    /// Eigenvalues of D_N^2 itself.
    Dirac,
    /// Each pair rescaled by q^(l+1) times the Laplacian on its lower degree.
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Scalar,
    Combinatorics,
    Grassmann,
    Uqsl,
    Spectra,
    Sphere,
    All,
}

/// How values are rendered: exact strings or floats at a fixed q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QMode {
    Symbolic,
    Numeric(f64),
}

impl QMode {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "symbolic" {
            return Ok(QMode::Symbolic);
        }
        let v = match s.split_once('/') {
            Some((a, b)) => {
                let a: f64 = a.trim().parse().map_err(|_| format!("bad q '{s}'"))?;
                let b: f64 = b.trim().parse().map_err(|_| format!("bad q '{s}'"))?;
                a / b
            }
            None => s.parse().map_err(|_| format!("bad q '{s}'"))?,
        };
        if v > 0.0 && v <= 1.0 {
            Ok(QMode::Numeric(v))
        } else {
            Err(format!("q must lie in (0, 1], got {s}"))
        }
    }

    fn label(&self) -> String {
        match self {
            QMode::Symbolic => "symbolic".into(),
            QMode::Numeric(v) => fmt_num(*v),
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "qprojective", version, about = "Dirac spectra and representation checks on quantum projective spaces")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Rank l of the quantum projective space CP^l.
    #[arg(long, global = true, default_value_t = 1)]
    pub ell: usize,
    /// Charge N of the line bundle.
    #[arg(long = "N", global = true, default_value_t = 0, allow_hyphen_values = true)]
    pub n: i64,
    /// Deformation parameter: a number in (0, 1], "1" or "symbolic".
    #[arg(long, global = true, default_value = "symbolic", value_parser = QMode::parse)]
    pub q: QMode,
    /// Highest level m_max.
    #[arg(long, global = true, default_value_t = 5)]
    pub levels: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Normalization::Dirac)]
    pub normalization: Normalization,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Spectrum of D_N up to the given level.
    Spectrum,
    /// Spectrum of the undeformed operator.
    Classical,
    /// Irreducible summands of the form modules.
    Decompose {
        /// Form degree; all degrees when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Quantum dimensions of the exterior powers.
    Qdim,
    /// Casimir eigenvalue on an irreducible representation.
    Casimir {
        /// Highest weight, e.g. "(1,0,2)".
        #[arg(long)]
        weight: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Internal(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::InvalidInput(m) => CliError::Invalid(m),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<qscalar::QError> for CliError {
    fn from(e: qscalar::QError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            _ => EXIT_FAILED,
        }
    }
}

/// Rendered report and the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub exit_code: i32,
    /// Names of failed checks, for `verify`.
    pub failures: Vec<String>,
}

/// %.15g without trailing zeros.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = format!("{x:.14e}");
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let s = format!("{:.*}", (14 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let m = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn round15(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

fn num_value(x: f64) -> Value {
    serde_json::Number::from_f64(round15(x)).map_or(Value::Null, Value::Number)
}

/// One rendered cell: exact string or float.
#[derive(Debug, Clone, PartialEq)]
enum Cell {
    Int(i64),
    Text(String),
    Num(f64),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Num(v) => fmt_num(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Num(v) => num_value(*v),
        }
    }
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

fn render(format: Format, params: Value, key: &str, table: &Table, extra: Vec<(&str, Value)>) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, Value> =
                        table.header.iter().zip(r).map(|(h, c)| (h.to_string(), c.json())).collect();
                    Value::Object(m)
                })
                .collect();
            let mut root = serde_json::Map::new();
            root.insert("params".into(), params);
            for (k, v) in extra {
                root.insert(k.into(), v);
            }
            root.insert(key.into(), Value::Array(rows));
            Ok(serde_json::to_string_pretty(&Value::Object(root)).expect("serializable") + "\n")
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&table.header).map_err(|e| CliError::Internal(e.to_string()))?;
            for r in &table.rows {
                w.write_record(r.iter().map(Cell::render)).map_err(|e| CliError::Internal(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("utf8"))
        }
        Format::Pretty => {
            let mut out = format!("params: {params}\n");
            for (k, v) in extra {
                out.push_str(&format!("{k}: {v}\n"));
            }
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
            let widths: Vec<usize> = (0..table.header.len())
                .map(|i| cells.iter().map(|r| r[i].len()).chain([table.header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |r: Vec<String>| {
                r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                    + "\n"
            };
            out.push_str(&line(table.header.iter().map(|s| s.to_string()).collect()));
            for r in cells {
                out.push_str(&line(r));
            }
            Ok(out)
        }
    }
}

fn params(cfg: &RunConfig, r: RootOrder) -> Value {
    json!({ "ell": cfg.ell, "N": cfg.n, "q": cfg.q.label(), "r": r.get() })
}

fn common_order<'a>(ell: usize, xs: impl Iterator<Item = &'a QScalar>) -> RootOrder {
    xs.fold(RootOrder::for_rank(ell), |r, x| r.lcm(x.root_order()))
}

fn scalar_cell(x: &QScalar, mode: QMode, r: RootOrder) -> Result<Cell, CliError> {
    Ok(match mode {
        QMode::Symbolic => Cell::Text(x.lift(r).canonical_string()),
        QMode::Numeric(q) if q == 1.0 => Cell::Num(x.at_one_real()?.to_f64().unwrap_or(f64::NAN)),
        QMode::Numeric(q) => Cell::Num(x.eval_at(q)?),
    })
}

fn check_rank(ell: usize) -> Result<(), CliError> {
    if ell == 0 {
        return Err(CliError::Invalid("--ell must be at least 1".into()));
    }
    Ok(())
}

fn spectrum_report(cfg: &RunConfig) -> Result<Report, CliError> {
    check_rank(cfg.ell)?;
    let sp = spectra::full_spectrum(cfg.ell, cfg.n, cfg.levels)?;
    let values: Vec<QScalar> = sp
        .lines
        .iter()
        .map(|l| match cfg.normalization {
            Normalization::Dirac => l.eigenvalue_sq.clone(),
            Normalization::Laplacian => {
                let lower = if l.sign < 0 { l.degree as i64 - 1 } else { l.degree as i64 };
                QScalar::q_int(cfg.ell as i64 + 1 + cfg.n - lower) * &l.eigenvalue_sq
            }
        })
        .collect();
    let r = common_order(cfg.ell, values.iter());
    let mut rows = Vec::new();
    for (l, v) in sp.lines.iter().zip(&values) {
        let sq = scalar_cell(v, cfg.q, r)?;
        let ev = match (&sq, l.sign) {
            (_, 0) => Cell::Int(0),
            (Cell::Num(x), s) => Cell::Num(s as f64 * x.max(0.0).sqrt()),
            (Cell::Text(t), s) => Cell::Text(format!("{}sqrt({t})", if s < 0 { "-" } else { "" })),
            (Cell::Int(_), _) => unreachable!("values render as text or numbers"),
        };
        rows.push(vec![
            Cell::Int(l.degree as i64),
            Cell::Int(l.pair_level as i64),
            Cell::Text(l.weight.to_string()),
            sq,
            ev,
            Cell::Int(l.multiplicity as i64),
        ]);
    }
    let table =
        Table { header: vec!["degree", "level", "weight", "eigenvalue_sq", "eigenvalue", "multiplicity"], rows };
    let norm = match cfg.normalization {
        Normalization::Dirac => "dirac",
        Normalization::Laplacian => "laplacian",
    };
    let extra = vec![("normalization", json!(norm)), ("kernel_dim", json!(sp.kernel_dim()))];
    ok(render(cfg.format, params(cfg, r), "lines", &table, extra)?)
}

fn classical_report(cfg: &RunConfig) -> Result<Report, CliError> {
    check_rank(cfg.ell)?;
    let cl = spectra::classical_spectrum(cfg.ell, cfg.n, cfg.levels);
    let rows = cl
        .lines
        .iter()
        .map(|l| {
            vec![
                Cell::Int(l.m as i64),
                Cell::Int(l.k as i64),
                Cell::Int(l.lambda_sq as i64),
                Cell::Num((l.lambda_sq as f64).sqrt()),
                Cell::Int(l.multiplicity as i64),
            ]
        })
        .collect();
    let table = Table { header: vec!["m", "k", "lambda_sq", "lambda", "multiplicity"], rows };
    let p = json!({ "ell": cfg.ell, "N": cfg.n, "q": "1", "r": RootOrder::for_rank(cfg.ell).get() });
    ok(render(cfg.format, p, "lines", &table, vec![("kernel_dim", json!(cl.kernel_dim))])?)
}

fn decompose_report(cfg: &RunConfig, k: Option<usize>) -> Result<Report, CliError> {
    check_rank(cfg.ell)?;
    let degrees: Vec<usize> = match k {
        Some(k) if k > cfg.ell => return Err(CliError::Invalid(format!("--k must be at most {}", cfg.ell))),
        Some(k) => vec![k],
        None => (0..=cfg.ell).collect(),
    };
    let mut tables = Vec::new();
    for k in degrees {
        tables.push((k, spectra::harmonic_decomposition(cfg.ell, cfg.n, k, cfg.levels)?));
    }
    let r = common_order(cfg.ell, tables.iter().flat_map(|(_, t)| t.blocks.iter().map(|b| &b.casimir)));
    let mut rows = Vec::new();
    for (k, t) in &tables {
        for b in &t.blocks {
            rows.push(vec![
                Cell::Int(*k as i64),
                Cell::Int(b.level as i64),
                Cell::Text(b.case.to_string()),
                Cell::Text(b.weight.to_string()),
                Cell::Int(b.dim as i64),
                scalar_cell(&b.casimir, cfg.q, r)?,
            ]);
        }
    }
    let table = Table { header: vec!["degree", "level", "case", "weight", "dim", "casimir"], rows };
    ok(render(cfg.format, params(cfg, r), "blocks", &table, Vec::new())?)
}

fn qdim_report(cfg: &RunConfig) -> Result<Report, CliError> {
    check_rank(cfg.ell)?;
    let vals: Vec<(usize, QScalar, QScalar)> =
        (0..=cfg.ell).map(|k| (k, grassmann::qdim_w(cfg.ell, k), grassmann::qdim_closed(cfg.ell, k))).collect();
    let r = common_order(cfg.ell, vals.iter().flat_map(|v| [&v.1, &v.2]));
    let mut rows = Vec::new();
    for (k, sum, closed) in &vals {
        let dim = closed.at_one_real()?.to_integer().to_i64().unwrap_or(-1);
        rows.push(vec![
            Cell::Int(*k as i64),
            scalar_cell(sum, cfg.q, r)?,
            scalar_cell(closed, cfg.q, r)?,
            Cell::Int(dim),
            Cell::Text((sum == closed && sum.substitute_q_inverse() == *sum).to_string()),
        ]);
    }
    let table = Table { header: vec!["k", "qdim", "qbinom", "dim", "agree"], rows };
    ok(render(cfg.format, params(cfg, r), "values", &table, Vec::new())?)
}

fn casimir_report(cfg: &RunConfig, weight: &str) -> Result<Report, CliError> {
    let w = HighestWeight::parse(weight)?;
    if w.rank() == 0 {
        return Err(CliError::Invalid("weight must have at least one entry".into()));
    }
    let ell = w.rank();
    let c = spectra::casimir_eigenvalue(&w);
    let closed = spectra::casimir_closed_form(&w);
    let r = common_order(ell, [&c, &closed].into_iter());
    let rows = vec![vec![
        Cell::Text(w.to_string()),
        Cell::Int(spectra::weyl_dim(&w) as i64),
        scalar_cell(&c, cfg.q, r)?,
        scalar_cell(&closed, cfg.q, r)?,
        Cell::Text(spectra::classical_casimir(&w).to_string()),
    ]];
    let table = Table { header: vec!["weight", "dim", "casimir", "closed_form", "classical"], rows };
    let p = json!({ "ell": ell, "N": cfg.n, "q": cfg.q.label(), "r": r.get() });
    ok(render(cfg.format, p, "values", &table, Vec::new())?)
}

fn ok(text: String) -> Result<Report, CliError> {
    Ok(Report { text, exit_code: EXIT_OK, failures: Vec::new() })
}

/// Runs the selected suites at ranks up to `ell`.
pub fn run_suites(suite: Suite, ell: usize) -> Vec<Check> {
    let pick = |s: Suite| suite == s || suite == Suite::All;
    let mut checks = Vec::new();
    if pick(Suite::Scalar) {
        checks.extend(qscalar::verify_suite());
    }
    if pick(Suite::Combinatorics) {
        checks.extend(combinatorics::verify_suite());
    }
    if pick(Suite::Grassmann) {
        checks.extend(grassmann::verify_suite(ell));
    }
    if pick(Suite::Uqsl) {
        checks.extend(uqsl::verify_suite(ell));
    }
    if pick(Suite::Spectra) {
        checks.extend(spectra::verify_suite(ell));
    }
    if pick(Suite::Sphere) {
        checks.extend(sphere_algebra::verify_suite(ell));
    }
    checks
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    params: Value,
    passed: bool,
    failures: Vec<&'a str>,
    checks: &'a [Check],
}

fn verify_report(cfg: &RunConfig, suite: Suite) -> Result<Report, CliError> {
    check_rank(cfg.ell)?;
    let checks = run_suites(suite, cfg.ell);
    let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.suite, c.name)).collect();
    let text = match cfg.format {
        Format::Json => {
            let rep = VerifyReport {
                params: json!({ "ell": cfg.ell, "suite": format!("{suite:?}").to_lowercase() }),
                passed: failures.is_empty(),
                failures: failures.iter().map(String::as_str).collect(),
                checks: &checks,
            };
            serde_json::to_string_pretty(&rep).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            for c in &checks {
                w.serialize(c).map_err(|e| CliError::Internal(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?).expect("utf8")
        }
        Format::Pretty => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!("{} [{}] {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, c.detail));
            }
            s.push_str(&format!("{} of {} checks passed\n", checks.len() - failures.len(), checks.len()));
            s
        }
    };
    let exit_code = if failures.is_empty() { EXIT_OK } else { EXIT_FAILED };
    Ok(Report { text, exit_code, failures })
}

/// Executes a parsed configuration and renders its report.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    match &cfg.command {
        Command::Spectrum => spectrum_report(cfg),
        Command::Classical => classical_report(cfg),
        Command::Decompose { k } => decompose_report(cfg, *k),
        Command::Qdim => qdim_report(cfg),
        Command::Casimir { weight } => casimir_report(cfg, weight),
        Command::Verify { suite } => verify_report(cfg, *suite),
    }
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &std::path::Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| CliError::Invalid(format!("{THREADS_ENV} must be a positive integer")))?;
    if n == 0 {
        return Err(CliError::Invalid(format!("{THREADS_ENV} must be a positive integer")));
    }
    // a pool may already exist when called twice in one process
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses arguments, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = configure_threads().and_then(|_| run(&cfg));
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cfg.output {
        Some(p) => write_atomic(p, &report.text),
        None => std::io::stdout().write_all(report.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_FAILED;
    }
    if !report.failures.is_empty() && cfg.format != Format::Json {
        eprintln!("{}", json!({ "failures": report.failures }));
    }
    report.exit_code
}
