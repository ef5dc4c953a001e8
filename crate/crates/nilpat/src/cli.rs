//! Reports, classification tables, and the `nilpat` command drivers.
//!
//! The command surface:
//!
//! ```text
//! nilpat analyze  FILE (--prime P | --rationals) [--format json|text] [--budget N]
//! nilpat classify --order N --primes P1,P2,... [--format json|text] [--out FILE] [--budget N]
//! nilpat groebner FILE (--prime P | --rationals)
//! nilpat saturate FILE (--prime P | --rationals)
//! ```
//!
//! Exit codes: 0 = potentially nilpotent, 1 = not potentially nilpotent,
//! 2 = unknown (a resource budget ran out before a verdict), 64 = usage
//! error, 65 = unreadable or malformed input.  `classify`, `groebner`,
//! and `saturate` exit 0 on success and 2 on a budget overrun.
//!
//! The environment variable `NILPAT_THREADS` caps the worker pool used
//! by search and classification; the default is the machine parallelism.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    analyze_rationals_with, decide_pn_with, Budget, Certificate, Stage, Status, Verdict,
};
use crate::charpoly::pattern_ideal;
use crate::error::Error;
use crate::field::Field;
use crate::groebner::{buchberger_with, colon_principal_with, saturate_with, GbOptions};
use crate::pattern::{enumerate_irreducible, Pattern};
use crate::poly::{MonomialOrder, Polynomial};

/// Version stamp embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit code: the pattern is potentially nilpotent.
pub const EXIT_PN: i32 = 0;
/// Exit code: the pattern is not potentially nilpotent.
pub const EXIT_NOT_PN: i32 = 1;
/// Exit code: no verdict within budget.
pub const EXIT_UNKNOWN: i32 = 2;
/// Exit code: command-line usage error.
pub const EXIT_USAGE: i32 = 64;
/// Exit code: unreadable or malformed input data.
pub const EXIT_BAD_INPUT: i32 = 65;

/// The primes probed (in addition to any requested ones) to assign each
/// classified pattern to a verdict group.
pub const PROBE_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// One full analysis, as serialized by `nilpat analyze --format json`.
///
/// Top-level JSON keys, in order: `pattern`, `order`, `field`, `status`,
/// `certificate` (`{kind, data}` or null), `realization` (row-major
/// integer matrix or null), `stages` (`[{name, micros}]`), `version`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub pattern: String,
    pub order: usize,
    pub field: String,
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub realization: Option<Vec<Vec<i64>>>,
    pub stages: Vec<Stage>,
    pub version: String,
}

/// The verdict of every irreducible class of one order over a set of
/// primes, as serialized by `nilpat classify --format json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationTable {
    pub order: usize,
    pub primes: Vec<u64>,
    pub classes: Vec<ClassRow>,
    pub version: String,
}

/// One equivalence class in a [`ClassificationTable`].
///
/// `pattern` is the canonical representative with rows joined by `|`.
/// `group` encodes the prime-dependence profile measured at the probe
/// primes 2, 3, 5, 7: 1 = potentially nilpotent at all four, 2 = at all
/// but 2, 3 = at all but 2 and 3, 4 = exactly where `x³ − 1` splits
/// (3 and 7); `None` = at none of them (or some probe was undetermined).
/// `verdicts` lists the status per requested prime, in `primes` order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub pattern: String,
    pub group: Option<u8>,
    pub verdicts: Vec<Status>,
}

/// The string form of a coefficient field as reported in JSON:
/// `Z_p` for primes, `rationals` for the rationals.
pub fn field_label(field: Field) -> String {
    match field {
        Field::Prime(p) => format!("Z_{p}"),
        Field::Rationals => "rationals".to_string(),
    }
}

/// Runs the full decision pipeline and packages the outcome.
pub fn analyze_report(
    pattern: &Pattern,
    field: Field,
    budget: &Budget,
) -> Result<AnalysisReport, Error> {
    let verdict = match field {
        Field::Prime(p) => decide_pn_with(pattern, p, budget)?,
        Field::Rationals => analyze_rationals_with(pattern, budget)?,
    };
    Ok(report_from_verdict(pattern, field, &verdict))
}

fn report_from_verdict(pattern: &Pattern, field: Field, verdict: &Verdict) -> AnalysisReport {
    AnalysisReport {
        pattern: pattern.render(),
        order: pattern.order(),
        field: field_label(field),
        status: verdict.status,
        certificate: verdict.certificate.clone(),
        realization: verdict.realization().cloned(),
        stages: verdict.stages.clone(),
        version: VERSION.to_string(),
    }
}

/// Maps the vector of statuses at the probe primes 2, 3, 5, 7 to a
/// group number.  Any undetermined probe, and any profile outside the
/// four observed ones, maps to `None` (as does "never").
fn group_for_profile(profile: [Status; 4]) -> Option<u8> {
    let pn: Vec<bool> = profile
        .iter()
        .map(|s| match s {
            Status::PotentiallyNilpotent => Some(true),
            Status::NotPotentiallyNilpotent => Some(false),
            Status::Unknown => None,
        })
        .collect::<Option<Vec<bool>>>()?;
    match (pn[0], pn[1], pn[2], pn[3]) {
        (true, true, true, true) => Some(1),
        (false, true, true, true) => Some(2),
        (false, false, true, true) => Some(3),
        (false, true, false, true) => Some(4),
        _ => None,
    }
}

/// Classifies every irreducible equivalence class of the given order
/// over the given primes.  Rows are sorted by canonical pattern; budget
/// overruns surface as `unknown` cells, never as errors.
pub fn classification_table(
    order: usize,
    primes: &[u64],
    budget: &Budget,
) -> Result<ClassificationTable, Error> {
    let mut primes: Vec<u64> = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        Field::prime(p)?;
    }
    let classes = enumerate_irreducible(order)?;
    let mut needed: Vec<u64> = primes.iter().copied().chain(PROBE_PRIMES).collect();
    needed.sort_unstable();
    needed.dedup();
    let rows: Result<Vec<ClassRow>, Error> = classes
        .par_iter()
        .map(|class| {
            let mut status_at = std::collections::BTreeMap::new();
            for &p in &needed {
                let verdict = decide_pn_with(class, p, budget)?;
                status_at.insert(p, verdict.status);
            }
            let profile =
                [status_at[&2], status_at[&3], status_at[&5], status_at[&7]];
            Ok(ClassRow {
                pattern: class.render().replace('\n', "|"),
                group: group_for_profile(profile),
                verdicts: primes.iter().map(|p| status_at[p]).collect(),
            })
        })
        .collect();
    Ok(ClassificationTable { order, primes, classes: rows?, version: VERSION.to_string() })
}

/// The reduced lexicographic Gröbner basis of the coefficient ideal,
/// as printed by `nilpat groebner`.
pub fn groebner_basis_of(
    pattern: &Pattern,
    field: Field,
    budget: &Budget,
) -> Result<Vec<Polynomial>, Error> {
    let pi = pattern_ideal(pattern, field)?;
    let opts = GbOptions::with_budget(budget.gb_reductions);
    Ok(buchberger_with(&pi.ideal, MonomialOrder::Lex, &opts)?.basis)
}

/// Reduced lexicographic bases of the colon ideal `I : (m)` and the
/// saturation `I : (m)^∞`, where `I` is the coefficient ideal and `m`
/// the product of all pattern variables, as printed by `nilpat saturate`.
pub fn saturation_bases_of(
    pattern: &Pattern,
    field: Field,
    budget: &Budget,
) -> Result<(Vec<Polynomial>, Vec<Polynomial>), Error> {
    let pi = pattern_ideal(pattern, field)?;
    let m = pi.matrix.all_vars_product();
    let opts = GbOptions::with_budget(budget.gb_reductions);
    let colon = colon_principal_with(&pi.ideal, &m, &opts)?;
    let colon_basis = buchberger_with(&colon, MonomialOrder::Lex, &opts)?.basis;
    let saturation = saturate_with(&pi.ideal, &m, &opts)?;
    let saturation_basis = buchberger_with(&saturation, MonomialOrder::Lex, &opts)?.basis;
    Ok((colon_basis, saturation_basis))
}

/// Renders an [`AnalysisReport`] for terminals.
pub fn render_report_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pattern (order {}, {}):", report.order, report.field);
    for line in report.pattern.lines() {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(out, "status: {}", status_text(report.status));
    match &report.certificate {
        None => {
            let _ = writeln!(out, "certificate: none (no verdict within budget)");
        }
        Some(cert) => {
            let _ = writeln!(out, "certificate: {}", describe_certificate(cert));
        }
    }
    if let Some(matrix) = &report.realization {
        let _ = writeln!(out, "realization:");
        for row in matrix {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "  [{}]", cells.join(" "));
        }
    }
    let _ = writeln!(out, "stages:");
    for stage in &report.stages {
        let _ = writeln!(out, "  {:<28} {:>8} µs", stage.name, stage.micros);
    }
    let _ = writeln!(out, "version: {}", report.version);
    out
}

fn status_text(status: Status) -> &'static str {
    match status {
        Status::PotentiallyNilpotent => "potentially nilpotent",
        Status::NotPotentiallyNilpotent => "not potentially nilpotent",
        Status::Unknown => "unknown",
    }
}

fn vertex_set(component: &[usize]) -> String {
    let labels: Vec<String> = component.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

/// One human-readable line per certificate kind.
pub fn describe_certificate(cert: &Certificate) -> String {
    match cert {
        Certificate::Realization { .. } => "explicit nilpotent realization".to_string(),
        Certificate::SingleDiagonal { component, monomial } => format!(
            "single_diagonal — component {} has one loop, so a coefficient is the monomial {monomial}",
            vertex_set(component)
        ),
        Certificate::SingleTransversal { component, monomial } => format!(
            "single_transversal — component {} has one transversal, so the determinant is the monomial {monomial}",
            vertex_set(component)
        ),
        Certificate::NoSmallCycles { component, loops, absent_cycle_lengths } => format!(
            "no_small_cycles — component {} has {loops} loops and no cycles of length {}..={}, so a coefficient is a monomial",
            vertex_set(component),
            absent_cycle_lengths.0,
            absent_cycle_lengths.1
        ),
        Certificate::RootsOfUnityMissing { component, loops, polynomial, prime } => format!(
            "roots_of_unity_missing — component {} needs its {loops} loop values to be roots of {polynomial}, which does not split over Z_{prime}",
            vertex_set(component)
        ),
        Certificate::Z2Parity { component, loops } => format!(
            "z2_parity — over Z_2, the trace of component {} is its loop count {loops}, which is odd",
            vertex_set(component)
        ),
        Certificate::Z2TwoLoopsTwo2Cycles { component, loops, two_cycles } => format!(
            "z2_two_loops_two_2cycles — over Z_2, component {} has {loops} loops and {two_cycles} 2-cycles, forcing a nonzero coefficient",
            vertex_set(component)
        ),
        Certificate::SaturationUnit { component, unit_in_colon, over_any_extension } => {
            let colon = match unit_in_colon {
                Some(true) => "the colon ideal I : (m) already contains 1",
                Some(false) => "the colon ideal I : (m) is proper",
                None => "the colon ideal I : (m) was not settled within budget",
            };
            let scope = if *over_any_extension { "this field and every extension" } else { "this field" };
            format!(
                "saturation_unit — component {}: 1 ∈ I : (m)^∞, so no realization exists over {scope}; {colon}",
                vertex_set(component)
            )
        }
        Certificate::ExhaustedSearch { component, space } => format!(
            "exhausted_search — component {}: all {space} assignments (up to diagonal similarity) fail for this prime",
            vertex_set(component)
        ),
    }
}

/// Renders a [`ClassificationTable`] for terminals.
pub fn render_table_text(table: &ClassificationTable) -> String {
    let mut out = String::new();
    let fields: Vec<String> = table.primes.iter().map(|p| format!("Z_{p}")).collect();
    let _ = writeln!(
        out,
        "order-{} classification over {} — {} irreducible classes (version {})",
        table.order,
        fields.join(", "),
        table.classes.len(),
        table.version
    );
    let width = table.classes.iter().map(|row| row.pattern.len()).max().unwrap_or(7).max(7);
    let mut header = format!("{:<width$}  group", "pattern");
    for f in &fields {
        let _ = write!(header, "  {f:>4}");
    }
    let _ = writeln!(out, "{header}");
    for row in &table.classes {
        let group = row.group.map_or("-".to_string(), |g| g.to_string());
        let _ = write!(out, "{:<width$}  {group:>5}", row.pattern);
        for status in &row.verdicts {
            let cell = match status {
                Status::PotentiallyNilpotent => "PN",
                Status::NotPotentiallyNilpotent => "no",
                Status::Unknown => "?",
            };
            let _ = write!(out, "  {cell:>4}");
        }
        let _ = writeln!(out);
    }
    out
}

fn render_basis_lines(basis: &[Polynomial]) -> String {
    if basis.is_empty() {
        return "0\n".to_string();
    }
    let mut out = String::new();
    for g in basis {
        let _ = writeln!(out, "{g}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "nilpat",
    version,
    about = "Decide potential nilpotence of zero-nonzero and sign patterns over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the pattern in FILE is potentially nilpotent.
    #[command(group(ArgGroup::new("field").required(true).args(["prime", "rationals"])))]
    Analyze {
        /// Pattern file: n lines of n characters over {*,0} or {+,-,0}.
        file: PathBuf,
        /// Work over the prime field Z_P.
        #[arg(long, value_name = "P")]
        prime: Option<u64>,
        /// Work over the rationals (negative certificates only).
        #[arg(long)]
        rationals: bool,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Maximum number of assignments the exhaustive search may try.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// Classify every irreducible pattern of the given order.
    Classify {
        /// Pattern order (2 or 3).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=3))]
        order: u64,
        /// Comma-separated primes to classify over.
        #[arg(long, value_delimiter = ',', required = true, value_name = "P1,P2,...")]
        primes: Vec<u64>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Also write the output to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Maximum number of assignments one exhaustive search may try.
        #[arg(long, value_name = "N")]
        budget: Option<u64>,
    },
    /// Print the reduced lexicographic Gröbner basis of the pattern's
    /// coefficient ideal.
    #[command(group(ArgGroup::new("field").required(true).args(["prime", "rationals"])))]
    Groebner {
        /// Pattern file: n lines of n characters over {*,0} or {+,-,0}.
        file: PathBuf,
        /// Work over the prime field Z_P.
        #[arg(long, value_name = "P")]
        prime: Option<u64>,
        /// Work over the rationals.
        #[arg(long)]
        rationals: bool,
    },
    /// Print reduced bases of the colon ideal I : (m) and the saturation
    /// I : (m)^∞, where m is the product of all pattern variables.
    #[command(group(ArgGroup::new("field").required(true).args(["prime", "rationals"])))]
    Saturate {
        /// Pattern file: n lines of n characters over {*,0} or {+,-,0}.
        file: PathBuf,
        /// Work over the prime field Z_P.
        #[arg(long, value_name = "P")]
        prime: Option<u64>,
        /// Work over the rationals.
        #[arg(long)]
        rationals: bool,
    },
}

/// Parses `std::env::args_os` and runs the requested command; returns
/// the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// [`run`] on an explicit argument list (element 0 is the program name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp
                | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = err.print();
            return code;
        }
    };
    init_thread_pool();
    match cli.command {
        Command::Analyze { file, prime, rationals, format, budget } => {
            cmd_analyze(&file, prime, rationals, format, budget)
        }
        Command::Classify { order, primes, format, out, budget } => {
            cmd_classify(order as usize, &primes, format, out.as_deref(), budget)
        }
        Command::Groebner { file, prime, rationals } => cmd_groebner(&file, prime, rationals),
        Command::Saturate { file, prime, rationals } => cmd_saturate(&file, prime, rationals),
    }
}

/// Applies `NILPAT_THREADS` to the global worker pool.  Ignored when the
/// pool is already initialized (e.g. a second call in one process).
fn init_thread_pool() {
    if let Ok(raw) = std::env::var("NILPAT_THREADS") {
        match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!(
                "nilpat: warning: ignoring NILPAT_THREADS={raw:?} (expected a positive integer)"
            ),
        }
    }
}

fn resolve_field(prime: Option<u64>, rationals: bool) -> Result<Field, Error> {
    match (prime, rationals) {
        (Some(p), false) => Field::prime(p),
        (None, true) => Ok(Field::Rationals),
        _ => unreachable!("clap enforces exactly one field flag"),
    }
}

fn read_pattern(path: &Path) -> Result<Pattern, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Pattern::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn budget_from(assignments: Option<u64>) -> Budget {
    match assignments {
        Some(n) => Budget::with_search_assignments(n as u128),
        None => Budget::default(),
    }
}

/// Exit code for an error escaping a command, per the contract above.
fn exit_for_error(err: &Error) -> i32 {
    match err {
        Error::NonPrimeModulus(_) => EXIT_USAGE,
        Error::ResourceLimit(_) | Error::SearchBudgetExceeded { .. } => EXIT_UNKNOWN,
        _ => EXIT_BAD_INPUT,
    }
}

fn exit_for_status(status: Status) -> i32 {
    match status {
        Status::PotentiallyNilpotent => EXIT_PN,
        Status::NotPotentiallyNilpotent => EXIT_NOT_PN,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_analyze(
    file: &Path,
    prime: Option<u64>,
    rationals: bool,
    format: OutputFormat,
    budget: Option<u64>,
) -> i32 {
    let field = match resolve_field(prime, rationals) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("nilpat: {e}");
            return EXIT_USAGE;
        }
    };
    let pattern = match read_pattern(file) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("nilpat: {msg}");
            return EXIT_BAD_INPUT;
        }
    };
    let report = match analyze_report(&pattern, field, &budget_from(budget)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("nilpat: {e}");
            return exit_for_error(&e);
        }
    };
    match format {
        OutputFormat::Json => println!("{}", to_json(&report)),
        OutputFormat::Text => print!("{}", render_report_text(&report)),
    }
    exit_for_status(report.status)
}

fn cmd_classify(
    order: usize,
    primes: &[u64],
    format: OutputFormat,
    out: Option<&Path>,
    budget: Option<u64>,
) -> i32 {
    let table = match classification_table(order, primes, &budget_from(budget)) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("nilpat: {e}");
            return exit_for_error(&e);
        }
    };
    let rendered = match format {
        OutputFormat::Json => format!("{}\n", to_json(&table)),
        OutputFormat::Text => render_table_text(&table),
    };
    print!("{rendered}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("nilpat: cannot write {}: {e}", path.display());
            return EXIT_BAD_INPUT;
        }
    }
    EXIT_PN
}

fn cmd_groebner(file: &Path, prime: Option<u64>, rationals: bool) -> i32 {
    let field = match resolve_field(prime, rationals) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("nilpat: {e}");
            return EXIT_USAGE;
        }
    };
    let pattern = match read_pattern(file) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("nilpat: {msg}");
            return EXIT_BAD_INPUT;
        }
    };
    match groebner_basis_of(&pattern, field, &Budget::default()) {
        Ok(basis) => {
            print!("{}", render_basis_lines(&basis));
            EXIT_PN
        }
        Err(e) => {
            eprintln!("nilpat: {e}");
            exit_for_error(&e)
        }
    }
}

fn cmd_saturate(file: &Path, prime: Option<u64>, rationals: bool) -> i32 {
    let field = match resolve_field(prime, rationals) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("nilpat: {e}");
            return EXIT_USAGE;
        }
    };
    let pattern = match read_pattern(file) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("nilpat: {msg}");
            return EXIT_BAD_INPUT;
        }
    };
    match saturation_bases_of(&pattern, field, &Budget::default()) {
        Ok((colon, saturation)) => {
            println!("# I : (m)");
            print!("{}", render_basis_lines(&colon));
            println!("# I : (m)^inf");
            print!("{}", render_basis_lines(&saturation));
            EXIT_PN
        }
        Err(e) => {
            eprintln!("nilpat: {e}");
            exit_for_error(&e)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}
