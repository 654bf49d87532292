//! Command-line front end.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | success |
//! | 1    | I/O or internal failure |
//! | 2    | bad arguments or unparsable input |
//! | 3    | a Cayley table violates the group axioms |
//! | 4    | group order above the table cap |
//! | 20   | `lehmer-scan` found a candidate |
//! | 21   | a verification disagreed |

mod group_spec;
mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::abelian_aut::{self, AbelianSpec};
use crate::arith;
use crate::catalog_verify::{self as cv, CatalogError, HarnessOptions, VerifyRecord, CATALOG_NOTE};
use crate::group_engine::{self as ge, CayleyGroup, GroupError, TableError};
use crate::lehmer_search::{self as ls, ScanConfig, ScanError};

pub use group_spec::{GroupSpec, GroupSpecError};
pub use report::{OutputFormat, Rendered, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_AXIOMS: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_LEHMER_FOUND: i32 = 20;
pub const EXIT_DISAGREEMENT: i32 = 21;

pub const MAX_ORDER_ENV: &str = "LEHMERLAB_MAX_TABLE_ORDER";

#[derive(Debug, Parser)]
#[command(name = "lehmerlab", version, about = "Lehmer's totient problem and its group-theoretic analogues")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: OutputFormat,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test φ(n) | n - 1 for every composite n in [min, max].
    LehmerScan(ScanArgs),
    /// Exact |Aut(G)| from the abelian formula or a Cayley table.
    Aut(AutArgs),
    /// Check |Aut(G)| | |G| - 1 on every catalog group against its prediction.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1(HarnessArgs),
    /// Bucket catalog groups by |G| - 1 ≡ 0 (mod φ(G)).
    Relation2(HarnessArgs),
    /// Exponent and generalized totient of one group.
    PhiG(PhiArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    min: u64,
    #[arg(long)]
    max: u64,
    /// Segment length in integers.
    #[arg(long, default_value_t = ls::DEFAULT_SEGMENT_LENGTH)]
    segment: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also list every Carmichael number in range.
    #[arg(long)]
    carmichael: bool,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["abelian", "table"])))]
struct AutArgs {
    /// Abelian group as `p^e1,e2,...;q^f1,...`.
    #[arg(long)]
    abelian: Option<String>,
    /// Cayley table file.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Also count by brute force on the Cayley table and compare.
    #[arg(long, conflicts_with = "table")]
    cross_check: bool,
}

#[derive(Debug, Args)]
struct HarnessArgs {
    #[arg(long, default_value_t = 64)]
    max_order: usize,
    /// Additional Cayley table files to include in the catalog.
    #[arg(long = "extra-table")]
    extra_table: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["group", "table"])))]
struct PhiArgs {
    /// Group spec such as `cyclic:12`, `sym:3` or `product:(cyclic:2)x(alt:4)`.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    table: Option<PathBuf>,
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::CapExceeded { .. } => EXIT_CAP,
            GroupError::Axioms(_) => EXIT_AXIOMS,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<TableError> for Failure {
    fn from(e: TableError) -> Self {
        match e {
            TableError::Group(g) => g.into(),
            TableError::Parse { .. } => Failure::new(EXIT_USAGE, e.to_string()),
            TableError::Io(_) => Failure::new(EXIT_USAGE, e.to_string()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Group(g) => g.into(),
            CatalogError::MaxOrderTooSmall(_) => Failure::new(EXIT_USAGE, e.to_string()),
            CatalogError::FormulaMismatch { .. } => Failure::new(EXIT_DISAGREEMENT, e.to_string()),
            CatalogError::Pool(_) => Failure::new(EXIT_FAILURE, e.to_string()),
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Self {
        let code = match e {
            ScanError::Range { .. } | ScanError::Config(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((rendered, code)) => match emit(&cli, &rendered.render(cli.format)) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: cannot write report: {e}");
                EXIT_FAILURE
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn emit(cli: &Cli, body: &str) -> io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn apply_env_cap() -> Result<(), Failure> {
    if let Ok(raw) = std::env::var(MAX_ORDER_ENV) {
        let cap: usize =
            raw.trim().parse().ok().filter(|&c| c >= 1).ok_or_else(|| {
                Failure::new(EXIT_USAGE, format!("{MAX_ORDER_ENV}={raw:?} is not a positive integer"))
            })?;
        ge::set_order_cap(cap);
    }
    Ok(())
}

/// Run the parsed command and produce its report plus the exit code.
pub fn execute(cli: &Cli) -> Result<(Rendered, i32), Failure> {
    apply_env_cap()?;
    match &cli.command {
        Command::LehmerScan(a) => lehmer_scan(a),
        Command::Aut(a) => aut(a),
        Command::VerifyTheorem1(a) => verify_theorem1(a),
        Command::Relation2(a) => relation2(a),
        Command::PhiG(a) => phi_g(a),
    }
}

fn load_table(path: &Path) -> Result<CayleyGroup, Failure> {
    let file = File::open(path).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "table".into());
    let g = ge::load_cayley_table(BufReader::new(file)).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    Ok(g.with_name(name))
}

const LEHMER_ANNOTATION: &str = "known necessary conditions, not assumed by this scan: a Lehmer number is odd, \
squarefree, a Carmichael number, greater than 10^30 and divisible by at least 15 distinct primes";

fn lehmer_scan(a: &ScanArgs) -> Result<(Rendered, i32), Failure> {
    let config = ScanConfig::new(a.min, a.max).segment_length(a.segment).workers(a.workers).carmichael(a.carmichael);
    let started = Instant::now();
    let r = ls::scan_range(&config)?;
    let elapsed = started.elapsed();

    let certificate = if r.lehmer_candidates.is_empty() {
        format!("no composite n in [{}, {}] satisfies phi(n) | n - 1", r.lo, r.hi)
    } else {
        format!("{} composite n in [{}, {}] satisfy phi(n) | n - 1", r.lehmer_candidates.len(), r.lo, r.hi)
    };
    let records: Vec<Value> = r
        .lehmer_candidates
        .iter()
        .map(|&n| {
            let f = arith::factorize(n).expect("n >= 2");
            json!({ "n": n, "phi": f.totient(), "factorization": f.to_string() })
        })
        .collect();
    let report = Report {
        kind: "lehmer-scan",
        params: json!({ "min": r.lo, "max": r.hi, "carmichael": a.carmichael }),
        records,
        summary: json!({
            "candidates": r.lehmer_candidates.len(),
            "composites_tested": r.composites_tested,
            "carmichael_found": r.carmichael_found,
            "certificate": certificate,
            "annotation": LEHMER_ANNOTATION,
        }),
        timing: a
            .timing
            .then(|| json!({ "elapsed_ms": elapsed.as_millis() as u64, "workers": a.workers, "segment": a.segment })),
    };

    let mut text = String::new();
    writeln!(text, "lehmer-scan [{}, {}]", r.lo, r.hi).unwrap();
    writeln!(text, "composites tested: {}", r.composites_tested).unwrap();
    writeln!(text, "lehmer candidates: {}", r.lehmer_candidates.len()).unwrap();
    for rec in &report.records {
        writeln!(text, "  CANDIDATE {} = {}", rec["n"], rec["factorization"].as_str().unwrap()).unwrap();
    }
    if let Some(found) = &r.carmichael_found {
        let list: Vec<String> = found.iter().map(u64::to_string).collect();
        writeln!(text, "carmichael numbers ({}): {}", found.len(), list.join(" ")).unwrap();
    }
    writeln!(text, "certificate: {certificate}").unwrap();
    writeln!(text, "note: {LEHMER_ANNOTATION}").unwrap();
    if a.timing {
        writeln!(text, "elapsed: {} ms", elapsed.as_millis()).unwrap();
    }

    let mut csv_rows: Vec<Vec<String>> =
        r.lehmer_candidates.iter().map(|n| vec!["lehmer_candidate".into(), n.to_string()]).collect();
    if let Some(found) = &r.carmichael_found {
        csv_rows.extend(found.iter().map(|n| vec!["carmichael".into(), n.to_string()]));
    }

    let code = if r.lehmer_candidates.is_empty() { EXIT_OK } else { EXIT_LEHMER_FOUND };
    Ok((Rendered { report, text, csv_header: vec!["kind", "n"], csv_rows }, code))
}

fn aut(a: &AutArgs) -> Result<(Rendered, i32), Failure> {
    let (name, source, input, order, aut_order, method, cross) = if let Some(text) = &a.abelian {
        let spec: AbelianSpec =
            text.parse().map_err(|e: abelian_aut::AbelianError| Failure::new(EXIT_USAGE, e.to_string()))?;
        let formula = abelian_aut::aut_order(&spec);
        let cross = if a.cross_check {
            let g = ge::make_abelian(&spec)?;
            let brute = ge::aut_order_bruteforce(&g, ge::order_cap())?;
            Some(brute)
        } else {
            None
        };
        (spec.name(), "abelian", spec.to_string(), abelian_aut::group_order(&spec), formula, "formula", cross)
    } else {
        let path = a.table.as_ref().expect("clap enforces one source");
        let g = load_table(path)?;
        let brute = ge::aut_order_bruteforce(&g, ge::order_cap())?;
        (g.name().to_string(), "table", path.display().to_string(), g.order().into(), brute, "bruteforce", None)
    };

    let agree = cross.as_ref().map(|b| *b == aut_order);
    let report = Report {
        kind: "aut",
        params: json!({ "source": source, "input": input, "cross_check": a.cross_check }),
        records: vec![json!({
            "name": name,
            "order": order.to_string(),
            "aut_order": aut_order.to_string(),
            "method": method,
        })],
        summary: json!({
            "aut_order": aut_order.to_string(),
            "cross_check": cross.as_ref().map(|b| json!({ "bruteforce": b.to_string(), "agree": agree })),
        }),
        timing: None,
    };
    let mut text = format!("{name}\norder: {order}\n|Aut(G)| = {aut_order} ({method})\n");
    if let Some(b) = &cross {
        let verdict = if agree == Some(true) { "agree" } else { "DISAGREE" };
        writeln!(text, "cross-check: brute force gives {b}: {verdict}").unwrap();
    }
    let csv_rows = vec![vec![name.clone(), order.to_string(), aut_order.to_string(), method.to_string()]];
    let code = if agree == Some(false) { EXIT_DISAGREEMENT } else { EXIT_OK };
    Ok((Rendered { report, text, csv_header: vec!["name", "order", "aut_order", "method"], csv_rows }, code))
}

fn harness_options(a: &HarnessArgs) -> Result<HarnessOptions, Failure> {
    let extras = a.extra_table.iter().map(|p| load_table(p)).collect::<Result<Vec<_>, _>>()?;
    Ok(HarnessOptions::new(a.max_order).extra(extras).workers(a.workers))
}

const RECORD_CSV_HEADER: [&str; 14] = [
    "name",
    "family",
    "order",
    "is_abelian",
    "is_cyclic",
    "aut_order",
    "aut_method",
    "condition1",
    "expected1",
    "agrees",
    "exponent",
    "phi_g",
    "condition2",
    "remainder",
];

fn record_csv(r: &VerifyRecord) -> Vec<String> {
    let v = serde_json::to_value(r).expect("record serializes");
    let plain = |key: &str| match &v[key] {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    vec![
        r.name.clone(),
        plain("family"),
        r.order.to_string(),
        r.is_abelian.to_string(),
        r.is_cyclic.to_string(),
        r.aut_order.to_string(),
        plain("aut_method"),
        r.condition1.to_string(),
        r.expected1.to_string(),
        r.agrees.to_string(),
        r.exponent.to_string(),
        r.phi_g.to_string(),
        r.condition2.label().to_string(),
        r.condition2.remainder().map(|x| x.to_string()).unwrap_or_default(),
    ]
}

fn record_line(r: &VerifyRecord) -> String {
    format!(
        "{:>4}  {:<28} |Aut|={:<12} cond1={:<5} expected={:<5} {}",
        r.order,
        r.name,
        r.aut_order.to_string(),
        r.condition1,
        r.expected1,
        if r.agrees { "ok" } else { "DISAGREE" }
    )
}

fn verify_theorem1(a: &HarnessArgs) -> Result<(Rendered, i32), Failure> {
    let opts = harness_options(a)?;
    let records = cv::verify_theorem1(&opts)?;
    let bad = cv::disagreements(&records);
    let holding: Vec<&str> = records.iter().filter(|r| r.condition1).map(|r| r.name.as_str()).collect();

    let report = Report {
        kind: "verify-theorem1",
        params: json!({
            "max_order": a.max_order,
            "extra_tables": a.extra_table.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
        records: records.iter().map(|r| serde_json::to_value(r).expect("serializes")).collect(),
        summary: json!({
            "note": CATALOG_NOTE,
            "groups": records.len(),
            "disagreements": bad.len(),
            "condition1_holds": holding,
        }),
        timing: None,
    };

    let mut text = format!("verify-theorem1 up to order {} ({CATALOG_NOTE})\n", a.max_order);
    for r in &records {
        writeln!(text, "{}", record_line(r)).unwrap();
    }
    writeln!(text, "groups: {}, disagreements: {}", records.len(), bad.len()).unwrap();
    writeln!(text, "|Aut(G)| divides |G| - 1 for: {}", holding.join(", ")).unwrap();

    let csv_rows = records.iter().map(record_csv).collect();
    let code = if bad.is_empty() { EXIT_OK } else { EXIT_DISAGREEMENT };
    Ok((Rendered { report, text, csv_header: RECORD_CSV_HEADER.to_vec(), csv_rows }, code))
}

fn relation2(a: &HarnessArgs) -> Result<(Rendered, i32), Failure> {
    let opts = harness_options(a)?;
    let b = cv::scan_relation2(&opts)?;
    let names = |v: &[VerifyRecord]| v.iter().map(|r| r.name.clone()).collect::<Vec<_>>();
    let buckets = [("holds", &b.holds), ("fails", &b.fails), ("undefined_zero_phi", &b.undefined_zero_phi)];

    let report = Report {
        kind: "relation2",
        params: json!({
            "max_order": a.max_order,
            "extra_tables": a.extra_table.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        }),
        records: buckets
            .iter()
            .flat_map(|(_, v)| v.iter().map(|r| serde_json::to_value(r).expect("serializes")))
            .collect(),
        summary: json!({
            "note": CATALOG_NOTE,
            "holds": names(&b.holds),
            "fails": names(&b.fails),
            "undefined_zero_phi": names(&b.undefined_zero_phi),
        }),
        timing: None,
    };

    let mut text = format!("relation2 up to order {} ({CATALOG_NOTE})\n", a.max_order);
    for (label, v) in buckets {
        writeln!(text, "\n[{label}] {} groups", v.len()).unwrap();
        for r in v.iter() {
            let detail = match r.condition2.remainder() {
                Some(rem) => format!("phi(G)={} remainder={rem}", r.phi_g),
                None => format!("phi(G)=0 exp={}", r.exponent),
            };
            writeln!(text, "{:>4}  {:<28} {detail}", r.order, r.name).unwrap();
        }
    }
    let csv_rows = buckets.iter().flat_map(|(_, v)| v.iter().map(record_csv)).collect();
    Ok((Rendered { report, text, csv_header: RECORD_CSV_HEADER.to_vec(), csv_rows }, EXIT_OK))
}

fn phi_g(a: &PhiArgs) -> Result<(Rendered, i32), Failure> {
    let (g, input) = if let Some(text) = &a.group {
        let spec: GroupSpec = text.parse().map_err(|e: GroupSpecError| Failure::new(EXIT_USAGE, e.to_string()))?;
        (spec.build()?, spec.to_string())
    } else {
        let path = a.table.as_ref().expect("clap enforces one source");
        (load_table(path)?, path.display().to_string())
    };
    let exponent = g.exponent();
    let phi = g.phi_g();
    let verdict = (g.order() >= 2).then(|| g.check_condition2().expect("order >= 2"));

    let report = Report {
        kind: "phi-g",
        params: json!({ "input": input }),
        records: vec![json!({
            "name": g.name(),
            "order": g.order(),
            "exponent": exponent,
            "phi_g": phi,
            "condition2": verdict,
        })],
        summary: json!({ "exponent": exponent, "phi_g": phi }),
        timing: None,
    };
    let mut text = format!("{}\norder: {}\nexp(G) = {exponent}\nphi(G) = {phi}\n", g.name(), g.order());
    if let Some(v) = verdict {
        let tail = v.remainder().map(|r| format!(" (remainder {r})")).unwrap_or_default();
        writeln!(text, "phi(G) | |G| - 1: {}{tail}", v.label()).unwrap();
    }
    let csv_rows = vec![vec![
        g.name().to_string(),
        g.order().to_string(),
        exponent.to_string(),
        phi.to_string(),
        verdict.map(|v| v.label().to_string()).unwrap_or_default(),
    ]];
    Ok((
        Rendered { report, text, csv_header: vec!["name", "order", "exponent", "phi_g", "condition2"], csv_rows },
        EXIT_OK,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<(Rendered, i32), Failure> {
        let cli = Cli::try_parse_from(std::iter::once("lehmerlab").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    #[test]
    fn aut_examples() {
        let (r, code) = exec(&["aut", "--abelian", "2^1,2"]).unwrap();
        assert_eq!((code, r.report.summary["aut_order"].as_str()), (0, Some("8")));
        let (r, _) = exec(&["aut", "--abelian", "5^1"]).unwrap();
        assert_eq!(r.report.summary["aut_order"], "4");
        let (r, code) = exec(&["aut", "--abelian", "2^1,1", "--cross-check"]).unwrap();
        assert_eq!(code, 0);
        assert_eq!(r.report.summary["cross_check"]["agree"], true);
        assert!(r.text.contains("agree"));
    }

    #[test]
    fn phi_g_examples() {
        for (spec, exp, phi) in [("cyclic:12", 12, 4), ("sym:3", 6, 0), ("heisenberg:3", 3, 26)] {
            let (r, _) = exec(&["phi-g", "--group", spec]).unwrap();
            assert_eq!(r.report.summary["exponent"], exp, "{spec}");
            assert_eq!(r.report.summary["phi_g"], phi, "{spec}");
        }
    }

    #[test]
    fn scan_example() {
        let (r, code) = exec(&["lehmer-scan", "--max", "1000", "--carmichael"]).unwrap();
        assert_eq!(code, 0);
        assert_eq!(r.report.summary["carmichael_found"], json!([561]));
        assert!(r.render(OutputFormat::Csv).contains("carmichael,561"));
        let err = exec(&["lehmer-scan", "--max", "1"]).unwrap_err();
        assert_eq!(err.code, EXIT_USAGE);
    }

    #[test]
    fn relation2_buckets() {
        let (r, _) = exec(&["relation2", "--max-order", "8"]).unwrap();
        assert!(r.report.summary["fails"].as_array().unwrap().contains(&json!("Q_8")));
        assert!(r.report.summary["undefined_zero_phi"].as_array().unwrap().contains(&json!("S_3")));
    }
}
