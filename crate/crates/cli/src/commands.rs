use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use picod_core::bounds::table_row;
use picod_core::oracle::{self, OracleStats, OracleStatus, MAX_M, REPORT_HEADER};
use picod_core::schemes::DEFAULT_SEED;
use picod_core::{build_with_seed, classify, verify, BuildError, Classification, Instance, Scheme};
use rayon::prelude::*;
use serde::Serialize;

use crate::document::{SchemeDocument, TransmissionDoc};
use crate::render::{ascii_figure, tsv_listing};
use crate::{Cli, Command, Exit, Format, Outcome, Span};

pub fn dispatch(cli: &Cli) -> Outcome {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let jobs = cli.jobs.unwrap_or_else(default_jobs).max(1);
    let outcome = match &cli.command {
        Command::Classify { m, s } => classify_cmd(*m, *s, cli.format),
        Command::Build { m, s } => build_cmd(*m, *s, cli.format, seed),
        Command::Verify { path } => verify_cmd(path, cli.format),
        Command::Table { s, m } => table_cmd(*s, *m, cli.format, seed, jobs),
        Command::Oracle { m, s, max_dim } => oracle_cmd(*m, *s, *max_dim, cli.format, jobs),
    };
    match &cli.out {
        Some(path) if !outcome.stdout.is_empty() => match fs::write(path, &outcome.stdout) {
            Ok(()) => Outcome { stdout: String::new(), ..outcome },
            Err(e) => Outcome::fail(Exit::Usage, format!("cannot write {}: {e}", path.display())),
        },
        _ => outcome,
    }
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn instance(m: usize, s: usize) -> Result<Instance, Outcome> {
    Instance::new(m, s).map_err(|e| Outcome::fail(Exit::Usage, e))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct ClassifyDoc<'a> {
    m: usize,
    s: usize,
    feasible: bool,
    regime: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<picod_core::ReasonCode>,
    description: String,
}

fn classify_cmd(m: usize, s: usize, format: Option<Format>) -> Outcome {
    let inst = match instance(m, s) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let c = classify(&inst);
    let code = if c.is_feasible() { Exit::Ok } else { Exit::Infeasible };
    let text = match format.unwrap_or(Format::Ascii) {
        Format::Ascii => format!("{}\n", c.describe()),
        Format::Tsv => format!("m\ts\tregime\tdescription\n{m}\t{s}\t{}\t{}\n", c.tag(), c.describe()),
        Format::Json => json_line(&ClassifyDoc {
            m,
            s,
            feasible: c.is_feasible(),
            regime: c.tag(),
            reason: match c {
                Classification::Infeasible(r) => Some(r),
                _ => None,
            },
            description: c.describe(),
        }),
    };
    Outcome::with(code, text)
}

fn build_cmd(m: usize, s: usize, format: Option<Format>, seed: u64) -> Outcome {
    let inst = match instance(m, s) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let built = match build_with_seed(&inst, seed) {
        Ok(b) => b,
        Err(e @ BuildError::Infeasible { .. }) => return Outcome::fail(Exit::Infeasible, e),
        Err(e) => return Outcome::fail(Exit::Internal, e),
    };
    let text = match format.unwrap_or(Format::Json) {
        Format::Json => SchemeDocument::from_built(&built).to_json(),
        Format::Ascii => {
            let title = format!("{inst}: {} transmissions ({})", built.scheme.len(), built.recipe.name);
            ascii_figure(&built.scheme, &title)
        }
        Format::Tsv => tsv_listing(&built.scheme.with_resolved_senders()),
    };
    Outcome::ok(text)
}

fn format_set(set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|j| j.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    m: usize,
    s: usize,
    #[serde(flatten)]
    report: &'a picod_core::VerificationReport,
    assignment_matches: bool,
}

fn verify_cmd(path: &Path, format: Option<Format>) -> Outcome {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(Exit::Usage, format!("cannot read {}: {e}", path.display())),
    };
    let doc = match SchemeDocument::from_json(&text) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(Exit::Usage, format!("{}: {e}", path.display())),
    };
    let scheme = match doc.to_scheme() {
        Ok(s) => s,
        Err(e) => return Outcome::fail(Exit::Usage, format!("{}: {e}", path.display())),
    };
    let report = verify(&scheme);
    let matches = report.assignment.as_deref() == Some(doc.assignment.as_slice());
    let code = if report.valid { Exit::Ok } else { Exit::VerifyFailed };
    let out = match format.unwrap_or(Format::Ascii) {
        Format::Json => json_line(&VerifyDoc {
            m: doc.m,
            s: doc.s,
            report: &report,
            assignment_matches: matches,
        }),
        Format::Tsv => {
            let mut out = String::from("user\tdecodable\n");
            for (u, d) in report.decodable.iter().enumerate() {
                let _ = writeln!(out, "{}\t{}", u + 1, format_set(d));
            }
            out
        }
        Format::Ascii => {
            let mut out = format!("{}: {} transmissions\n", scheme.instance(), scheme.len());
            let _ = writeln!(out, "decentralized: {}", report.decentralized_ok);
            let _ = writeln!(out, "correct: {}", report.correct);
            let _ = writeln!(out, "secure: {}", report.secure);
            let _ = writeln!(out, "valid: {}", report.valid);
            let _ = writeln!(
                out,
                "assignment: {}",
                if matches { "matches document" } else { "differs from document" }
            );
            for (k, sender) in report.senders.iter().enumerate() {
                if sender.is_none() {
                    let _ = writeln!(out, "transmission {}: no user can send it", k + 1);
                }
            }
            for (u, d) in report.decodable.iter().enumerate() {
                let _ = writeln!(out, "user {}: {}", u + 1, format_set(d));
            }
            out
        }
    };
    Outcome::with(code, out)
}

#[derive(Debug, Clone, Serialize)]
struct TableEntry {
    m: usize,
    s: usize,
    regime: &'static str,
    length: Option<usize>,
    formula: String,
    #[serde(rename = "match")]
    matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn table_entry(inst: &Instance, seed: u64) -> Option<TableEntry> {
    let row = table_row(inst)?;
    let (length, error) = match build_with_seed(inst, seed) {
        Ok(b) => (Some(b.scheme.len()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Some(TableEntry {
        m: inst.m(),
        s: inst.s(),
        regime: classify(inst).tag(),
        length,
        formula: row.formula,
        matched: length.is_some_and(|n| row.target.admits(n)),
        error,
    })
}

fn table_cmd(s_span: Span, m_span: Option<Span>, format: Option<Format>, seed: u64, jobs: usize) -> Outcome {
    let mut grid = Vec::new();
    for s in s_span.lo.max(1)..=s_span.hi {
        let span = m_span.unwrap_or(Span { lo: s + 1, hi: 8 * s });
        for m in span.lo.max(s + 1)..=span.hi {
            grid.push(Instance::new(m, s).expect("m > s"));
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return Outcome::fail(Exit::Internal, format!("worker pool: {e}")),
    };
    let entries: Vec<TableEntry> =
        pool.install(|| grid.par_iter().filter_map(|inst| table_entry(inst, seed)).collect());
    let mismatches = entries.iter().filter(|e| !e.matched).count();
    let code = if mismatches == 0 { Exit::Ok } else { Exit::VerifyFailed };
    let length = |e: &TableEntry| e.length.map_or_else(|| "-".to_string(), |n| n.to_string());
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let text = match format.unwrap_or(Format::Tsv) {
        Format::Json => json_line(&serde_json::json!({
            "rows": entries,
            "mismatches": mismatches,
        })),
        Format::Tsv => {
            let mut out = String::from("m\ts\tregime\tlength\tformula\tmatch\n");
            for e in &entries {
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", e.m, e.s, e.regime, length(e), e.formula, yes_no(e.matched));
            }
            let _ = writeln!(out, "# {} rows, {mismatches} mismatches", entries.len());
            out
        }
        Format::Ascii => {
            let mut out = format!("{:>4} {:>4}  {:<13} {:>6}  {:<24} match\n", "m", "s", "regime", "length", "formula");
            for e in &entries {
                let _ = writeln!(
                    out,
                    "{:>4} {:>4}  {:<13} {:>6}  {:<24} {}",
                    e.m,
                    e.s,
                    e.regime,
                    length(e),
                    e.formula,
                    yes_no(e.matched)
                );
            }
            let _ = writeln!(out, "{} rows, {mismatches} mismatches", entries.len());
            out
        }
    };
    Outcome::with(code, text)
}

#[derive(Serialize)]
struct OracleDoc<'a> {
    header: &'a str,
    m: usize,
    s: usize,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    searched_up_to_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<TransmissionDoc>>,
    stats: &'a OracleStats,
}

fn witness_doc(scheme: &Scheme) -> Vec<TransmissionDoc> {
    scheme
        .transmissions()
        .iter()
        .map(|t| TransmissionDoc {
            support: t.support().to_vec(),
            sender: t.sender().expect("oracle witnesses are windowed"),
        })
        .collect()
}

fn oracle_cmd(m: usize, s: usize, max_dim: Option<usize>, format: Option<Format>, jobs: usize) -> Outcome {
    if !matches!(format, None | Some(Format::Json)) {
        return Outcome::fail(Exit::Usage, "oracle output is JSON only");
    }
    let inst = match instance(m, s) {
        Ok(i) => i,
        Err(o) => return o,
    };
    if m > MAX_M {
        return Outcome::fail(Exit::Usage, format!("oracle supports m <= {MAX_M}, got m={m}"));
    }
    let result = match oracle::search_with_jobs(&inst, max_dim.unwrap_or(m), jobs) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(Exit::Internal, e),
    };
    let (code, min_length, searched, witness) = match &result.status {
        OracleStatus::Feasible { min_length, witness } => (Exit::Ok, Some(*min_length), None, Some(witness_doc(witness))),
        OracleStatus::Infeasible => (Exit::Infeasible, None, None, None),
        OracleStatus::Unknown { searched_up_to_dim } => (Exit::Unknown, None, Some(*searched_up_to_dim), None),
    };
    let doc = OracleDoc {
        header: REPORT_HEADER,
        m,
        s,
        status: result.status.tag(),
        min_length,
        searched_up_to_dim: searched,
        witness,
        stats: &result.stats,
    };
    Outcome::with(code, json_line(&doc))
}
