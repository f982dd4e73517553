//! Command-line reports for plane-curve singularity invariants.
//!
//! Exit codes: 0 success, 1 input or usage error (including precision or
//! degree caps running out), 2 mathematical inconsistency (independent
//! routes disagree, a table violates its hypotheses, or a corpus
//! expectation fails).

mod doc;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use doc::{GermDocument, LedgerDocument};
use germ_core::corpus::{corpus, CorpusEntry};
use germ_core::invariants::analyze;
use germ_core::ledger::r_reduced_euler;
use germ_core::randgen::{random_germ, SplitMix64};
use germ_core::{Error as CoreError, InvariantReport, Limits, StratumTable, UpstairsDatum};
use render::{render_json, render_text, Format};

const USAGE: &str = "\
usage: germ <command> [options]

commands:
  analyze <file> [--oracle] [--format text|json-like] [--precision N] [--cap N]
      invariants of the germ described in <file>; --oracle adds the
      implicitization channel and its cross-checks
  euler <file>
      evaluate the stratum table in <file>: reduced Euler characteristic
      of the Milnor fiber, and the Milnor number in the isolated case
  verify-corpus [--filter name] [--expect-mu name=value]
      run every embedded classical germ through both channels and the
      ledger specialization; --expect-mu overrides one frozen value
      (harness self-test)
  random-check --count N [--seed S]
      generate N seeded random germs and assert the two delta routes and
      the oracle identity on each

exit codes: 0 success, 1 input error, 2 mathematical inconsistency
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(&args))
}

fn run(args: &[String]) -> u8 {
    match args.first().map(String::as_str) {
        Some("analyze") => cmd_analyze(&args[1..]),
        Some("euler") => cmd_euler(&args[1..]),
        Some("verify-corpus") => cmd_verify_corpus(&args[1..]),
        Some("random-check") => cmd_random_check(&args[1..]),
        Some("help") | Some("--help") | Some("-h") => {
            print!("{USAGE}");
            0
        }
        Some(other) => {
            eprintln!("error: unknown command {other}");
            eprint!("{USAGE}");
            1
        }
        None => {
            eprint!("{USAGE}");
            1
        }
    }
}

fn exit_code_for(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidGerm(_)
        | CoreError::Undetermined { .. }
        | CoreError::InfiniteIntersection { .. }
        | CoreError::OracleNeedsPolynomial { .. }
        | CoreError::OracleOriginRevisited { .. }
        | CoreError::NonIsolated { .. }
        | CoreError::DegenerateResultant => 1,
        CoreError::RouteMismatch { .. }
        | CoreError::NotRealizable { .. }
        | CoreError::InconsistentTable(_) => 2,
    }
}

struct AnalyzeOptions {
    path: String,
    oracle: bool,
    format: Format,
    limits: Limits,
}

fn parse_analyze_options(args: &[String]) -> Result<AnalyzeOptions, String> {
    let mut path: Option<String> = None;
    let mut oracle = false;
    let mut format = Format::Text;
    let mut precision: Option<usize> = None;
    let mut cap: Option<usize> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--oracle" => oracle = true,
            "--format" => {
                let v = it.next().ok_or("--format needs a value")?;
                format = Format::parse(v).ok_or(format!("unknown format {v}"))?;
            }
            "--precision" => {
                let v = it.next().ok_or("--precision needs a value")?;
                precision = Some(v.parse().map_err(|_| format!("bad precision {v}"))?);
            }
            "--cap" => {
                let v = it.next().ok_or("--cap needs a value")?;
                cap = Some(v.parse().map_err(|_| format!("bad cap {v}"))?);
            }
            other if other.starts_with('-') => return Err(format!("unknown flag {other}")),
            other => {
                if path.is_some() {
                    return Err(format!("unexpected argument {other}"));
                }
                path = Some(other.to_string());
            }
        }
    }
    let mut limits = Limits::default();
    if let Some(n) = precision {
        limits = limits.with_precision_start(n);
    }
    if let Some(n) = cap {
        limits = limits.with_precision_cap(n);
    }
    Ok(AnalyzeOptions {
        path: path.ok_or("analyze needs a file argument")?,
        oracle,
        format,
        limits,
    })
}

fn cmd_analyze(args: &[String]) -> u8 {
    let options = match parse_analyze_options(args) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    };
    let text = match std::fs::read_to_string(&options.path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", options.path);
            return 1;
        }
    };
    let document = match GermDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {}:{e}", options.path);
            return 1;
        }
    };
    let germ = match document.to_germ() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let started = Instant::now();
    let report = match analyze(&germ, &options.limits, options.oracle) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let wall_ms = started.elapsed().as_millis();
    match options.format {
        Format::Text => print!("{}", render_text(&document.name, &report, wall_ms)),
        Format::Json => print!("{}", render_json(&document.name, &report)),
    }
    if report.consistent {
        0
    } else {
        for check in report.checks.iter().filter(|c| !c.passed) {
            eprintln!("inconsistent: {check}");
        }
        2
    }
}

fn cmd_euler(args: &[String]) -> u8 {
    let path = match args {
        [p] if !p.starts_with('-') => p,
        _ => {
            eprintln!("error: euler needs exactly one file argument");
            return 1;
        }
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return 1;
        }
    };
    let document = match LedgerDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {path}:{e}");
            return 1;
        }
    };
    // Structural problems are input errors; only a structurally valid
    // table that violates its own hypotheses exits 2 below.
    let table = match document.to_table() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    println!("ledger: {}", document.name);
    println!(
        "n: {}, r: {}, isolated: {}",
        table.n(),
        table.r(),
        if table.is_isolated() { "yes" } else { "no" }
    );
    for (k, chi) in table.chi_multiple() {
        println!("chi(X_{k} cap M): {chi}");
    }
    let weighted = table.weighted_multiple_chi();
    println!(
        "hypercohomology euler over the multiple-point locus: {weighted} unreduced, {} after (r-1)-reduction",
        r_reduced_euler(table.r(), weighted)
    );
    println!(
        "reduced euler characteristic of the Milnor fiber: {}",
        table.reduced_euler()
    );
    println!(
        "monodromy compatibility: {} (recorded, never computed)",
        germ_core::ledger::MONODROMY_COMPATIBILITY_RECORDED
    );
    if table.is_isolated() {
        let mu = match table.isolated_milnor_number() {
            Ok(m) => m,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        };
        println!("mu_0(h): {mu}");
        if let Some(delta) = nodes_only_delta(&table) {
            println!(
                "plane-curve companion: mu(g_0) = mu_0(h) + delta = {mu} + {delta} = {}",
                mu + delta
            );
        }
    }
    0
}

/// delta when the table is a nodes-only plane-curve unfolding: n = 2, the
/// only multiple-point stratum is k = 2, and the sources are unsingular.
fn nodes_only_delta(table: &StratumTable) -> Option<usize> {
    if table.n() != 2 || !table.is_isolated() {
        return None;
    }
    if !table
        .upstairs()
        .iter()
        .all(|u| matches!(u, UpstairsDatum::MilnorNumber(0)))
    {
        return None;
    }
    match table.chi_multiple().iter().collect::<Vec<_>>().as_slice() {
        [] => Some(0),
        [(&2, &chi)] if chi >= 0 => Some(chi as usize),
        _ => None,
    }
}

struct CorpusRow {
    name: &'static str,
    expected_mu: i64,
    outcome: Result<(InvariantReport, usize), CoreError>,
}

fn cmd_verify_corpus(args: &[String]) -> u8 {
    let mut filter: Option<String> = None;
    let mut injected: Option<(String, i64)> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--filter" => match it.next() {
                Some(v) => filter = Some(v.clone()),
                None => {
                    eprintln!("error: --filter needs a value");
                    return 1;
                }
            },
            "--expect-mu" => {
                let Some(v) = it.next() else {
                    eprintln!("error: --expect-mu needs name=value");
                    return 1;
                };
                let Some((name, value)) = v.split_once('=') else {
                    eprintln!("error: --expect-mu needs name=value");
                    return 1;
                };
                let Ok(value) = value.parse::<i64>() else {
                    eprintln!("error: bad --expect-mu value {value}");
                    return 1;
                };
                injected = Some((name.to_string(), value));
            }
            other => {
                eprintln!("error: unknown argument {other}");
                return 1;
            }
        }
    }
    let entries: Vec<CorpusEntry> = corpus()
        .into_iter()
        .filter(|e| filter.as_deref().is_none_or(|f| e.name.contains(f)))
        .collect();
    if entries.is_empty() {
        eprintln!("error: no corpus germ matches the filter");
        return 1;
    }
    let limits = Limits::default();
    let rows: Vec<CorpusRow> = entries
        .par_iter()
        .map(|entry| {
            let expected_mu = match &injected {
                Some((name, value)) if *name == entry.name => *value,
                _ => entry.mu,
            };
            let outcome = analyze(&entry.germ, &limits, true).map(|report| {
                let ledger_mu = StratumTable::nodes_only_unfolding(entry.r, report.delta_total)
                    .isolated_milnor_number()
                    .map(|image_mu| image_mu + report.delta_total)
                    .unwrap_or(usize::MAX);
                (report, ledger_mu)
            });
            CorpusRow {
                name: entry.name,
                expected_mu,
                outcome,
            }
        })
        .collect();

    println!(
        "{:<16} {:>2} {:>5} {:>4} {:>9} {:>9}  verdict",
        "name", "r", "delta", "mu", "oracle-mu", "ledger-mu"
    );
    let mut all_ok = true;
    for (row, entry) in rows.iter().zip(&entries) {
        match &row.outcome {
            Ok((report, ledger_mu)) => {
                let mut problems: Vec<String> = Vec::new();
                if report.r != entry.r {
                    problems.push(format!("r {} != expected {}", report.r, entry.r));
                }
                if report.delta_total != entry.delta {
                    problems.push(format!(
                        "delta {} != expected {}",
                        report.delta_total, entry.delta
                    ));
                }
                if report.mu_parameterized != row.expected_mu {
                    problems.push(format!(
                        "mu {} != expected {}",
                        report.mu_parameterized, row.expected_mu
                    ));
                }
                if report.oracle_mu.map(|m| m as i64) != Some(row.expected_mu) {
                    problems.push(format!(
                        "oracle mu {:?} != expected {}",
                        report.oracle_mu, row.expected_mu
                    ));
                }
                if *ledger_mu as i64 != row.expected_mu {
                    problems.push(format!(
                        "ledger mu {ledger_mu} != expected {}",
                        row.expected_mu
                    ));
                }
                if !report.consistent {
                    problems.push("internal cross-checks failed".to_string());
                }
                let ok = problems.is_empty();
                all_ok &= ok;
                println!(
                    "{:<16} {:>2} {:>5} {:>4} {:>9} {:>9}  {}",
                    row.name,
                    report.r,
                    report.delta_total,
                    report.mu_parameterized,
                    report.oracle_mu.map_or("-".to_string(), |m| m.to_string()),
                    ledger_mu,
                    if ok { "ok" } else { "MISMATCH" }
                );
                for p in problems {
                    eprintln!("mismatch in {}: {p}", row.name);
                }
            }
            Err(e) => {
                all_ok = false;
                println!("{:<16}  -     -    -         -         -  ERROR", row.name);
                eprintln!("error in {}: {e}", row.name);
            }
        }
    }
    if all_ok {
        println!("all {} corpus germs verified", rows.len());
        0
    } else {
        2
    }
}

enum RandomOutcome {
    Passed,
    Skipped(String),
    Failed(String, String),
}

fn cmd_random_check(args: &[String]) -> u8 {
    let mut count: Option<usize> = None;
    let mut seed: u64 = 0;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--count" => match it.next().and_then(|v| v.parse().ok()) {
                Some(n) => count = Some(n),
                None => {
                    eprintln!("error: --count needs a number");
                    return 1;
                }
            },
            "--seed" => match it.next().and_then(|v| v.parse().ok()) {
                Some(s) => seed = s,
                None => {
                    eprintln!("error: --seed needs a number");
                    return 1;
                }
            },
            other => {
                eprintln!("error: unknown argument {other}");
                return 1;
            }
        }
    }
    let Some(count) = count else {
        eprintln!("error: random-check needs --count N");
        return 1;
    };
    if count == 0 {
        eprintln!("error: --count must be at least 1");
        return 1;
    }
    let limits = Limits::default();
    let mut rng = SplitMix64::new(seed);
    let germs: Vec<_> = (0..count).map(|_| random_germ(&mut rng, &limits)).collect();
    let outcomes: Vec<RandomOutcome> = germs
        .par_iter()
        .enumerate()
        .map(|(i, germ)| {
            let name = format!("random-{seed}-{i}");
            match analyze(germ, &limits, true) {
                Ok(report) if report.consistent => RandomOutcome::Passed,
                Ok(report) => {
                    let failures: Vec<String> = report
                        .checks
                        .iter()
                        .filter(|c| !c.passed)
                        .map(|c| c.to_string())
                        .collect();
                    RandomOutcome::Failed(
                        failures.join("; "),
                        GermDocument::from_germ(&name, germ).serialize(),
                    )
                }
                Err(e) => match exit_code_for(&e) {
                    1 => RandomOutcome::Skipped(e.to_string()),
                    _ => RandomOutcome::Failed(
                        e.to_string(),
                        GermDocument::from_germ(&name, germ).serialize(),
                    ),
                },
            }
        })
        .collect();

    println!("random-check: count {count}, seed {seed}");
    let (mut passed, mut skipped, mut failed) = (0usize, 0usize, 0usize);
    for (i, outcome) in outcomes.iter().enumerate() {
        match outcome {
            RandomOutcome::Passed => passed += 1,
            RandomOutcome::Skipped(reason) => {
                skipped += 1;
                println!("germ {i}: skipped ({reason})");
            }
            RandomOutcome::Failed(detail, document) => {
                failed += 1;
                eprintln!("germ {i} FAILED: {detail}");
                eprintln!("replay document:\n{document}");
            }
        }
    }
    println!("summary: passed {passed}, failed {failed}, skipped {skipped} of {count}");
    if failed > 0 {
        2
    } else {
        0
    }
}
