//! Text and machine-readable renderings of reports.
//!
//! The JSON rendering is deterministic (fixed field order, exact integers
//! only) and carries no timing, so identical inputs produce byte-identical
//! machine output. Wall-clock time appears in the text rendering only.

use std::fmt::Write as _;

use germ_core::InvariantReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn parse(word: &str) -> Option<Format> {
        match word {
            "text" => Some(Format::Text),
            // the machine-readable format; "json-like" because numbers are
            // exact and field order is pinned down
            "json" | "json-like" => Some(Format::Json),
            _ => None,
        }
    }
}

pub fn render_text(name: &str, report: &InvariantReport, wall_ms: u128) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "germ: {name}");
    let _ = writeln!(out, "r: {}", report.r);
    for branch in &report.per_branch {
        let gaps: Vec<String> = branch.semigroup.gaps().iter().map(usize::to_string).collect();
        let _ = writeln!(
            out,
            "branch {}: multiplicity {}, delta {}, gaps {{{}}}, conductor {}",
            branch.label,
            branch.multiplicity,
            branch.delta,
            gaps.join(", "),
            branch.semigroup.conductor()
        );
    }
    if report.r > 1 {
        let _ = writeln!(out, "intersection matrix (rows/columns in branch order):");
        for row in &report.intersection_matrix {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Some(v) => v.to_string(),
                    None => ".".to_string(),
                })
                .collect();
            let _ = writeln!(out, "  [{}]", cells.join(" "));
        }
    }
    let _ = writeln!(
        out,
        "delta: {} (combinatorial) | {} (cokernel)",
        report.delta_total, report.delta_cokernel
    );
    let _ = writeln!(out, "mu = 2*delta - r + 1: {}", report.mu_parameterized);
    let _ = writeln!(
        out,
        "image complex-link mu = delta - r + 1: {}",
        report.image_link_mu
    );
    if let Some(implicit) = &report.implicit {
        let _ = writeln!(out, "implicit equation: {}", implicit.g);
        for (label, factor) in &implicit.factors {
            let _ = writeln!(out, "  factor of {label}: {factor}");
        }
    }
    if let Some(mu) = report.oracle_mu {
        let _ = writeln!(out, "oracle mu (jacobian colength): {mu}");
    }
    let _ = writeln!(out, "checks:");
    for check in &report.checks {
        let _ = writeln!(out, "  {check}");
    }
    let _ = writeln!(
        out,
        "consistent: {}",
        if report.consistent { "yes" } else { "NO" }
    );
    let _ = writeln!(out, "precision used: {}", report.precision_used);
    if let Some(d) = report.oracle_degree_used {
        let _ = writeln!(out, "oracle truncation degree: {d}");
    }
    let _ = writeln!(out, "wall-time: {wall_ms} ms");
    out
}

pub fn render_json(name: &str, report: &InvariantReport) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", json_string(name));
    let _ = writeln!(out, "  \"r\": {},", report.r);
    out.push_str("  \"branches\": [\n");
    for (i, branch) in report.per_branch.iter().enumerate() {
        let gaps: Vec<String> = branch.semigroup.gaps().iter().map(usize::to_string).collect();
        let _ = write!(
            out,
            "    {{\"label\": {}, \"multiplicity\": {}, \"delta\": {}, \"gaps\": [{}], \"conductor\": {}}}",
            json_string(&branch.label),
            branch.multiplicity,
            branch.delta,
            gaps.join(", "),
            branch.semigroup.conductor()
        );
        out.push_str(if i + 1 < report.per_branch.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    out.push_str("  \"intersection_matrix\": [");
    for (i, row) in report.intersection_matrix.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Some(v) => v.to_string(),
                None => "null".to_string(),
            })
            .collect();
        let _ = write!(out, "[{}]", cells.join(", "));
    }
    out.push_str("],\n");
    let _ = writeln!(out, "  \"delta_total\": {},", report.delta_total);
    let _ = writeln!(out, "  \"delta_cokernel\": {},", report.delta_cokernel);
    let _ = writeln!(out, "  \"mu\": {},", report.mu_parameterized);
    let _ = writeln!(out, "  \"image_link_mu\": {},", report.image_link_mu);
    match &report.implicit {
        Some(implicit) => {
            let _ = writeln!(
                out,
                "  \"implicit_equation\": {},",
                json_string(&implicit.g.to_string())
            );
        }
        None => {
            let _ = writeln!(out, "  \"implicit_equation\": null,");
        }
    }
    match report.oracle_mu {
        Some(mu) => {
            let _ = writeln!(out, "  \"oracle_mu\": {mu},");
        }
        None => {
            let _ = writeln!(out, "  \"oracle_mu\": null,");
        }
    }
    out.push_str("  \"checks\": [\n");
    for (i, check) in report.checks.iter().enumerate() {
        let _ = write!(
            out,
            "    {{\"name\": {}, \"passed\": {}, \"detail\": {}}}",
            json_string(check.name),
            check.passed,
            json_string(&check.detail)
        );
        out.push_str(if i + 1 < report.checks.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    let _ = writeln!(out, "  \"consistent\": {},", report.consistent);
    let _ = writeln!(out, "  \"precision_used\": {},", report.precision_used);
    match report.oracle_degree_used {
        Some(d) => {
            let _ = writeln!(out, "  \"oracle_degree_used\": {d}");
        }
        None => {
            let _ = writeln!(out, "  \"oracle_degree_used\": null");
        }
    }
    out.push_str("}\n");
    out
}

pub fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
