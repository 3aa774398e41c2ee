//! Rendering of evaluation reports, rankings and uniqueness summaries as a
//! human-readable table, delimited text, or JSON.
//!
//! Output depends only on its inputs (no timestamps), so identical runs give
//! identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::codebook::VerificationReport;
use crate::error::{Error, Result};
use crate::pipeline::{EvaluationReport, RankEntry, UniquenessSummary};
use crate::vocabulary::Method;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Delimited,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "table" => Ok(OutputFormat::Table),
            "delimited" | "csv" => Ok(OutputFormat::Delimited),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!(
                "unknown format '{other}' (expected table, delimited or json)"
            ))),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report values serialize");
    text.push('\n');
    text
}

fn to_delimited(rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
fn to_table(rows: &[Vec<String>]) -> String {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; columns];
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if n == 0 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
    }
    out
}

/// Header plus one row per student: id, words, then numeric and word per method.
fn report_rows(
    report: &EvaluationReport,
    perceptual_decimals: Option<usize>,
    titles: bool,
) -> Vec<Vec<String>> {
    let mut header = vec!["student_id".to_string()];
    header.extend(report.metadata.parameters.iter().cloned());
    for m in &report.methods {
        if titles {
            header.push(m.title().to_string());
            header.push("word".to_string());
        } else {
            header.push(format!("{}_numeric", m.as_str()));
            header.push(format!("{}_word", m.as_str()));
        }
    }
    header.push("error".to_string());

    let mut rows = vec![header];
    for row in &report.rows {
        let mut line = vec![row.student_id.clone()];
        for p in 0..report.metadata.parameters.len() {
            line.push(row.words.get(p).cloned().unwrap_or_default());
        }
        let mut errors = Vec::new();
        for cell in &row.cells {
            match &cell.recommendation {
                Some(rec) => {
                    line.push(rec.numeric.display(perceptual_decimals));
                    line.push(rec.linguistic.code.clone());
                }
                None => {
                    line.push(String::new());
                    line.push(if titles {
                        "FAILED".into()
                    } else {
                        String::new()
                    });
                    if let Some(e) = &cell.error {
                        if !errors.contains(e) {
                            errors.push(e.clone());
                        }
                    }
                }
            }
        }
        line.push(errors.join("; "));
        rows.push(line);
    }
    // drop the error column when nothing failed
    if rows
        .iter()
        .skip(1)
        .all(|r| r.last().is_some_and(String::is_empty))
    {
        for r in &mut rows {
            r.pop();
        }
    }
    rows
}

/// Renders the per-student report. Perceptual scores use
/// `perceptual_decimals` places, or full precision for `None`.
pub fn render_report(
    report: &EvaluationReport,
    format: OutputFormat,
    perceptual_decimals: Option<usize>,
) -> String {
    match format {
        OutputFormat::Table => to_table(&report_rows(report, perceptual_decimals, true)),
        OutputFormat::Delimited => to_delimited(&report_rows(report, perceptual_decimals, false)),
        OutputFormat::Json => to_json(report),
    }
}

fn uniqueness_rows(summary: &UniquenessSummary) -> Vec<Vec<String>> {
    let mut rows = vec![vec![
        "method".to_string(),
        "numeric".to_string(),
        "word".to_string(),
        "size".to_string(),
        "distinct_feedback".to_string(),
        "students".to_string(),
    ]];
    for m in &summary.methods {
        for g in &m.groups {
            rows.push(vec![
                m.method.as_str().to_string(),
                g.numeric.clone(),
                g.linguistic.clone(),
                g.students.len().to_string(),
                g.distinct_feedback.to_string(),
                g.students.join(" "),
            ]);
        }
    }
    rows
}

fn uniqueness_text(summary: &UniquenessSummary) -> String {
    let mut out = String::new();
    let precision = match summary.perceptual_decimals {
        Some(p) => format!("{p} decimals"),
        None => "full precision".to_string(),
    };
    let _ = writeln!(
        out,
        "Uniqueness (perceptual scores compared at {precision})"
    );
    for m in &summary.methods {
        let _ = writeln!(
            out,
            "{}: {} duplicate group(s), {} of {} students unique",
            m.method.title(),
            m.duplicate_group_count(),
            m.unique_students(),
            m.evaluated
        );
        for g in &m.groups {
            let _ = writeln!(
                out,
                "  {} {}: {} students, {} distinct feedback vectors: {}",
                g.numeric,
                g.linguistic,
                g.students.len(),
                g.distinct_feedback,
                g.students.join(", ")
            );
            if m.method == Method::Perceptual {
                let scores: Vec<String> = g
                    .students
                    .iter()
                    .zip(&g.scores)
                    .map(|(s, v)| format!("{s}={v}"))
                    .collect();
                let _ = writeln!(out, "    full precision: {}", scores.join(", "));
            }
        }
    }
    out
}

pub fn render_uniqueness(summary: &UniquenessSummary, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => uniqueness_text(summary),
        OutputFormat::Delimited => to_delimited(&uniqueness_rows(summary)),
        OutputFormat::Json => to_json(summary),
    }
}

#[derive(Serialize)]
struct Comparison<'a> {
    report: &'a EvaluationReport,
    uniqueness: &'a UniquenessSummary,
}

/// Report followed by its uniqueness summary as a separate section.
pub fn render_comparison(
    report: &EvaluationReport,
    summary: &UniquenessSummary,
    format: OutputFormat,
    perceptual_decimals: Option<usize>,
) -> String {
    match format {
        OutputFormat::Json => to_json(&Comparison {
            report,
            uniqueness: summary,
        }),
        _ => {
            let mut out = render_report(report, format, perceptual_decimals);
            out.push('\n');
            if format == OutputFormat::Delimited {
                out.push_str("# uniqueness\n");
            }
            out.push_str(&render_uniqueness(summary, format));
            out
        }
    }
}

pub fn render_ranking(
    method: Method,
    ranking: &[RankEntry],
    format: OutputFormat,
    perceptual_decimals: Option<usize>,
) -> String {
    let score = |v: f64| match (method, perceptual_decimals) {
        (Method::Perceptual, Some(p)) => format!("{v:.p$}"),
        _ => format!("{v}"),
    };
    let mut rows = vec![vec![
        "rank".to_string(),
        "student_id".to_string(),
        "score".to_string(),
        "word".to_string(),
    ]];
    for e in ranking {
        rows.push(vec![
            e.rank.to_string(),
            e.student_id.clone(),
            score(e.score),
            e.linguistic.clone(),
        ]);
    }
    match format {
        OutputFormat::Table => to_table(&rows),
        OutputFormat::Delimited => to_delimited(&rows),
        OutputFormat::Json => to_json(&ranking),
    }
}

#[derive(Serialize)]
struct Verified<'a> {
    source: &'a str,
    #[serde(flatten)]
    report: &'a VerificationReport,
}

/// Centroid verification of one or more codebooks, keyed by source name.
pub fn render_verification(
    reports: &[(String, VerificationReport)],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let list: Vec<Verified> = reports
                .iter()
                .map(|(source, report)| Verified { source, report })
                .collect();
            to_json(&list)
        }
        OutputFormat::Table => {
            let mut out = String::new();
            for (source, report) in reports {
                let _ = writeln!(out, "codebook: {source}");
                out.push_str(&report.to_string());
            }
            out
        }
        OutputFormat::Delimited => {
            let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let mut rows = vec![[
                "codebook",
                "parameter",
                "word",
                "c_l",
                "c_r",
                "stored_l",
                "stored_r",
                "d_l",
                "d_r",
                "passed",
            ]
            .map(String::from)
            .to_vec()];
            for (source, report) in reports {
                for e in &report.entries {
                    rows.push(vec![
                        source.clone(),
                        e.parameter.clone(),
                        e.code.clone(),
                        num(e.computed.map(|c| c.c_l)),
                        num(e.computed.map(|c| c.c_r)),
                        num(e.stored.map(|c| c.c_l)),
                        num(e.stored.map(|c| c.c_r)),
                        num(e.delta_l),
                        num(e.delta_r),
                        e.passed.to_string(),
                    ]);
                }
            }
            to_delimited(&rows)
        }
    }
}
