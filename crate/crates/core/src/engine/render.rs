//! Text and JSON renderings. Both are byte-deterministic for a given input.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{HealthOutput, Report};
use crate::catalog::{Rule, Severity, UnknownName};
use crate::reuse::Suggestion;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            _ => Err(UnknownName(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryResult {
    pub query: String,
    pub suggestions: Vec<Suggestion>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn paint(severity: Severity, color: bool) -> String {
    if !color {
        return severity.to_string();
    }
    let code = match severity {
        Severity::Error => "31",
        Severity::Warning => "33",
        Severity::Info => "36",
    };
    format!("\x1b[{code}m{severity}\x1b[0m")
}

fn plural(n: usize, word: &str) -> String {
    format!("{n} {word}{}", if n == 1 { "" } else { "s" })
}

pub fn render_report(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(report, false),
        OutputFormat::Json => json(report),
    }
}

/// `<file>:<line>: <severity> <rule_id> <subject_label>: <message>` per
/// finding, then a summary line. ANSI color on the severity when `color`.
pub fn render_text(report: &Report, color: bool) -> String {
    let mut out = String::new();
    for f in &report.findings {
        let at = f.location.as_ref().map_or_else(|| "-".to_string(), |l| l.to_string());
        let _ = write!(out, "{at}: {} {} {}: {}", paint(f.severity, color), f.rule, f.subject_label, f.message);
        if let Some(s) = &f.suggestion {
            let _ = write!(out, " (suggestion: {s})");
        }
        out.push('\n');
    }
    let c = report.counts;
    let terms: usize = report.inputs.iter().map(|i| i.term_count).sum();
    let _ = writeln!(
        out,
        "{} ({}, {}, {}) in {} from {}",
        plural(c.total(), "finding"),
        plural(c.error, "error"),
        plural(c.warning, "warning"),
        plural(c.info, "info"),
        plural(terms, "term"),
        plural(report.inputs.len(), "file"),
    );
    out
}

pub fn render_suggestions(results: &[QueryResult], format: OutputFormat) -> String {
    if format == OutputFormat::Json {
        return json(&serde_json::json!({ "queries": results }));
    }
    let mut out = String::new();
    for r in results {
        let _ = writeln!(out, "{}:", r.query);
        if r.suggestions.is_empty() {
            out.push_str("  no existing term found\n");
        }
        for (i, s) in r.suggestions.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {}. {:.3} {} {} `{}` (matched `{}`; in {})",
                i + 1,
                s.score,
                s.match_kind.as_str(),
                s.iri,
                s.label,
                s.matched_phrase,
                plural(s.reuse_count, "reference"),
            );
        }
    }
    out
}

pub fn render_health(output: &HealthOutput, format: OutputFormat) -> String {
    if format == OutputFormat::Json {
        return json(output);
    }
    let mut out = String::new();
    for r in &output.reports {
        let s = &r.subscores;
        let _ = writeln!(out, "{}: {} (composite {:.3})", r.name, r.verdict.as_str(), r.composite);
        let _ = writeln!(
            out,
            "  activity {:.2}  responsiveness {:.2}  documentation {:.2}  reuse {:.2}  identifiers {:.2}",
            s.activity, s.responsiveness, s.documentation, s.reuse, s.identifiers
        );
        for n in &r.notes {
            let _ = writeln!(out, "  note: {n}");
        }
    }
    for n in &output.notes {
        let _ = writeln!(out, "note: {n}");
    }
    for e in &output.errors {
        let _ = writeln!(out, "error: {e}");
    }
    out
}

#[derive(Serialize)]
struct CatalogEntry {
    rule_id: &'static str,
    default_severity: Severity,
    guideline: &'static str,
    summary: &'static str,
}

/// The rule catalog. Default severities are editorial choices.
pub fn render_catalog(format: OutputFormat) -> String {
    let entries: Vec<CatalogEntry> = Rule::ALL
        .iter()
        .map(|r| CatalogEntry {
            rule_id: r.id(),
            default_severity: r.default_severity(),
            guideline: r.guideline(),
            summary: r.summary(),
        })
        .collect();
    if format == OutputFormat::Json {
        return json(&entries);
    }
    let width = entries.iter().map(|e| e.rule_id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in &entries {
        let _ =
            writeln!(out, "{:width$}  {:7}  {:38}  {}", e.rule_id, e.default_severity.as_str(), e.guideline, e.summary);
    }
    out.push_str("\nDefault severities are editorial; override them with `severity_overrides` in the config file.\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{InputSummary, Report};
    use crate::ingest::Format;
    use crate::model::{Finding, SourceLocation, Term};

    fn at(file: &str, line: usize, label: &str, rule: Rule) -> Finding {
        let mut t = Term::new(label).with_iri("X:1");
        t.location = Some(SourceLocation::new(file, line));
        Finding::on_term(rule, &t, "msg")
    }

    #[test]
    fn text_line_shape() {
        let r = Report::new(
            vec![InputSummary { file: "a.tsv".into(), format: Format::Tsv, term_count: 1 }],
            vec![at("a.tsv", 2, "LFT", Rule::Abbrev)],
        );
        let text = render_text(&r, false);
        assert_eq!(
            text,
            "a.tsv:2: warning R05-ABBREV LFT: msg\n1 finding (0 errors, 1 warning, 0 infos) in 1 term from 1 file\n"
        );
        assert!(render_text(&r, true).contains("\x1b[33mwarning\x1b[0m"));
    }

    #[test]
    fn empty_report() {
        let r = Report::new(vec![], vec![]);
        assert_eq!(render_report(&r, OutputFormat::Text).lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(&render_report(&r, OutputFormat::Json)).unwrap();
        assert_eq!(v["findings"], serde_json::json!([]));
        assert_eq!(v["counts"]["error"], 0);
    }

    #[test]
    fn ordering_by_file_and_line() {
        let r = Report::new(
            vec![],
            vec![
                at("b.tsv", 1, "x", Rule::Plural),
                at("a.tsv", 9, "y", Rule::Plural),
                at("a.tsv", 3, "z", Rule::Plural),
            ],
        );
        let files: Vec<String> =
            render_text(&r, false).lines().take(3).map(|l| l.split(' ').next().unwrap().to_string()).collect();
        assert_eq!(files, vec!["a.tsv:3:", "a.tsv:9:", "b.tsv:1:"]);
    }

    #[test]
    fn json_round_trip() {
        let r = Report::new(vec![], vec![at("a.tsv", 2, "LFT", Rule::Abbrev).suggest("x")]);
        let text = render_report(&r, OutputFormat::Json);
        assert!(text.contains("\"rule_id\": \"R05-ABBREV\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn catalog_lists_every_rule() {
        let text = render_catalog(OutputFormat::Text);
        for r in Rule::ALL {
            assert!(text.contains(r.id()));
        }
        assert!("JSON".parse::<OutputFormat>().is_ok());
    }
}
