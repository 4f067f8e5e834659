//! Maintenance health of a source vocabulary, scored from a metadata record.
//!
//! Snapshot format: UTF-8, records separated by blank lines, one
//! `key: value` pair per line, `#` comment lines, dates as `YYYY-MM-DD`.
//! Keys are the [`OntologyMetadata`] field names. `name` and `as_of` are
//! required; other numeric fields default to 0 and booleans to false.

use std::collections::BTreeMap;

use chrono::{Months, NaiveDate};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OntologyMetadata {
    pub name: String,
    pub last_release: Option<NaiveDate>,
    pub releases_last_24_months: u32,
    pub median_issue_response_days: Option<f64>,
    pub accepts_term_requests: bool,
    pub definition_coverage: f64,
    pub terms_reused_elsewhere: u64,
    pub total_terms: u64,
    pub has_permanent_iris: bool,
    pub as_of: NaiveDate,
}

impl OntologyMetadata {
    /// A record with every optional fact absent or zero.
    pub fn empty(name: impl Into<String>, as_of: NaiveDate) -> Self {
        OntologyMetadata {
            name: name.into(),
            last_release: None,
            releases_last_24_months: 0,
            median_issue_response_days: None,
            accepts_term_requests: false,
            definition_coverage: 0.0,
            terms_reused_elsewhere: 0,
            total_terms: 0,
            has_permanent_iris: false,
            as_of,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("record {record} (line {line}): {message}")]
pub struct MetadataError {
    /// 1-based record number in the file.
    pub record: usize,
    /// Line where the record starts.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetadataLoad {
    pub records: Vec<OntologyMetadata>,
    pub errors: Vec<MetadataError>,
    pub notes: Vec<String>,
}

/// Source of metadata records. The snapshot file is the built-in provider;
/// live registry clients can implement the same trait.
pub trait MetadataProvider {
    fn records(&self) -> MetadataLoad;
}

/// Provider backed by the text of a snapshot file.
#[derive(Debug, Clone)]
pub struct SnapshotProvider {
    text: String,
}

impl SnapshotProvider {
    pub fn new(text: impl Into<String>) -> Self {
        SnapshotProvider { text: text.into() }
    }
}

impl MetadataProvider for SnapshotProvider {
    fn records(&self) -> MetadataLoad {
        load_metadata(&self.text)
    }
}

fn parse_date(v: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(v, "%Y-%m-%d").map_err(|_| format!("`{v}` is not a YYYY-MM-DD date"))
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" => Ok(true),
        "false" | "no" => Ok(false),
        _ => Err(format!("`{v}` is not true or false")),
    }
}

fn parse_num<T: std::str::FromStr>(v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("`{v}` is not a valid number"))
}

fn parse_real(v: &str) -> Result<f64, String> {
    let x: f64 = parse_num(v)?;
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(format!("`{v}` must be a non-negative number"))
    }
}

fn with_line<T>((line, v): (usize, &str), f: impl Fn(&str) -> Result<T, String>) -> Result<T, String> {
    f(v).map_err(|e| format!("line {line}: {e}"))
}

struct RawRecord<'a> {
    start: usize,
    lines: Vec<(usize, &'a str)>,
}

fn take<'a>(fields: &mut BTreeMap<&str, (usize, &'a str)>, key: &str) -> Option<(usize, &'a str)> {
    fields.remove(key).filter(|(_, v)| !v.is_empty())
}

fn build_record(raw: &RawRecord, notes: &mut Vec<String>) -> Result<OntologyMetadata, String> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for &(line, text) in &raw.lines {
        let (key, value) = text.split_once(':').ok_or_else(|| format!("line {line}: expected `key: value`"))?;
        let key = key.trim();
        if fields.insert(key, (line, value.trim())).is_some() {
            return Err(format!("line {line}: `{key}` given twice"));
        }
    }

    let name = take(&mut fields, "name").ok_or("missing required `name`")?.1.to_string();
    let as_of = with_line(take(&mut fields, "as_of").ok_or("missing required `as_of`")?, parse_date)?;
    let mut meta = OntologyMetadata::empty(name, as_of);
    if let Some(v) = take(&mut fields, "last_release") {
        meta.last_release = Some(with_line(v, parse_date)?);
    }
    if let Some(v) = take(&mut fields, "releases_last_24_months") {
        meta.releases_last_24_months = with_line(v, parse_num)?;
    }
    if let Some(v) = take(&mut fields, "median_issue_response_days") {
        meta.median_issue_response_days = Some(with_line(v, parse_real)?);
    }
    if let Some(v) = take(&mut fields, "accepts_term_requests") {
        meta.accepts_term_requests = with_line(v, parse_bool)?;
    }
    if let Some(v) = take(&mut fields, "definition_coverage") {
        meta.definition_coverage = with_line(v, parse_real)?;
    }
    if let Some(v) = take(&mut fields, "terms_reused_elsewhere") {
        meta.terms_reused_elsewhere = with_line(v, parse_num)?;
    }
    if let Some(v) = take(&mut fields, "total_terms") {
        meta.total_terms = with_line(v, parse_num)?;
    }
    if let Some(v) = take(&mut fields, "has_permanent_iris") {
        meta.has_permanent_iris = with_line(v, parse_bool)?;
    }
    if meta.definition_coverage > 1.0 {
        return Err(format!("definition_coverage {} is outside [0, 1]", meta.definition_coverage));
    }
    if meta.last_release.is_some_and(|d| d > meta.as_of) {
        return Err("last_release is after as_of".into());
    }
    for (key, (line, _)) in fields {
        notes.push(format!("{}: line {line}: unknown key `{key}` ignored", meta.name));
    }
    Ok(meta)
}

pub fn load_metadata(input: &str) -> MetadataLoad {
    let mut raw: Vec<RawRecord> = Vec::new();
    let mut open = false;
    for (idx, line) in input.trim_start_matches('\u{feff}').lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            open = false;
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        if !open {
            raw.push(RawRecord { start: idx + 1, lines: Vec::new() });
            open = true;
        }
        raw.last_mut().expect("open record").lines.push((idx + 1, trimmed));
    }
    let mut load = MetadataLoad::default();
    for (i, r) in raw.iter().enumerate() {
        match build_record(r, &mut load.notes) {
            Ok(m) => load.records.push(m),
            Err(message) => load.errors.push(MetadataError { record: i + 1, line: r.start, message }),
        }
    }
    load
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HealthWeights {
    pub activity: f64,
    pub responsiveness: f64,
    pub documentation: f64,
    pub reuse: f64,
    pub identifiers: f64,
}

impl Default for HealthWeights {
    fn default() -> Self {
        HealthWeights { activity: 0.2, responsiveness: 0.2, documentation: 0.2, reuse: 0.2, identifiers: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HealthError {
    #[error("health weights must be non-negative and sum to 1 (got sum {0})")]
    InvalidWeights(f64),
}

impl HealthWeights {
    fn as_array(&self) -> [f64; 5] {
        [self.activity, self.responsiveness, self.documentation, self.reuse, self.identifiers]
    }

    pub fn validate(&self) -> Result<(), HealthError> {
        let w = self.as_array();
        let sum: f64 = w.iter().sum();
        if w.iter().all(|x| x.is_finite() && *x >= 0.0) && (sum - 1.0).abs() <= EPS {
            Ok(())
        } else {
            Err(HealthError::InvalidWeights(sum))
        }
    }
}

/// Cut-offs behind the subscores and verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HealthThresholds {
    pub active_months: u32,
    pub recent_months: u32,
    pub fast_response_days: f64,
    pub slow_response_days: f64,
    pub reuse_scale: f64,
    pub healthy: f64,
    pub caution: f64,
}

impl Default for HealthThresholds {
    fn default() -> Self {
        HealthThresholds {
            active_months: 12,
            recent_months: 24,
            fast_response_days: 30.0,
            slow_response_days: 180.0,
            reuse_scale: 10.0,
            healthy: 0.75,
            caution: 0.4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Healthy,
    Caution,
    Stale,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Healthy => "healthy",
            Verdict::Caution => "caution",
            Verdict::Stale => "stale",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Subscores {
    pub activity: f64,
    pub responsiveness: f64,
    pub documentation: f64,
    pub reuse: f64,
    pub identifiers: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HealthReport {
    pub name: String,
    pub subscores: Subscores,
    pub composite: f64,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

pub fn verdict_for(composite: f64, t: &HealthThresholds) -> Verdict {
    if composite >= t.healthy - EPS {
        Verdict::Healthy
    } else if composite >= t.caution - EPS {
        Verdict::Caution
    } else {
        Verdict::Stale
    }
}

pub fn subscores(meta: &OntologyMetadata, t: &HealthThresholds) -> Subscores {
    let within = |months: u32| {
        let since = meta.as_of.checked_sub_months(Months::new(months)).unwrap_or(NaiveDate::MIN);
        meta.last_release.is_some_and(|d| d >= since && d <= meta.as_of)
    };
    let activity = if within(t.active_months) {
        1.0
    } else if within(t.recent_months) {
        0.5
    } else {
        0.0
    };
    let responsiveness = match (meta.accepts_term_requests, meta.median_issue_response_days) {
        (false, _) => 0.0,
        (true, Some(d)) if d <= t.fast_response_days => 1.0,
        (true, Some(d)) if d <= t.slow_response_days => 0.5,
        (true, None) => 0.5,
        (true, Some(_)) => 0.0,
    };
    let reuse = (meta.terms_reused_elsewhere as f64 / meta.total_terms.max(1) as f64 * t.reuse_scale).min(1.0);
    Subscores {
        activity,
        responsiveness,
        documentation: meta.definition_coverage,
        reuse,
        identifiers: if meta.has_permanent_iris { 1.0 } else { 0.0 },
    }
}

pub fn composite(s: &Subscores, w: &HealthWeights) -> f64 {
    w.activity * s.activity
        + w.responsiveness * s.responsiveness
        + w.documentation * s.documentation
        + w.reuse * s.reuse
        + w.identifiers * s.identifiers
}

pub fn assess_health(meta: &OntologyMetadata, weights: &HealthWeights) -> Result<HealthReport, HealthError> {
    assess_health_with(meta, weights, &HealthThresholds::default())
}

pub fn assess_health_with(
    meta: &OntologyMetadata,
    weights: &HealthWeights,
    thresholds: &HealthThresholds,
) -> Result<HealthReport, HealthError> {
    weights.validate()?;
    let s = subscores(meta, thresholds);
    let composite = composite(&s, weights);
    let verdict = verdict_for(composite, thresholds);
    let mut notes = Vec::new();
    if meta.last_release.is_none() {
        notes.push("no release date recorded".to_string());
    }
    if meta.accepts_term_requests && meta.median_issue_response_days.is_none() {
        notes.push("issue response time unknown; responsiveness scored as partial".to_string());
    }
    if verdict == Verdict::Stale {
        notes.push(
            "a stale verdict reflects maintenance activity only; it does not mean the vocabulary is of poor quality"
                .to_string(),
        );
    }
    Ok(HealthReport { name: meta.name.clone(), subscores: s, composite, verdict, notes })
}
