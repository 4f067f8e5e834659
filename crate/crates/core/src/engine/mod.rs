//! Runs the checks over a set of inputs and assembles the report.
//!
//! Pipeline: parse every input (diagnostics become `PARSE` findings), merge
//! into one vocabulary ordered by source position, run the enabled checks,
//! downgrade label checks on obsolete terms to info, drop suppressed
//! findings, apply severity overrides, then sort.

mod config;
mod render;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{InputSpec, RuleConfig, Suppression};
pub use render::{
    render_catalog, render_health, render_report, render_suggestions, render_text, OutputFormat, QueryResult,
};

use crate::catalog::{Rule, Severity};
use crate::definitions::{
    check_definition_present, check_definition_uniqueness, check_genus_differentia, detect_circular_definitions,
};
use crate::health::{assess_health, load_metadata, HealthReport, MetadataError};
use crate::identity::{
    check_deprecation, check_iri, check_iri_uniqueness, check_label_collisions, check_synonym_collisions,
};
use crate::ingest::{parse_obo, parse_term_table, DiagnosticSeverity, Format, ParseDiagnostic, TableError};
use crate::lexical::{
    check_abbreviation, check_colloquial, check_concept_bomb, check_conjunction, check_negative_phrasing, check_plural,
    check_redundant_narrowing, check_tag_style, check_timeline, detect_word_bombs,
};
use crate::lexicon::{LexiconError, Lexicons};
use crate::model::{Finding, PrefixMap, Term, Vocabulary};
use crate::reuse::{build_index, suggest_terms, MatchKind, ReuseError, ReuseIndex};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("cannot read `{0}`: {1}")]
    Io(String, String),
    #[error("cannot tell the format of `{0}`; pass --format obo|tsv")]
    UnknownFormat(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid lexicon file `{path}`: {source}")]
    Lexicon { path: String, source: LexiconError },
    #[error("invalid prefix map `{path}`: {message}")]
    PrefixMap { path: String, message: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("no reference vocabularies configured; pass --references")]
    NoReferences,
    #[error("no metadata file configured; pass --metadata")]
    NoMetadata,
    #[error("query `{query}`: {source}")]
    Query { query: String, source: ReuseError },
}

/// One input's text, already read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    pub name: String,
    pub format: Format,
    pub text: String,
}

impl Source {
    pub fn new(name: impl Into<String>, format: Format, text: impl Into<String>) -> Self {
        Source { name: name.into(), format, text: text.into() }
    }

    pub fn read(spec: &InputSpec) -> Result<Self, EngineError> {
        let format = spec.resolved_format()?;
        let name = spec.path.display().to_string();
        let text = std::fs::read_to_string(&spec.path).map_err(|e| EngineError::Io(name.clone(), e.to_string()))?;
        Ok(Source { name, format, text })
    }
}

/// Everything a run needs besides the inputs: word lists, prefixes and the
/// optional reference index.
#[derive(Debug, Clone)]
pub struct Context {
    pub lexicons: Lexicons,
    pub prefixes: PrefixMap,
    pub references: Option<ReuseIndex>,
}

impl Default for Context {
    fn default() -> Self {
        Context { lexicons: Lexicons::default(), prefixes: PrefixMap::builtin(), references: None }
    }
}

fn read(path: &Path) -> Result<String, EngineError> {
    std::fs::read_to_string(path).map_err(|e| EngineError::Io(path.display().to_string(), e.to_string()))
}

impl Context {
    /// Loads lexicon, prefix and reference files named in the config.
    pub fn from_config(cfg: &RuleConfig) -> Result<Self, EngineError> {
        let mut ctx = Context::default();
        for (kind, path) in &cfg.lexicon_paths {
            ctx.lexicons
                .load(*kind, &read(path)?, cfg.replace_lexicons)
                .map_err(|source| EngineError::Lexicon { path: path.display().to_string(), source })?;
        }
        if let Some(path) = &cfg.prefix_map_path {
            let map = PrefixMap::parse(&read(path)?)
                .map_err(|e| EngineError::PrefixMap { path: path.display().to_string(), message: e.to_string() })?;
            ctx.prefixes.extend(&map);
        }
        if !cfg.reference_paths.is_empty() {
            let sources = cfg.reference_paths.iter().map(Source::read).collect::<Result<Vec<_>, _>>()?;
            ctx.references = Some(ctx.reference_index(cfg, &sources)?);
        }
        Ok(ctx)
    }

    /// Builds the reuse index from already-read reference sources.
    pub fn reference_index(&self, cfg: &RuleConfig, sources: &[Source]) -> Result<ReuseIndex, EngineError> {
        let mut vocabs = Vec::new();
        for src in sources {
            let (vocab, _) = parse_source(src, cfg)?;
            let mut prefixes = self.prefixes.clone();
            prefixes.extend(vocab.prefixes());
            vocabs.push(vocab.with_prefixes(prefixes));
        }
        Ok(build_index(&vocabs))
    }
}

fn parse_source(src: &Source, cfg: &RuleConfig) -> Result<(Vocabulary, Vec<ParseDiagnostic>), EngineError> {
    match src.format {
        Format::Obo => Ok(parse_obo(&src.text, &src.name)),
        Format::Tsv => Ok(parse_term_table(&src.text, &src.name, &cfg.columns)?),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub file: String,
    pub format: Format,
    pub term_count: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub error: usize,
    pub warning: usize,
    pub info: usize,
}

impl Counts {
    pub fn of(findings: &[Finding]) -> Self {
        let mut c = Counts::default();
        for f in findings {
            match f.severity {
                Severity::Error => c.error += 1,
                Severity::Warning => c.warning += 1,
                Severity::Info => c.info += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.error + self.warning + self.info
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub inputs: Vec<InputSummary>,
    pub counts: Counts,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(mut inputs: Vec<InputSummary>, mut findings: Vec<Finding>) -> Self {
        inputs.sort_by(|a, b| a.file.cmp(&b.file));
        findings.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Report { tool_version: TOOL_VERSION.to_string(), inputs, counts: Counts::of(&findings), findings }
    }
}

fn parse_finding(d: &ParseDiagnostic) -> Finding {
    let mut f = Finding::new(Rule::Parse, d.message.clone());
    f.location = Some(d.location.clone());
    f.subject_label = d.location.file.clone();
    if d.severity == DiagnosticSeverity::Warning {
        f.severity = Severity::Warning;
    }
    f
}

/// Parses, checks and reports already-read sources.
pub fn lint_sources(cfg: &RuleConfig, ctx: &Context, sources: &[Source]) -> Result<Report, EngineError> {
    let mut inputs = Vec::new();
    let mut findings = Vec::new();
    let mut parsed = Vec::new();
    let mut prefixes = ctx.prefixes.clone();
    // Name order fixes which file's idspace declaration wins.
    let mut ordered: Vec<&Source> = sources.iter().collect();
    ordered.sort_by(|a, b| a.name.cmp(&b.name));
    for src in ordered {
        let (vocab, diags) = parse_source(src, cfg)?;
        inputs.push(InputSummary { file: src.name.clone(), format: src.format, term_count: vocab.len() });
        findings.extend(diags.iter().map(parse_finding));
        prefixes.extend(vocab.prefixes());
        parsed.push(vocab);
    }
    // Source order is irrelevant: terms are ordered by file and line.
    let groups: Vec<Vec<Term>> = if cfg.isolate_files {
        parsed.into_iter().map(Vocabulary::into_terms).collect()
    } else {
        vec![parsed.into_iter().flat_map(Vocabulary::into_terms).collect()]
    };
    for mut terms in groups {
        terms.sort_by(|a, b| a.location.cmp(&b.location));
        let vocab = Vocabulary::new(terms, prefixes.clone());
        findings.extend(check_vocabulary(cfg, ctx, &vocab));
    }
    Ok(Report::new(inputs, apply_policy(cfg, &prefixes, findings)))
}

/// Reads the inputs and lints them.
pub fn run_lint(cfg: &RuleConfig, inputs: &[InputSpec]) -> Result<Report, EngineError> {
    let ctx = Context::from_config(cfg)?;
    let sources = inputs.iter().map(Source::read).collect::<Result<Vec<_>, _>>()?;
    lint_sources(cfg, &ctx, &sources)
}

fn term_findings(cfg: &RuleConfig, ctx: &Context, vocab: &Vocabulary, term: &Term) -> Vec<Finding> {
    let lex = &ctx.lexicons;
    let on = |r: Rule| cfg.is_enabled(r);
    let mut out = Vec::new();
    if on(Rule::Abbrev) || on(Rule::ExpansionStyle) {
        out.extend(check_abbreviation(term, lex));
    }
    if on(Rule::Negative) {
        out.extend(check_negative_phrasing(term, lex));
    }
    if on(Rule::Conjunction) {
        out.extend(check_conjunction(term, lex));
    }
    if on(Rule::Plural) {
        out.extend(check_plural(term, lex));
    }
    if on(Rule::Colloquial) {
        out.extend(check_colloquial(term, lex));
    }
    if on(Rule::Timeline) {
        out.extend(check_timeline(term, lex));
    }
    if on(Rule::ConceptBomb) {
        out.extend(check_concept_bomb(term, &cfg.complexity, lex));
    }
    if on(Rule::Boolean) || on(Rule::NegativeTag) {
        let values: Vec<String> =
            cfg.tag_keys.iter().filter_map(|k| term.annotations.get(k)).flatten().cloned().collect();
        for mut f in check_tag_style(&values, lex) {
            f.subject_iris = term.iri.iter().cloned().collect();
            f.location = term.location.clone();
            out.push(f);
        }
    }
    if on(Rule::MissingDef) || on(Rule::MissingSource) {
        out.extend(check_definition_present(term));
    }
    if on(Rule::Form) || on(Rule::GenusMismatch) {
        out.extend(check_genus_differentia(term, vocab));
    }
    if cfg.any_enabled(&[Rule::MissingIri, Rule::BadIri, Rule::NonPurl]) {
        out.extend(check_iri(term, vocab.prefixes()));
    }
    if on(Rule::Reuse) && !term.obsolete {
        out.extend(reuse_finding(cfg, ctx, vocab, term));
    }
    if term.obsolete {
        for f in out.iter_mut().filter(|f| f.rule.is_lexical()) {
            f.severity = Severity::Info;
        }
    }
    out
}

fn reuse_finding(cfg: &RuleConfig, ctx: &Context, vocab: &Vocabulary, term: &Term) -> Option<Finding> {
    let index = ctx.references.as_ref()?;
    let top = suggest_terms(index, &term.label, 1, &cfg.score_weights).ok()?.into_iter().next()?;
    if !matches!(top.match_kind, MatchKind::ExactLabel | MatchKind::ExactSynonym | MatchKind::OtherSynonym) {
        return None;
    }
    if term.iri.as_ref().is_some_and(|iri| vocab.iri_key(iri) == vocab.iri_key(&top.iri)) {
        return None;
    }
    Some(
        Finding::on_term(
            Rule::Reuse,
            term,
            format!(
                "existing term `{}` ({}) already covers this label ({}); reuse it instead of minting a new term",
                top.label,
                top.iri,
                top.match_kind.as_str().replace('_', " ")
            ),
        )
        .suggest(top.iri.to_string()),
    )
}

/// Every enabled check over one analysis vocabulary.
pub fn check_vocabulary(cfg: &RuleConfig, ctx: &Context, vocab: &Vocabulary) -> Vec<Finding> {
    let mut out: Vec<Finding> = vocab.terms().iter().flat_map(|t| term_findings(cfg, ctx, vocab, t)).collect();
    let on = |r: Rule| cfg.is_enabled(r);
    if on(Rule::WordBomb) {
        out.extend(detect_word_bombs(vocab, &cfg.complexity));
    }
    if on(Rule::Narrow) {
        out.extend(check_redundant_narrowing(vocab));
    }
    if on(Rule::DuplicateDef) {
        out.extend(check_definition_uniqueness(vocab));
    }
    if on(Rule::SelfRef) || on(Rule::Circular) {
        out.extend(detect_circular_definitions(vocab));
    }
    if on(Rule::DupIri) {
        out.extend(check_iri_uniqueness(vocab));
    }
    if on(Rule::SemanticNoise) {
        out.extend(check_label_collisions(vocab));
    }
    if on(Rule::SynonymClash) {
        out.extend(check_synonym_collisions(vocab));
    }
    if cfg.any_enabled(&[
        Rule::DeprecatedLabel,
        Rule::NoReplacement,
        Rule::Dangling,
        Rule::Chain,
        Rule::LiveReplaced,
        Rule::ObsoleteParent,
        Rule::ReplacementCycle,
    ]) {
        out.extend(check_deprecation(vocab));
    }
    out.retain(|f| cfg.is_enabled(f.rule));
    out
}

/// Suppressions first, then severity overrides.
pub fn apply_policy(cfg: &RuleConfig, prefixes: &PrefixMap, findings: Vec<Finding>) -> Vec<Finding> {
    findings
        .into_iter()
        .filter(|f| {
            let iris: Vec<String> = f.subject_iris.iter().flat_map(|i| [i.to_string(), prefixes.key(i)]).collect();
            !cfg.suppressions.iter().any(|s| RuleConfig::suppresses(s, f.rule, &f.subject_label, &iris))
        })
        .map(|mut f| {
            if let Some(sev) = cfg.severity_overrides.get(&f.rule) {
                f.severity = *sev;
            }
            f
        })
        .collect()
}

/// 0 when nothing reaches the fail threshold, 1 otherwise.
pub fn exit_code(report: &Report, cfg: &RuleConfig) -> i32 {
    i32::from(report.findings.iter().any(|f| f.severity >= cfg.fail_threshold))
}

/// Ranked reuse suggestions for each query against the configured references.
pub fn suggest_mode(cfg: &RuleConfig, queries: &[String], k: usize) -> Result<Vec<QueryResult>, EngineError> {
    if cfg.reference_paths.is_empty() {
        return Err(EngineError::NoReferences);
    }
    let ctx = Context::from_config(cfg)?;
    let index = ctx.references.as_ref().ok_or(EngineError::NoReferences)?;
    suggest_with(index, cfg, queries, k)
}

pub fn suggest_with(
    index: &ReuseIndex,
    cfg: &RuleConfig,
    queries: &[String],
    k: usize,
) -> Result<Vec<QueryResult>, EngineError> {
    queries
        .iter()
        .map(|q| {
            suggest_terms(index, q, k, &cfg.score_weights)
                .map(|suggestions| QueryResult { query: q.clone(), suggestions })
                .map_err(|source| EngineError::Query { query: q.clone(), source })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct HealthOutput {
    pub reports: Vec<HealthReport>,
    pub errors: Vec<String>,
    pub notes: Vec<String>,
}

/// Scores every record in the configured metadata snapshot.
pub fn health_mode(cfg: &RuleConfig) -> Result<HealthOutput, EngineError> {
    let path = cfg.metadata_path.as_ref().ok_or(EngineError::NoMetadata)?;
    Ok(health_from_text(cfg, &read(path)?))
}

pub fn health_from_text(cfg: &RuleConfig, text: &str) -> HealthOutput {
    let load = load_metadata(text);
    let reports = load
        .records
        .iter()
        .map(|m| assess_health(m, &cfg.health_weights).expect("weights validated with the config"))
        .collect();
    HealthOutput { reports, errors: load.errors.iter().map(MetadataError::to_string).collect(), notes: load.notes }
}
