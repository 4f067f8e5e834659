//! In-memory vocabulary model shared by every analysis.
//!
//! A [`Vocabulary`] is built once from parsed [`Term`]s and is read-only
//! afterwards; all checks borrow it immutably.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Rule, Severity};

/// Lowercases basic Latin letters, turns ASCII punctuation (including
/// parentheses and hyphens) into spaces and collapses whitespace runs.
///
/// Characters outside the ASCII range pass through untouched, apart from a
/// handful of typographic quotes and dashes that are treated as punctuation.
pub fn normalize_label(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.chars() {
        let mapped = if ch.is_ascii_uppercase() {
            Some(ch.to_ascii_lowercase())
        } else if ch.is_ascii_punctuation() || ch.is_whitespace() || is_typographic_punct(ch) {
            None
        } else {
            Some(ch)
        };
        match mapped {
            Some(c) => {
                if pending_space && !out.is_empty() {
                    out.push(' ');
                }
                pending_space = false;
                out.push(c);
            }
            None => pending_space = true,
        }
    }
    out
}

fn is_typographic_punct(ch: char) -> bool {
    matches!(
        ch,
        '\u{2018}' | '\u{2019}' | '\u{201C}' | '\u{201D}' | '\u{2010}'
            ..='\u{2015}' | '\u{2026}' | '\u{00B7}' | '\u{2022}'
    )
}

/// Tokens of an already normalized phrase.
pub fn tokens(normalized: &str) -> Vec<&str> {
    normalized.split(' ').filter(|t| !t.is_empty()).collect()
}

/// Start positions at which `needle` occurs as a contiguous run inside
/// `haystack`. An empty needle never matches.
pub fn subsequence_positions(haystack: &[&str], needle: &[&str]) -> Vec<usize> {
    if needle.is_empty() || needle.len() > haystack.len() {
        return Vec::new();
    }
    haystack.windows(needle.len()).enumerate().filter(|(_, w)| *w == needle).map(|(i, _)| i).collect()
}

pub fn contains_subsequence(haystack: &[&str], needle: &[&str]) -> bool {
    !subsequence_positions(haystack, needle).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IriError {
    #[error("identifier is empty")]
    Empty,
    #[error("identifier `{0}` contains whitespace")]
    Whitespace(String),
}

/// A term identifier: either an absolute IRI (`scheme://...`) or a CURIE
/// (`PREFIX:LOCAL`). Whether a CURIE actually expands is decided against a
/// [`PrefixMap`] at check time.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, IriError> {
        let value = value.into();
        if value.is_empty() {
            return Err(IriError::Empty);
        }
        if value.chars().any(char::is_whitespace) {
            return Err(IriError::Whitespace(value));
        }
        Ok(Iri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// `scheme://rest` with a syntactically valid scheme.
    pub fn is_absolute(&self) -> bool {
        match self.0.split_once("://") {
            Some((scheme, rest)) => {
                let mut chars = scheme.chars();
                !rest.is_empty()
                    && chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                    && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
            }
            None => false,
        }
    }

    /// Prefix and local part when the identifier is in CURIE form. The
    /// separator is the first `:`.
    pub fn curie_parts(&self) -> Option<(&str, &str)> {
        if self.0.contains("://") {
            return None;
        }
        self.0.split_once(':')
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Iri {
    type Error = IriError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> String {
        iri.0
    }
}

pub const OBO_PURL_BASE: &str = "http://purl.obolibrary.org/obo/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrefixKind {
    /// OBO Foundry style: identifiers are expected as OBO PURLs.
    Obo,
    /// Any other namespace with its own stable identifiers.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixEntry {
    pub base: String,
    pub kind: PrefixKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefixMapError {
    #[error("line {line}: expected `PREFIX<TAB>IRI-base<TAB>obo|external`")]
    Malformed { line: usize },
    #[error("line {line}: empty prefix")]
    EmptyPrefix { line: usize },
    #[error("line {line}: base `{base}` is not an absolute IRI")]
    RelativeBase { line: usize, base: String },
    #[error("line {line}: unknown prefix kind `{kind}`")]
    UnknownKind { line: usize, kind: String },
    #[error("line {line}: prefix `{prefix}` declared twice")]
    Duplicate { line: usize, prefix: String },
}

/// CURIE prefix to IRI base. Prefix lookup is case-sensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixMap {
    entries: BTreeMap<String, PrefixEntry>,
}

/// Prefixes known out of the box, all OBO Foundry namespaces.
const BUILTIN_OBO_PREFIXES: &[&str] = &[
    "BFO",
    "CHEBI",
    "CL",
    "DOID",
    "ENVO",
    "FOODON",
    "GAZ",
    "GENEPIO",
    "GO",
    "HP",
    "IAO",
    "MONDO",
    "NCBITaxon",
    "NCIT",
    "OBI",
    "PATO",
    "RO",
    "SO",
    "UBERON",
    "UO",
];

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut map = Self::new();
        for prefix in BUILTIN_OBO_PREFIXES {
            map.insert(*prefix, format!("{OBO_PURL_BASE}{prefix}_"), PrefixKind::Obo);
        }
        map
    }

    /// Inserts or replaces a prefix.
    pub fn insert(&mut self, prefix: impl Into<String>, base: impl Into<String>, kind: PrefixKind) {
        self.entries.insert(prefix.into(), PrefixEntry { base: base.into(), kind });
    }

    pub fn get(&self, prefix: &str) -> Option<&PrefixEntry> {
        self.entries.get(prefix)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PrefixEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn obo_prefixes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter(|(_, e)| e.kind == PrefixKind::Obo).map(|(k, _)| k.as_str())
    }

    /// Entries of `other` win over existing ones.
    pub fn extend(&mut self, other: &PrefixMap) {
        for (k, v) in &other.entries {
            self.entries.insert(k.clone(), v.clone());
        }
    }

    /// Full IRI for an absolute identifier or an expandable CURIE.
    pub fn expand(&self, iri: &Iri) -> Option<String> {
        if iri.is_absolute() {
            return Some(iri.as_str().to_string());
        }
        let (prefix, local) = iri.curie_parts()?;
        if local.is_empty() {
            return None;
        }
        self.entries.get(prefix).map(|e| format!("{}{}", e.base, local))
    }

    /// Comparison key: the expansion when there is one, the raw text otherwise.
    pub fn key(&self, iri: &Iri) -> String {
        self.expand(iri).unwrap_or_else(|| iri.as_str().to_string())
    }

    /// Parses the `PREFIX<TAB>IRI-base<TAB>obo|external` file format.
    pub fn parse(text: &str) -> Result<Self, PrefixMapError> {
        let mut map = Self::new();
        for (idx, raw) in text.trim_start_matches('\u{feff}').lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim_end_matches('\r');
            if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
            let [prefix, base, kind] = cols.as_slice() else {
                return Err(PrefixMapError::Malformed { line });
            };
            if prefix.is_empty() {
                return Err(PrefixMapError::EmptyPrefix { line });
            }
            let base_ok = Iri::new(*base).map(|i| i.is_absolute()).unwrap_or(false);
            if !base_ok {
                return Err(PrefixMapError::RelativeBase { line, base: base.to_string() });
            }
            let kind = match kind.to_ascii_lowercase().as_str() {
                "obo" => PrefixKind::Obo,
                "external" => PrefixKind::External,
                other => return Err(PrefixMapError::UnknownKind { line, kind: other.to_string() }),
            };
            if map.entries.contains_key(*prefix) {
                return Err(PrefixMapError::Duplicate { line, prefix: prefix.to_string() });
            }
            map.insert(*prefix, *base, kind);
        }
        Ok(map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SynonymScope {
    Exact,
    Broad,
    Narrow,
    Related,
}

impl SynonymScope {
    pub fn obo_keyword(self) -> &'static str {
        match self {
            SynonymScope::Exact => "EXACT",
            SynonymScope::Broad => "BROAD",
            SynonymScope::Narrow => "NARROW",
            SynonymScope::Related => "RELATED",
        }
    }

    pub fn from_obo_keyword(s: &str) -> Option<Self> {
        match s {
            "EXACT" => Some(SynonymScope::Exact),
            "BROAD" => Some(SynonymScope::Broad),
            "NARROW" => Some(SynonymScope::Narrow),
            "RELATED" => Some(SynonymScope::Related),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Synonym {
    pub text: String,
    pub scope: SynonymScope,
    pub is_abbreviation: bool,
}

impl Synonym {
    pub fn exact(text: impl Into<String>) -> Self {
        Synonym { text: text.into(), scope: SynonymScope::Exact, is_abbreviation: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definition {
    pub text: String,
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SourceLocation {
    pub file: String,
    pub line: usize,
}

impl SourceLocation {
    pub fn new(file: impl Into<String>, line: usize) -> Self {
        debug_assert!(line >= 1, "line numbers are 1-based");
        SourceLocation { file: file.into(), line }
    }
}

impl fmt::Display for SourceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

/// One vocabulary entry, as read from the source file. The model does not
/// reconcile inconsistent fields (e.g. `replaced_by` on a live term); the
/// identity checks report those.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Term {
    pub iri: Option<Iri>,
    pub label: String,
    pub synonyms: Vec<Synonym>,
    pub definition: Option<Definition>,
    pub parents: Vec<Iri>,
    pub obsolete: bool,
    pub replaced_by: Option<Iri>,
    pub annotations: BTreeMap<String, Vec<String>>,
    pub location: Option<SourceLocation>,
}

impl Term {
    pub fn new(label: impl Into<String>) -> Self {
        Term { label: label.into(), ..Term::default() }
    }

    pub fn with_iri(mut self, iri: &str) -> Self {
        self.iri = Some(Iri::new(iri).expect("valid iri"));
        self
    }

    pub fn normalized_label(&self) -> String {
        normalize_label(&self.label)
    }

    /// Human-readable handle: the IRI, else the source position.
    pub fn handle(&self) -> String {
        match (&self.iri, &self.location) {
            (Some(iri), _) => iri.to_string(),
            (None, Some(loc)) => loc.to_string(),
            (None, None) => format!("`{}`", self.label),
        }
    }
}

/// Index of a term inside its [`Vocabulary`].
pub type TermIdx = usize;

/// Ordered term collection with identifier and label indexes.
///
/// `by_iri` maps the comparison key (CURIEs expanded) to the first term
/// bearing it; later duplicates stay in `terms` and are listed by
/// [`Vocabulary::duplicate_iris`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Vocabulary {
    terms: Vec<Term>,
    prefixes: PrefixMap,
    by_iri: BTreeMap<String, TermIdx>,
    by_label: BTreeMap<String, Vec<TermIdx>>,
}

impl Vocabulary {
    pub fn new(terms: Vec<Term>, prefixes: PrefixMap) -> Self {
        let mut vocab = Vocabulary { terms, prefixes, by_iri: BTreeMap::new(), by_label: BTreeMap::new() };
        vocab.reindex();
        vocab
    }

    fn reindex(&mut self) {
        self.by_iri.clear();
        self.by_label.clear();
        for (idx, term) in self.terms.iter().enumerate() {
            if let Some(iri) = &term.iri {
                self.by_iri.entry(self.prefixes.key(iri)).or_insert(idx);
            }
            self.by_label.entry(term.normalized_label()).or_default().push(idx);
        }
    }

    /// Concatenates several vocabularies; prefix maps are unioned with later
    /// entries winning.
    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a Vocabulary>) -> Self {
        let mut terms = Vec::new();
        let mut prefixes = PrefixMap::new();
        for part in parts {
            terms.extend(part.terms.iter().cloned());
            prefixes.extend(&part.prefixes);
        }
        Vocabulary::new(terms, prefixes)
    }

    /// Rebuilds the indexes under a different prefix map.
    pub fn with_prefixes(mut self, prefixes: PrefixMap) -> Self {
        self.prefixes = prefixes;
        self.reindex();
        self
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn iri_index(&self) -> &BTreeMap<String, TermIdx> {
        &self.by_iri
    }

    pub fn label_index(&self) -> &BTreeMap<String, Vec<TermIdx>> {
        &self.by_label
    }

    pub fn iri_key(&self, iri: &Iri) -> String {
        self.prefixes.key(iri)
    }

    pub fn index_of(&self, iri: &Iri) -> Option<TermIdx> {
        self.by_iri.get(&self.prefixes.key(iri)).copied()
    }

    pub fn get(&self, iri: &Iri) -> Option<&Term> {
        self.index_of(iri).map(|i| &self.terms[i])
    }

    pub fn by_label(&self, normalized: &str) -> &[TermIdx] {
        self.by_label.get(normalized).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Comparison keys borne by more than one term, with all bearers.
    pub fn duplicate_iris(&self) -> Vec<(String, Vec<TermIdx>)> {
        let mut groups: BTreeMap<String, Vec<TermIdx>> = BTreeMap::new();
        for (idx, term) in self.terms.iter().enumerate() {
            if let Some(iri) = &term.iri {
                groups.entry(self.prefixes.key(iri)).or_default().push(idx);
            }
        }
        groups.into_iter().filter(|(_, v)| v.len() > 1).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("unknown IRI `{0}`")]
    UnknownIri(Iri),
    #[error("replacement cycle: {}", .0.iter().map(Iri::as_str).collect::<Vec<_>>().join(" -> "))]
    Cycle(Vec<Iri>),
}

/// Follows `replaced_by` links from `start` to the first term without one.
pub fn resolve_replacement(vocab: &Vocabulary, start: &Iri) -> Result<Iri, ResolveError> {
    let mut current = vocab.index_of(start).ok_or_else(|| ResolveError::UnknownIri(start.clone()))?;
    let mut visited: BTreeSet<TermIdx> = BTreeSet::new();
    let mut path: Vec<Iri> = Vec::new();
    loop {
        let term = &vocab.terms()[current];
        let here = term.iri.clone().unwrap_or_else(|| start.clone());
        if !visited.insert(current) {
            path.push(here);
            return Err(ResolveError::Cycle(path));
        }
        path.push(here.clone());
        match &term.replaced_by {
            None => return Ok(here),
            Some(next) => {
                current = vocab.index_of(next).ok_or_else(|| ResolveError::UnknownIri(next.clone()))?;
            }
        }
    }
}

/// One lint result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    #[serde(rename = "rule_id")]
    pub rule: Rule,
    pub severity: Severity,
    pub subject_iris: Vec<Iri>,
    pub subject_label: String,
    pub message: String,
    pub location: Option<SourceLocation>,
    pub suggestion: Option<String>,
}

impl Finding {
    /// A finding at the rule's default severity with no subject yet.
    pub fn new(rule: Rule, message: impl Into<String>) -> Self {
        Finding {
            rule,
            severity: rule.default_severity(),
            subject_iris: Vec::new(),
            subject_label: String::new(),
            message: message.into(),
            location: None,
            suggestion: None,
        }
    }

    pub fn on_term(rule: Rule, term: &Term, message: impl Into<String>) -> Self {
        Finding {
            subject_iris: term.iri.iter().cloned().collect(),
            subject_label: term.label.clone(),
            location: term.location.clone(),
            ..Finding::new(rule, message)
        }
    }

    /// Finding over a group of terms; the location is the earliest member's.
    pub fn on_group<'a>(
        rule: Rule,
        label: impl Into<String>,
        members: impl IntoIterator<Item = &'a Term>,
        message: impl Into<String>,
    ) -> Self {
        let mut iris = Vec::new();
        let mut location: Option<SourceLocation> = None;
        for term in members {
            iris.extend(term.iri.iter().cloned());
            if let Some(loc) = &term.location {
                if location.as_ref().is_none_or(|l| loc < l) {
                    location = Some(loc.clone());
                }
            }
        }
        Finding { subject_iris: iris, subject_label: label.into(), location, ..Finding::new(rule, message) }
    }

    pub fn severity(mut self, severity: Severity) -> Self {
        self.severity = severity;
        self
    }

    pub fn suggest(mut self, suggestion: impl Into<String>) -> Self {
        self.suggestion = Some(suggestion.into());
        self
    }

    /// Total order used for reports: file, line, rule, subject, then the rest.
    pub fn sort_key(&self) -> impl Ord + '_ {
        let (file, line) = match &self.location {
            Some(l) => (l.file.as_str(), l.line),
            None => ("", 0),
        };
        (
            file,
            line,
            self.rule.id(),
            self.subject_label.as_str(),
            self.message.as_str(),
            &self.subject_iris,
            self.severity,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain_vocab(edges: &[(&str, Option<&str>)]) -> Vocabulary {
        let terms = edges
            .iter()
            .map(|(id, next)| {
                let mut t = Term::new(format!("term {id}")).with_iri(id);
                t.replaced_by = next.map(|n| Iri::new(n).unwrap());
                t.obsolete = next.is_some();
                t
            })
            .collect();
        Vocabulary::new(terms, PrefixMap::builtin())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_label("Tachypnea (Rapid Breathing)"), "tachypnea rapid breathing");
        assert_eq!(normalize_label(""), "");
        assert_eq!(normalize_label("Non-parametric  Test"), "non parametric test");
        assert_eq!(normalize_label("  SARS-CoV-2 "), "sars cov 2");
        assert_eq!(normalize_label("Ärzte\u{201C}x\u{201D}"), "Ärzte x");
    }

    #[test]
    fn iri_validation() {
        assert_eq!(Iri::new(""), Err(IriError::Empty));
        assert!(matches!(Iri::new("HP: 1"), Err(IriError::Whitespace(_))));
        let purl = Iri::new("http://purl.obolibrary.org/obo/HP_0002789").unwrap();
        assert!(purl.is_absolute());
        assert_eq!(purl.curie_parts(), None);
        let curie = Iri::new("NCIT:C13356").unwrap();
        assert!(!curie.is_absolute());
        assert_eq!(curie.curie_parts(), Some(("NCIT", "C13356")));
        assert!(!Iri::new("1http://x").unwrap().is_absolute());
    }

    #[test]
    fn curie_expansion_is_case_sensitive() {
        let map = PrefixMap::builtin();
        assert_eq!(
            map.expand(&Iri::new("HP:0002789").unwrap()).as_deref(),
            Some("http://purl.obolibrary.org/obo/HP_0002789")
        );
        assert_eq!(map.expand(&Iri::new("hp:0002789").unwrap()), None);
        assert_eq!(map.expand(&Iri::new("HP:").unwrap()), None);
    }

    #[test]
    fn prefix_file_parsing() {
        let map = PrefixMap::parse(
            "# comment\nVLX\thttps://example.org/vlx/\texternal\nHP\thttp://purl.obolibrary.org/obo/HP_\tobo\n",
        )
        .unwrap();
        assert_eq!(map.get("VLX").unwrap().kind, PrefixKind::External);
        assert_eq!(map.obo_prefixes().collect::<Vec<_>>(), vec!["HP"]);
        assert_eq!(PrefixMap::parse("A\tb\n"), Err(PrefixMapError::Malformed { line: 1 }));
        assert!(matches!(PrefixMap::parse("A\tnot-absolute\tobo"), Err(PrefixMapError::RelativeBase { .. })));
        assert!(matches!(PrefixMap::parse("A\thttp://a/\tweird"), Err(PrefixMapError::UnknownKind { .. })));
        assert!(matches!(
            PrefixMap::parse("A\thttp://a/\tobo\nA\thttp://b/\tobo"),
            Err(PrefixMapError::Duplicate { line: 2, .. })
        ));
    }

    #[test]
    fn resolve_follows_replacement() {
        let vocab = chain_vocab(&[("HP:1", Some("HP:2")), ("HP:2", None)]);
        let start = Iri::new("HP:1").unwrap();
        assert_eq!(resolve_replacement(&vocab, &start).unwrap().as_str(), "HP:2");
        let live = Iri::new("HP:2").unwrap();
        assert_eq!(resolve_replacement(&vocab, &live).unwrap(), live);
    }

    #[test]
    fn resolve_long_chain_and_expanded_links() {
        let vocab = chain_vocab(&[
            ("HP:1", Some("http://purl.obolibrary.org/obo/HP_2")),
            ("HP:2", Some("HP:3")),
            ("HP:3", None),
        ]);
        let got = resolve_replacement(&vocab, &Iri::new("HP:1").unwrap()).unwrap();
        assert_eq!(got.as_str(), "HP:3");
    }

    #[test]
    fn resolve_errors() {
        let vocab = chain_vocab(&[("HP:1", Some("HP:2")), ("HP:2", Some("HP:1")), ("HP:3", Some("HP:9"))]);
        assert!(matches!(resolve_replacement(&vocab, &Iri::new("HP:1").unwrap()), Err(ResolveError::Cycle(_))));
        assert_eq!(
            resolve_replacement(&vocab, &Iri::new("HP:3").unwrap()),
            Err(ResolveError::UnknownIri(Iri::new("HP:9").unwrap()))
        );
        assert_eq!(
            resolve_replacement(&vocab, &Iri::new("HP:7").unwrap()),
            Err(ResolveError::UnknownIri(Iri::new("HP:7").unwrap()))
        );
    }

    #[test]
    fn duplicate_iris_are_kept_and_listed() {
        let vocab = Vocabulary::new(
            vec![
                Term::new("a").with_iri("HP:0002789"),
                Term::new("b").with_iri("http://purl.obolibrary.org/obo/HP_0002789"),
                Term::new("c").with_iri("HP:1"),
            ],
            PrefixMap::builtin(),
        );
        assert_eq!(vocab.len(), 3);
        assert_eq!(vocab.iri_index().len(), 2);
        assert_eq!(vocab.index_of(&Iri::new("HP:0002789").unwrap()), Some(0));
        let dups = vocab.duplicate_iris();
        assert_eq!(dups, vec![("http://purl.obolibrary.org/obo/HP_0002789".to_string(), vec![0, 1])]);
    }

    fn arb_label() -> impl Strategy<Value = String> {
        proptest::string::string_regex("[A-Za-z0-9 ()\\-,.'_/Éé\u{201C}]{0,24}").unwrap()
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(raw in any::<String>()) {
            let once = normalize_label(&raw);
            prop_assert_eq!(normalize_label(&once), once);
        }

        #[test]
        fn normalized_has_no_edge_or_double_spaces(raw in arb_label()) {
            let n = normalize_label(&raw);
            prop_assert!(!n.starts_with(' ') && !n.ends_with(' ') && !n.contains("  "));
        }

        #[test]
        fn reindex_round_trip(labels in proptest::collection::vec(arb_label(), 0..20), ids in proptest::collection::vec(0u8..8, 0..20)) {
            let terms: Vec<Term> = labels.iter().zip(ids.iter().chain(std::iter::repeat(&0))).map(|(l, id)| {
                Term::new(l.clone()).with_iri(&format!("HP:{id}"))
            }).collect();
            let vocab = Vocabulary::new(terms.clone(), PrefixMap::builtin());
            let rebuilt = Vocabulary::new(vocab.clone().into_terms(), PrefixMap::builtin());
            prop_assert_eq!(vocab.iri_index(), rebuilt.iri_index());
            prop_assert_eq!(vocab.label_index(), rebuilt.label_index());
            for (label, idxs) in vocab.label_index() {
                for i in idxs {
                    prop_assert_eq!(&normalize_label(&terms[*i].label), label);
                }
            }
        }

        #[test]
        fn resolution_terminates(links in proptest::collection::vec(proptest::option::of(0usize..10), 1..10)) {
            let n = links.len();
            let terms: Vec<Term> = links.iter().enumerate().map(|(i, next)| {
                let mut t = Term::new(format!("t{i}")).with_iri(&format!("HP:{i}"));
                t.replaced_by = next.map(|j| Iri::new(format!("HP:{}", j % (n + 1))).unwrap());
                t
            }).collect();
            let vocab = Vocabulary::new(terms, PrefixMap::builtin());
            for i in 0..n {
                match resolve_replacement(&vocab, &Iri::new(format!("HP:{i}")).unwrap()) {
                    Ok(end) => prop_assert!(vocab.get(&end).unwrap().replaced_by.is_none()),
                    Err(ResolveError::Cycle(path)) => prop_assert!(path.len() <= n + 1),
                    Err(ResolveError::UnknownIri(iri)) => prop_assert_eq!(iri.as_str(), format!("HP:{n}")),
                }
            }
        }
    }
}
