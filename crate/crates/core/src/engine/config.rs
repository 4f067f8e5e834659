//! Run configuration, loaded from a single JSON document.
//!
//! Relative paths inside a config file are resolved against the directory
//! that holds it. Command-line flags are applied on top by the caller.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::EngineError;
use crate::catalog::{pattern_matches, Rule, Severity};
use crate::health::HealthWeights;
use crate::ingest::{ColumnMap, Format};
use crate::lexicon::{ComplexityConfig, LexiconKind};
use crate::model::normalize_label;
use crate::reuse::ScoreWeights;

/// Removes findings of a rule (pattern) on one subject, named by IRI or by
/// label (compared after normalization).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suppression {
    pub rule: String,
    pub subject: String,
}

impl Suppression {
    /// Parses the `RULE:SUBJECT` command-line form. The split is at the first
    /// `:` because rule ids never contain one while CURIE subjects do.
    pub fn parse_flag(text: &str) -> Result<Self, EngineError> {
        match text.split_once(':') {
            Some((rule, subject)) if !rule.trim().is_empty() && !subject.trim().is_empty() => {
                Ok(Suppression { rule: rule.trim().to_string(), subject: subject.trim().to_string() })
            }
            _ => Err(EngineError::Config(format!("suppression `{text}` must look like RULE:SUBJECT"))),
        }
    }
}

/// An input file plus its format, guessed from the extension when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub path: PathBuf,
    #[serde(default)]
    pub format: Option<Format>,
}

impl InputSpec {
    pub fn new(path: impl Into<PathBuf>, format: Option<Format>) -> Self {
        InputSpec { path: path.into(), format }
    }

    pub fn resolved_format(&self) -> Result<Format, EngineError> {
        self.format
            .or_else(|| Format::from_path(&self.path))
            .ok_or_else(|| EngineError::UnknownFormat(self.path.display().to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleConfig {
    /// Rule-id patterns (`*` wildcard) to run.
    pub enabled_rules: Vec<String>,
    pub severity_overrides: BTreeMap<Rule, Severity>,
    pub suppressions: Vec<Suppression>,
    pub fail_threshold: Severity,
    /// Lexicon override files; entries extend the built-ins unless
    /// `replace_lexicons` is set.
    pub lexicon_paths: BTreeMap<LexiconKind, PathBuf>,
    pub replace_lexicons: bool,
    pub prefix_map_path: Option<PathBuf>,
    pub reference_paths: Vec<InputSpec>,
    pub metadata_path: Option<PathBuf>,
    pub complexity: ComplexityConfig,
    pub health_weights: HealthWeights,
    pub score_weights: ScoreWeights,
    /// Check each input file on its own instead of one merged vocabulary.
    pub isolate_files: bool,
    /// Annotation keys whose values are checked as tags.
    pub tag_keys: Vec<String>,
    pub columns: ColumnMap,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            enabled_rules: vec!["*".into()],
            severity_overrides: BTreeMap::new(),
            suppressions: Vec::new(),
            fail_threshold: Severity::Warning,
            lexicon_paths: BTreeMap::new(),
            replace_lexicons: false,
            prefix_map_path: None,
            reference_paths: Vec::new(),
            metadata_path: None,
            complexity: ComplexityConfig::default(),
            health_weights: HealthWeights::default(),
            score_weights: ScoreWeights::default(),
            isolate_files: false,
            tag_keys: vec!["tag".into()],
            columns: ColumnMap::default(),
        }
    }
}

impl RuleConfig {
    /// Parses and validates a config document; relative paths are joined to `base_dir`.
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self, EngineError> {
        let mut cfg: RuleConfig = serde_json::from_str(text).map_err(|e| EngineError::Config(e.to_string()))?;
        let join = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base_dir.join(&*p);
            }
        };
        cfg.lexicon_paths.values_mut().for_each(join);
        cfg.prefix_map_path.iter_mut().for_each(join);
        cfg.metadata_path.iter_mut().for_each(join);
        cfg.reference_paths.iter_mut().for_each(|r| join(&mut r.path));
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, EngineError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| EngineError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        for pattern in self.enabled_rules.iter().chain(self.suppressions.iter().map(|s| &s.rule)) {
            if !Rule::ALL.iter().any(|r| pattern_matches(pattern, r.id())) {
                return Err(EngineError::Config(format!("pattern `{pattern}` matches no rule")));
            }
        }
        self.complexity.validate().map_err(EngineError::Config)?;
        self.health_weights.validate().map_err(|e| EngineError::Config(e.to_string()))?;
        self.score_weights.validate().map_err(|e| EngineError::Config(e.to_string()))?;
        Ok(())
    }

    pub fn is_enabled(&self, rule: Rule) -> bool {
        rule == Rule::Parse || self.enabled_rules.iter().any(|p| pattern_matches(p, rule.id()))
    }

    pub fn any_enabled(&self, rules: &[Rule]) -> bool {
        rules.iter().any(|r| self.is_enabled(*r))
    }

    /// True when `suppression` covers a finding of `rule` on a subject with
    /// the given label and identifier keys.
    pub(crate) fn suppresses(s: &Suppression, rule: Rule, label: &str, iris: &[String]) -> bool {
        pattern_matches(&s.rule, rule.id())
            && (iris.contains(&s.subject) || normalize_label(&s.subject) == normalize_label(label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_from_empty_document() {
        let cfg = RuleConfig::from_json("{}", Path::new("/x")).unwrap();
        assert_eq!(cfg, RuleConfig::default());
        assert!(cfg.is_enabled(Rule::Abbrev));
    }

    #[test]
    fn full_document() {
        let text = r#"{
            "enabled_rules": ["R05-*", "C-*"],
            "severity_overrides": {"R05-ABBREV": "error"},
            "suppressions": [{"rule": "R05-ABBREV", "subject": "LFT"}],
            "fail_threshold": "error",
            "lexicon_paths": {"colloquial_map": "lex/colloquial.txt"},
            "prefix_map_path": "/abs/prefixes.tsv",
            "reference_paths": [{"path": "refs/hp.obo", "format": "obo"}],
            "complexity": {"concept_bomb_token_threshold": 9},
            "health_weights": {"activity": 0.4, "responsiveness": 0.15, "documentation": 0.15, "reuse": 0.15, "identifiers": 0.15},
            "isolate_files": true,
            "tag_keys": ["tag", "flag"],
            "columns": {"label_col": "Term Name"}
        }"#;
        let cfg = RuleConfig::from_json(text, Path::new("/cfg")).unwrap();
        assert_eq!(cfg.severity_overrides[&Rule::Abbrev], Severity::Error);
        assert_eq!(cfg.lexicon_paths[&LexiconKind::ColloquialMap], PathBuf::from("/cfg/lex/colloquial.txt"));
        assert_eq!(cfg.prefix_map_path, Some(PathBuf::from("/abs/prefixes.tsv")));
        assert_eq!(cfg.reference_paths[0].path, PathBuf::from("/cfg/refs/hp.obo"));
        assert_eq!(cfg.complexity.word_bomb_min_group, 5);
        assert_eq!(cfg.columns.label_col, "Term Name");
        assert_eq!(cfg.columns.iri_col.as_deref(), Some("iri"));
        assert!(cfg.is_enabled(Rule::WordBomb) && cfg.is_enabled(Rule::Parse) && !cfg.is_enabled(Rule::Negative));
    }

    #[test]
    fn invalid_documents() {
        let bad = [
            r#"{"severity_overrides": {"R99-NOPE": "error"}}"#,
            r#"{"fail_threshold": "fatal"}"#,
            r#"{"enabled_rules": ["R99-*"]}"#,
            r#"{"unknown_key": 1}"#,
            r#"{"complexity": {"word_bomb_min_group": 1}}"#,
            r#"{"health_weights": {"activity": 0.9}}"#,
            r#"{"lexicon_paths": {"slang": "x"}}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(RuleConfig::from_json(text, Path::new(".")), Err(EngineError::Config(_))), "{text}");
        }
    }

    #[test]
    fn suppression_flags() {
        let s = Suppression::parse_flag("R06-DUP-IRI:HP:0002789").unwrap();
        assert_eq!((s.rule.as_str(), s.subject.as_str()), ("R06-DUP-IRI", "HP:0002789"));
        assert!(Suppression::parse_flag("R05-ABBREV").is_err());
        assert!(RuleConfig::suppresses(&s, Rule::DupIri, "x", &["HP:0002789".into()]));
        let by_label = Suppression { rule: "R05-*".into(), subject: "lft".into() };
        assert!(RuleConfig::suppresses(&by_label, Rule::Abbrev, "LFT", &[]));
        assert!(!RuleConfig::suppresses(&by_label, Rule::Negative, "LFT", &[]));
    }
}
