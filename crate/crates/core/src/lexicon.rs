//! Word lists behind the label checks, with built-in defaults and a plain
//! text override format.
//!
//! Override files are UTF-8, one entry per line, `#` starts a comment line.
//! Colloquial map lines read `colloquial -> preferred`; every other lexicon
//! takes bare phrases. All entries are stored normalized.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::normalize_label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexiconKind {
    NegativeDeterminers,
    NegativePrefixAllowlist,
    AcceptedAbbreviationWords,
    ProperNounAllowlist,
    PluralByNature,
    ColloquialMap,
    TimelinePhrases,
}

impl LexiconKind {
    pub const ALL: [LexiconKind; 7] = [
        LexiconKind::NegativeDeterminers,
        LexiconKind::NegativePrefixAllowlist,
        LexiconKind::AcceptedAbbreviationWords,
        LexiconKind::ProperNounAllowlist,
        LexiconKind::PluralByNature,
        LexiconKind::ColloquialMap,
        LexiconKind::TimelinePhrases,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LexiconKind::NegativeDeterminers => "negative_determiners",
            LexiconKind::NegativePrefixAllowlist => "negative_prefix_allowlist",
            LexiconKind::AcceptedAbbreviationWords => "accepted_abbreviation_words",
            LexiconKind::ProperNounAllowlist => "proper_noun_allowlist",
            LexiconKind::PluralByNature => "plural_by_nature",
            LexiconKind::ColloquialMap => "colloquial_map",
            LexiconKind::TimelinePhrases => "timeline_phrases",
        }
    }
}

impl fmt::Display for LexiconKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LexiconKind {
    type Err = LexiconError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LexiconKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| LexiconError::UnknownLexicon(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("unknown lexicon `{0}`")]
    UnknownLexicon(String),
    #[error("line {line}: expected `colloquial -> preferred`")]
    MissingArrow { line: usize },
    #[error("line {line}: entry is empty after normalization")]
    EmptyEntry { line: usize },
    #[error("colloquial `{phrase}` maps to both `{first}` and `{second}`")]
    Conflict { phrase: String, first: String, second: String },
    #[error("preferred phrase `{preferred}` (for `{phrase}`) is itself listed as colloquial")]
    NotClosed { phrase: String, preferred: String },
}

/// All lexicons used by the label checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicons {
    pub negative_determiners: BTreeSet<String>,
    pub negative_prefix_allowlist: BTreeSet<String>,
    pub accepted_abbreviation_words: BTreeSet<String>,
    pub proper_noun_allowlist: BTreeSet<String>,
    pub plural_by_nature: BTreeSet<String>,
    pub colloquial_map: BTreeMap<String, String>,
    pub timeline_phrases: BTreeSet<String>,
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| normalize_label(s)).collect()
}

impl Default for Lexicons {
    fn default() -> Self {
        Lexicons {
            negative_determiners: set(&["no", "not", "neither", "none", "except", "without"]),
            negative_prefix_allowlist: set(&[
                "inorganic",
                "nonlinear transformation",
                "non-parametric test",
                "nonparametric test",
                "nonlinear",
            ]),
            accepted_abbreviation_words: set(&["laser", "radar", "sonar", "scuba", "sars"]),
            proper_noun_allowlist: set(&["Fisheries and Oceans Canada"]),
            plural_by_nature: set(&[
                "goggles",
                "scissors",
                "trousers",
                "pants",
                "tongs",
                "pliers",
                "glasses",
                "binoculars",
                "tweezers",
                "feces",
                "measles",
                "mumps",
                "species",
                "series",
                "diabetes",
                "herpes",
            ]),
            colloquial_map: [
                ("belly", "abdomen"),
                ("tummy", "abdomen"),
                ("wet cough", "productive cough"),
                ("dry cough", "nonproductive cough"),
                ("heart attack", "myocardial infarction"),
                ("flu", "influenza"),
                ("shinbone", "tibia"),
                ("collarbone", "clavicle"),
            ]
            .into_iter()
            .map(|(k, v)| (normalize_label(k), normalize_label(v)))
            .collect(),
            timeline_phrases: set(&["most recent", "previous", "last", "current", "latest", "recent", "to date"]),
        }
    }
}

enum Entries {
    Phrases(BTreeSet<String>),
    Map(BTreeMap<String, String>),
}

fn parse_entries(kind: LexiconKind, text: &str) -> Result<Entries, LexiconError> {
    let mut phrases = BTreeSet::new();
    let mut map = BTreeMap::new();
    for (idx, raw) in text.trim_start_matches('\u{feff}').lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if kind == LexiconKind::ColloquialMap {
            let (from, to) = trimmed.split_once("->").ok_or(LexiconError::MissingArrow { line })?;
            let (from, to) = (normalize_label(from), normalize_label(to));
            if from.is_empty() || to.is_empty() {
                return Err(LexiconError::EmptyEntry { line });
            }
            insert_mapping(&mut map, from, to)?;
        } else {
            let phrase = normalize_label(trimmed);
            if phrase.is_empty() {
                return Err(LexiconError::EmptyEntry { line });
            }
            phrases.insert(phrase);
        }
    }
    Ok(if kind == LexiconKind::ColloquialMap { Entries::Map(map) } else { Entries::Phrases(phrases) })
}

fn insert_mapping(map: &mut BTreeMap<String, String>, from: String, to: String) -> Result<(), LexiconError> {
    match map.get(&from) {
        Some(existing) if *existing != to => {
            Err(LexiconError::Conflict { phrase: from, first: existing.clone(), second: to })
        }
        _ => {
            map.insert(from, to);
            Ok(())
        }
    }
}

impl Lexicons {
    fn phrases_mut(&mut self, kind: LexiconKind) -> Option<&mut BTreeSet<String>> {
        match kind {
            LexiconKind::NegativeDeterminers => Some(&mut self.negative_determiners),
            LexiconKind::NegativePrefixAllowlist => Some(&mut self.negative_prefix_allowlist),
            LexiconKind::AcceptedAbbreviationWords => Some(&mut self.accepted_abbreviation_words),
            LexiconKind::ProperNounAllowlist => Some(&mut self.proper_noun_allowlist),
            LexiconKind::PluralByNature => Some(&mut self.plural_by_nature),
            LexiconKind::TimelinePhrases => Some(&mut self.timeline_phrases),
            LexiconKind::ColloquialMap => None,
        }
    }

    /// Adds the entries in `text` to the named lexicon, or replaces its
    /// contents when `replace` is set. The result is re-validated.
    pub fn load(&mut self, kind: LexiconKind, text: &str, replace: bool) -> Result<(), LexiconError> {
        match parse_entries(kind, text)? {
            Entries::Map(map) => {
                if replace {
                    self.colloquial_map.clear();
                }
                for (from, to) in map {
                    insert_mapping(&mut self.colloquial_map, from, to)?;
                }
            }
            Entries::Phrases(phrases) => {
                let target = self.phrases_mut(kind).expect("phrase lexicon");
                if replace {
                    target.clear();
                }
                target.extend(phrases);
            }
        }
        self.validate()
    }

    /// A preferred phrase must never itself be a colloquial key, so following
    /// a suggestion cannot raise a new colloquialism finding.
    pub fn validate(&self) -> Result<(), LexiconError> {
        for (phrase, preferred) in &self.colloquial_map {
            if self.colloquial_map.contains_key(preferred) {
                return Err(LexiconError::NotClosed { phrase: phrase.clone(), preferred: preferred.clone() });
            }
        }
        Ok(())
    }
}

/// Thresholds for the label-complexity detectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ComplexityConfig {
    pub concept_bomb_token_threshold: usize,
    pub word_bomb_min_group: usize,
}

impl Default for ComplexityConfig {
    fn default() -> Self {
        ComplexityConfig { concept_bomb_token_threshold: 7, word_bomb_min_group: 5 }
    }
}

impl ComplexityConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.concept_bomb_token_threshold < 2 {
            return Err(format!(
                "concept_bomb_token_threshold must be at least 2, got {}",
                self.concept_bomb_token_threshold
            ));
        }
        if self.word_bomb_min_group < 2 {
            return Err(format!("word_bomb_min_group must be at least 2, got {}", self.word_bomb_min_group));
        }
        Ok(())
    }
}
