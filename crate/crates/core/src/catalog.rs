//! The published rule catalog.
//!
//! Rule ids are part of the public interface: they appear in reports,
//! configuration files, suppressions and severity overrides, and must not
//! change between patch releases.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Finding severity, ordered `Info < Warning < Error`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub const ALL: [Severity; 3] = [Severity::Error, Severity::Warning, Severity::Info];

    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Severity {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "info" => Ok(Severity::Info),
            "warning" | "warn" => Ok(Severity::Warning),
            "error" => Ok(Severity::Error),
            _ => Err(UnknownName(s.to_string())),
        }
    }
}

impl Serialize for Severity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Severity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown name `{0}`")]
pub struct UnknownName(pub String);

macro_rules! rules {
    ($( $variant:ident => $id:literal, $sev:ident, $guideline:literal, $summary:literal; )*) => {
        /// Every rule the linter can report.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Rule {
            $( $variant, )*
        }

        impl Rule {
            pub const ALL: &'static [Rule] = &[ $( Rule::$variant, )* ];

            /// Stable catalog id, e.g. `R05-ABBREV`.
            pub fn id(self) -> &'static str {
                match self { $( Rule::$variant => $id, )* }
            }

            /// Severity a finding of this rule carries unless the check
            /// states otherwise for a specific case.
            pub fn default_severity(self) -> Severity {
                match self { $( Rule::$variant => Severity::$sev, )* }
            }

            /// Which guideline (or contextual-data challenge) the rule enforces.
            pub fn guideline(self) -> &'static str {
                match self { $( Rule::$variant => $guideline, )* }
            }

            pub fn summary(self) -> &'static str {
                match self { $( Rule::$variant => $summary, )* }
            }
        }
    };
}

rules! {
    Reuse => "R01-REUSE", Info, "Rule 1: reuse existing terms",
        "label matches an existing term in a reference vocabulary";
    Negative => "R02-NEGATIVE", Warning, "Rule 2: simple, specific, consistent",
        "label states what something is not";
    Conjunction => "R02-CONJUNCTION", Warning, "Rule 2: simple, specific, consistent",
        "label joins concepts with `and` / `or`";
    Plural => "R02-PLURAL", Info, "Rule 2: simple, specific, consistent",
        "label head noun looks plural";
    Colloquial => "R03-COLLOQUIAL", Warning, "Rule 3: technical, not colloquial",
        "label or synonym is a known colloquialism";
    Narrow => "R04-NARROW", Info, "Rule 4: as universal as possible",
        "label narrows an existing label without a declared parent link";
    Abbrev => "R05-ABBREV", Warning, "Rule 5: avoid abbreviations",
        "label is or contains an abbreviation";
    ExpansionStyle => "R05-EXPANSION-STYLE", Info, "Rule 5: avoid abbreviations",
        "abbreviation appended to the label instead of recorded as a synonym";
    MissingIri => "R06-MISSING-IRI", Warning, "Rule 6: use IRIs",
        "term has no identifier";
    BadIri => "R06-BAD-IRI", Error, "Rule 6: use IRIs",
        "identifier is neither absolute nor an expandable CURIE";
    NonPurl => "R06-NONPURL", Info, "Rule 6: use IRIs",
        "OBO identifier not in persistent URL form";
    DupIri => "R06-DUP-IRI", Error, "Rule 6: use IRIs",
        "identifier borne by more than one term";
    MissingDef => "R07-MISSING-DEF", Warning, "Rule 7: provide definitions",
        "term has no definition";
    MissingSource => "R07-MISSING-SOURCE", Info, "Rule 7: provide definitions",
        "definition has no source";
    Form => "R07-FORM", Info, "Rule 7: provide definitions",
        "definition is not in genus-differentia form";
    GenusMismatch => "R07-GENUS-MISMATCH", Info, "Rule 7: provide definitions",
        "definition genus does not name a declared parent";
    DuplicateDef => "R07-DUPLICATE-DEF", Warning, "Rule 7: provide definitions",
        "definition shared by several terms";
    SelfRef => "R07-SELF-REF", Warning, "Rule 7: provide definitions",
        "definition uses the term's own label";
    Circular => "R07-CIRCULAR", Warning, "Rule 7: provide definitions",
        "definitions reference each other in a cycle";
    DeprecatedLabel => "R08-LABEL", Warning, "Rule 8: update and deprecate",
        "obsolete term label lacks the `obsolete` prefix";
    NoReplacement => "R08-NO-REPLACEMENT", Info, "Rule 8: update and deprecate",
        "obsolete term names no replacement";
    Dangling => "R08-DANGLING", Error, "Rule 8: update and deprecate",
        "replacement target is not in the vocabulary";
    Chain => "R08-CHAIN", Info, "Rule 8: update and deprecate",
        "replacement target is itself obsolete";
    LiveReplaced => "R08-LIVE-REPLACED", Warning, "Rule 8: update and deprecate",
        "live term carries a replacement";
    ObsoleteParent => "R08-OBSOLETE-PARENT", Warning, "Rule 8: update and deprecate",
        "live term has an obsolete parent";
    ReplacementCycle => "R08-CYCLE", Error, "Rule 8: update and deprecate",
        "replacement links form a cycle";
    Boolean => "R09-BOOLEAN", Warning, "Rule 9: use tags",
        "tag value is a bare boolean";
    NegativeTag => "R09-NEGATIVE-TAG", Info, "Rule 9: use tags",
        "tag records an absence";
    SemanticNoise => "C-SEMANTIC-NOISE", Warning, "Challenge: semantic noise",
        "one label used for distinct identifiers";
    SynonymClash => "C-SYNONYM-CLASH", Info, "Challenge: semantic noise",
        "synonym collides with another term's label or synonym";
    WordBomb => "C-WORD-BOMB", Info, "Challenge: word bombs",
        "combinatorial family of labels around one head noun";
    ConceptBomb => "C-CONCEPT-BOMB", Warning, "Challenge: concept bombs",
        "label packs several concepts that belong in separate fields";
    Timeline => "C-TIMELINE", Warning, "Challenge: timeline terms",
        "label anchored to a relative point in time";
    Parse => "PARSE", Error, "Input",
        "input could not be parsed cleanly";
}

impl Rule {
    /// True for checks that look at a single term's label or values; these
    /// are downgraded to info on obsolete terms.
    pub fn is_lexical(self) -> bool {
        matches!(
            self,
            Rule::Negative
                | Rule::Conjunction
                | Rule::Plural
                | Rule::Colloquial
                | Rule::Abbrev
                | Rule::ExpansionStyle
                | Rule::Boolean
                | Rule::NegativeTag
                | Rule::ConceptBomb
                | Rule::Timeline
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL.iter().copied().find(|r| r.id() == s).ok_or_else(|| UnknownName(s.to_string()))
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Rule {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Matches a rule id against a pattern where `*` stands for any run of
/// characters, e.g. `R07-*` or `*-BOMB`.
pub fn pattern_matches(pattern: &str, id: &str) -> bool {
    fn go(p: &[u8], s: &[u8]) -> bool {
        match p.split_first() {
            None => s.is_empty(),
            Some((b'*', rest)) => (0..=s.len()).any(|i| go(rest, &s[i..])),
            Some((c, rest)) => s.first() == Some(c) && go(rest, &s[1..]),
        }
    }
    go(pattern.as_bytes(), id.as_bytes())
}
