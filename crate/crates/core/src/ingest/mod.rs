//! Readers for the two supported input formats: an OBO 1.4 flat-file subset
//! and tab-separated term tables.

mod obo;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::SourceLocation;

pub use obo::{parse_obo, write_obo};
pub use table::{parse_term_table, ColumnMap, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagnosticSeverity {
    Warning,
    Error,
}

/// A problem found while reading an input. The location is the line where
/// the offending stanza or row begins.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub severity: DiagnosticSeverity,
    pub message: String,
    pub location: SourceLocation,
}

impl ParseDiagnostic {
    pub(crate) fn error(location: SourceLocation, message: impl Into<String>) -> Self {
        ParseDiagnostic { severity: DiagnosticSeverity::Error, message: message.into(), location }
    }

    pub(crate) fn warning(location: SourceLocation, message: impl Into<String>) -> Self {
        ParseDiagnostic { severity: DiagnosticSeverity::Warning, message: message.into(), location }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            DiagnosticSeverity::Warning => "warning",
            DiagnosticSeverity::Error => "error",
        };
        write!(f, "{}: {sev}: {}", self.location, self.message)
    }
}

/// Input file format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Obo,
    Tsv,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Obo => "obo",
            Format::Tsv => "tsv",
        }
    }

    /// Guess from a file extension: `.obo` or `.tsv`/`.tab`/`.txt`.
    pub fn from_path(path: &std::path::Path) -> Option<Format> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "obo" => Some(Format::Obo),
            "tsv" | "tab" | "txt" => Some(Format::Tsv),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = crate::catalog::UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "obo" => Ok(Format::Obo),
            "tsv" => Ok(Format::Tsv),
            _ => Err(crate::catalog::UnknownName(s.to_string())),
        }
    }
}

pub(crate) fn strip_bom(input: &str) -> &str {
    input.strip_prefix('\u{feff}').unwrap_or(input)
}
