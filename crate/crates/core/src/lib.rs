//! Linting for controlled vocabularies and ontology term files.
//!
//! Inputs are read by [`ingest`] into a [`Vocabulary`]; the check modules
//! ([`lexical`], [`definitions`], [`identity`]) turn it into [`Finding`]s, and
//! [`engine`] runs them under a configuration and renders the report.
//! [`reuse`] searches reference vocabularies for existing terms, and
//! [`health`] scores the maintenance state of a source vocabulary.

pub mod catalog;
pub mod definitions;
pub mod engine;
pub mod health;
pub mod identity;
pub mod ingest;
pub mod lexical;
pub mod lexicon;
pub mod model;
pub mod reuse;

pub use catalog::{Rule, Severity};
pub use engine::{exit_code, render_report, run_lint, InputSpec, OutputFormat, Report, RuleConfig};
pub use ingest::{ColumnMap, Format, ParseDiagnostic};
pub use lexicon::{ComplexityConfig, Lexicons};
pub use model::{Definition, Finding, Iri, PrefixMap, SourceLocation, Synonym, SynonymScope, Term, Vocabulary};
