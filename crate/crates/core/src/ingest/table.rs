//! Tab-separated term tables.
//!
//! UTF-8, `\t` between cells, `\n` or `\r\n` row endings, no quoting. The
//! first row is the header. List-valued cells (synonyms, parents, definition
//! sources and any unmapped column) use `|` between items. Columns not named
//! in the [`ColumnMap`] are kept as annotations under their header name.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{strip_bom, ParseDiagnostic};
use crate::model::{Definition, Iri, PrefixMap, SourceLocation, Synonym, Term, Vocabulary};

/// Header names for the columns the reader understands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ColumnMap {
    pub label_col: String,
    pub iri_col: Option<String>,
    pub definition_col: Option<String>,
    pub def_source_col: Option<String>,
    pub parent_col: Option<String>,
    pub synonyms_col: Option<String>,
    pub obsolete_col: Option<String>,
    pub replaced_by_col: Option<String>,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            label_col: "label".into(),
            iri_col: Some("iri".into()),
            definition_col: Some("definition".into()),
            def_source_col: Some("definition_source".into()),
            parent_col: Some("parent".into()),
            synonyms_col: Some("synonyms".into()),
            obsolete_col: Some("obsolete".into()),
            replaced_by_col: Some("replaced_by".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("{file}: missing header row")]
    MissingHeader { file: String },
    #[error("{file}: required label column `{column}` not found in header")]
    MissingLabelColumn { file: String, column: String },
}

#[derive(Clone, Copy)]
enum Role {
    Label,
    Iri,
    Definition,
    DefSource,
    Parent,
    Synonyms,
    Obsolete,
    ReplacedBy,
    Annotation,
}

fn split_list(cell: &str) -> impl Iterator<Item = &str> {
    cell.split('|').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_term_table(
    input: &str,
    file_name: &str,
    columns: &ColumnMap,
) -> Result<(Vocabulary, Vec<ParseDiagnostic>), TableError> {
    let mut lines = strip_bom(input).lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((idx, l)) => break (idx + 1, l),
            None => return Err(TableError::MissingHeader { file: file_name.into() }),
        }
    };
    let mut diags = Vec::new();
    let header_cells: Vec<&str> = header.1.split('\t').map(str::trim).collect();

    let named = [
        (Some(&columns.label_col), Role::Label),
        (columns.iri_col.as_ref(), Role::Iri),
        (columns.definition_col.as_ref(), Role::Definition),
        (columns.def_source_col.as_ref(), Role::DefSource),
        (columns.parent_col.as_ref(), Role::Parent),
        (columns.synonyms_col.as_ref(), Role::Synonyms),
        (columns.obsolete_col.as_ref(), Role::Obsolete),
        (columns.replaced_by_col.as_ref(), Role::ReplacedBy),
    ];
    let mut seen_headers: BTreeMap<&str, usize> = BTreeMap::new();
    let roles: Vec<Option<Role>> = header_cells
        .iter()
        .enumerate()
        .map(|(i, name)| {
            if name.is_empty() {
                return None;
            }
            if seen_headers.insert(name, i).is_some() {
                diags.push(ParseDiagnostic::warning(
                    SourceLocation::new(file_name, header.0),
                    format!("column `{name}` repeated; later copy ignored"),
                ));
                return None;
            }
            let role = named
                .iter()
                .find(|(col, _)| col.is_some_and(|c| c == name))
                .map(|(_, r)| *r)
                .unwrap_or(Role::Annotation);
            Some(role)
        })
        .collect();
    if !header_cells.iter().any(|c| *c == columns.label_col) {
        return Err(TableError::MissingLabelColumn { file: file_name.into(), column: columns.label_col.clone() });
    }

    let mut terms = Vec::new();
    let mut seen_iris: BTreeMap<String, usize> = BTreeMap::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let at = SourceLocation::new(file_name, line_no);
        let cells: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if cells.len() > header_cells.len() {
            diags.push(ParseDiagnostic::warning(
                at.clone(),
                format!("row has {} cells, header has {}; extra cells ignored", cells.len(), header_cells.len()),
            ));
        }
        let mut term = Term { location: Some(at.clone()), ..Term::default() };
        for (col, (cell, role)) in cells.iter().zip(&roles).enumerate() {
            let (Some(role), false) = (role, cell.is_empty()) else { continue };
            match role {
                Role::Label => term.label = cell.to_string(),
                Role::Iri => match Iri::new(*cell) {
                    Ok(iri) => term.iri = Some(iri),
                    Err(e) => diags.push(ParseDiagnostic::error(at.clone(), format!("bad identifier: {e}"))),
                },
                Role::Definition => {
                    let sources = term.definition.take().map(|d| d.sources).unwrap_or_default();
                    term.definition = Some(Definition { text: cell.to_string(), sources });
                }
                Role::DefSource => {
                    let sources: Vec<String> = split_list(cell).map(str::to_string).collect();
                    match &mut term.definition {
                        Some(d) => d.sources = sources,
                        None => term.definition = Some(Definition { text: String::new(), sources }),
                    }
                }
                Role::Parent => {
                    for p in split_list(cell) {
                        match Iri::new(p) {
                            Ok(iri) => term.parents.push(iri),
                            Err(e) => diags.push(ParseDiagnostic::warning(at.clone(), format!("bad parent: {e}"))),
                        }
                    }
                }
                Role::Synonyms => term.synonyms.extend(split_list(cell).map(Synonym::exact)),
                Role::Obsolete => match cell.to_ascii_lowercase().as_str() {
                    "true" => term.obsolete = true,
                    "false" => term.obsolete = false,
                    _ => diags.push(ParseDiagnostic::warning(
                        at.clone(),
                        format!("obsolete must be true or false, got `{cell}`"),
                    )),
                },
                Role::ReplacedBy => match Iri::new(*cell) {
                    Ok(iri) => term.replaced_by = Some(iri),
                    Err(e) => diags.push(ParseDiagnostic::warning(at.clone(), format!("bad replaced_by: {e}"))),
                },
                Role::Annotation => {
                    term.annotations
                        .entry(header_cells[col].to_string())
                        .or_default()
                        .extend(split_list(cell).map(str::to_string));
                }
            }
        }
        // A source column without a definition text leaves nothing to attach to.
        if term.definition.as_ref().is_some_and(|d| d.text.is_empty()) {
            term.definition = None;
        }
        if term.label.is_empty() {
            diags.push(ParseDiagnostic::error(at, "empty label; row skipped"));
            continue;
        }
        if let Some(iri) = &term.iri {
            if let Some(first) = seen_iris.get(iri.as_str()) {
                diags.push(ParseDiagnostic::error(at, format!("duplicate identifier `{iri}` (first on line {first})")));
            } else {
                seen_iris.insert(iri.to_string(), line_no);
            }
        }
        terms.push(term);
    }
    Ok((Vocabulary::new(terms, PrefixMap::new()), diags))
}
