//! OBO flat-file subset.
//!
//! Grammar (one construct per line, `\n` or `\r\n` endings, UTF-8, optional
//! leading byte-order mark):
//!
//! ```text
//! file     := header* stanza*
//! header   := key ": " value            ; `idspace: PREFIX BASE` registers a prefix
//! stanza   := "[" kind "]" tagline*     ; only [Term] is read, other kinds are skipped
//! tagline  := tag ":" value
//! ```
//!
//! Lines starting with `!` are comments. Recognised `[Term]` tags:
//!
//! | tag           | value                                                   |
//! |---------------|---------------------------------------------------------|
//! | `id`          | IRI or CURIE                                            |
//! | `name`        | label                                                   |
//! | `def`         | `"text" [source, source]`                               |
//! | `synonym`     | `"text" SCOPE [TYPE] [xref, ...]`, SCOPE one of EXACT, BROAD, NARROW, RELATED; `ABBREVIATION` as TYPE or inside the brackets marks an abbreviation |
//! | `is_a`        | IRI or CURIE, trailing `! comment` ignored              |
//! | `is_obsolete` | `true` or `false`                                       |
//! | `replaced_by` | IRI or CURIE, trailing `! comment` ignored              |
//!
//! Quoted strings honour `\"` and `\\`. Any other tag, `comment` included, is
//! kept verbatim in the term's annotations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{strip_bom, ParseDiagnostic};
use crate::model::{
    Definition, Iri, PrefixKind, PrefixMap, SourceLocation, Synonym, SynonymScope, Term, Vocabulary, OBO_PURL_BASE,
};

const RESERVED: &[&str] = &["id", "name", "def", "synonym", "is_a", "is_obsolete", "replaced_by"];

struct Stanza {
    start: usize,
    lines: Vec<(usize, String, String)>,
}

/// Parses OBO text. Never fails outright: problems become diagnostics, and a
/// stanza with an unclosed quote or no `name` is dropped.
pub fn parse_obo(input: &str, file_name: &str) -> (Vocabulary, Vec<ParseDiagnostic>) {
    let mut diags = Vec::new();
    let mut prefixes = PrefixMap::new();
    let mut stanzas: Vec<Stanza> = Vec::new();
    // None: header section; Some(true): inside [Term]; Some(false): skipped stanza
    let mut in_term: Option<bool> = None;
    let loc = |line: usize| SourceLocation::new(file_name, line);

    for (idx, raw) in strip_bom(input).lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('!') {
            continue;
        }
        if line.starts_with('[') {
            match line.strip_prefix('[').and_then(|l| l.strip_suffix(']')).map(str::trim) {
                Some("Term") => {
                    stanzas.push(Stanza { start: line_no, lines: Vec::new() });
                    in_term = Some(true);
                }
                Some("Typedef") | Some("Instance") => in_term = Some(false),
                Some(other) => {
                    diags.push(ParseDiagnostic::warning(
                        loc(line_no),
                        format!("unsupported stanza type `[{other}]` skipped"),
                    ));
                    in_term = Some(false);
                }
                None => {
                    diags.push(ParseDiagnostic::warning(loc(line_no), format!("malformed stanza header `{line}`")));
                    in_term = Some(false);
                }
            }
            continue;
        }
        let Some((tag, value)) = line.split_once(':') else {
            let start = match in_term {
                Some(true) => stanzas.last().map(|s| s.start).unwrap_or(line_no),
                _ => line_no,
            };
            diags.push(ParseDiagnostic::warning(loc(start), format!("line {line_no}: expected `tag: value`")));
            continue;
        };
        let (tag, value) = (tag.trim(), value.trim());
        match in_term {
            None => {
                if tag == "idspace" {
                    register_idspace(value, line_no, &mut prefixes, &mut diags, file_name);
                }
            }
            Some(true) => {
                if let Some(stanza) = stanzas.last_mut() {
                    stanza.lines.push((line_no, tag.to_string(), value.to_string()));
                }
            }
            Some(false) => {}
        }
    }

    let mut terms = Vec::new();
    let mut seen_ids: BTreeMap<String, usize> = BTreeMap::new();
    for stanza in &stanzas {
        if let Some(term) = build_term(stanza, file_name, &mut diags) {
            if let Some(iri) = &term.iri {
                if let Some(first) = seen_ids.get(iri.as_str()) {
                    diags.push(ParseDiagnostic::error(
                        loc(stanza.start),
                        format!("duplicate id `{iri}` (first defined at line {first})"),
                    ));
                } else {
                    seen_ids.insert(iri.to_string(), stanza.start);
                }
            }
            terms.push(term);
        }
    }
    (Vocabulary::new(terms, prefixes), diags)
}

fn register_idspace(value: &str, line: usize, prefixes: &mut PrefixMap, diags: &mut Vec<ParseDiagnostic>, file: &str) {
    let mut parts = value.split_whitespace();
    match (parts.next(), parts.next()) {
        (Some(prefix), Some(base)) if Iri::new(base).map(|i| i.is_absolute()).unwrap_or(false) => {
            let kind = if base.starts_with(OBO_PURL_BASE) { PrefixKind::Obo } else { PrefixKind::External };
            prefixes.insert(prefix, base, kind);
        }
        _ => diags
            .push(ParseDiagnostic::warning(SourceLocation::new(file, line), format!("malformed idspace `{value}`"))),
    }
}

#[derive(Debug, PartialEq)]
enum QuoteError {
    NotQuoted,
    Unclosed,
}

/// Reads a leading quoted string, returning its unescaped text and the rest.
fn parse_quoted(value: &str) -> Result<(String, &str), QuoteError> {
    let body = value.strip_prefix('"').ok_or(QuoteError::NotQuoted)?;
    let mut text = String::new();
    let mut chars = body.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some((_, e @ ('"' | '\\'))) => text.push(e),
                Some((_, other)) => {
                    text.push('\\');
                    text.push(other);
                }
                None => return Err(QuoteError::Unclosed),
            },
            '"' => return Ok((text, &body[i + 1..])),
            _ => text.push(c),
        }
    }
    Err(QuoteError::Unclosed)
}

/// Splits a leading `[a, b]` list off `rest`. Returns the items and whether a
/// list was present.
fn parse_bracket_list(rest: &str) -> Option<Vec<String>> {
    let inner = rest.trim_start().strip_prefix('[')?;
    let end = inner.find(']')?;
    Some(inner[..end].split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::to_string).collect())
}

/// First whitespace-delimited token, which drops `! comment` and `{...}` trailers.
fn identifier_value(value: &str) -> &str {
    value.split_whitespace().next().unwrap_or("")
}

fn build_term(stanza: &Stanza, file: &str, diags: &mut Vec<ParseDiagnostic>) -> Option<Term> {
    let at = SourceLocation::new(file, stanza.start);
    let mut term = Term { location: Some(at.clone()), ..Term::default() };
    let mut label: Option<String> = None;
    let mut seen_def = false;

    for (line, tag, value) in &stanza.lines {
        let warn = |diags: &mut Vec<ParseDiagnostic>, msg: String| {
            diags.push(ParseDiagnostic::warning(at.clone(), format!("line {line}: {msg}")));
        };
        if value.is_empty() {
            warn(diags, format!("empty `{tag}` value ignored"));
            continue;
        }
        match tag.as_str() {
            "id" => {
                if term.iri.is_some() {
                    warn(diags, "second `id` ignored".into());
                } else {
                    term.iri = Iri::new(identifier_value(value)).ok();
                }
            }
            "name" => {
                if label.is_some() {
                    warn(diags, "second `name` ignored".into());
                } else {
                    label = Some(value.clone());
                }
            }
            "def" => {
                if seen_def {
                    warn(diags, "second `def` ignored".into());
                    continue;
                }
                seen_def = true;
                match parse_quoted(value) {
                    Ok((text, rest)) => {
                        let sources = parse_bracket_list(rest).unwrap_or_default();
                        if text.trim().is_empty() {
                            warn(diags, "empty definition ignored".into());
                        } else {
                            term.definition = Some(Definition { text, sources });
                        }
                    }
                    Err(QuoteError::NotQuoted) => {
                        warn(diags, "definition is not quoted; taken verbatim".into());
                        term.definition = Some(Definition { text: value.clone(), sources: Vec::new() });
                    }
                    Err(QuoteError::Unclosed) => {
                        diags.push(ParseDiagnostic::error(
                            at.clone(),
                            format!("line {line}: unclosed quote in `def`; stanza skipped"),
                        ));
                        return None;
                    }
                }
            }
            "synonym" => match parse_quoted(value) {
                Ok((text, rest)) => {
                    if let Some(syn) = parse_synonym_tail(text, rest, |m| warn(diags, m)) {
                        term.synonyms.push(syn);
                    }
                }
                Err(QuoteError::NotQuoted) => warn(diags, "synonym is not quoted; ignored".into()),
                Err(QuoteError::Unclosed) => {
                    diags.push(ParseDiagnostic::error(
                        at.clone(),
                        format!("line {line}: unclosed quote in `synonym`; stanza skipped"),
                    ));
                    return None;
                }
            },
            "is_a" => match Iri::new(identifier_value(value)) {
                Ok(iri) => term.parents.push(iri),
                Err(e) => warn(diags, format!("bad is_a: {e}")),
            },
            "is_obsolete" => match value.as_str() {
                "true" => term.obsolete = true,
                "false" => term.obsolete = false,
                other => warn(diags, format!("is_obsolete must be true or false, got `{other}`")),
            },
            "replaced_by" => {
                if term.replaced_by.is_some() {
                    warn(diags, "second `replaced_by` ignored".into());
                } else {
                    match Iri::new(identifier_value(value)) {
                        Ok(iri) => term.replaced_by = Some(iri),
                        Err(e) => warn(diags, format!("bad replaced_by: {e}")),
                    }
                }
            }
            _ => term.annotations.entry(tag.clone()).or_default().push(value.clone()),
        }
    }

    let Some(label) = label else {
        diags.push(ParseDiagnostic::error(at, "stanza has no `name`; skipped"));
        return None;
    };
    term.label = label;
    if term.iri.is_none() {
        diags.push(ParseDiagnostic::warning(at, "stanza has no `id`"));
    }
    Some(term)
}

fn parse_synonym_tail(text: String, rest: &str, mut warn: impl FnMut(String)) -> Option<Synonym> {
    if text.trim().is_empty() {
        warn("empty synonym ignored".into());
        return None;
    }
    let (words, brackets) = match rest.find('[') {
        Some(i) => (&rest[..i], Some(&rest[i..])),
        None => (rest, None),
    };
    let mut words = words.split_whitespace();
    let scope = match words.next() {
        None => SynonymScope::Related,
        Some(kw) => SynonymScope::from_obo_keyword(kw).unwrap_or_else(|| {
            warn(format!("unknown synonym scope `{kw}`, using RELATED"));
            SynonymScope::Related
        }),
    };
    let typed_abbrev = words.any(|w| w.eq_ignore_ascii_case("ABBREVIATION"));
    let listed_abbrev = brackets
        .and_then(parse_bracket_list)
        .is_some_and(|items| items.iter().any(|i| i.eq_ignore_ascii_case("ABBREVIATION")));
    Some(Synonym { text, scope, is_abbreviation: typed_abbrev || listed_abbrev })
}

fn quote(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    out.push('"');
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Serialises terms using only the supported tags, in the order the parser
/// reads them back. Annotations whose key collides with a supported tag are
/// skipped.
pub fn write_obo(terms: &[Term]) -> String {
    let mut out = String::from("format-version: 1.4\n");
    for term in terms {
        out.push_str("\n[Term]\n");
        if let Some(iri) = &term.iri {
            let _ = writeln!(out, "id: {iri}");
        }
        let _ = writeln!(out, "name: {}", term.label);
        if let Some(def) = &term.definition {
            let _ = writeln!(out, "def: {} [{}]", quote(&def.text), def.sources.join(", "));
        }
        for syn in &term.synonyms {
            let marker = if syn.is_abbreviation { "ABBREVIATION" } else { "" };
            let _ = writeln!(out, "synonym: {} {} [{marker}]", quote(&syn.text), syn.scope.obo_keyword());
        }
        for parent in &term.parents {
            let _ = writeln!(out, "is_a: {parent}");
        }
        if term.obsolete {
            out.push_str("is_obsolete: true\n");
        }
        if let Some(r) = &term.replaced_by {
            let _ = writeln!(out, "replaced_by: {r}");
        }
        for (key, values) in &term.annotations {
            if RESERVED.contains(&key.as_str()) {
                continue;
            }
            for v in values {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::DiagnosticSeverity;
    use proptest::prelude::*;

    #[test]
    fn tachypnea_stanza() {
        let text = "[Term]\nid: HP:0002789\nname: Tachypnea\nsynonym: \"Rapid Breathing\" EXACT []\n";
        let (vocab, diags) = parse_obo(text, "t.obo");
        assert!(diags.is_empty(), "{diags:?}");
        let term = &vocab.terms()[0];
        assert_eq!(term.iri.as_ref().unwrap().as_str(), "HP:0002789");
        assert_eq!(term.label, "Tachypnea");
        assert_eq!(term.synonyms, vec![Synonym::exact("Rapid Breathing")]);
        assert_eq!(term.location, Some(SourceLocation::new("t.obo", 1)));
    }

    #[test]
    fn empty_input() {
        let (vocab, diags) = parse_obo("", "e.obo");
        assert!(vocab.is_empty());
        assert!(diags.is_empty());
    }

    #[test]
    fn definition_with_sources() {
        let text = "[Term]\nid: X:1\nname: productive cough\ndef: \"A productive cough is a cough that produces mucus.\" [ORCID:x]\n";
        let (vocab, _) = parse_obo(text, "d.obo");
        assert_eq!(
            vocab.terms()[0].definition,
            Some(Definition {
                text: "A productive cough is a cough that produces mucus.".into(),
                sources: vec!["ORCID:x".into()]
            })
        );
    }

    #[test]
    fn escapes_and_comments() {
        let text = "format-version: 1.4\nidspace: VLX https://example.org/vlx/ local\n\n[Term]\nid: VLX:1 ! the id\nname: a \"b\"\ndef: \"say \\\"hi\\\" \\\\ now\" []\nis_a: HP:0000001 ! All\nreplaced_by: VLX:2 {source=\"x\"}\ncomment: keep me\nxref: A:1\nxref: A:2\n";
        let (vocab, diags) = parse_obo(text, "x.obo");
        assert!(diags.is_empty(), "{diags:?}");
        let t = &vocab.terms()[0];
        assert_eq!(t.iri.as_ref().unwrap().as_str(), "VLX:1");
        assert_eq!(t.label, "a \"b\"");
        assert_eq!(t.definition.as_ref().unwrap().text, "say \"hi\" \\ now");
        assert_eq!(t.parents[0].as_str(), "HP:0000001");
        assert_eq!(t.replaced_by.as_ref().unwrap().as_str(), "VLX:2");
        assert_eq!(t.annotations["comment"], vec!["keep me".to_string()]);
        assert_eq!(t.annotations["xref"], vec!["A:1".to_string(), "A:2".to_string()]);
        assert_eq!(vocab.prefixes().get("VLX").unwrap().kind, PrefixKind::External);
    }

    #[test]
    fn synonym_abbreviation_markers() {
        let text = "[Term]\nid: X:1\nname: bronchoalveolar lavage\nsynonym: \"BAL\" EXACT [ABBREVIATION]\nsynonym: \"BAL2\" EXACT ABBREVIATION [PMID:1]\nsynonym: \"lavage\" BROAD []\nsynonym: \"bare\"\n";
        let (vocab, diags) = parse_obo(text, "s.obo");
        assert!(diags.is_empty());
        let syns = &vocab.terms()[0].synonyms;
        assert!(syns[0].is_abbreviation && syns[1].is_abbreviation);
        assert_eq!(syns[2].scope, SynonymScope::Broad);
        assert!(!syns[2].is_abbreviation);
        assert_eq!(syns[3].scope, SynonymScope::Related);
    }

    #[test]
    fn unclosed_quote_skips_stanza() {
        let text = "[Term]\nid: X:1\nname: a\ndef: \"never closed [x]\n\n[Term]\nid: X:2\nname: b\n";
        let (vocab, diags) = parse_obo(text, "u.obo");
        assert_eq!(vocab.len(), 1);
        assert_eq!(vocab.terms()[0].label, "b");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].severity, DiagnosticSeverity::Error);
        assert_eq!(diags[0].location.line, 1);
    }

    #[test]
    fn missing_id_and_duplicate_id() {
        let text = "[Term]\nname: anonymous\n\n[Term]\nid: X:1\nname: one\n\n[Term]\nid: X:1\nname: again\n";
        let (vocab, diags) = parse_obo(text, "m.obo");
        assert_eq!(vocab.len(), 3);
        assert!(vocab.terms()[0].iri.is_none());
        assert_eq!(diags.len(), 2);
        assert_eq!((diags[0].severity, diags[0].location.line), (DiagnosticSeverity::Warning, 1));
        assert_eq!((diags[1].severity, diags[1].location.line), (DiagnosticSeverity::Error, 8));
    }

    #[test]
    fn other_stanzas_and_bom() {
        let text = "\u{feff}format-version: 1.4\n[Typedef]\nid: part_of\nname: part of\n[Term]\r\nid: X:1\r\nname: kept\r\n[Weird]\nid: Y\n";
        let (vocab, diags) = parse_obo(text, "o.obo");
        assert_eq!(vocab.len(), 1);
        assert_eq!(vocab.terms()[0].label, "kept");
        assert_eq!(vocab.terms()[0].location.as_ref().unwrap().line, 5);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].location.line, 8);
    }

    #[test]
    fn quoted_string_rules() {
        assert_eq!(parse_quoted("\"a\\\"b\" rest"), Ok(("a\"b".to_string(), " rest")));
        assert_eq!(parse_quoted("no"), Err(QuoteError::NotQuoted));
        assert_eq!(parse_quoted("\"open"), Err(QuoteError::Unclosed));
        assert_eq!(parse_quoted("\"ends with escape\\"), Err(QuoteError::Unclosed));
    }

    fn arb_text() -> impl Strategy<Value = String> {
        proptest::string::string_regex("[A-Za-z0-9][A-Za-z0-9 \"\\\\().-]{0,20}[A-Za-z0-9]").unwrap()
    }

    fn arb_id() -> impl Strategy<Value = Iri> {
        proptest::string::string_regex("[A-Z]{2,4}:[0-9]{1,7}").unwrap().prop_map(|s| Iri::new(s).unwrap())
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        (
            proptest::option::of(arb_id()),
            arb_text().prop_filter("label must not contain quote", |s| !s.contains('"')),
            proptest::collection::vec((arb_text(), 0usize..4, any::<bool>()), 0..3),
            proptest::option::of((arb_text(), proptest::collection::vec("[A-Z]{2,5}:[a-z0-9]{1,6}", 0..3))),
            proptest::collection::vec(arb_id(), 0..3),
            any::<bool>(),
            proptest::option::of(arb_id()),
            proptest::collection::btree_map(
                "[a-z_]{3,8}",
                proptest::collection::vec("[a-z][a-z0-9 ]{0,10}[a-z]", 1..3),
                0..3,
            ),
        )
            .prop_map(|(iri, label, syns, def, parents, obsolete, replaced_by, annotations)| Term {
                iri,
                label,
                synonyms: syns
                    .into_iter()
                    .map(|(text, scope, is_abbreviation)| Synonym {
                        text,
                        scope: [SynonymScope::Exact, SynonymScope::Broad, SynonymScope::Narrow, SynonymScope::Related]
                            [scope],
                        is_abbreviation,
                    })
                    .collect(),
                definition: def.map(|(text, sources)| Definition { text, sources }),
                parents,
                obsolete,
                replaced_by,
                annotations: annotations.into_iter().filter(|(k, _)| !RESERVED.contains(&k.as_str())).collect(),
                location: None,
            })
    }

    proptest! {
        #[test]
        fn round_trip(terms in proptest::collection::vec(arb_term(), 0..6)) {
            let text = write_obo(&terms);
            let (vocab, _) = parse_obo(&text, "rt.obo");
            prop_assert_eq!(vocab.len(), terms.len());
            for (orig, back) in terms.iter().zip(vocab.terms()) {
                let mut back = back.clone();
                back.location = None;
                prop_assert_eq!(orig, &back);
            }
        }

        #[test]
        fn deterministic(text in "[\\[\\]a-zA-Z:\" \\n!_-]{0,200}") {
            prop_assert_eq!(parse_obo(&text, "f"), parse_obo(&text, "f"));
        }
    }
}
