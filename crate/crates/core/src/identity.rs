//! Identifier discipline, label and synonym collisions, and the deprecation
//! protocol.

use std::collections::{BTreeMap, BTreeSet};

use crate::catalog::Rule;
use crate::model::{
    normalize_label, resolve_replacement, tokens, Finding, Iri, PrefixMap, ResolveError, Term, TermIdx, Vocabulary,
    OBO_PURL_BASE,
};

/// Expected PURL when an absolute IRI's last segment looks like `P_local` or
/// `P:local` for an OBO-style prefix `P`.
fn expected_purl(iri: &str, prefixes: &PrefixMap) -> Option<String> {
    let segment = iri.rsplit(['/', '#']).next().unwrap_or(iri);
    prefixes.obo_prefixes().find_map(|p| {
        let rest = segment.strip_prefix(p)?;
        let local = rest.strip_prefix('_').or_else(|| rest.strip_prefix(':'))?;
        (!local.is_empty()).then(|| format!("{OBO_PURL_BASE}{p}_{local}"))
    })
}

pub fn check_iri(term: &Term, prefixes: &PrefixMap) -> Vec<Finding> {
    let Some(iri) = &term.iri else {
        return vec![Finding::on_term(Rule::MissingIri, term, "term has no identifier")];
    };
    if iri.is_absolute() {
        if let Some(expected) = expected_purl(iri.as_str(), prefixes) {
            if expected != iri.as_str() {
                return vec![Finding::on_term(
                    Rule::NonPurl,
                    term,
                    format!("`{iri}` uses an OBO prefix but is not in persistent URL form"),
                )
                .suggest(expected)];
            }
        }
        return Vec::new();
    }
    if prefixes.expand(iri).is_some() {
        return Vec::new();
    }
    let why = match iri.curie_parts() {
        Some((prefix, local)) if !local.is_empty() && !prefix.is_empty() => {
            format!("prefix `{prefix}` is not in the prefix map")
        }
        _ => "it is neither an absolute IRI nor a CURIE".to_string(),
    };
    vec![Finding::on_term(Rule::BadIri, term, format!("identifier `{iri}` cannot be resolved: {why}"))]
}

pub fn check_iri_uniqueness(vocab: &Vocabulary) -> Vec<Finding> {
    vocab
        .duplicate_iris()
        .into_iter()
        .map(|(key, members)| {
            let terms: Vec<&Term> = members.iter().map(|&i| &vocab.terms()[i]).collect();
            let labels = terms.iter().map(|t| format!("`{}`", t.label)).collect::<Vec<_>>().join(", ");
            Finding::on_group(
                Rule::DupIri,
                key.clone(),
                terms.iter().copied(),
                format!(
                    "identifier `{key}` is used by {} terms ({labels}); every term needs a unique IRI",
                    terms.len()
                ),
            )
        })
        .collect()
}

pub fn check_label_collisions(vocab: &Vocabulary) -> Vec<Finding> {
    let mut out = Vec::new();
    for (norm, members) in vocab.label_index() {
        let live: Vec<&Term> = members.iter().map(|&i| &vocab.terms()[i]).filter(|t| !t.obsolete).collect();
        let distinct: BTreeSet<String> = live.iter().filter_map(|t| t.iri.as_ref()).map(|i| vocab.iri_key(i)).collect();
        if live.len() < 2 || distinct.len() < 2 {
            continue;
        }
        let iris = live.iter().map(|t| t.handle()).collect::<Vec<_>>().join(", ");
        out.push(
            Finding::on_group(
                Rule::SemanticNoise,
                live[0].label.clone(),
                live.iter().copied(),
                format!(
                    "label `{norm}` names {} different terms ({iris}); disambiguate with definitions and IRIs",
                    live.len()
                ),
            )
            .suggest("qualify the labels or reference the intended term by IRI"),
        );
    }
    out
}

pub fn check_synonym_collisions(vocab: &Vocabulary) -> Vec<Finding> {
    let live = |i: &TermIdx| !vocab.terms()[*i].obsolete;
    // phrase -> terms bearing it as label or synonym
    let mut phrases: BTreeMap<String, BTreeSet<TermIdx>> = BTreeMap::new();
    for (idx, term) in vocab.terms().iter().enumerate().filter(|(i, _)| live(i)) {
        phrases.entry(term.normalized_label()).or_default().insert(idx);
        for syn in &term.synonyms {
            phrases.entry(normalize_label(&syn.text)).or_default().insert(idx);
        }
    }
    let mut seen: BTreeSet<(TermIdx, TermIdx, String)> = BTreeSet::new();
    let mut out = Vec::new();
    for (idx, term) in vocab.terms().iter().enumerate().filter(|(i, _)| live(i)) {
        let own = term.normalized_label();
        let mut synonyms: Vec<(String, &str)> =
            term.synonyms.iter().map(|s| (normalize_label(&s.text), s.text.as_str())).collect();
        synonyms.sort();
        synonyms.dedup_by(|a, b| a.0 == b.0);
        for (norm, raw) in synonyms {
            if norm.is_empty() || norm == own {
                continue;
            }
            for &other in phrases.get(&norm).into_iter().flatten() {
                if other == idx || !seen.insert((idx.min(other), idx.max(other), norm.clone())) {
                    continue;
                }
                let u = &vocab.terms()[other];
                let role = if u.normalized_label() == norm { "label" } else { "a synonym" };
                out.push(Finding::on_group(
                    Rule::SynonymClash,
                    term.label.clone(),
                    [term, u],
                    format!(
                        "synonym `{raw}` of `{}` ({}) is also {role} of `{}` ({}); users must pick between two terms that mean the same thing",
                        term.label,
                        term.handle(),
                        u.label,
                        u.handle()
                    ),
                ));
            }
        }
    }
    out
}

/// Label starts with the token `obsolete` (any case, `:` or `_` allowed after).
pub fn has_obsolete_prefix(label: &str) -> bool {
    tokens(&normalize_label(label)).first() == Some(&"obsolete")
}

pub fn check_deprecation(vocab: &Vocabulary) -> Vec<Finding> {
    let mut out = Vec::new();
    for term in vocab.terms() {
        if term.obsolete && !has_obsolete_prefix(&term.label) {
            out.push(
                Finding::on_term(Rule::DeprecatedLabel, term, "obsolete term's label does not start with `obsolete`")
                    .suggest(format!("obsolete {}", term.label)),
            );
        }
        if term.obsolete && term.replaced_by.is_none() {
            out.push(Finding::on_term(Rule::NoReplacement, term, "obsolete term has no `replaced_by` pointer"));
        }
        if let Some(target) = &term.replaced_by {
            if !term.obsolete {
                out.push(Finding::on_term(
                    Rule::LiveReplaced,
                    term,
                    format!("term is not obsolete but is replaced by `{target}`"),
                ));
            }
            out.extend(replacement_findings(vocab, term, target));
        }
        if !term.obsolete {
            for parent in &term.parents {
                if vocab.get(parent).is_some_and(|p| p.obsolete) {
                    out.push(Finding::on_term(Rule::ObsoleteParent, term, format!("parent `{parent}` is obsolete")));
                }
            }
        }
    }
    out
}

fn replacement_findings(vocab: &Vocabulary, term: &Term, target: &Iri) -> Option<Finding> {
    let Some(next) = vocab.get(target) else {
        return Some(Finding::on_term(
            Rule::Dangling,
            term,
            format!("replacement `{target}` is not in the vocabulary"),
        ));
    };
    match resolve_replacement(vocab, target) {
        Err(ResolveError::Cycle(path)) => {
            let shown = path.iter().map(Iri::as_str).collect::<Vec<_>>().join(" -> ");
            Some(Finding::on_term(Rule::ReplacementCycle, term, format!("replacement chain loops: {shown}")))
        }
        Ok(terminus) if next.obsolete => Some(
            Finding::on_term(
                Rule::Chain,
                term,
                format!("replacement `{target}` is itself obsolete; the chain resolves to `{terminus}`"),
            )
            .suggest(terminus.to_string()),
        ),
        // A later unknown link gets its own dangling finding.
        _ => None,
    }
}
