//! Label- and value-level checks: negation, conjunctions, plurals,
//! colloquialisms, abbreviations, relative-time wording, overloaded labels,
//! combinatorial label families, redundant narrowing and tag style.
//!
//! Every function here is pure. Obsolete terms are not special-cased by the
//! per-term checks; the engine downgrades those findings.

use std::collections::BTreeMap;

use crate::catalog::{Rule, Severity};
use crate::lexicon::{ComplexityConfig, Lexicons};
use crate::model::{contains_subsequence, normalize_label, subsequence_positions, tokens, Finding, Term, Vocabulary};

const CONJUNCTIONS: [&str; 2] = ["and", "or"];
const BOOLEAN_VALUES: [&str; 6] = ["true", "false", "yes", "no", "y", "n"];

/// 2 to 5 characters, ASCII uppercase letters or digits, at least one letter.
fn is_abbreviation_shaped(token: &str) -> bool {
    let len = token.chars().count();
    (2..=5).contains(&len)
        && token.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit())
        && token.chars().any(|c| c.is_ascii_uppercase())
}

/// Case-preserving word split on anything that is not alphanumeric.
fn raw_words(raw: &str) -> Vec<&str> {
    raw.split(|c: char| !c.is_alphanumeric()).filter(|w| !w.is_empty()).collect()
}

fn strip_parentheticals(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut depth = 0usize;
    for c in raw.chars() {
        match c {
            '(' => depth += 1,
            ')' if depth > 0 => depth -= 1,
            _ if depth == 0 => out.push(c),
            _ => {}
        }
    }
    out
}

/// Splits `words (ABBR)` into its two parts when the label has that shape.
fn expansion_style(raw: &str) -> Option<(&str, &str)> {
    let body = raw.trim().strip_suffix(')')?;
    let open = body.rfind('(')?;
    let (words, abbr) = (body[..open].trim(), body[open + 1..].trim());
    if words.is_empty() || !words.chars().any(char::is_alphabetic) || words.contains(['(', ')']) {
        return None;
    }
    is_abbreviation_shaped(abbr).then_some((words, abbr))
}

pub fn check_abbreviation(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    let accepted = |w: &str| lex.accepted_abbreviation_words.contains(&w.to_ascii_lowercase());
    let mut out = Vec::new();
    if let Some((words, abbr)) = expansion_style(&term.label) {
        if !accepted(abbr) {
            out.push(
                Finding::on_term(
                    Rule::ExpansionStyle,
                    term,
                    format!("abbreviation `{abbr}` is appended to the label; record it as an abbreviation synonym"),
                )
                .suggest(format!("label `{words}` with synonym `{abbr}` marked as an abbreviation")),
            );
        }
    }
    let stripped = strip_parentheticals(&term.label);
    let mut found: Vec<&str> = Vec::new();
    for w in raw_words(&stripped) {
        if is_abbreviation_shaped(w) && !accepted(w) && !found.contains(&w) {
            found.push(w);
        }
    }
    if !found.is_empty() {
        let list = found.iter().map(|w| format!("`{w}`")).collect::<Vec<_>>().join(", ");
        out.push(Finding::on_term(
            Rule::Abbrev,
            term,
            format!("label uses abbreviation {list}; use the full expanded wording as the label"),
        ));
    }
    out
}

/// True when a `non`-prefixed token at `pos` is covered by an allowlisted phrase.
fn allowlisted_at(toks: &[&str], pos: usize, lex: &Lexicons) -> bool {
    lex.negative_prefix_allowlist.iter().any(|phrase| {
        let p = tokens(phrase);
        subsequence_positions(toks, &p).into_iter().any(|start| start <= pos && pos < start + p.len())
    })
}

pub fn check_negative_phrasing(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    let norm = term.normalized_label();
    let toks = tokens(&norm);
    let determiners: Vec<&str> = toks.iter().copied().filter(|t| lex.negative_determiners.contains(*t)).collect();
    if !determiners.is_empty() {
        return vec![Finding::on_term(
            Rule::Negative,
            term,
            format!(
                "label uses negative determiner `{}`; describe what is present and query for absence instead",
                determiners[0]
            ),
        )];
    }
    let prefixed: Vec<&str> = toks
        .iter()
        .enumerate()
        .filter(|(i, t)| t.starts_with("non") && !allowlisted_at(&toks, *i, lex))
        .map(|(_, t)| *t)
        .collect();
    if let Some(first) = prefixed.first() {
        return vec![Finding::on_term(
            Rule::Negative,
            term,
            format!("label is defined by negation (`{first}`); prefer a positive term unless the negative form is the established name"),
        )
        .severity(Severity::Info)];
    }
    Vec::new()
}

pub fn check_conjunction(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    let norm = term.normalized_label();
    let toks = tokens(&norm);
    if !toks.iter().any(|t| CONJUNCTIONS.contains(t)) || lex.proper_noun_allowlist.contains(&norm) {
        return Vec::new();
    }
    let words = raw_words(&term.label);
    let capitalized = |w: Option<&&str>| w.is_some_and(|w| w.chars().next().is_some_and(char::is_uppercase));
    let mut disjunction = false;
    let mut offending = false;
    for (i, w) in words.iter().enumerate() {
        let lower = w.to_lowercase();
        if !CONJUNCTIONS.contains(&lower.as_str()) {
            continue;
        }
        let proper = i > 0 && capitalized(words.get(i - 1)) && capitalized(words.get(i + 1));
        if !proper {
            offending = true;
            disjunction |= lower == "or";
        }
    }
    if !offending {
        return Vec::new();
    }
    let finding = if disjunction {
        Finding::on_term(
            Rule::Conjunction,
            term,
            "label joins alternatives with `or`; use a single broader label that covers them",
        )
        .suggest("a broader label that encompasses the alternatives")
    } else {
        Finding::on_term(Rule::Conjunction, term, "label joins concepts with `and`; use one term per concept")
            .suggest("separate terms for each concept")
    };
    vec![finding]
}

pub fn check_plural(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    let norm = term.normalized_label();
    let Some(last) = tokens(&norm).last().copied() else { return Vec::new() };
    let looks_plural = last.ends_with('s') && !last.ends_with("ss") && !last.ends_with("us") && !last.ends_with("is");
    if !looks_plural || lex.plural_by_nature.contains(last) || lex.plural_by_nature.contains(&norm) {
        return Vec::new();
    }
    vec![Finding::on_term(Rule::Plural, term, format!("head noun `{last}` looks plural; use the singular form"))]
}

pub fn check_colloquial(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    if let Some(preferred) = lex.colloquial_map.get(&term.normalized_label()) {
        return vec![Finding::on_term(
            Rule::Colloquial,
            term,
            format!("label is colloquial; use the technical term `{preferred}`"),
        )
        .suggest(preferred.clone())];
    }
    let mut out = Vec::new();
    for syn in &term.synonyms {
        if let Some(preferred) = lex.colloquial_map.get(&normalize_label(&syn.text)) {
            out.push(
                Finding::on_term(
                    Rule::Colloquial,
                    term,
                    format!("synonym `{}` is colloquial (technical form `{preferred}`)", syn.text),
                )
                .severity(Severity::Info)
                .suggest(preferred.clone()),
            );
        }
    }
    out
}

fn timeline_hits<'a>(toks: &[&str], lex: &'a Lexicons) -> Vec<&'a str> {
    lex.timeline_phrases.iter().filter(|p| contains_subsequence(toks, &tokens(p))).map(String::as_str).collect()
}

pub fn check_timeline(term: &Term, lex: &Lexicons) -> Vec<Finding> {
    let norm = term.normalized_label();
    let hits = timeline_hits(&tokens(&norm), lex);
    if hits.is_empty() {
        return Vec::new();
    }
    let list = hits.iter().map(|h| format!("`{h}`")).collect::<Vec<_>>().join(", ");
    vec![Finding::on_term(
        Rule::Timeline,
        term,
        format!("label is anchored to relative time ({list}); record an absolute date or event instead"),
    )]
}

pub fn check_concept_bomb(term: &Term, cfg: &ComplexityConfig, lex: &Lexicons) -> Vec<Finding> {
    let norm = term.normalized_label();
    let toks = tokens(&norm);
    let long = toks.len() >= cfg.concept_bomb_token_threshold;
    let numeric = toks.iter().any(|t| t.chars().all(|c| c.is_ascii_digit()));
    let temporal = numeric && !timeline_hits(&toks, lex).is_empty();
    if !long && !temporal {
        return Vec::new();
    }
    let why = match (long, temporal) {
        (true, true) => format!("{} tokens with a quantified time window", toks.len()),
        (true, false) => format!("{} tokens", toks.len()),
        _ => "a quantified time window".to_string(),
    };
    vec![Finding::on_term(
        Rule::ConceptBomb,
        term,
        format!("label packs several concepts ({why}); consider separation into individual fields"),
    )]
}

/// Groups live labels by head noun and flags families that look like a
/// combinatorial picklist: one member joins concepts with a conjunction, or
/// at least `word_bomb_min_group` members extend a common base label.
pub fn detect_word_bombs(vocab: &Vocabulary, cfg: &ComplexityConfig) -> Vec<Finding> {
    let mut groups: BTreeMap<String, Vec<(String, &Term)>> = BTreeMap::new();
    for term in vocab.terms().iter().filter(|t| !t.obsolete) {
        let norm = term.normalized_label();
        if let Some(head) = tokens(&norm).last() {
            groups.entry(head.to_string()).or_default().push((norm.clone(), term));
        }
    }
    let mut out = Vec::new();
    for (head, mut members) in groups {
        if members.len() < cfg.word_bomb_min_group {
            continue;
        }
        members.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.handle().cmp(&b.1.handle())));
        let has_conjunction = members.iter().any(|(n, _)| tokens(n).iter().any(|t| CONJUNCTIONS.contains(t)));
        let extensions = |base: &str| {
            let b = tokens(base);
            members
                .iter()
                .filter(|(n, _)| {
                    let t = tokens(n);
                    t.len() > b.len() && t.ends_with(&b)
                })
                .count()
        };
        let many_extensions = members.iter().any(|(base, _)| extensions(base) >= cfg.word_bomb_min_group);
        if !has_conjunction && !many_extensions {
            continue;
        }
        let labels: Vec<&str> = members.iter().map(|(_, t)| t.label.as_str()).collect();
        out.push(
            Finding::on_group(
                Rule::WordBomb,
                head.clone(),
                members.iter().map(|(_, t)| *t),
                format!(
                    "{} labels combine modifiers with the head noun `{head}`: {}",
                    members.len(),
                    labels.join("; ")
                ),
            )
            .suggest(format!("keep `{head}` as the value and capture the modifiers in separate fields")),
        );
    }
    out
}

/// Flags a live term whose label is another live label with extra leading
/// tokens, unless it declares a term with that shorter label as a parent.
pub fn check_redundant_narrowing(vocab: &Vocabulary) -> Vec<Finding> {
    let mut out = Vec::new();
    for term in vocab.terms().iter().filter(|t| !t.obsolete) {
        let norm = term.normalized_label();
        let toks = tokens(&norm);
        let parent_labels: Vec<String> =
            term.parents.iter().filter_map(|p| vocab.get(p)).map(Term::normalized_label).collect();
        let parent_keys: Vec<String> = term.parents.iter().map(|p| vocab.iri_key(p)).collect();
        for k in 1..toks.len() {
            let base = toks[k..].join(" ");
            let live: Vec<&Term> =
                vocab.by_label(&base).iter().map(|i| &vocab.terms()[*i]).filter(|t| !t.obsolete).collect();
            if live.is_empty() {
                continue;
            }
            let declared = parent_labels.contains(&base)
                || live.iter().any(|b| b.iri.as_ref().is_some_and(|iri| parent_keys.contains(&vocab.iri_key(iri))));
            if declared {
                continue;
            }
            let target = live.iter().map(|b| b.handle()).collect::<Vec<_>>().join(", ");
            out.push(
                Finding::on_term(
                    Rule::Narrow,
                    term,
                    format!("label narrows existing `{}` ({target}) without declaring it as a parent", live[0].label),
                )
                .suggest(format!("reuse `{}`", live[0].label)),
            );
        }
    }
    out
}

/// Style of free tag values. Findings carry the value as their subject label;
/// the caller attaches the bearing term.
pub fn check_tag_style(tag_values: &[String], lex: &Lexicons) -> Vec<Finding> {
    let mut out = Vec::new();
    for value in tag_values {
        let norm = normalize_label(value);
        if BOOLEAN_VALUES.contains(&norm.as_str()) {
            let mut f = Finding::new(
                Rule::Boolean,
                format!("tag value `{value}` is a bare boolean and loses its meaning away from its field"),
            )
            .suggest("tag the condition itself, e.g. `primer specification deprecated`");
            f.subject_label = value.clone();
            out.push(f);
            continue;
        }
        if tokens(&norm).first().is_some_and(|t| lex.negative_determiners.contains(*t)) {
            let mut f = Finding::new(
                Rule::NegativeTag,
                format!("tag value `{value}` records an absence; tag what is present instead"),
            );
            f.subject_label = value.clone();
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Iri, PrefixMap, SourceLocation, Synonym};
    use proptest::prelude::*;

    fn t(label: &str) -> Term {
        Term::new(label)
    }

    fn rules(findings: &[Finding]) -> Vec<(Rule, Severity)> {
        findings.iter().map(|f| (f.rule, f.severity)).collect()
    }

    fn lex() -> Lexicons {
        Lexicons::default()
    }

    #[test]
    fn abbreviation_examples() {
        assert_eq!(rules(&check_abbreviation(&t("LFT"), &lex())), vec![(Rule::Abbrev, Severity::Warning)]);
        let bal = check_abbreviation(&t("Bronchoalveolar lavage (BAL)"), &lex());
        assert_eq!(rules(&bal), vec![(Rule::ExpansionStyle, Severity::Info)]);
        assert!(bal[0].suggestion.as_ref().unwrap().contains("Bronchoalveolar lavage"));
        assert!(check_abbreviation(&t("laser"), &lex()).is_empty());
        assert!(check_abbreviation(&t("LASER"), &lex()).is_empty());
        assert!(check_abbreviation(&t("Tachypnea (Rapid Breathing)"), &lex()).is_empty());
        assert_eq!(
            rules(&check_abbreviation(&t("Liver function test (LFT) for ALT"), &lex())),
            vec![(Rule::Abbrev, Severity::Warning)]
        );
        assert!(check_abbreviation(&t("sample 2024"), &lex()).is_empty());
        assert!(check_abbreviation(&t("SARS-CoV-2 infection"), &lex()).is_empty());
        assert_eq!(rules(&check_abbreviation(&t("ABCDEF"), &lex())), vec![]);
    }

    #[test]
    fn negative_examples() {
        assert_eq!(
            rules(&check_negative_phrasing(&t("not diagnostic testing"), &lex())),
            vec![(Rule::Negative, Severity::Warning)]
        );
        assert_eq!(
            rules(&check_negative_phrasing(&t("all meat except lamb"), &lex())),
            vec![(Rule::Negative, Severity::Warning)]
        );
        assert!(check_negative_phrasing(&t("non-parametric test"), &lex()).is_empty());
        assert!(check_negative_phrasing(&t("nonlinear transformation"), &lex()).is_empty());
        assert!(check_negative_phrasing(&t("inorganic"), &lex()).is_empty());
        assert_eq!(
            rules(&check_negative_phrasing(&t("nonproductive cough"), &lex())),
            vec![(Rule::Negative, Severity::Info)]
        );
        assert_eq!(
            rules(&check_negative_phrasing(&t("non-parametric assay"), &lex())),
            vec![(Rule::Negative, Severity::Info)]
        );
        assert!(check_negative_phrasing(&t("knot"), &lex()).is_empty());
    }

    #[test]
    fn conjunction_examples() {
        let f = check_conjunction(&t("chicken or turkey"), &lex());
        assert_eq!(rules(&f), vec![(Rule::Conjunction, Severity::Warning)]);
        assert!(f[0].suggestion.as_ref().unwrap().contains("broader"));
        assert!(check_conjunction(&t("Fisheries and Oceans Canada"), &lex()).is_empty());
        assert!(check_conjunction(&t("harvest season"), &lex()).is_empty());
        assert!(check_conjunction(&t("Department of Health and Social Care"), &lex()).is_empty());
        assert_eq!(
            rules(&check_conjunction(&t("chicken and crop farm"), &lex())),
            vec![(Rule::Conjunction, Severity::Warning)]
        );
        assert!(check_conjunction(&t("organ donor"), &lex()).is_empty());
    }

    #[test]
    fn allowlist_wins_over_capitalization() {
        let mut l = lex();
        l.proper_noun_allowlist.insert("salt and pepper".into());
        assert!(check_conjunction(&t("salt and pepper"), &l).is_empty());
    }

    #[test]
    fn plural_examples() {
        assert_eq!(rules(&check_plural(&t("samples"), &lex())), vec![(Rule::Plural, Severity::Info)]);
        assert!(check_plural(&t("goggles"), &lex()).is_empty());
        assert!(check_plural(&t("cough"), &lex()).is_empty());
        assert!(check_plural(&t("mass"), &lex()).is_empty());
        assert!(check_plural(&t("virus"), &lex()).is_empty());
        assert!(check_plural(&t("analysis"), &lex()).is_empty());
        assert!(check_plural(&t(""), &lex()).is_empty());
    }

    #[test]
    fn colloquial_examples() {
        let belly = check_colloquial(&t("belly"), &lex());
        assert_eq!(rules(&belly), vec![(Rule::Colloquial, Severity::Warning)]);
        assert_eq!(belly[0].suggestion.as_deref(), Some("abdomen"));
        let wet = check_colloquial(&t("wet cough"), &lex());
        assert_eq!(wet[0].suggestion.as_deref(), Some("productive cough"));
        assert!(check_colloquial(&t("abdomen"), &lex()).is_empty());
        let mut pc = t("productive cough");
        pc.synonyms.push(Synonym::exact("Wet cough"));
        assert_eq!(rules(&check_colloquial(&pc, &lex())), vec![(Rule::Colloquial, Severity::Info)]);
    }

    #[test]
    fn colloquial_suggestions_are_clean() {
        let l = lex();
        for preferred in l.colloquial_map.values() {
            assert!(check_colloquial(&t(preferred), &l).is_empty(), "{preferred}");
        }
    }

    #[test]
    fn timeline_examples() {
        assert_eq!(
            rules(&check_timeline(&t("most recent test date"), &lex())),
            vec![(Rule::Timeline, Severity::Warning)]
        );
        assert!(check_timeline(&t("collection date"), &lex()).is_empty());
        assert_eq!(
            rules(&check_timeline(&t("last vaccination date"), &lex())),
            vec![(Rule::Timeline, Severity::Warning)]
        );
        assert!(check_timeline(&t("lastly measured"), &lex()).is_empty());
    }

    #[test]
    fn concept_bomb_examples() {
        let cfg = ComplexityConfig::default();
        assert_eq!(
            rules(&check_concept_bomb(
                &t("previous SARS-CoV-2 infection in the last 6 months with treatment"),
                &cfg,
                &lex()
            )),
            vec![(Rule::ConceptBomb, Severity::Warning)]
        );
        assert!(check_concept_bomb(&t("cough"), &cfg, &lex()).is_empty());
        assert!(check_concept_bomb(&t("host age at collection"), &cfg, &lex()).is_empty());
        assert_eq!(rules(&check_concept_bomb(&t("infection in last 6 months"), &cfg, &lex())).len(), 1);
    }

    fn vocab_of(labels: &[&str]) -> Vocabulary {
        let terms = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let mut term = t(l).with_iri(&format!("X:{i}"));
                term.location = Some(SourceLocation::new("v.tsv", i + 2));
                term
            })
            .collect();
        Vocabulary::new(terms, PrefixMap::new())
    }

    #[test]
    fn word_bomb_examples() {
        let cfg = ComplexityConfig::default();
        let farms =
            vocab_of(&["farm", "fish farm", "turkey farm", "chicken farm", "crop farm", "chicken and crop farm"]);
        let f = detect_word_bombs(&farms, &cfg);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].subject_label, "farm");
        assert_eq!(f[0].subject_iris.len(), 6);
        assert_eq!(f[0].location.as_ref().unwrap().line, 2);
        let coughs = vocab_of(&["cough", "productive cough", "nonproductive cough", "chronic cough"]);
        assert!(detect_word_bombs(&coughs, &cfg).is_empty());
        assert!(detect_word_bombs(&Vocabulary::default(), &cfg).is_empty());
        // Five plain extensions of a common base also qualify.
        let plain = vocab_of(&["farm", "fish farm", "turkey farm", "chicken farm", "crop farm", "dairy farm"]);
        assert_eq!(detect_word_bombs(&plain, &cfg).len(), 1);
        // Same head noun but no conjunction and no shared base.
        let loose = vocab_of(&["fish farm", "turkey farm", "chicken farm", "crop farm", "dairy farm"]);
        assert!(detect_word_bombs(&loose, &cfg).is_empty());
    }

    #[test]
    fn word_bomb_ignores_obsolete() {
        let mut v =
            vocab_of(&["farm", "fish farm", "turkey farm", "chicken farm", "crop farm", "chicken and crop farm"])
                .into_terms();
        v[5].obsolete = true;
        v[4].obsolete = true;
        let vocab = Vocabulary::new(v, PrefixMap::new());
        assert!(detect_word_bombs(&vocab, &ComplexityConfig::default()).is_empty());
    }

    #[test]
    fn narrowing_examples() {
        let v = vocab_of(&["purpose of sequencing", "wastewater purpose of sequencing"]);
        let f = check_redundant_narrowing(&v);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].subject_label, "wastewater purpose of sequencing");
        let mut terms = vocab_of(&["cough", "productive cough"]).into_terms();
        terms[1].parents.push(Iri::new("X:0").unwrap());
        assert!(check_redundant_narrowing(&Vocabulary::new(terms, PrefixMap::new())).is_empty());
        assert!(check_redundant_narrowing(&vocab_of(&["cough"])).is_empty());
    }

    #[test]
    fn narrowing_exemption_by_parent_label() {
        // Parent is a different term that happens to carry the base label.
        let mut terms = vocab_of(&["cough", "cough", "productive cough"]).into_terms();
        terms[2].parents.push(Iri::new("X:1").unwrap());
        assert!(check_redundant_narrowing(&Vocabulary::new(terms, PrefixMap::new())).is_empty());
    }

    #[test]
    fn tag_style_examples() {
        let vals = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let f = check_tag_style(&vals(&["yes", "no"]), &lex());
        assert_eq!(rules(&f), vec![(Rule::Boolean, Severity::Warning), (Rule::Boolean, Severity::Warning)]);
        assert_eq!(f[1].subject_label, "no");
        assert!(check_tag_style(&vals(&["primer specification deprecated"]), &lex()).is_empty());
        assert_eq!(
            rules(&check_tag_style(&vals(&["no quality issues identified"]), &lex())),
            vec![(Rule::NegativeTag, Severity::Info)]
        );
        assert_eq!(check_tag_style(&vals(&["TRUE", "N"]), &lex()).len(), 2);
    }

    proptest! {
        #[test]
        fn concept_bomb_monotone(words in proptest::collection::vec("[a-z]{1,6}|[0-9]{1,2}|last|previous", 1..14), t1 in 2usize..15) {
            let label = words.join(" ");
            let term = t(&label);
            let l = lex();
            let fires = |th: usize| !check_concept_bomb(&term, &ComplexityConfig { concept_bomb_token_threshold: th, word_bomb_min_group: 5 }, &l).is_empty();
            if fires(t1) {
                for lower in 2..=t1 {
                    prop_assert!(fires(lower));
                }
            }
        }

        #[test]
        fn word_bombs_order_independent(mut labels in proptest::collection::vec("(fish|crop|chicken|and|turkey|dairy) (farm|pond)|farm|pond", 0..14), seed in any::<u64>()) {
            let cfg = ComplexityConfig::default();
            let a = detect_word_bombs(&vocab_of(&labels.iter().map(String::as_str).collect::<Vec<_>>()), &cfg);
            use rand::{seq::SliceRandom, SeedableRng};
            labels.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let b = detect_word_bombs(&vocab_of(&labels.iter().map(String::as_str).collect::<Vec<_>>()), &cfg);
            let key = |f: &Vec<Finding>| f.iter().map(|x| (x.subject_label.clone(), x.subject_iris.len(), x.message.clone())).collect::<Vec<_>>();
            prop_assert_eq!(key(&a), key(&b));
        }

        #[test]
        fn checks_are_deterministic(label in "[A-Za-z ()-]{0,30}") {
            let term = t(&label);
            let l = lex();
            prop_assert_eq!(check_abbreviation(&term, &l), check_abbreviation(&term, &l));
            prop_assert_eq!(check_negative_phrasing(&term, &l), check_negative_phrasing(&term, &l));
            prop_assert_eq!(check_conjunction(&term, &l), check_conjunction(&term, &l));
        }
    }
}
