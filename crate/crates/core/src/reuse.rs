//! Search reference vocabularies for terms that already cover a concept.
//!
//! Scoring per indexed phrase (weights configurable):
//!
//! | match          | score                                           |
//! |----------------|-------------------------------------------------|
//! | exact label    | 1.0                                             |
//! | exact synonym  | 0.9                                             |
//! | other synonym  | 0.8                                             |
//! | token overlap  | 0.7 x Jaccard(query tokens, phrase tokens)      |
//! | fuzzy          | 0.6 x (1 - d / max len), only when d / max len <= 0.25 |
//!
//! `d` is unit-cost character edit distance over normalized text. A term
//! keeps its best score; equal scores prefer the kind listed first above.
//! Results sort by score, then by the number of reference vocabularies that
//! contain the term, then by expanded IRI.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{normalize_label, tokens, Iri, SynonymScope, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhraseKind {
    Label,
    ExactSynonym,
    OtherSynonym,
}

/// Declaration order is tie-break priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchKind {
    ExactLabel,
    ExactSynonym,
    OtherSynonym,
    TokenOverlap,
    Fuzzy,
}

impl MatchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchKind::ExactLabel => "exact_label",
            MatchKind::ExactSynonym => "exact_synonym",
            MatchKind::OtherSynonym => "other_synonym",
            MatchKind::TokenOverlap => "token_overlap",
            MatchKind::Fuzzy => "fuzzy",
        }
    }
}

impl From<PhraseKind> for MatchKind {
    fn from(kind: PhraseKind) -> Self {
        match kind {
            PhraseKind::Label => MatchKind::ExactLabel,
            PhraseKind::ExactSynonym => MatchKind::ExactSynonym,
            PhraseKind::OtherSynonym => MatchKind::OtherSynonym,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoreWeights {
    pub exact_label: f64,
    pub exact_synonym: f64,
    pub other_synonym: f64,
    pub token_overlap: f64,
    pub fuzzy: f64,
    /// Largest edit distance, relative to the longer phrase, that still counts.
    pub fuzzy_max_distance: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights {
            exact_label: 1.0,
            exact_synonym: 0.9,
            other_synonym: 0.8,
            token_overlap: 0.7,
            fuzzy: 0.6,
            fuzzy_max_distance: 0.25,
        }
    }
}

impl ScoreWeights {
    pub fn validate(&self) -> Result<(), ReuseError> {
        let all = [
            self.exact_label,
            self.exact_synonym,
            self.other_synonym,
            self.token_overlap,
            self.fuzzy,
            self.fuzzy_max_distance,
        ];
        if all.iter().all(|w| (0.0..=1.0).contains(w)) {
            Ok(())
        } else {
            Err(ReuseError::InvalidWeights)
        }
    }

    pub fn exact(&self, kind: PhraseKind) -> f64 {
        match kind {
            PhraseKind::Label => self.exact_label,
            PhraseKind::ExactSynonym => self.exact_synonym,
            PhraseKind::OtherSynonym => self.other_synonym,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReuseError {
    #[error("query is empty after normalization")]
    EmptyQuery,
    #[error("result count must be at least 1")]
    ZeroResults,
    #[error("score weights must lie in [0, 1]")]
    InvalidWeights,
}

/// A reference term, merged across vocabularies by expanded IRI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedTerm {
    pub iri: Iri,
    pub key: String,
    pub label: String,
}

pub type TermRef = usize;

#[derive(Debug, Clone, Default)]
pub struct ReuseIndex {
    terms: Vec<IndexedTerm>,
    entries: BTreeMap<String, Vec<(TermRef, PhraseKind)>>,
    token_index: BTreeMap<String, BTreeSet<TermRef>>,
    source_count: BTreeMap<String, usize>,
    phrase_tokens: BTreeMap<String, BTreeSet<String>>,
    phrases_by_token: HashMap<String, Vec<String>>,
    phrases_by_len: BTreeMap<usize, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Suggestion {
    pub iri: Iri,
    pub label: String,
    pub score: f64,
    pub match_kind: MatchKind,
    pub matched_phrase: String,
    pub reuse_count: usize,
}

pub fn build_index(references: &[Vocabulary]) -> ReuseIndex {
    let mut index = ReuseIndex::default();
    let mut by_key: BTreeMap<String, TermRef> = BTreeMap::new();
    let mut sources: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    let mut entries: BTreeMap<String, BTreeSet<(TermRef, PhraseKind)>> = BTreeMap::new();
    for (source, vocab) in references.iter().enumerate() {
        for term in vocab.terms().iter().filter(|t| !t.obsolete) {
            let Some(iri) = &term.iri else { continue };
            let key = vocab.iri_key(iri);
            let id = *by_key.entry(key.clone()).or_insert_with(|| {
                index.terms.push(IndexedTerm { iri: iri.clone(), key: key.clone(), label: term.label.clone() });
                index.terms.len() - 1
            });
            sources.entry(key).or_default().insert(source);
            let synonyms = term.synonyms.iter().map(|s| {
                let kind =
                    if s.scope == SynonymScope::Exact { PhraseKind::ExactSynonym } else { PhraseKind::OtherSynonym };
                (normalize_label(&s.text), kind)
            });
            for (phrase, kind) in std::iter::once((term.normalized_label(), PhraseKind::Label)).chain(synonyms) {
                if !phrase.is_empty() {
                    entries.entry(phrase).or_default().insert((id, kind));
                }
            }
        }
    }
    index.source_count = sources.into_iter().map(|(k, v)| (k, v.len())).collect();
    for (phrase, refs) in entries {
        let toks: BTreeSet<String> = tokens(&phrase).into_iter().map(str::to_string).collect();
        for tok in &toks {
            index.token_index.entry(tok.clone()).or_default().extend(refs.iter().map(|(t, _)| *t));
            index.phrases_by_token.entry(tok.clone()).or_default().push(phrase.clone());
        }
        index.phrases_by_len.entry(phrase.chars().count()).or_default().push(phrase.clone());
        index.phrase_tokens.insert(phrase.clone(), toks);
        index.entries.insert(phrase, refs.into_iter().collect());
    }
    index
}

impl ReuseIndex {
    pub fn terms(&self) -> &[IndexedTerm] {
        &self.terms
    }

    /// Normalized phrase to the terms bearing it, with the phrase's role.
    pub fn entries(&self) -> &BTreeMap<String, Vec<(TermRef, PhraseKind)>> {
        &self.entries
    }

    pub fn token_index(&self) -> &BTreeMap<String, BTreeSet<TermRef>> {
        &self.token_index
    }

    /// Number of distinct reference vocabularies per expanded IRI.
    pub fn source_count(&self, key: &str) -> usize {
        self.source_count.get(key).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn phrase_count(&self) -> usize {
        self.entries.len()
    }
}

/// Full dynamic-programming edit distance over characters.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for i in 1..=a.len() {
        cur[0] = i;
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Edit distance when it is at most `bound`, computed inside a diagonal band.
pub fn bounded_levenshtein(a: &[char], b: &[char], bound: usize) -> Option<usize> {
    if a.len().abs_diff(b.len()) > bound {
        return None;
    }
    const FAR: usize = usize::MAX / 2;
    let mut prev = vec![FAR; b.len() + 1];
    let mut cur = vec![FAR; b.len() + 1];
    for (j, cell) in prev.iter_mut().enumerate().take(bound.min(b.len()) + 1) {
        *cell = j;
    }
    for i in 1..=a.len() {
        let lo = i.saturating_sub(bound).max(1);
        let hi = (i + bound).min(b.len());
        cur.fill(FAR);
        if i <= bound {
            cur[0] = i;
        }
        let mut row_min = cur[0];
        for j in lo..=hi {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
            row_min = row_min.min(cur[j]);
        }
        if row_min > bound {
            return None;
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    (prev[b.len()] <= bound).then_some(prev[b.len()])
}

#[derive(Clone, Copy)]
struct Candidate<'a> {
    score: f64,
    kind: MatchKind,
    phrase: &'a str,
}

fn better(new: &Candidate, old: &Candidate) -> bool {
    match new.score.partial_cmp(&old.score) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Equal) => (new.kind, new.phrase) < (old.kind, old.phrase),
        _ => false,
    }
}

pub fn suggest_terms(
    index: &ReuseIndex,
    query: &str,
    k: usize,
    weights: &ScoreWeights,
) -> Result<Vec<Suggestion>, ReuseError> {
    if k == 0 {
        return Err(ReuseError::ZeroResults);
    }
    let q = normalize_label(query);
    if q.is_empty() {
        return Err(ReuseError::EmptyQuery);
    }
    let mut best: BTreeMap<TermRef, Candidate> = BTreeMap::new();
    let mut offer = |phrase: &str, scored: Option<(f64, MatchKind)>| {
        let Some((phrase, refs)) = index.entries.get_key_value(phrase) else { return };
        for &(t, pk) in refs {
            let (score, kind) = scored.unwrap_or((weights.exact(pk), pk.into()));
            let cand = Candidate { score, kind, phrase };
            if best.get(&t).is_none_or(|old| better(&cand, old)) {
                best.insert(t, cand);
            }
        }
    };

    offer(&q, None);
    let q_tokens: BTreeSet<&str> = tokens(&q).into_iter().collect();
    let mut overlapping: BTreeSet<&str> = BTreeSet::new();
    for tok in &q_tokens {
        if let Some(phrases) = index.phrases_by_token.get(*tok) {
            overlapping.extend(phrases.iter().map(String::as_str));
        }
    }
    for phrase in overlapping {
        let p_tokens = &index.phrase_tokens[phrase];
        let inter = p_tokens.iter().filter(|t| q_tokens.contains(t.as_str())).count();
        let union = q_tokens.len() + p_tokens.len() - inter;
        offer(phrase, Some((weights.token_overlap * (inter as f64 / union as f64), MatchKind::TokenOverlap)));
    }

    let q_chars: Vec<char> = q.chars().collect();
    let qn = q_chars.len();
    // d >= |len difference|, so lengths outside this window cannot qualify.
    let ratio = weights.fuzzy_max_distance;
    let lo = ((qn as f64) * (1.0 - ratio)).floor() as usize;
    let hi = if ratio < 1.0 { ((qn as f64) / (1.0 - ratio)).ceil() as usize } else { usize::MAX };
    for (&len, phrases) in index.phrases_by_len.range(lo..=hi) {
        let max_len = len.max(qn);
        let bound = (ratio * max_len as f64 + 1e-9).floor() as usize;
        for phrase in phrases {
            let p_chars: Vec<char> = phrase.chars().collect();
            let Some(d) = bounded_levenshtein(&q_chars, &p_chars, bound) else { continue };
            let rel = d as f64 / max_len as f64;
            if rel <= ratio {
                offer(phrase, Some((weights.fuzzy * (1.0 - rel), MatchKind::Fuzzy)));
            }
        }
    }

    let mut ranked: Vec<(TermRef, Candidate)> = best.into_iter().collect();
    ranked.sort_by(|(ta, a), (tb, b)| {
        let (ia, ib) = (&index.terms[*ta], &index.terms[*tb]);
        b.score
            .total_cmp(&a.score)
            .then(index.source_count(&ib.key).cmp(&index.source_count(&ia.key)))
            .then_with(|| ia.key.cmp(&ib.key))
    });
    ranked.truncate(k);
    Ok(ranked
        .into_iter()
        .map(|(t, c)| {
            let term = &index.terms[t];
            Suggestion {
                iri: term.iri.clone(),
                label: term.label.clone(),
                score: c.score,
                match_kind: c.kind,
                matched_phrase: c.phrase.to_string(),
                reuse_count: index.source_count(&term.key),
            }
        })
        .collect())
}
