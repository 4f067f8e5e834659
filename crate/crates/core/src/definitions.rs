//! Definition checks: presence, genus-differentia form, uniqueness and
//! circularity.
//!
//! The mention graph has one node per identifier key (terms without an
//! identifier get a synthetic key from their source position). An edge
//! `T -> U` exists when the label of `U` occurs as a contiguous token run in
//! the body of `T`'s definition. When the first sentence has genus-differentia
//! form, the leading subject phrase (`A <label> is a`) is not part of the body,
//! so a well-formed definition never mentions itself through its subject.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::catalog::Rule;
use crate::model::{contains_subsequence, normalize_label, tokens, Finding, Term, TermIdx, Vocabulary};

/// Cycles reported per run.
pub const MAX_REPORTED_CYCLES: usize = 100;

/// Positions inside the normalized token list of a definition's first
/// sentence that satisfy `[a|an] SUBJECT is a|an GENUS that|which DIFFERENTIA`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusDifferentia {
    /// Index of the copula `is`.
    pub copula: usize,
    /// Index of the connective `that`/`which`.
    pub connective: usize,
}

impl GenusDifferentia {
    /// Tokens between the copula's article and the connective.
    pub fn genus<'a>(&self, toks: &'a [&'a str]) -> &'a [&'a str] {
        &toks[self.copula + 2..self.connective]
    }

    /// Number of leading tokens that make up the subject phrase and copula.
    pub fn subject_len(&self) -> usize {
        self.copula + 2
    }
}

/// Text up to the first `.` that is followed by whitespace or the end.
pub fn first_sentence(text: &str) -> &str {
    let bytes = text.as_bytes();
    for (i, b) in bytes.iter().enumerate() {
        if *b == b'.' && bytes.get(i + 1).is_none_or(|n| n.is_ascii_whitespace()) {
            return &text[..i];
        }
    }
    text
}

/// Leftmost match of the genus-differentia pattern over normalized tokens.
pub fn match_genus_differentia(toks: &[&str]) -> Option<GenusDifferentia> {
    let start = usize::from(matches!(toks.first(), Some(&"a") | Some(&"an")));
    // At least one subject token before the copula.
    for copula in start + 1..toks.len() {
        if toks[copula] != "is" || !matches!(toks.get(copula + 1), Some(&"a") | Some(&"an")) {
            continue;
        }
        // At least one genus token, then the connective, then a non-empty differentia.
        let last = toks.len().saturating_sub(1);
        if let Some(connective) = (copula + 3..last).find(|&i| matches!(toks[i], "that" | "which")) {
            return Some(GenusDifferentia { copula, connective });
        }
    }
    None
}

pub fn check_definition_present(term: &Term) -> Vec<Finding> {
    match &term.definition {
        None if !term.obsolete => {
            vec![Finding::on_term(Rule::MissingDef, term, "term has no definition")]
        }
        Some(def) if def.sources.is_empty() => vec![Finding::on_term(
            Rule::MissingSource,
            term,
            "definition has no source; provide sources for definitions",
        )],
        _ => Vec::new(),
    }
}

pub fn check_genus_differentia(term: &Term, vocab: &Vocabulary) -> Vec<Finding> {
    let Some(def) = &term.definition else { return Vec::new() };
    let sentence = normalize_label(first_sentence(&def.text));
    let toks = tokens(&sentence);
    let Some(m) = match_genus_differentia(&toks) else {
        return vec![Finding::on_term(
            Rule::Form,
            term,
            "definition does not follow the form `A <term> is a <parent class> that <differentia>`",
        )];
    };
    if term.parents.is_empty() {
        return Vec::new();
    }
    let genus = m.genus(&toks);
    let parent_labels: Vec<String> =
        term.parents.iter().filter_map(|p| vocab.get(p)).map(Term::normalized_label).collect();
    if parent_labels.iter().any(|p| contains_subsequence(genus, &tokens(p))) {
        return Vec::new();
    }
    let names = if parent_labels.is_empty() {
        term.parents.iter().map(|p| format!("`{p}`")).collect::<Vec<_>>().join(", ")
    } else {
        parent_labels.iter().map(|p| format!("`{p}`")).collect::<Vec<_>>().join(", ")
    };
    vec![Finding::on_term(
        Rule::GenusMismatch,
        term,
        format!(
            "genus `{}` does not name a parent class ({names}); start the definition by stating the parent class",
            genus.join(" ")
        ),
    )]
}

pub fn check_definition_uniqueness(vocab: &Vocabulary) -> Vec<Finding> {
    let mut groups: BTreeMap<String, Vec<&Term>> = BTreeMap::new();
    for term in vocab.terms().iter().filter(|t| !t.obsolete) {
        if let Some(def) = &term.definition {
            let norm = normalize_label(&def.text);
            if !norm.is_empty() {
                groups.entry(norm).or_default().push(term);
            }
        }
    }
    groups
        .into_values()
        .filter(|g| g.len() >= 2)
        .map(|mut members| {
            members.sort_by_key(|t| (t.location.clone(), t.handle()));
            let labels: Vec<&str> = members.iter().map(|t| t.label.as_str()).collect();
            Finding::on_group(
                Rule::DuplicateDef,
                labels.join(", "),
                members.iter().copied(),
                format!(
                    "{} terms share one definition; they should be combined via synonymy or further differentiated",
                    members.len()
                ),
            )
        })
        .collect()
}

/// Definition-mention graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinitionGraph {
    /// Node keys in ascending order; node ids index this list.
    pub keys: Vec<String>,
    /// Terms carried by each node, in vocabulary order.
    pub members: Vec<Vec<TermIdx>>,
    /// Sorted, deduplicated successor lists. May contain self-edges.
    pub edges: Vec<Vec<usize>>,
    /// Terms whose own definition body mentions their own label.
    pub self_mentions: Vec<TermIdx>,
}

/// Comparison key for a term as a graph node.
pub fn node_key(vocab: &Vocabulary, idx: TermIdx) -> String {
    let term = &vocab.terms()[idx];
    match (&term.iri, &term.location) {
        (Some(iri), _) => vocab.iri_key(iri),
        (None, Some(loc)) => loc.to_string(),
        (None, None) => format!("#{idx}"),
    }
}

/// Normalized tokens of the part of a definition that may mention other terms.
pub fn definition_body(text: &str) -> Vec<String> {
    let all = normalize_label(text);
    let all_toks = tokens(&all);
    let sentence = normalize_label(first_sentence(text));
    let skip = match_genus_differentia(&tokens(&sentence)).map_or(0, |m| m.subject_len());
    all_toks[skip..].iter().map(|s| s.to_string()).collect()
}

impl DefinitionGraph {
    pub fn build(vocab: &Vocabulary) -> Self {
        let mut key_of: Vec<String> = Vec::with_capacity(vocab.len());
        let mut node_of_key: BTreeMap<String, usize> = BTreeMap::new();
        for idx in 0..vocab.len() {
            let key = node_key(vocab, idx);
            node_of_key.entry(key.clone()).or_insert(0);
            key_of.push(key);
        }
        let keys: Vec<String> = node_of_key.keys().cloned().collect();
        for (i, v) in node_of_key.values_mut().enumerate() {
            *v = i;
        }
        let node: Vec<usize> = key_of.iter().map(|k| node_of_key[k]).collect();
        let mut members = vec![Vec::new(); keys.len()];
        for (idx, n) in node.iter().enumerate() {
            members[*n].push(idx);
        }

        let mut by_label: HashMap<String, Vec<usize>> = HashMap::new();
        let mut max_len = 0;
        for (idx, term) in vocab.terms().iter().enumerate() {
            let norm = term.normalized_label();
            if norm.is_empty() {
                continue;
            }
            max_len = max_len.max(tokens(&norm).len());
            by_label.entry(norm).or_default().push(node[idx]);
        }

        let mut edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); keys.len()];
        let mut self_mentions = Vec::new();
        for (idx, term) in vocab.terms().iter().enumerate() {
            let Some(def) = &term.definition else { continue };
            let body = definition_body(&def.text);
            let own = term.normalized_label();
            let mut mentions_self = false;
            for start in 0..body.len() {
                let mut phrase = String::new();
                for len in 1..=max_len.min(body.len() - start) {
                    if len > 1 {
                        phrase.push(' ');
                    }
                    phrase.push_str(&body[start + len - 1]);
                    if let Some(targets) = by_label.get(&phrase) {
                        edges[node[idx]].extend(targets.iter().copied());
                        mentions_self |= phrase == own;
                    }
                }
            }
            if mentions_self {
                self_mentions.push(idx);
            }
        }
        DefinitionGraph {
            keys,
            members,
            edges: edges.into_iter().map(|s| s.into_iter().collect()).collect(),
            self_mentions,
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Simple cycles of length at least 2, each rotated to start at its least
    /// node, in lexicographic order, at most `cap` of them.
    pub fn cycles(&self, cap: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for scc in strongly_connected(&self.edges, &vec![true; self.len()]) {
            if scc.len() < 2 {
                continue;
            }
            let mut in_scc = vec![false; self.len()];
            for v in &scc {
                in_scc[*v] = true;
            }
            let mut found = Vec::new();
            for &s in &scc {
                // Restrict to nodes >= s inside this component.
                let allowed: Vec<bool> = (0..self.len()).map(|v| in_scc[v] && v >= s).collect();
                let Some(component) = strongly_connected(&self.edges, &allowed).into_iter().find(|c| c.contains(&s))
                else {
                    continue;
                };
                if component.len() < 2 {
                    continue;
                }
                let mut within = vec![false; self.len()];
                for v in component {
                    within[v] = true;
                }
                circuits_from(s, &self.edges, &within, cap, &mut found);
                if found.len() >= cap {
                    break;
                }
            }
            out.extend(found);
        }
        out.sort();
        out.truncate(cap);
        out
    }
}

/// Tarjan's algorithm over the nodes marked `allowed`, iterative. Components
/// are returned with their nodes sorted, ordered by least node.
fn strongly_connected(edges: &[Vec<usize>], allowed: &[bool]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut out = Vec::new();
    for root in 0..n {
        if !allowed[root] || index[root] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = frames.last_mut() {
            if let Some(&w) = edges[v].get(*i) {
                *i += 1;
                if !allowed[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                out.push(comp);
            }
        }
    }
    out.sort();
    out
}

/// Johnson's circuit search from `s` within `within`, iterative.
fn circuits_from(s: usize, edges: &[Vec<usize>], within: &[bool], cap: usize, out: &mut Vec<Vec<usize>>) {
    let n = edges.len();
    let mut blocked = vec![false; n];
    let mut blocked_by: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut path = vec![s];
    blocked[s] = true;
    // (node, next successor position, closed a circuit below)
    let mut frames: Vec<(usize, usize, bool)> = vec![(s, 0, false)];
    while let Some(frame) = frames.last_mut() {
        let v = frame.0;
        if let Some(&w) = edges[v].get(frame.1) {
            frame.1 += 1;
            if !within[w] || w == v {
                continue;
            }
            if w == s {
                out.push(path.clone());
                frame.2 = true;
                if out.len() >= cap {
                    return;
                }
            } else if !blocked[w] {
                path.push(w);
                blocked[w] = true;
                frames.push((w, 0, false));
            }
            continue;
        }
        let (_, _, found) = frames.pop().expect("frame");
        if found {
            let mut pending = vec![v];
            while let Some(u) = pending.pop() {
                if blocked[u] {
                    blocked[u] = false;
                    pending.extend(std::mem::take(&mut blocked_by[u]));
                }
            }
        } else {
            for &w in &edges[v] {
                if within[w] {
                    blocked_by[w].insert(v);
                }
            }
        }
        path.pop();
        if let Some(parent) = frames.last_mut() {
            parent.2 |= found;
        }
    }
}

pub fn detect_circular_definitions(vocab: &Vocabulary) -> Vec<Finding> {
    let graph = DefinitionGraph::build(vocab);
    let mut out: Vec<Finding> = graph
        .self_mentions
        .iter()
        .map(|&idx| {
            let term = &vocab.terms()[idx];
            Finding::on_term(Rule::SelfRef, term, "definition uses the term's own label")
        })
        .collect();
    for cycle in graph.cycles(MAX_REPORTED_CYCLES) {
        let terms: Vec<&Term> = cycle.iter().map(|&n| &vocab.terms()[graph.members[n][0]]).collect();
        let mut chain: Vec<&str> = terms.iter().map(|t| t.label.as_str()).collect();
        chain.push(chain[0]);
        let path = chain.join(" -> ");
        out.push(Finding::on_group(
            Rule::Circular,
            path.clone(),
            terms.iter().copied(),
            format!("definitions are circular: {path}; define each term without relying on the others"),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Severity;
    use crate::model::{Definition, Iri, PrefixMap, SourceLocation};
    use proptest::prelude::*;

    fn defined(label: &str, iri: &str, text: &str) -> Term {
        let mut t = Term::new(label).with_iri(iri);
        t.definition = Some(Definition { text: text.into(), sources: vec!["PMID:1".into()] });
        t
    }

    fn vocab(terms: Vec<Term>) -> Vocabulary {
        Vocabulary::new(terms, PrefixMap::new())
    }

    fn rules(f: &[Finding]) -> Vec<Rule> {
        f.iter().map(|x| x.rule).collect()
    }

    #[test]
    fn presence() {
        assert_eq!(rules(&check_definition_present(&Term::new("x"))), vec![Rule::MissingDef]);
        let mut obsolete = Term::new("obsolete x");
        obsolete.obsolete = true;
        assert!(check_definition_present(&obsolete).is_empty());
        assert!(check_definition_present(&defined("x", "X:1", "A x is a y that z.")).is_empty());
        let mut unsourced = defined("x", "X:1", "text");
        unsourced.definition.as_mut().unwrap().sources.clear();
        let f = check_definition_present(&unsourced);
        assert_eq!(rules(&f), vec![Rule::MissingSource]);
        assert_eq!(f[0].severity, Severity::Info);
    }

    #[test]
    fn pattern_matching() {
        let m = |s: &str| {
            let n = normalize_label(s);
            match_genus_differentia(&tokens(&n)).map(|g| g.genus(&tokens(&n)).join(" "))
        };
        assert_eq!(m("A productive cough is a cough that produces mucus"), Some("cough".into()));
        assert_eq!(m("Tachypnea is an abnormal breathing which is rapid"), Some("abnormal breathing".into()));
        assert_eq!(m("Made from unleavened wheat flour dough and water"), None);
        assert_eq!(m("A thing is a stuff that"), None);
        assert_eq!(m("is a stuff that matters"), None);
        assert_eq!(m("A x is a that y"), None);
        assert_eq!(first_sentence("A b is a c that d. More text. x"), "A b is a c that d");
        assert_eq!(first_sentence("v1.2 is fine. x"), "v1.2 is fine");
        assert_eq!(first_sentence("no period"), "no period");
    }

    #[test]
    fn genus_examples() {
        let cough = defined("cough", "X:1", "A cough is a reflex that clears the airway.");
        let mut pc = defined("productive cough", "X:2", "A productive cough is a cough that produces mucus.");
        pc.parents.push(Iri::new("X:1").unwrap());
        let v = vocab(vec![cough, pc.clone()]);
        assert!(check_genus_differentia(&pc, &v).is_empty());

        let form = defined("pasta", "X:3", "Made from unleavened wheat flour dough and water.");
        assert_eq!(rules(&check_genus_differentia(&form, &v)), vec![Rule::Form]);

        let sprocket = defined("sprocket", "X:4", "A sprocket is a wheel that has teeth.");
        let mut widget = defined("widget", "X:5", "A widget is a gadget that spins.");
        widget.parents.push(Iri::new("X:4").unwrap());
        let v = vocab(vec![sprocket, widget.clone()]);
        let f = check_genus_differentia(&widget, &v);
        assert_eq!(rules(&f), vec![Rule::GenusMismatch]);
        assert!(f[0].message.contains("stating the parent class"));
        assert!(check_genus_differentia(&Term::new("none"), &v).is_empty());
    }

    #[test]
    fn genus_accepts_any_parent() {
        let a = defined("fluid", "X:1", "x");
        let b = defined("specimen", "X:2", "x");
        let mut t = defined("blood specimen", "X:3", "A blood specimen is a specimen that contains blood.");
        t.parents = vec![Iri::new("X:1").unwrap(), Iri::new("X:2").unwrap()];
        assert!(check_genus_differentia(&t, &vocab(vec![a, b, t.clone()])).is_empty());
    }

    #[test]
    fn uniqueness() {
        let a = defined("harvest season", "X:1", "The period when crops are gathered.");
        let b = defined("harvest period", "X:2", "The period when crops are gathered");
        let c = defined("harvest", "X:3", "Gathering crops.");
        let f = check_definition_uniqueness(&vocab(vec![a.clone(), b.clone(), c]));
        assert_eq!(rules(&f), vec![Rule::DuplicateDef]);
        assert_eq!(f[0].subject_iris.len(), 2);
        assert!(f[0].message.contains("combined via synonymy"));
        let mut obsolete = b;
        obsolete.obsolete = true;
        assert!(check_definition_uniqueness(&vocab(vec![a, obsolete])).is_empty());
    }

    #[test]
    fn mutual_and_self_reference() {
        let sputum = defined("sputum", "X:1", "Mucus coughed up from the airway, also called phlegm.");
        let phlegm = defined("phlegm", "X:2", "Thick secretion; see sputum.");
        let f = detect_circular_definitions(&vocab(vec![sputum, phlegm]));
        assert_eq!(rules(&f), vec![Rule::Circular]);
        assert_eq!(f[0].subject_label, "sputum -> phlegm -> sputum");
        let selfish = defined("cough", "X:3", "To cough is to cough.");
        assert_eq!(rules(&detect_circular_definitions(&vocab(vec![selfish]))), vec![Rule::SelfRef]);
        let fine = defined("productive cough", "X:4", "A productive cough is a cough that produces mucus.");
        assert!(detect_circular_definitions(&vocab(vec![fine])).is_empty());
    }

    #[test]
    fn no_substring_mentions() {
        let a = defined("cough", "X:1", "A cough is a reflex that involves coughing sounds.");
        let b = defined("reflex", "X:2", "An automatic response to coughing.");
        assert!(detect_circular_definitions(&vocab(vec![a, b])).is_empty());
    }

    #[test]
    fn three_cycle_reported_once() {
        let a = defined("alpha", "X:3", "relates to beta");
        let b = defined("beta", "X:1", "relates to gamma");
        let c = defined("gamma", "X:2", "relates to alpha");
        let f = detect_circular_definitions(&vocab(vec![a, b, c]));
        assert_eq!(f.len(), 1);
        let iris: Vec<&str> = f[0].subject_iris.iter().map(Iri::as_str).collect();
        assert_eq!(iris, vec!["X:1", "X:2", "X:3"]);
    }

    #[test]
    fn iri_less_nodes_use_position() {
        let mut a = Term::new("alpha");
        a.definition = Some(Definition { text: "see beta".into(), sources: vec![] });
        a.location = Some(SourceLocation::new("f.tsv", 2));
        let mut b = Term::new("beta");
        b.definition = Some(Definition { text: "see alpha".into(), sources: vec![] });
        b.location = Some(SourceLocation::new("f.tsv", 3));
        let g = DefinitionGraph::build(&vocab(vec![a, b]));
        assert_eq!(g.keys, vec!["f.tsv:2", "f.tsv:3"]);
        assert_eq!(g.cycles(10), vec![vec![0, 1]]);
    }

    #[test]
    fn cap_bounds_output() {
        // Complete graph on 6 nodes has far more than 5 cycles.
        let labels = ["ka", "kb", "kc", "kd", "ke", "kf"];
        let terms = labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let others: Vec<&str> = labels.iter().filter(|o| *o != l).copied().collect();
                defined(l, &format!("X:{i}"), &others.join(" "))
            })
            .collect();
        let g = DefinitionGraph::build(&vocab(terms));
        let all = g.cycles(usize::MAX);
        assert_eq!(all.len(), 409);
        assert_eq!(g.cycles(5), all[..5].to_vec());
    }

    /// Every simple cycle by plain DFS from each node, canonicalized.
    fn brute_cycles(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
        fn dfs(v: usize, start: usize, edges: &[Vec<usize>], path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
            for &w in &edges[v] {
                if w == start && path.len() >= 2 {
                    let min = path.iter().enumerate().min_by_key(|(_, n)| **n).unwrap().0;
                    let mut c = path[min..].to_vec();
                    c.extend_from_slice(&path[..min]);
                    out.insert(c);
                } else if w != start && !path.contains(&w) {
                    path.push(w);
                    dfs(w, start, edges, path, out);
                    path.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        for s in 0..edges.len() {
            dfs(s, s, edges, &mut vec![s], &mut out);
        }
        out.into_iter().collect()
    }

    fn random_graph() -> impl Strategy<Value = Vec<Vec<usize>>> {
        (1usize..=8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 0..n), n)
                .prop_map(|sets| sets.into_iter().map(|s| s.into_iter().collect()).collect())
        })
    }

    proptest! {
        #[test]
        fn johnson_matches_brute_force(edges in random_graph()) {
            let g = DefinitionGraph { keys: (0..edges.len()).map(|i| format!("{i:02}")).collect(), members: vec![], edges: edges.clone(), self_mentions: vec![] };
            prop_assert_eq!(g.cycles(usize::MAX), brute_cycles(&edges));
        }

        #[test]
        fn permutation_invariant(edges in random_graph(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let n = edges.len();
            let label = |i: usize| format!("w{}", (b'a' + i as u8) as char);
            let build = |order: &[usize]| {
                let terms = order.iter().map(|&i| {
                    let text = edges[i].iter().filter(|&&j| j != i).map(|&j| label(j)).collect::<Vec<_>>().join(" ");
                    defined(&label(i), &format!("X:{i}"), &format!("see {text}"))
                }).collect();
                let mut f = detect_circular_definitions(&vocab(terms));
                f.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
                f
            };
            let ident: Vec<usize> = (0..n).collect();
            let mut shuffled = ident.clone();
            shuffled.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let key = |f: &[Finding]| f.iter().map(|x| (x.subject_label.clone(), x.subject_iris.clone())).collect::<Vec<_>>();
            prop_assert_eq!(key(&build(&ident)), key(&build(&shuffled)));
        }

        #[test]
        fn edges_match_token_runs(labels in proptest::collection::vec("[a-c]{1,2}( [a-c]{1,2})?", 1..6), text in "([a-c]{1,2} ){0,6}") {
            let mut terms: Vec<Term> = labels.iter().enumerate().map(|(i, l)| Term::new(l.clone()).with_iri(&format!("X:{i}"))).collect();
            terms.push(defined("zz", "X:99", &text));
            let v = vocab(terms);
            let g = DefinitionGraph::build(&v);
            let src = g.keys.iter().position(|k| k == "X:99").unwrap();
            let body_norm = normalize_label(&text);
            let body = tokens(&body_norm);
            for (i, l) in labels.iter().enumerate() {
                let node = g.keys.iter().position(|k| *k == format!("X:{i}")).unwrap();
                let expected = contains_subsequence(&body, &tokens(&normalize_label(l)));
                prop_assert_eq!(g.edges[src].contains(&node), expected);
            }
        }

        #[test]
        fn uniqueness_group_count(defs in proptest::collection::vec(0u8..4, 0..10)) {
            let terms: Vec<Term> = defs.iter().enumerate().map(|(i, d)| defined(&format!("t{i}"), &format!("X:{i}"), &format!("def {d}"))).collect();
            let mut counts = BTreeMap::new();
            for d in &defs { *counts.entry(*d).or_insert(0) += 1; }
            let expected = counts.values().filter(|c| **c >= 2).count();
            prop_assert_eq!(check_definition_uniqueness(&vocab(terms)).len(), expected);
        }
    }
}
