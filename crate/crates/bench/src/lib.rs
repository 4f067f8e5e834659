//! Synthetic vocabularies for benchmarks and scale tests.
//!
//! [`corpus`] builds an OBO file, a TSV table and a reference OBO file. Most
//! terms are clean: a unique pseudo-word label, an `is_a` parent in a
//! balanced tree, and a sourced definition of the form
//! `A <label> is a <parent label> that carries marker <n>.`. A fixed set of
//! planted terms breaks exactly one rule each, and [`Corpus::planted`] lists
//! the `(rule id, subject label)` pair every one of them should produce.
//!
//! Labels are built from consonant-vowel syllables over consonants that
//! never spell a word from the built-in lexicons, so clean terms stay clean.

use std::fmt::Write as _;

const CONSONANTS: [char; 11] = ['b', 'd', 'f', 'g', 'k', 'm', 'p', 'r', 't', 'v', 'z'];
const VOWELS: [char; 5] = ['a', 'e', 'i', 'o', 'u'];
const SYLLABLES: usize = CONSONANTS.len() * VOWELS.len();
const THREE_SYLLABLE_SPACE: usize = SYLLABLES * SYLLABLES * SYLLABLES;

pub const OBO_FILE: &str = "synthetic.obo";
pub const TSV_FILE: &str = "synthetic.tsv";
pub const REFERENCE_FILE: &str = "reference.obo";
const SYN_BASE: &str = "https://example.org/syn/SYN_";

fn syllables(mut n: usize, count: usize, out: &mut String) {
    for _ in 0..count {
        let s = n % SYLLABLES;
        n /= SYLLABLES;
        out.push(CONSONANTS[s / VOWELS.len()]);
        out.push(VOWELS[s % VOWELS.len()]);
    }
}

/// Label of the `i`-th clean term: three syllables, unique for
/// `i < 166_375`.
pub fn clean_word(i: usize) -> String {
    // 7919 is coprime with 55^3, so this permutes the word space.
    let n = (i * 7919 + 13) % THREE_SYLLABLE_SPACE;
    let mut w = String::with_capacity(6);
    syllables(n, 3, &mut w);
    w
}

/// Four-syllable word ending in `a`, never equal to a clean label.
pub fn fresh_word(j: usize) -> String {
    let n = (j * 104_729 + 7) % THREE_SYLLABLE_SPACE;
    let mut w = String::with_capacity(8);
    syllables(n, 3, &mut w);
    w.push(CONSONANTS[j % CONSONANTS.len()]);
    w.push('a');
    w
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Planted {
    pub rule: &'static str,
    pub subject: String,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    /// `(file name, contents)` for every input file.
    pub files: Vec<(String, String)>,
    pub reference: (String, String),
    /// Expected findings as a multiset, sorted.
    pub planted: Vec<Planted>,
    pub term_count: usize,
}

#[derive(Default)]
struct Stanza {
    id: String,
    name: String,
    def: Option<String>,
    sources: Vec<String>,
    is_a: Vec<String>,
    synonyms: Vec<String>,
    obsolete: bool,
    replaced_by: Option<String>,
    tags: Vec<String>,
    raw: Vec<String>,
}

impl Stanza {
    fn write(&self, out: &mut String) {
        let _ = writeln!(out, "\n[Term]\nid: {}\nname: {}", self.id, self.name);
        if let Some(def) = &self.def {
            let _ = writeln!(out, "def: \"{def}\" [{}]", self.sources.join(", "));
        }
        for s in &self.synonyms {
            let _ = writeln!(out, "synonym: \"{s}\" EXACT []");
        }
        for p in &self.is_a {
            let _ = writeln!(out, "is_a: {p}");
        }
        if self.obsolete {
            out.push_str("is_obsolete: true\n");
        }
        if let Some(r) = &self.replaced_by {
            let _ = writeln!(out, "replaced_by: {r}");
        }
        for t in &self.tags {
            let _ = writeln!(out, "tag: {t}");
        }
        for line in &self.raw {
            let _ = writeln!(out, "{line}");
        }
    }
}

struct Builder {
    stanzas: Vec<Stanza>,
    tsv_rows: Vec<[String; 5]>,
    reference: Vec<(String, String)>,
    planted: Vec<Planted>,
    next_fresh: usize,
    next_id: usize,
    marker: usize,
    root_label: String,
}

fn syn(n: usize) -> String {
    format!("SYN:{n:07}")
}

fn key(id: &str) -> String {
    format!("{SYN_BASE}{}", id.trim_start_matches("SYN:"))
}

impl Builder {
    fn fresh(&mut self) -> String {
        self.next_fresh += 1;
        fresh_word(self.next_fresh)
    }

    fn id(&mut self) -> String {
        self.next_id += 1;
        syn(self.next_id)
    }

    fn expect(&mut self, rule: &'static str, subject: impl Into<String>) {
        self.planted.push(Planted { rule, subject: subject.into() });
    }

    fn good_def(&mut self, subject: &str, genus: &str) -> String {
        self.marker += 1;
        format!("A {subject} is a {genus} that carries marker p{}.", self.marker)
    }

    /// A term that passes every check as long as its label does.
    fn good(&mut self, label: &str) -> Stanza {
        let root = self.root_label.clone();
        Stanza {
            id: self.id(),
            name: label.to_string(),
            def: Some(self.good_def(label, &root)),
            sources: vec!["SYN:curation".into()],
            is_a: vec![syn(0)],
            ..Stanza::default()
        }
    }

    fn push_good(&mut self, label: &str) -> String {
        let s = self.good(label);
        let id = s.id.clone();
        self.stanzas.push(s);
        id
    }

    fn obsolete(&mut self, label: &str, replaced_by: Option<String>) -> String {
        let s = Stanza { id: self.id(), name: label.to_string(), obsolete: true, replaced_by, ..Stanza::default() };
        let id = s.id.clone();
        self.stanzas.push(s);
        id
    }

    fn tsv_row(&mut self, label: &str, iri: &str) {
        let root = self.root_label.clone();
        let def = self.good_def(label, &root);
        self.tsv_rows.push([label.into(), iri.into(), def, "SYN:curation".into(), syn(0)]);
    }

    fn plant_all(&mut self, clean: &[String]) {
        for _ in 0..3 {
            let f = self.fresh();
            let l = format!("not {f}");
            self.push_good(&l);
            self.expect("R02-NEGATIVE", l);

            let (a, b) = (self.fresh(), self.fresh());
            let l = format!("{a} or {b}");
            self.push_good(&l);
            self.expect("R02-CONJUNCTION", l);

            let l = format!("{}s", self.fresh());
            self.push_good(&l);
            self.expect("R02-PLURAL", l);

            let l = format!("{} {}", self.fresh(), clean[self.marker % (clean.len() - 1) + 1]);
            self.push_good(&l);
            self.expect("R04-NARROW", l);

            let (a, b) = (self.fresh(), self.fresh());
            let l = format!("{a} {b} (GZQ{})", self.planted.len() % 10);
            self.push_good(&l);
            self.expect("R05-EXPANSION-STYLE", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.id = format!("QQQ:{}", self.next_id);
            self.stanzas.push(s);
            self.expect("R06-BAD-IRI", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.id = format!("http://example.org/ont/GO_{:07}", self.next_id);
            self.stanzas.push(s);
            self.expect("R06-NONPURL", l);

            let l = self.fresh();
            let id = self.push_good(&l);
            let other = self.fresh();
            self.tsv_row(&other, &id);
            self.expect("R06-DUP-IRI", key(&id));

            let l = self.fresh();
            self.tsv_row(&l, "");
            self.expect("R06-MISSING-IRI", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.def = None;
            self.stanzas.push(s);
            self.expect("R07-MISSING-DEF", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.sources.clear();
            self.stanzas.push(s);
            self.expect("R07-MISSING-SOURCE", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.def = Some(format!("Carries marker f{}.", self.next_id));
            self.stanzas.push(s);
            self.expect("R07-FORM", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            let genus = clean[self.next_id % (clean.len() - 1) + 1].clone();
            s.def = Some(self.good_def(&l, &genus));
            self.stanzas.push(s);
            self.expect("R07-GENUS-MISMATCH", l);

            let (a, b, g) = (self.fresh(), self.fresh(), self.fresh());
            let shared = self.good_def(&g, &self.root_label.clone());
            for l in [&a, &b] {
                let mut s = self.good(l);
                s.def = Some(shared.clone());
                self.stanzas.push(s);
            }
            self.expect("R07-DUPLICATE-DEF", format!("{a}, {b}"));

            let l = self.fresh();
            let mut s = self.good(&l);
            s.def = Some(format!("A {l} is a {} that resembles another {l}.", self.root_label));
            self.stanzas.push(s);
            self.expect("R07-SELF-REF", l);

            let (a, b) = (self.fresh(), self.fresh());
            for (me, other) in [(&a, &b), (&b, &a)] {
                let mut s = self.good(me);
                s.def = Some(format!("A {me} is a {} that binds {other}.", self.root_label));
                self.stanzas.push(s);
            }
            self.expect("R07-CIRCULAR", format!("{a} -> {b} -> {a}"));

            let l = self.fresh();
            self.obsolete(&l, Some(syn(0)));
            self.expect("R08-LABEL", l);

            let l = format!("obsolete {}", self.fresh());
            self.obsolete(&l, None);
            self.expect("R08-NO-REPLACEMENT", l);

            let l = format!("obsolete {}", self.fresh());
            self.obsolete(&l, Some(syn(8_999_999)));
            self.expect("R08-DANGLING", l);

            let (a, b) = (format!("obsolete {}", self.fresh()), format!("obsolete {}", self.fresh()));
            let b_id = self.obsolete(&b, Some(syn(0)));
            self.obsolete(&a, Some(b_id));
            self.expect("R08-CHAIN", a);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.replaced_by = Some(syn(0));
            self.stanzas.push(s);
            self.expect("R08-LIVE-REPLACED", l);

            let p = format!("obsolete {}", self.fresh());
            let p_id = self.obsolete(&p, Some(syn(0)));
            let l = self.fresh();
            let mut s = self.good(&l);
            s.def = Some(self.good_def(&l, &p));
            s.is_a = vec![p_id];
            self.stanzas.push(s);
            self.expect("R08-OBSOLETE-PARENT", l);

            let (a, b) = (format!("obsolete {}", self.fresh()), format!("obsolete {}", self.fresh()));
            let (a_id, b_id) = (syn(self.next_id + 1), syn(self.next_id + 2));
            self.obsolete(&a, Some(b_id));
            self.obsolete(&b, Some(a_id));
            self.expect("R08-CYCLE", a);
            self.expect("R08-CYCLE", b);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.tags = vec!["yes".into(), "not sequenced".into()];
            self.stanzas.push(s);
            self.expect("R09-BOOLEAN", "yes");
            self.expect("R09-NEGATIVE-TAG", "not sequenced");

            let l = self.fresh();
            self.push_good(&l);
            self.push_good(&l);
            self.expect("C-SEMANTIC-NOISE", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.synonyms = vec![clean[self.next_id % (clean.len() - 1) + 1].clone()];
            self.stanzas.push(s);
            self.expect("C-SYNONYM-CLASH", l);

            let head = self.fresh();
            let head_id = self.push_good(&head);
            for _ in 0..5 {
                let l = format!("{} {head}", self.fresh());
                let mut s = self.good(&l);
                s.def = Some(self.good_def(&l, &head));
                s.is_a = vec![head_id.clone()];
                self.stanzas.push(s);
            }
            self.expect("C-WORD-BOMB", head);

            let l = (0..7).map(|_| self.fresh()).collect::<Vec<_>>().join(" ");
            self.push_good(&l);
            self.expect("C-CONCEPT-BOMB", l);

            let l = format!("latest {}", self.fresh());
            self.push_good(&l);
            self.expect("C-TIMELINE", l);

            let l = self.fresh();
            self.push_good(&l);
            self.reference.push((format!("REF:{:07}", self.next_id), l.clone()));
            self.expect("R01-REUSE", l);

            let l = self.fresh();
            let mut s = self.good(&l);
            s.def = None;
            s.raw = vec![format!("def: \"{l} is broken [SYN:curation]")];
            self.stanzas.push(s);
            self.expect("PARSE", OBO_FILE);
        }
        for l in ["belly", "tummy", "shinbone"] {
            self.push_good(l);
            self.expect("R03-COLLOQUIAL", l);
        }
        for l in ["BKZ", "DKZT", "FKZ9"] {
            self.push_good(l);
            self.expect("R05-ABBREV", l);
        }
    }
}

/// Builds a corpus of `total_terms` terms (at least 1,000), of which a few
/// hundred are planted defects. Deterministic for a given size.
pub fn corpus(total_terms: usize) -> Corpus {
    assert!(total_terms >= 1000, "corpus needs room for the planted terms");
    let mut b = Builder {
        stanzas: Vec::new(),
        tsv_rows: Vec::new(),
        reference: Vec::new(),
        planted: Vec::new(),
        next_fresh: 0,
        next_id: 9_000_000,
        marker: 0,
        root_label: clean_word(0),
    };
    // Planted terms need some clean labels to point at before the clean
    // block exists; those labels are fixed by index.
    let preview: Vec<String> = (0..64).map(clean_word).collect();
    b.plant_all(&preview);
    let planted_terms = b.stanzas.len() + b.tsv_rows.len();
    let clean = total_terms - planted_terms;

    let mut obo = format!("format-version: 1.4\nidspace: SYN {SYN_BASE}\nontology: synthetic\n");
    for i in 0..clean {
        let label = clean_word(i);
        let mut s =
            Stanza { id: syn(i), name: label.clone(), sources: vec!["SYN:curation".into()], ..Stanza::default() };
        if i == 0 {
            s.def = Some(format!("A {label} is a entity that carries marker c0."));
        } else {
            let parent = (i - 1) / 4;
            s.def = Some(format!("A {label} is a {} that carries marker c{i}.", clean_word(parent)));
            s.is_a.push(syn(parent));
        }
        s.write(&mut obo);
    }
    // Keep the planted clean-label references inside the clean block.
    assert!(clean > preview.len());
    for s in &b.stanzas {
        s.write(&mut obo);
    }

    let mut tsv = String::from("label\tiri\tdefinition\tdefinition_source\tparent\n");
    for row in &b.tsv_rows {
        tsv.push_str(&row.join("\t"));
        tsv.push('\n');
    }

    let mut reference = String::from("format-version: 1.4\nontology: reference\n");
    for (id, label) in &b.reference {
        let _ = write!(reference, "\n[Term]\nid: {id}\nname: {label}\n");
    }

    let mut planted = b.planted;
    planted.sort();
    Corpus {
        files: vec![(OBO_FILE.into(), obo), (TSV_FILE.into(), tsv)],
        reference: (REFERENCE_FILE.into(), reference),
        planted,
        term_count: total_terms,
    }
}
