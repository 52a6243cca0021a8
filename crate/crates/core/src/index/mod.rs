//! The immutable index bundle: inverted term index, phrase-document index,
//! document store and month bins.

mod persist;

use std::collections::HashMap;
use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{Document, Pos};
use crate::phrase::extract_noun_phrases;
use crate::selection::{phrase_terms, query_terms, DateRange, DocumentSelection, SelectionState, YearMonth};

pub use persist::{load_index, save_index, Manifest, FORMAT_VERSION};

/// Phrases seen fewer times than this across the corpus are not indexed.
pub const MIN_PHRASE_COUNT: u32 = 5;

/// Internal document number. Documents are numbered in (date, id) order.
pub type DocNum = u32;

/// Term id marking a punctuation token in [`IndexBundle::doc_terms`].
pub const NO_TERM: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Posting {
    pub doc: DocNum,
    /// Occurrences in the document.
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhraseEntry {
    pub phrase: String,
    /// Total occurrences across the corpus.
    pub corpus_count: u32,
    /// Sorted by document number.
    pub postings: Vec<Posting>,
}

impl PhraseEntry {
    pub fn df(&self) -> u32 {
        self.postings.len() as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub(crate) struct StoredBundle {
    pub docs: Vec<Document>,
    pub terms: Vec<String>,
    pub term_postings: Vec<Vec<Posting>>,
    pub phrases: Vec<PhraseEntry>,
    pub doc_phrases: Vec<Vec<(u32, u32)>>,
}

#[derive(Debug)]
pub struct IndexBundle {
    stored: StoredBundle,
    doc_lookup: HashMap<String, DocNum>,
    vocab: HashMap<String, u32>,
    phrase_lookup: HashMap<String, u32>,
    doc_terms: Vec<Vec<u32>>,
    doc_months: Vec<i64>,
    corpus_span: DateRange,
}

struct DocAnalysis {
    terms: Vec<String>,
    phrases: HashMap<String, u32>,
}

fn analyze(doc: &Document) -> Result<DocAnalysis> {
    let terms = doc
        .tokens
        .iter()
        .filter(|t| t.pos != Some(Pos::Punct))
        .map(|t| t.normalized.clone())
        .collect();
    let mut phrases: HashMap<String, u32> = HashMap::new();
    for span in extract_noun_phrases(doc)? {
        *phrases.entry(span.normalized).or_default() += 1;
    }
    Ok(DocAnalysis { terms, phrases })
}

/// Build the index over a non-empty corpus with unique ids.
pub fn build_index(mut docs: Vec<Document>) -> Result<IndexBundle> {
    if docs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    docs.sort_by(|a, b| (a.date, &a.id).cmp(&(b.date, &b.id)));
    if let Some(w) = docs.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::DuplicateId(w[0].id.clone()));
    }

    let analyses: Vec<DocAnalysis> = docs.par_iter().map(analyze).collect::<Result<_>>()?;

    let mut vocab: HashMap<String, u32> = HashMap::new();
    let mut terms: Vec<String> = Vec::new();
    let mut term_postings: Vec<Vec<Posting>> = Vec::new();
    let mut phrase_totals: HashMap<&str, u32> = HashMap::new();
    for (doc, analysis) in analyses.iter().enumerate() {
        let mut tf: HashMap<u32, u32> = HashMap::new();
        for term in &analysis.terms {
            let id = *vocab.entry(term.clone()).or_insert_with(|| {
                terms.push(term.clone());
                term_postings.push(Vec::new());
                (terms.len() - 1) as u32
            });
            *tf.entry(id).or_default() += 1;
        }
        let mut tf: Vec<(u32, u32)> = tf.into_iter().collect();
        tf.sort_unstable();
        for (id, count) in tf {
            term_postings[id as usize].push(Posting {
                doc: doc as DocNum,
                count,
            });
        }
        for (phrase, &count) in &analysis.phrases {
            *phrase_totals.entry(phrase.as_str()).or_default() += count;
        }
    }

    let mut kept: Vec<&str> = phrase_totals
        .iter()
        .filter(|(_, &n)| n >= MIN_PHRASE_COUNT)
        .map(|(p, _)| *p)
        .collect();
    kept.sort_unstable();
    let phrase_ids: HashMap<&str, u32> = kept.iter().enumerate().map(|(i, p)| (*p, i as u32)).collect();
    let mut phrases: Vec<PhraseEntry> = kept
        .iter()
        .map(|p| PhraseEntry {
            phrase: p.to_string(),
            corpus_count: phrase_totals[p],
            postings: Vec::new(),
        })
        .collect();
    let mut doc_phrases = Vec::with_capacity(docs.len());
    for (doc, analysis) in analyses.iter().enumerate() {
        let mut forward: Vec<(u32, u32)> = analysis
            .phrases
            .iter()
            .filter_map(|(p, &n)| phrase_ids.get(p.as_str()).map(|&id| (id, n)))
            .collect();
        forward.sort_unstable();
        for &(id, count) in &forward {
            phrases[id as usize].postings.push(Posting {
                doc: doc as DocNum,
                count,
            });
        }
        doc_phrases.push(forward);
    }

    Ok(IndexBundle::from_stored(StoredBundle {
        docs,
        terms,
        term_postings,
        phrases,
        doc_phrases,
    }))
}

impl IndexBundle {
    pub(crate) fn from_stored(stored: StoredBundle) -> IndexBundle {
        let doc_lookup = stored
            .docs
            .iter()
            .enumerate()
            .map(|(i, d)| (d.id.clone(), i as DocNum))
            .collect();
        let vocab: HashMap<String, u32> = stored
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        let phrase_lookup = stored
            .phrases
            .iter()
            .enumerate()
            .map(|(i, p)| (p.phrase.clone(), i as u32))
            .collect();
        let doc_terms = stored
            .docs
            .iter()
            .map(|d| {
                d.tokens
                    .iter()
                    .map(|t| {
                        if t.pos == Some(Pos::Punct) {
                            NO_TERM
                        } else {
                            vocab.get(&t.normalized).copied().unwrap_or(NO_TERM)
                        }
                    })
                    .collect()
            })
            .collect();
        let doc_months = stored.docs.iter().map(|d| YearMonth::of(d.date).ordinal()).collect();
        let corpus_span = DateRange {
            start: stored.docs.first().expect("non-empty corpus").date,
            end: stored.docs.last().expect("non-empty corpus").date,
        };
        IndexBundle {
            stored,
            doc_lookup,
            vocab,
            phrase_lookup,
            doc_terms,
            doc_months,
            corpus_span,
        }
    }

    pub(crate) fn stored(&self) -> &StoredBundle {
        &self.stored
    }

    pub fn corpus_span(&self) -> DateRange {
        self.corpus_span
    }

    pub fn n_docs(&self) -> usize {
        self.stored.docs.len()
    }

    pub fn n_terms(&self) -> usize {
        self.stored.terms.len()
    }

    pub fn n_phrases(&self) -> usize {
        self.stored.phrases.len()
    }

    pub fn docs(&self) -> &[Document] {
        &self.stored.docs
    }

    pub fn doc(&self, doc: DocNum) -> &Document {
        &self.stored.docs[doc as usize]
    }

    pub fn doc_num(&self, id: &str) -> Option<DocNum> {
        self.doc_lookup.get(id).copied()
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.doc_num(id).map(|n| self.doc(n))
    }

    pub fn term_id(&self, term: &str) -> Option<u32> {
        self.vocab.get(term).copied()
    }

    /// Postings for a normalized term, sorted by document number.
    pub fn term_postings(&self, term: &str) -> &[Posting] {
        self.term_id(term)
            .map_or(&[][..], |id| &self.stored.term_postings[id as usize])
    }

    pub fn phrase(&self, phrase: &str) -> Option<&PhraseEntry> {
        self.phrase_id(phrase).map(|id| self.phrase_entry(id))
    }

    pub fn phrase_id(&self, phrase: &str) -> Option<u32> {
        self.phrase_lookup.get(phrase).copied()
    }

    pub fn phrase_entry(&self, id: u32) -> &PhraseEntry {
        &self.stored.phrases[id as usize]
    }

    pub fn phrases(&self) -> &[PhraseEntry] {
        &self.stored.phrases
    }

    /// Indexed phrases of a document as (phrase id, count), sorted by id.
    pub fn doc_phrases(&self, doc: DocNum) -> &[(u32, u32)] {
        &self.stored.doc_phrases[doc as usize]
    }

    /// Term id of every token of a document, [`NO_TERM`] for punctuation.
    pub fn doc_terms(&self, doc: DocNum) -> &[u32] {
        &self.doc_terms[doc as usize]
    }

    pub(crate) fn doc_month(&self, doc: DocNum) -> i64 {
        self.doc_months[doc as usize]
    }

    /// Documents dated within `t`, as a contiguous range of numbers.
    pub fn doc_range(&self, t: DateRange) -> Range<DocNum> {
        let docs = &self.stored.docs;
        let lo = docs.partition_point(|d| d.date < t.start);
        let hi = docs.partition_point(|d| d.date <= t.end);
        lo as DocNum..hi.max(lo) as DocNum
    }

    /// Default selection range.
    pub fn full_range(&self) -> DateRange {
        self.corpus_span
    }

    /// Resolve query terms to ids. `None` when a term is absent from the
    /// corpus, so that nothing can match.
    pub(crate) fn resolve_query(&self, q: &str) -> Result<Option<Vec<u32>>> {
        let terms = query_terms(q);
        if terms.is_empty() {
            return Err(Error::EmptyQuery);
        }
        Ok(terms.iter().map(|t| self.term_id(t)).collect())
    }

    /// Resolve a subject phrase to its term id sequence. `None` when any
    /// token is unknown.
    pub(crate) fn resolve_phrase(&self, f: &str) -> Option<Vec<u32>> {
        phrase_terms(f).iter().map(|t| self.term_id(t)).collect()
    }

    /// Documents containing every query term within `range`, ascending.
    pub(crate) fn conjunctive(&self, terms: &[u32], range: Range<DocNum>) -> Vec<DocNum> {
        let mut lists: Vec<&[Posting]> = terms
            .iter()
            .map(|&id| {
                let p = &self.stored.term_postings[id as usize][..];
                let a = p.partition_point(|x| x.doc < range.start);
                let b = p.partition_point(|x| x.doc < range.end);
                &p[a..b]
            })
            .collect();
        lists.sort_by_key(|l| l.len());
        let Some((first, rest)) = lists.split_first() else {
            return Vec::new();
        };
        first
            .iter()
            .map(|p| p.doc)
            .filter(|&d| rest.iter().all(|l| l.binary_search_by_key(&d, |p| p.doc).is_ok()))
            .collect()
    }

    pub(crate) fn contains_sequence(&self, doc: DocNum, seq: &[u32]) -> bool {
        contains_sequence(self.doc_terms(doc), seq)
    }
}

pub(crate) fn contains_sequence(haystack: &[u32], seq: &[u32]) -> bool {
    !seq.is_empty() && haystack.windows(seq.len()).any(|w| w == seq)
}

/// Documents matching all query terms, dated within T, and containing F as
/// a contiguous token sequence when F is set.
pub fn match_documents(bundle: &IndexBundle, state: &SelectionState) -> Result<DocumentSelection> {
    let terms = bundle.resolve_query(&state.q)?;
    let mut docs = match terms {
        Some(terms) => bundle.conjunctive(&terms, bundle.doc_range(state.t)),
        None => Vec::new(),
    };
    if let Some(f) = &state.f {
        match bundle.resolve_phrase(f) {
            Some(seq) => docs.retain(|&d| bundle.contains_sequence(d, &seq)),
            None => docs.clear(),
        }
    }
    Ok(DocumentSelection {
        selection: state.clone(),
        doc_ids: docs.iter().map(|&d| bundle.doc(d).id.clone()).collect(),
        docs,
    })
}
