//! Subject ranking by query frequency times inverse document frequency,
//! with near-duplicate suppression.

use std::cmp::Ordering;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::config::DedupConfig;
use crate::error::{Error, Result};
use crate::index::{DocNum, IndexBundle};
use crate::selection::{phrase_terms, DocumentSelection};
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubjectScore {
    pub phrase: String,
    /// Occurrences of the phrase within the selected documents.
    pub qf: u32,
    /// Corpus document frequency.
    pub df: u32,
    /// `qf / df`.
    pub score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparkline: Option<TimeSeries>,
}

impl SubjectScore {
    pub fn new(phrase: impl Into<String>, qf: u32, df: u32) -> Self {
        SubjectScore {
            phrase: phrase.into(),
            qf,
            df,
            score: qf as f64 / df as f64,
            sparkline: None,
        }
    }

    /// Ranking order: score descending (compared exactly as rationals), then
    /// qf descending, then phrase ascending.
    pub fn rank_cmp(&self, other: &SubjectScore) -> Ordering {
        let lhs = self.qf as u64 * other.df as u64;
        let rhs = other.qf as u64 * self.df as u64;
        rhs.cmp(&lhs)
            .then_with(|| other.qf.cmp(&self.qf))
            .then_with(|| self.phrase.cmp(&other.phrase))
    }
}

/// Score every indexed phrase occurring in the selected documents.
///
/// The selection should come from (Q, T) with no subject. Phrases equal to
/// the normalized query are dropped.
pub fn score_subjects(bundle: &IndexBundle, selection: &DocumentSelection) -> Vec<SubjectScore> {
    let mut qf = vec![0u32; bundle.n_phrases()];
    let mut touched = Vec::new();
    for &doc in &selection.docs {
        for &(id, count) in bundle.doc_phrases(doc) {
            if qf[id as usize] == 0 {
                touched.push(id);
            }
            qf[id as usize] += count;
        }
    }
    let query_phrase = phrase_terms(&selection.selection.q).join(" ");
    let mut scores: Vec<SubjectScore> = touched
        .into_iter()
        .map(|id| {
            let entry = bundle.phrase_entry(id);
            SubjectScore::new(entry.phrase.clone(), qf[id as usize], entry.df())
        })
        .filter(|s| s.phrase != query_phrase)
        .collect();
    scores.sort_by(SubjectScore::rank_cmp);
    scores
}

struct Shape<'a> {
    text: &'a str,
    tokens: Vec<&'a str>,
    set: HashSet<&'a str>,
}

impl<'a> Shape<'a> {
    fn new(text: &'a str) -> Self {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let set = tokens.iter().copied().collect();
        Shape { text, tokens, set }
    }
}

fn jaccard(a: &HashSet<&str>, b: &HashSet<&str>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        1.0
    } else {
        inter as f64 / union as f64
    }
}

/// Whether a suffix of `a` equals a prefix of `b`.
fn overlaps_end_to_start(a: &[&str], b: &[&str]) -> bool {
    (1..=a.len().min(b.len())).any(|k| a[a.len() - k..] == b[..k])
}

fn duplicates(a: &Shape, b: &Shape, cfg: &DedupConfig) -> bool {
    if a.set.is_subset(&b.set) || b.set.is_subset(&a.set) {
        return true;
    }
    if jaccard(&a.set, &b.set) >= cfg.jaccard {
        return true;
    }
    if cfg.split_overlap && (overlaps_end_to_start(&a.tokens, &b.tokens) || overlaps_end_to_start(&b.tokens, &a.tokens)) {
        return true;
    }
    strsim::normalized_levenshtein(a.text, b.text) >= cfg.levenshtein_sim
}

/// Whether two normalized phrases count as the same subject.
pub fn is_duplicate(a: &str, b: &str, cfg: &DedupConfig) -> bool {
    duplicates(&Shape::new(a), &Shape::new(b), cfg)
}

/// Greedy scan in rank order, keeping a subject only when it duplicates no
/// already-kept subject. Stops after `limit` subjects are kept.
pub fn dedup_subjects(ranked: &[SubjectScore], cfg: &DedupConfig, limit: usize) -> Vec<SubjectScore> {
    let mut kept: Vec<Shape> = Vec::new();
    let mut out = Vec::new();
    for subject in ranked {
        if out.len() >= limit {
            break;
        }
        let shape = Shape::new(&subject.phrase);
        if kept.iter().any(|k| duplicates(k, &shape, cfg)) {
            continue;
        }
        kept.push(shape);
        out.push(subject.clone());
    }
    out
}

/// Monthly counts of Q-matching documents that contain `phrase`.
///
/// `q_selection` is the selection for Q over the whole corpus span.
pub fn subject_sparkline(bundle: &IndexBundle, phrase: &str, q_selection: &DocumentSelection) -> Result<TimeSeries> {
    let entry = bundle.phrase(phrase).ok_or_else(|| Error::UnknownPhrase(phrase.to_string()))?;
    Ok(TimeSeries::from_docs(bundle, intersect(&q_selection.docs, entry.postings.iter().map(|p| p.doc))))
}

fn intersect(sorted: &[DocNum], other: impl Iterator<Item = DocNum>) -> Vec<DocNum> {
    let mut out = Vec::new();
    let mut i = 0;
    for d in other {
        while i < sorted.len() && sorted[i] < d {
            i += 1;
        }
        if i == sorted.len() {
            break;
        }
        if sorted[i] == d {
            out.push(d);
        }
    }
    out
}
