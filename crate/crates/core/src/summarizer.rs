//! One sentence per selected document, chosen by a two-tier priority, then
//! ordered by tier and sampled in proportion to monthly bin counts.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{match_documents, IndexBundle};
use crate::ingest::{Document, Sentence, Token};
use crate::rng::Xoshiro256PlusPlus;
use crate::selection::{phrase_terms, query_terms, SelectionState, YearMonth};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanLabel {
    Q,
    F,
}

/// Character range `[start, end)` tagged with what it matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighlightSpan {
    pub start: usize,
    pub end: usize,
    pub label: SpanLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceCandidate {
    pub doc_id: String,
    pub sentence_index: usize,
    /// 0: contains Q and F; 1: exactly one of them; 2: neither.
    pub tier: u8,
    pub date: NaiveDate,
    pub text: String,
    /// Relative to `text`.
    pub highlight_spans: Vec<HighlightSpan>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentencePool {
    pub selection: SelectionState,
    pub candidates: Vec<SentenceCandidate>,
}

/// Normalized Q terms and F token sequence, prepared once per request.
#[derive(Debug, Clone)]
pub struct QueryMatcher {
    q: Vec<String>,
    f: Option<Vec<String>>,
}

impl QueryMatcher {
    pub fn new(q: &str, f: Option<&str>) -> Self {
        QueryMatcher {
            q: query_terms(q),
            f: f.map(phrase_terms).filter(|f| !f.is_empty()),
        }
    }

    pub fn has_subject(&self) -> bool {
        self.f.is_some()
    }

    pub fn contains_q(&self, tokens: &[Token]) -> bool {
        !self.q.is_empty() && self.q.iter().all(|q| tokens.iter().any(|t| &t.normalized == q))
    }

    /// Token-index starts of every F occurrence.
    pub fn f_matches(&self, tokens: &[Token]) -> Vec<usize> {
        let Some(f) = &self.f else {
            return Vec::new();
        };
        if tokens.len() < f.len() {
            return Vec::new();
        }
        (0..=tokens.len() - f.len())
            .filter(|&i| tokens[i..i + f.len()].iter().zip(f).all(|(t, w)| &t.normalized == w))
            .collect()
    }

    pub fn tier(&self, tokens: &[Token]) -> u8 {
        let has_q = self.contains_q(tokens);
        if !self.has_subject() {
            return if has_q { 1 } else { 2 };
        }
        let has_f = !self.f_matches(tokens).is_empty();
        match (has_q, has_f) {
            (true, true) => 0,
            (true, false) | (false, true) => 1,
            (false, false) => 2,
        }
    }

    /// Q-term and F spans over `tokens`, in characters relative to `origin`.
    pub fn highlights(&self, tokens: &[Token], origin: usize) -> Vec<HighlightSpan> {
        let mut spans: Vec<HighlightSpan> = tokens
            .iter()
            .filter(|t| self.q.contains(&t.normalized))
            .map(|t| HighlightSpan {
                start: t.char_offset - origin,
                end: t.char_end() - origin,
                label: SpanLabel::Q,
            })
            .collect();
        let flen = self.f.as_ref().map_or(0, Vec::len);
        for i in self.f_matches(tokens) {
            spans.push(HighlightSpan {
                start: tokens[i].char_offset - origin,
                end: tokens[i + flen - 1].char_end() - origin,
                label: SpanLabel::F,
            });
        }
        spans.sort_by_key(|s| (s.start, s.end, s.label == SpanLabel::Q));
        spans
    }
}

fn candidate(doc: &Document, sentence: &Sentence, tier: u8, matcher: &QueryMatcher) -> SentenceCandidate {
    let origin = sentence.char_span[0];
    SentenceCandidate {
        doc_id: doc.id.clone(),
        sentence_index: sentence.index,
        tier,
        date: doc.date,
        text: doc.sentence_text(sentence).to_string(),
        highlight_spans: matcher.highlights(doc.sentence_tokens(sentence), origin),
    }
}

/// The document's sentence with the lowest (tier, sentence index), or `None`
/// for a document without sentences.
pub fn select_with(doc: &Document, matcher: &QueryMatcher) -> Option<SentenceCandidate> {
    let mut best: Option<(u8, &Sentence)> = None;
    for sentence in &doc.sentences {
        let tier = matcher.tier(doc.sentence_tokens(sentence));
        if best.is_none_or(|(t, _)| tier < t) {
            best = Some((tier, sentence));
            if tier == 0 {
                break;
            }
        }
    }
    best.map(|(tier, s)| candidate(doc, s, tier, matcher))
}

/// Pick the single sentence a document contributes to the summary.
pub fn select_document_sentence(doc: &Document, q: &str, f: Option<&str>) -> Option<SentenceCandidate> {
    select_with(doc, &QueryMatcher::new(q, f))
}

/// One candidate per document matching the selection, in (date, id) order.
pub fn build_sentence_pool(bundle: &IndexBundle, state: &SelectionState) -> Result<SentencePool> {
    let selection = match_documents(bundle, state)?;
    let matcher = QueryMatcher::new(&state.q, state.f.as_deref());
    let candidates = selection
        .docs
        .par_iter()
        .filter_map(|&d| select_with(bundle.doc(d), &matcher))
        .collect();
    Ok(SentencePool {
        selection: state.clone(),
        candidates,
    })
}

/// Sampled order of the pool as indexes into `pool.candidates`.
///
/// Tiers are strict strata: every tier-0 candidate precedes every tier-1
/// candidate, and so on. Within a tier, candidates are drawn without
/// replacement by first choosing a month with probability proportional to
/// its remaining candidates and then a candidate uniformly from that month.
pub fn sample_order(pool: &SentencePool, seed: u64) -> Vec<usize> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut order = Vec::with_capacity(pool.candidates.len());
    for tier in 0..=2u8 {
        let mut by_month: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, c) in pool.candidates.iter().enumerate().filter(|(_, c)| c.tier == tier) {
            by_month.entry(YearMonth::of(c.date).ordinal()).or_default().push(i);
        }
        let mut bins: Vec<Vec<usize>> = by_month.into_values().collect();
        let mut remaining: usize = bins.iter().map(Vec::len).sum();
        while remaining > 0 {
            let mut r = rng.below(remaining as u64) as usize;
            let bin = bins
                .iter()
                .position(|b| {
                    if r < b.len() {
                        true
                    } else {
                        r -= b.len();
                        false
                    }
                })
                .expect("draw within remaining count");
            let j = rng.below(bins[bin].len() as u64) as usize;
            order.push(bins[bin].swap_remove(j));
            remaining -= 1;
            if bins[bin].is_empty() {
                bins.remove(bin);
            }
        }
    }
    order
}

/// The pool in sampled summary order. Deterministic for a given seed.
pub fn sample_summary(pool: &SentencePool, seed: u64) -> Vec<SentenceCandidate> {
    sample_order(pool, seed)
        .into_iter()
        .map(|i| pool.candidates[i].clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page<T> {
    pub page: usize,
    pub page_size: usize,
    pub total: usize,
    pub items: Vec<T>,
}

/// Slice `page` (0-based) out of `items`. Pages past the end are empty.
pub fn paginate<T: Clone>(items: &[T], page: i64, page_size: usize) -> Result<Page<T>> {
    if page < 0 {
        return Err(Error::NegativePage(page));
    }
    let page = page as usize;
    let start = page.saturating_mul(page_size).min(items.len());
    let end = start.saturating_add(page_size).min(items.len());
    Ok(Page {
        page,
        page_size,
        total: items.len(),
        items: items[start..end].to_vec(),
    })
}
