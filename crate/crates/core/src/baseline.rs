//! Highlighted-fragment snippets and lexical ranking for the comparison
//! interface.

use std::cmp::Ordering;
use std::collections::HashSet;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::config::BaselineConfig;
use crate::error::{Error, Result};
use crate::index::{match_documents, IndexBundle};
use crate::ingest::{char_to_byte, Document};
use crate::selection::{query_terms, DateRange, SelectionState};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fragment {
    pub text: String,
    /// `[start, end)` character range of the fragment in the document.
    pub char_span: [usize; 2],
    /// Highlighted hits as character ranges relative to `text`.
    pub highlights: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snippet {
    pub doc_id: String,
    pub fragments: Vec<Fragment>,
}

impl Snippet {
    /// Fragments joined with `...`.
    pub fn render(&self) -> String {
        self.fragments
            .iter()
            .map(|f| f.text.as_str())
            .collect::<Vec<_>>()
            .join("...")
    }
}

struct Window {
    start: usize,
    end: usize,
    /// (start, end, term index) of each hit.
    hits: Vec<(usize, usize, usize)>,
}

impl Window {
    fn distinct_terms(&self) -> usize {
        self.hits.iter().map(|h| h.2).collect::<HashSet<_>>().len()
    }
}

/// Build a snippet of at most `config.top` fragments around query hits.
///
/// Each hit grows by `config.surround` characters on both sides, clipped to
/// the text and widened to whitespace so words are not cut. Overlapping
/// windows merge. Fragments are ranked by distinct query terms, then by
/// hit count, and the best `top` are returned in document order.
pub fn make_snippet(doc: &Document, q: &str, config: &BaselineConfig) -> Result<Snippet> {
    let terms = query_terms(q);
    let chars: Vec<char> = doc.text.chars().collect();
    let n = chars.len();
    let hits: Vec<(usize, usize, usize)> = doc
        .tokens
        .iter()
        .filter_map(|t| {
            let term = terms.iter().position(|q| q == &t.normalized)?;
            Some((t.char_offset, t.char_end(), term))
        })
        .collect();
    if hits.is_empty() {
        return Err(Error::NoHits(doc.id.clone()));
    }

    let mut windows: Vec<Window> = Vec::new();
    for hit in hits {
        let mut start = hit.0.saturating_sub(config.surround);
        let mut end = (hit.1 + config.surround).min(n);
        while start > 0 && !chars[start - 1].is_whitespace() {
            start -= 1;
        }
        while end < n && !chars[end].is_whitespace() {
            end += 1;
        }
        while chars[start].is_whitespace() {
            start += 1;
        }
        while chars[end - 1].is_whitespace() {
            end -= 1;
        }
        match windows.last_mut() {
            Some(w) if start <= w.end => {
                w.end = w.end.max(end);
                w.hits.push(hit);
            }
            _ => windows.push(Window {
                start,
                end,
                hits: vec![hit],
            }),
        }
    }

    windows.sort_by(|a, b| {
        b.distinct_terms()
            .cmp(&a.distinct_terms())
            .then(b.hits.len().cmp(&a.hits.len()))
            .then(a.start.cmp(&b.start))
    });
    windows.truncate(config.top);
    windows.sort_by_key(|w| w.start);

    let bytes = char_to_byte(&doc.text);
    let fragments = windows
        .into_iter()
        .map(|w| Fragment {
            text: doc.text[bytes[w.start]..bytes[w.end]].to_string(),
            char_span: [w.start, w.end],
            highlights: w.hits.iter().map(|h| [h.0 - w.start, h.1 - w.start]).collect(),
        })
        .collect();
    Ok(Snippet {
        doc_id: doc.id.clone(),
        fragments,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedDoc {
    pub doc_id: String,
    pub date: NaiveDate,
    pub score: f64,
}

/// Documents matching every query term within `t`, ranked by the sum over
/// query terms of `tf * ln(1 + N / df)`. Ties go to the more recent
/// document, then to the smaller id.
pub fn rank_documents_baseline(bundle: &IndexBundle, q: &str, t: DateRange) -> Result<Vec<RankedDoc>> {
    let selection = match_documents(bundle, &SelectionState::new(q, None, t))?;
    let n = bundle.n_docs() as f64;
    let weights: Vec<(&[crate::index::Posting], f64)> = query_terms(q)
        .iter()
        .map(|term| {
            let postings = bundle.term_postings(term);
            (postings, (1.0 + n / postings.len().max(1) as f64).ln())
        })
        .collect();
    let mut ranked: Vec<RankedDoc> = selection
        .docs
        .iter()
        .map(|&d| {
            let score = weights
                .iter()
                .map(|(postings, idf)| {
                    let tf = postings
                        .binary_search_by_key(&d, |p| p.doc)
                        .map_or(0, |i| postings[i].count);
                    tf as f64 * idf
                })
                .sum();
            let doc = bundle.doc(d);
            RankedDoc {
                doc_id: doc.id.clone(),
                date: doc.date,
                score,
            }
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.score
            .partial_cmp(&a.score)
            .unwrap_or(Ordering::Equal)
            .then(b.date.cmp(&a.date))
            .then(a.doc_id.cmp(&b.doc_id))
    });
    Ok(ranked)
}
