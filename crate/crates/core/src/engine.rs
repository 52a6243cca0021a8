//! Assembles the linked views for one selection from a single consistent
//! document selection.

use std::collections::hash_map::RandomState;
use std::hash::BuildHasher;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baseline::{make_snippet, rank_documents_baseline, Snippet};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::facets::{dedup_subjects, score_subjects, subject_sparkline, SubjectScore};
use crate::index::{DocNum, IndexBundle};
use crate::summarizer::{paginate, sample_order, select_with, HighlightSpan, Page, QueryMatcher, SentenceCandidate, SentencePool};
use crate::selection::{DateRange, DocumentSelection, SelectionState};
use crate::timeseries::TimeSeries;

/// Largest seed the server hands out, so it survives a round trip through a
/// JavaScript number.
pub const MAX_GENERATED_SEED: u64 = (1 << 53) - 1;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRequest {
    pub q: String,
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default)]
    pub start: Option<NaiveDate>,
    #[serde(default)]
    pub end: Option<NaiveDate>,
    #[serde(default)]
    pub subjects_page: i64,
    #[serde(default)]
    pub summary_page: i64,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl StateRequest {
    pub fn query(q: impl Into<String>) -> Self {
        StateRequest {
            q: q.into(),
            ..StateRequest::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateResponse {
    pub state: SelectionState,
    pub timeseries_q: TimeSeries,
    pub timeseries_qf: Option<TimeSeries>,
    pub subjects: Page<SubjectScore>,
    pub summary: Page<SentenceCandidate>,
    pub total_docs: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceView {
    pub index: usize,
    pub char_span: [usize; 2],
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocView {
    pub id: String,
    pub title: String,
    pub date: NaiveDate,
    pub text: String,
    pub sentences: Vec<SentenceView>,
    /// Character ranges into `text`.
    pub highlights: Vec<HighlightSpan>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineHit {
    pub doc_id: String,
    pub title: String,
    pub date: NaiveDate,
    pub score: f64,
    pub snippet: Snippet,
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResponse {
    pub q: String,
    pub t: DateRange,
    pub results: Page<BaselineHit>,
}

fn random_seed() -> u64 {
    RandomState::new().hash_one(std::time::SystemTime::now()) & MAX_GENERATED_SEED
}

/// A loaded index plus configuration, answering view requests.
#[derive(Debug)]
pub struct Engine {
    bundle: IndexBundle,
    config: Config,
}

impl Engine {
    pub fn new(bundle: IndexBundle, config: Config) -> Self {
        Engine { bundle, config }
    }

    pub fn bundle(&self) -> &IndexBundle {
        &self.bundle
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// T from optional bounds, defaulting to and clipped by the corpus span.
    pub fn resolve_range(&self, start: Option<NaiveDate>, end: Option<NaiveDate>) -> Result<DateRange> {
        let span = self.bundle.corpus_span();
        let t = DateRange::new(start.unwrap_or(span.start), end.unwrap_or(span.end))?;
        Ok(t.clip_to(span))
    }

    pub fn state(&self, req: &StateRequest) -> Result<StateResponse> {
        let bundle = &self.bundle;
        let t = self.resolve_range(req.start, req.end)?;
        let state = SelectionState::new(req.q.clone(), req.f.clone(), t);
        let seed = req.seed.unwrap_or_else(random_seed);
        if req.subjects_page < 0 {
            return Err(Error::NegativePage(req.subjects_page));
        }
        if req.summary_page < 0 {
            return Err(Error::NegativePage(req.summary_page));
        }

        // Q over the whole corpus; every other view narrows this one list.
        let q_docs: Vec<DocNum> = match bundle.resolve_query(&state.q)? {
            Some(terms) => bundle.conjunctive(&terms, 0..bundle.n_docs() as DocNum),
            None => Vec::new(),
        };
        let range = bundle.doc_range(t);
        let lo = q_docs.partition_point(|&d| d < range.start);
        let hi = q_docs.partition_point(|&d| d < range.end);
        let qt_docs = q_docs[lo..hi].to_vec();

        let qf_docs: Option<Vec<DocNum>> = state.f.as_ref().map(|f| match bundle.resolve_phrase(f) {
            Some(seq) => q_docs
                .par_iter()
                .copied()
                .filter(|&d| bundle.contains_sequence(d, &seq))
                .collect(),
            None => Vec::new(),
        });
        let qft_docs: Vec<DocNum> = match &qf_docs {
            Some(docs) => docs.iter().copied().filter(|d| range.contains(d)).collect(),
            None => qt_docs.clone(),
        };

        let timeseries_q = TimeSeries::from_docs(bundle, q_docs.iter().copied());
        let timeseries_qf = qf_docs.as_ref().map(|d| TimeSeries::from_docs(bundle, d.iter().copied()));

        let selection = |s: SelectionState, docs: Vec<DocNum>| DocumentSelection {
            selection: s,
            doc_ids: docs.iter().map(|&d| bundle.doc(d).id.clone()).collect(),
            docs,
        };
        let qt = selection(state.without_subject(), qt_docs);
        let q_full = selection(state.without_subject().with_range(bundle.corpus_span()), q_docs);

        let ranked = score_subjects(bundle, &qt);
        let kept = dedup_subjects(&ranked, &self.config.dedup, self.config.subjects.max);
        let mut subjects = paginate(&kept, req.subjects_page, self.config.subjects.page_size)?;
        for s in &mut subjects.items {
            s.sparkline = Some(subject_sparkline(bundle, &s.phrase, &q_full)?);
        }

        let matcher = QueryMatcher::new(&state.q, state.f.as_deref());
        let pool = SentencePool {
            selection: state.clone(),
            candidates: qft_docs
                .par_iter()
                .filter_map(|&d| select_with(bundle.doc(d), &matcher))
                .collect(),
        };
        let order = sample_order(&pool, seed);
        let page = paginate(&order, req.summary_page, self.config.summary.page_size)?;
        let summary = Page {
            page: page.page,
            page_size: page.page_size,
            total: page.total,
            items: page.items.iter().map(|&i| pool.candidates[i].clone()).collect(),
        };

        Ok(StateResponse {
            state,
            timeseries_q,
            timeseries_qf,
            subjects,
            summary,
            total_docs: qft_docs.len(),
            seed,
        })
    }

    /// A document with sentence boundaries and Q/F highlights.
    pub fn doc(&self, id: &str, q: Option<&str>, f: Option<&str>) -> Result<DocView> {
        let doc = self
            .bundle
            .document(id)
            .ok_or_else(|| Error::UnknownDocument(id.to_string()))?;
        let matcher = QueryMatcher::new(q.unwrap_or(""), f);
        Ok(DocView {
            id: doc.id.clone(),
            title: doc.title.clone(),
            date: doc.date,
            text: doc.text.clone(),
            sentences: doc
                .sentences
                .iter()
                .map(|s| SentenceView {
                    index: s.index,
                    char_span: s.char_span,
                    text: doc.sentence_text(s).to_string(),
                })
                .collect(),
            highlights: matcher.highlights(&doc.tokens, 0),
        })
    }

    pub fn baseline(&self, q: &str, start: Option<NaiveDate>, end: Option<NaiveDate>, page: i64) -> Result<BaselineResponse> {
        let t = self.resolve_range(start, end)?;
        let ranked = rank_documents_baseline(&self.bundle, q, t)?;
        let page = paginate(&ranked, page, self.config.baseline.page_size)?;
        let items = page
            .items
            .iter()
            .map(|r| {
                let doc = self.bundle.document(&r.doc_id).expect("ranked document exists");
                let snippet = make_snippet(doc, q, &self.config.baseline)?;
                Ok(BaselineHit {
                    doc_id: r.doc_id.clone(),
                    title: doc.title.clone(),
                    date: r.date,
                    score: r.score,
                    rendered: snippet.render(),
                    snippet,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BaselineResponse {
            q: q.to_string(),
            t,
            results: Page {
                page: page.page,
                page_size: page.page_size,
                total: page.total,
                items,
            },
        })
    }
}
