//! Monthly document counts for the timeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{match_documents, DocNum, IndexBundle};
use crate::selection::{DateRange, SelectionState, YearMonth};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonthBin {
    pub month: YearMonth,
    pub count: u32,
}

/// Gap-free monthly counts covering the corpus span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub bins: Vec<MonthBin>,
}

impl TimeSeries {
    /// Zero-filled series over every month touched by `span`.
    pub fn zeros(span: DateRange) -> TimeSeries {
        let first = YearMonth::of(span.start).ordinal();
        let last = YearMonth::of(span.end).ordinal();
        TimeSeries {
            bins: (first..=last)
                .map(|o| MonthBin {
                    month: YearMonth::from_ordinal(o),
                    count: 0,
                })
                .collect(),
        }
    }

    /// Count the given documents into monthly bins over the corpus span.
    pub fn from_docs(bundle: &IndexBundle, docs: impl IntoIterator<Item = DocNum>) -> TimeSeries {
        let mut series = TimeSeries::zeros(bundle.corpus_span());
        let first = YearMonth::of(bundle.corpus_span().start).ordinal();
        for doc in docs {
            series.bins[(bundle.doc_month(doc) - first) as usize].count += 1;
        }
        series
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|b| b.count as u64).sum()
    }

    /// Sum of the bins whose month lies within `t`'s month range.
    pub fn total_within(&self, t: DateRange) -> u64 {
        let (lo, hi) = (YearMonth::of(t.start), YearMonth::of(t.end));
        self.bins
            .iter()
            .filter(|b| lo <= b.month && b.month <= hi)
            .map(|b| b.count as u64)
            .sum()
    }

    /// Pointwise `self <= other`.
    pub fn dominated_by(&self, other: &TimeSeries) -> bool {
        self.bins.len() == other.bins.len()
            && self
                .bins
                .iter()
                .zip(&other.bins)
                .all(|(a, b)| a.month == b.month && a.count <= b.count)
    }
}

/// Documents matching Q per month over the whole corpus span. T and F are
/// ignored.
pub fn count_by_month(bundle: &IndexBundle, state: &SelectionState) -> Result<TimeSeries> {
    let full = SelectionState {
        q: state.q.clone(),
        f: None,
        t: bundle.corpus_span(),
    };
    let selection = match_documents(bundle, &full)?;
    Ok(TimeSeries::from_docs(bundle, selection.docs))
}

/// Documents matching Q and containing F per month over the whole corpus
/// span. T is ignored.
pub fn count_by_month_qf(bundle: &IndexBundle, state: &SelectionState) -> Result<TimeSeries> {
    if state.f.is_none() {
        return Err(Error::MissingSubject);
    }
    let full = SelectionState {
        t: bundle.corpus_span(),
        ..state.clone()
    };
    let selection = match_documents(bundle, &full)?;
    Ok(TimeSeries::from_docs(bundle, selection.docs))
}
