use std::fmt;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::tokenize;

/// Inclusive, day-granular date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DateRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateRange {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if start > end {
            return Err(Error::InvalidRange { start, end });
        }
        Ok(DateRange { start, end })
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        self.start <= date && date <= self.end
    }

    /// Intersection with `outer`. A range disjoint from `outer` is returned
    /// unchanged; it selects nothing either way.
    pub fn clip_to(self, outer: DateRange) -> DateRange {
        let start = self.start.max(outer.start);
        let end = self.end.min(outer.end);
        if start <= end {
            DateRange { start, end }
        } else {
            self
        }
    }
}

/// A calendar month.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u32,
}

impl YearMonth {
    pub fn of(date: NaiveDate) -> Self {
        YearMonth {
            year: date.year(),
            month: date.month(),
        }
    }

    /// Months since year 0, used as a dense bin key.
    pub fn ordinal(self) -> i64 {
        self.year as i64 * 12 + (self.month as i64 - 1)
    }

    pub fn from_ordinal(ordinal: i64) -> Self {
        YearMonth {
            year: ordinal.div_euclid(12) as i32,
            month: ordinal.rem_euclid(12) as u32 + 1,
        }
    }

    pub fn first_day(self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, self.month, 1).expect("valid month")
    }

    pub fn last_day(self) -> NaiveDate {
        YearMonth::from_ordinal(self.ordinal() + 1).first_day().pred_opt().expect("valid date")
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl Serialize for YearMonth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for YearMonth {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        NaiveDate::parse_from_str(&format!("{s}-01"), "%Y-%m-%d")
            .map(YearMonth::of)
            .map_err(serde::de::Error::custom)
    }
}

/// The user's selection: a free-text query, an optional subject phrase and
/// a timespan.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SelectionState {
    pub q: String,
    pub f: Option<String>,
    pub t: DateRange,
}

impl SelectionState {
    pub fn new(q: impl Into<String>, f: Option<String>, t: DateRange) -> Self {
        let f = f.filter(|f| !phrase_terms(f).is_empty());
        SelectionState { q: q.into(), f, t }
    }

    pub fn without_subject(&self) -> SelectionState {
        SelectionState {
            f: None,
            ..self.clone()
        }
    }

    pub fn with_range(&self, t: DateRange) -> SelectionState {
        SelectionState { t, ..self.clone() }
    }
}

/// Distinct normalized non-punctuation terms of a query, in query order.
pub fn query_terms(q: &str) -> Vec<String> {
    let mut terms: Vec<String> = Vec::new();
    for t in phrase_terms(q) {
        if !terms.contains(&t) {
            terms.push(t);
        }
    }
    terms
}

/// Normalized non-punctuation token sequence of a phrase.
pub fn phrase_terms(phrase: &str) -> Vec<String> {
    tokenize(phrase)
        .into_iter()
        .filter(|t| t.surface.chars().any(char::is_alphanumeric))
        .map(|t| t.normalized)
        .collect()
}

/// Documents matching a selection, ordered by ascending (date, id).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocumentSelection {
    pub selection: SelectionState,
    pub doc_ids: Vec<String>,
    /// Internal document numbers, parallel to `doc_ids`.
    #[serde(skip)]
    pub docs: Vec<u32>,
}

impl DocumentSelection {
    pub fn len(&self) -> usize {
        self.docs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.docs.is_empty()
    }
}
