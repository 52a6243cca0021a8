//! Noun-phrase candidates from part-of-speech patterns.
//!
//! A span matches when its tag sequence is accepted by
//!
//! ```text
//! (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN) (ADP DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN))?
//! ```
//!
//! Every matching span of at most [`MAX_PHRASE_LEN`] tokens inside a single
//! sentence is emitted, including spans nested in longer matches, so
//! "King Abdullah II" also produces "King Abdullah" and "Abdullah II".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{Document, Pos, Token};

pub const MAX_PHRASE_LEN: usize = 6;

/// Spans emitted per maximal match, counting the maximal span itself.
pub const MAX_SUBSPANS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhraseSpan {
    pub doc_id: String,
    pub token_span: [usize; 2],
    pub sentence_index: usize,
    pub normalized: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Start,
    /// Modifiers seen, no head yet.
    Modifier,
    /// Head noun of the base phrase; accepting.
    Head,
    /// Preposition after the base phrase.
    Adp,
    /// Determiner after the preposition.
    Det,
    /// Modifiers inside the prepositional object.
    ObjModifier,
    /// Head of the prepositional object; accepting.
    ObjHead,
}

impl State {
    fn step(self, pos: Pos) -> Option<State> {
        use State::*;
        let modifier = matches!(pos, Pos::Adj | Pos::Num);
        let head = matches!(pos, Pos::Noun | Pos::Propn);
        match self {
            Start | Modifier | Head if head => Some(Head),
            Start | Modifier | Head if modifier => Some(Modifier),
            Head if pos == Pos::Adp => Some(Adp),
            Adp if pos == Pos::Det => Some(Det),
            Adp | Det | ObjModifier | ObjHead if head => Some(ObjHead),
            Adp | Det | ObjModifier | ObjHead if modifier => Some(ObjModifier),
            _ => None,
        }
    }

    fn accepting(self) -> bool {
        matches!(self, State::Head | State::ObjHead)
    }
}

/// Whether the whole tag sequence is accepted by the phrase pattern.
pub fn matches_pattern(tags: &[Pos]) -> bool {
    !tags.is_empty()
        && tags
            .iter()
            .try_fold(State::Start, |s, &p| s.step(p))
            .is_some_and(State::accepting)
}

/// Case-folded token surfaces joined by single spaces, with trailing
/// punctuation dropped.
pub fn normalize_phrase(tokens: &[Token]) -> Result<String> {
    let is_punct = |t: &Token| match t.pos {
        Some(p) => p == Pos::Punct,
        None => !t.surface.chars().any(char::is_alphanumeric),
    };
    let end = tokens.iter().rposition(|t| !is_punct(t)).ok_or(Error::EmptyPhrase)? + 1;
    let mut out = String::new();
    for t in &tokens[..end] {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(t.normalized.split_whitespace());
    }
    Ok(out)
}

/// Accepted `[start, end)` spans within `tags`, sorted by (start, end).
pub(crate) fn matching_spans(tags: &[Pos]) -> Vec<[usize; 2]> {
    let mut all = Vec::new();
    for start in 0..tags.len() {
        let mut state = State::Start;
        for (end, &pos) in tags.iter().enumerate().skip(start).take(MAX_PHRASE_LEN) {
            match state.step(pos) {
                Some(next) => state = next,
                None => break,
            }
            if state.accepting() {
                all.push([start, end + 1]);
            }
        }
    }

    // `all` is sorted by (start, end); containing spans start at most
    // MAX_PHRASE_LEN tokens earlier.
    let window = |lo: usize, hi: usize| {
        let a = all.partition_point(|s| s[0] < lo);
        let b = all.partition_point(|s| s[0] < hi);
        &all[a..b]
    };
    let contains = |outer: &[usize; 2], inner: &[usize; 2]| outer[0] <= inner[0] && inner[1] <= outer[1];
    let mut emitted = Vec::new();
    for m in &all {
        let lo = m[0].saturating_sub(MAX_PHRASE_LEN);
        if window(lo, m[0] + 1).iter().any(|o| o != m && contains(o, m)) {
            continue;
        }
        // Longest sub-spans first so the cap drops the shortest fragments.
        let mut inner: Vec<[usize; 2]> = window(m[0], m[1]).iter().filter(|s| contains(m, s)).copied().collect();
        inner.sort_by_key(|s| (std::cmp::Reverse(s[1] - s[0]), s[0]));
        emitted.extend(inner.into_iter().take(MAX_SUBSPANS));
    }
    emitted.sort_unstable();
    emitted.dedup();
    emitted
}

/// Candidate noun phrases of a tagged document, ordered by (start, end).
pub fn extract_noun_phrases(doc: &Document) -> Result<Vec<PhraseSpan>> {
    if !doc.is_tagged() {
        return Err(Error::Untagged(doc.id.clone()));
    }
    let mut out = Vec::new();
    for sentence in &doc.sentences {
        let tokens = doc.sentence_tokens(sentence);
        let tags: Vec<Pos> = tokens.iter().map(|t| t.pos.unwrap_or(Pos::Other)).collect();
        let base = sentence.token_span[0];
        for [s, e] in matching_spans(&tags) {
            out.push(PhraseSpan {
                doc_id: doc.id.clone(),
                token_span: [base + s, base + e],
                sentence_index: sentence.index,
                normalized: normalize_phrase(&tokens[s..e])?,
            });
        }
    }
    Ok(out)
}
