//! Corpus ingestion: JSONL parsing, sentence segmentation, tokenization and
//! rule-based part-of-speech tagging.

mod abbrev;
mod segment;
mod tag;
mod tokenize;

use std::collections::HashSet;
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use segment::segment_sentences;
pub use tag::{tag_pos, tag_word};
pub use tokenize::{normalize, tokenize};

/// Coarse part-of-speech tagset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Propn,
    Adj,
    Det,
    Adp,
    Verb,
    Num,
    Punct,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 9] = [
        Pos::Noun,
        Pos::Propn,
        Pos::Adj,
        Pos::Det,
        Pos::Adp,
        Pos::Verb,
        Pos::Num,
        Pos::Punct,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Propn => "PROPN",
            Pos::Adj => "ADJ",
            Pos::Det => "DET",
            Pos::Adp => "ADP",
            Pos::Verb => "VERB",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Other => "OTHER",
        }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown POS tag {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub pos: Option<Pos>,
    /// Character (not byte) index into the document text.
    pub char_offset: usize,
    pub sentence_index: usize,
}

impl Token {
    pub fn char_len(&self) -> usize {
        self.surface.chars().count()
    }

    pub fn char_end(&self) -> usize {
        self.char_offset + self.char_len()
    }

    pub fn is_punct(&self) -> bool {
        self.pos == Some(Pos::Punct)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    /// `[start, end)` character range.
    pub char_span: [usize; 2],
    /// `[start, end)` range into the document's token list.
    pub token_span: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub date: NaiveDate,
    pub title: String,
    pub text: String,
    pub sentences: Vec<Sentence>,
    pub tokens: Vec<Token>,
}

impl Document {
    /// Segment, tokenize and tag raw text.
    pub fn analyze(id: impl Into<String>, date: NaiveDate, title: impl Into<String>, text: impl Into<String>) -> Document {
        let text = text.into();
        let mut sentences = segment_sentences(&text);
        let mut tokens = tokenize(&text);
        assign_sentences(&mut sentences, &mut tokens);
        let tokens = tag_pos(tokens);
        Document {
            id: id.into(),
            date,
            title: title.into(),
            text,
            sentences,
            tokens,
        }
    }

    pub fn is_tagged(&self) -> bool {
        self.tokens.iter().all(|t| t.pos.is_some())
    }

    pub fn sentence_tokens(&self, sentence: &Sentence) -> &[Token] {
        &self.tokens[sentence.token_span[0]..sentence.token_span[1]]
    }

    /// Byte offset of every char boundary, plus the text length, so that
    /// character spans can be sliced out of `text`.
    pub fn char_to_byte(&self) -> Vec<usize> {
        char_to_byte(&self.text)
    }

    pub fn char_slice(&self, span: [usize; 2]) -> &str {
        let map = self.char_to_byte();
        &self.text[map[span[0]]..map[span[1]]]
    }

    pub fn sentence_text(&self, sentence: &Sentence) -> &str {
        self.char_slice(sentence.char_span)
    }
}

pub(crate) fn char_to_byte(text: &str) -> Vec<usize> {
    text.char_indices()
        .map(|(b, _)| b)
        .chain(std::iter::once(text.len()))
        .collect()
}

/// Attach each token to the sentence whose character span contains it and
/// fill in sentence token spans.
fn assign_sentences(sentences: &mut [Sentence], tokens: &mut [Token]) {
    let mut s = 0;
    let mut start = 0;
    for (i, tok) in tokens.iter_mut().enumerate() {
        while s + 1 < sentences.len() && tok.char_offset >= sentences[s].char_span[1] {
            sentences[s].token_span = [start, i];
            start = i;
            s += 1;
        }
        tok.sentence_index = s;
    }
    if let Some(last) = sentences.get_mut(s) {
        last.token_span = [start, tokens.len()];
    }
}

#[derive(Debug, Deserialize)]
struct RawToken {
    surface: String,
    pos: String,
    char_offset: usize,
    sentence_index: usize,
}

#[derive(Debug, Deserialize)]
struct RawDocument {
    id: Option<String>,
    date: Option<String>,
    title: Option<String>,
    text: Option<String>,
    tokens: Option<Vec<RawToken>>,
}

/// Parse a JSONL corpus, one document per non-blank line, in input order.
pub fn parse_corpus<R: BufRead>(reader: R) -> Result<Vec<Document>> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_line(&line, i + 1)?;
        if !seen.insert(doc.id.clone()) {
            return Err(Error::DuplicateId(doc.id));
        }
        docs.push(doc);
    }
    Ok(docs)
}

fn parse_line(line: &str, line_no: usize) -> Result<Document> {
    let raw: RawDocument =
        serde_json::from_str(line).map_err(|source| Error::MalformedLine { line: line_no, source })?;
    let missing = |field| Error::MissingField { line: line_no, field };
    let id = raw.id.ok_or_else(|| missing("id"))?;
    let date_str = raw.date.ok_or_else(|| missing("date"))?;
    let text = raw.text.ok_or_else(|| missing("text"))?;
    let date = NaiveDate::parse_from_str(&date_str, "%Y-%m-%d").map_err(|_| Error::InvalidDate {
        id: id.clone(),
        date: date_str.clone(),
    })?;
    let title = raw.title.unwrap_or_default();
    match raw.tokens {
        None => Ok(Document::analyze(id, date, title, text)),
        Some(raw_tokens) => pretagged(id, date, title, text, raw_tokens),
    }
}

fn pretagged(id: String, date: NaiveDate, title: String, text: String, raw: Vec<RawToken>) -> Result<Document> {
    let invalid = |reason: String| Error::InvalidTokens { id: id.clone(), reason };
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::with_capacity(raw.len());
    let mut sentences: Vec<Sentence> = Vec::new();
    for (i, rt) in raw.into_iter().enumerate() {
        let pos: Pos = rt.pos.parse().map_err(invalid)?;
        let len = rt.surface.chars().count();
        if len == 0 {
            return Err(invalid(format!("token {i} is empty")));
        }
        let end = rt.char_offset + len;
        if end > chars.len() || chars[rt.char_offset..end].iter().copied().ne(rt.surface.chars()) {
            return Err(invalid(format!("token {i} {:?} does not match text at {}", rt.surface, rt.char_offset)));
        }
        if let Some(prev) = tokens.last().map(Token::char_end) {
            if rt.char_offset < prev {
                return Err(invalid(format!("token {i} overlaps or precedes its predecessor")));
            }
        }
        match sentences.last_mut() {
            Some(s) if s.index == rt.sentence_index => {
                s.char_span[1] = end;
                s.token_span[1] = i + 1;
            }
            _ => {
                if rt.sentence_index != sentences.len() {
                    return Err(invalid(format!("token {i} has non-contiguous sentence index {}", rt.sentence_index)));
                }
                sentences.push(Sentence {
                    index: rt.sentence_index,
                    char_span: [rt.char_offset, end],
                    token_span: [i, i + 1],
                });
            }
        }
        let normalized = normalize(&rt.surface);
        if normalized.is_empty() && pos != Pos::Punct {
            return Err(invalid(format!("token {i} normalizes to an empty string")));
        }
        tokens.push(Token {
            normalized,
            surface: rt.surface,
            pos: Some(pos),
            char_offset: rt.char_offset,
            sentence_index: rt.sentence_index,
        });
    }
    Ok(Document {
        id,
        date,
        title,
        text,
        sentences,
        tokens,
    })
}
