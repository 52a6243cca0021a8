#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use chrono::{Duration, NaiveDate};
use rookie_core::ingest::{Document, Pos};
use rookie_core::phrase::extract_noun_phrases;
use rookie_core::rng::Xoshiro256PlusPlus;
use rookie_core::synth::{generate, SynthConfig};
use rookie_core::{build_index, DateRange, IndexBundle, SelectionState};

pub fn toy_docs(seed: u64) -> Vec<Document> {
    generate(&SynthConfig::toy(seed)).iter().map(|d| d.to_document()).collect()
}

pub fn toy(seed: u64) -> (Vec<Document>, IndexBundle) {
    let docs = toy_docs(seed);
    let bundle = build_index(docs.clone()).unwrap();
    (docs, bundle)
}

fn words(doc: &Document) -> Vec<&str> {
    doc.tokens
        .iter()
        .filter(|t| t.pos != Some(Pos::Punct))
        .map(|t| t.normalized.as_str())
        .collect()
}

/// Random (Q, F, T) over a corpus. Q terms are drawn from actual document
/// words so most states match something.
pub fn random_state(docs: &[Document], rng: &mut Xoshiro256PlusPlus, with_subject: bool) -> SelectionState {
    let pick_doc = |rng: &mut Xoshiro256PlusPlus| &docs[rng.below(docs.len() as u64) as usize];
    let doc = pick_doc(rng);
    let w = words(doc);
    let mut q = w[rng.below(w.len() as u64) as usize].to_string();
    if rng.below(3) == 0 {
        q.push(' ');
        q.push_str(w[rng.below(w.len() as u64) as usize]);
    }
    let min = docs.iter().map(|d| d.date).min().unwrap();
    let max = docs.iter().map(|d| d.date).max().unwrap();
    let span = (max - min).num_days() as u64 + 1;
    let t = if rng.below(4) == 0 {
        DateRange::new(min, max).unwrap()
    } else {
        let a = rng.below(span) as i64;
        let b = rng.below(span) as i64;
        DateRange::new(min + Duration::days(a.min(b)), min + Duration::days(a.max(b))).unwrap()
    };
    let f = if with_subject && rng.below(2) == 0 {
        let d = pick_doc(rng);
        let spans = extract_noun_phrases(d).unwrap();
        (!spans.is_empty()).then(|| spans[rng.below(spans.len() as u64) as usize].normalized.clone())
    } else {
        None
    };
    SelectionState::new(q, f, t)
}

/// Linear-scan re-implementation of the selection predicate.
pub fn brute_force_match(docs: &[Document], state: &SelectionState) -> Vec<String> {
    let q: Vec<String> = state.q.split_whitespace().map(|w| w.to_lowercase()).collect();
    let f: Option<Vec<String>> = state
        .f
        .as_ref()
        .map(|f| f.split_whitespace().map(|w| w.to_lowercase()).collect());
    let mut hits: Vec<(NaiveDate, String)> = docs
        .iter()
        .filter(|d| state.t.start <= d.date && d.date <= state.t.end)
        .filter(|d| {
            let w = words(d);
            q.iter().all(|t| w.contains(&t.as_str()))
        })
        .filter(|d| match &f {
            None => true,
            Some(f) => {
                let all: Vec<&str> = d.tokens.iter().map(|t| t.normalized.as_str()).collect();
                all.windows(f.len()).any(|win| win.iter().zip(f).all(|(a, b)| *a == b))
            }
        })
        .map(|d| (d.date, d.id.clone()))
        .collect();
    hits.sort();
    hits.into_iter().map(|(_, id)| id).collect()
}

/// Per-document phrase occurrence counts, straight from the extractor.
pub fn phrase_counts(docs: &[Document]) -> HashMap<String, HashMap<String, u32>> {
    docs.iter()
        .map(|d| {
            let mut counts = HashMap::new();
            for span in extract_noun_phrases(d).unwrap() {
                *counts.entry(span.normalized).or_insert(0) += 1;
            }
            (d.id.clone(), counts)
        })
        .collect()
}

/// Expected (qf, df) for every phrase occurring in `selected`, computed by
/// recounting from scratch.
pub fn brute_force_subjects(
    docs: &[Document],
    selected: &[String],
    q: &str,
) -> BTreeMap<String, (u32, u32)> {
    let counts = phrase_counts(docs);
    let mut total: HashMap<&str, u32> = HashMap::new();
    let mut df: HashMap<&str, u32> = HashMap::new();
    for per_doc in counts.values() {
        for (p, &n) in per_doc {
            *total.entry(p).or_insert(0) += n;
            *df.entry(p).or_insert(0) += 1;
        }
    }
    let query_phrase = q.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ");
    let mut out = BTreeMap::new();
    for id in selected {
        for (p, &n) in &counts[id] {
            if total[p.as_str()] < 5 || *p == query_phrase {
                continue;
            }
            out.entry(p.clone()).or_insert((0, df[p.as_str()])).0 += n;
        }
    }
    out
}
