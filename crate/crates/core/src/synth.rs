//! Deterministic synthetic news corpora and benchmark query sets.
//!
//! Documents are built from sentence templates over a fixed cast of people,
//! places and organisations, so the rule-based tagger yields realistic noun
//! phrases and every name recurs often enough to be indexed.

use chrono::{Duration, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::engine::{Engine, StateRequest};
use crate::rng::Xoshiro256PlusPlus;
use crate::selection::YearMonth;

const PLACES: &[&str] = &[
    "Haiti", "Jordan", "Syria", "Damascus", "Amman", "Cuba", "Panama", "Kosovo", "Somalia", "Rwanda",
    "Bosnia", "Peru", "Chile", "Lebanon", "Beirut", "Iraq", "Baghdad", "Egypt", "Cairo", "Israel",
    "Sudan", "Kenya", "Nigeria", "Angola", "Colombia", "Bogota", "Mexico", "Libya", "Yemen", "Algeria",
];

const PEOPLE: &[&str] = &[
    "President Clinton", "President Assad", "Bashar al-Assad", "King Hussein", "President Aristide",
    "General Cedras", "Prime Minister Rabin", "Secretary Albright", "President Mubarak", "Senator Dole",
    "President Fujimori", "President Castro", "General Noriega", "President Yeltsin", "Chancellor Kohl",
    "President Mandela", "Minister Peres", "President Arafat", "Senator Helms", "Ambassador Richardson",
];

const ORGS: &[&str] = &[
    "United Nations", "Security Council", "World Bank", "Red Cross", "State Department",
    "European Union", "Arab League", "Organization of American States",
];

const ADJECTIVES: &[&str] = &[
    "foreign", "military", "national", "political", "famous", "massive", "former", "interim",
    "democratic", "economic", "humanitarian", "regional", "senior", "civil", "elected", "armed",
];

const NOUNS: &[&str] = &[
    "economy", "election", "army", "troops", "aid", "talks", "treaty", "border", "refugees",
    "protest", "rebels", "sanctions", "convoy", "parliament", "coup", "embargo", "crisis", "summit",
    "ceasefire", "minister", "government", "police", "oil", "debt", "reform", "vote", "peace",
    "agreement", "negotiations", "aides", "opposition", "capital", "port", "budget", "blockade",
];

const VERBS: &[&str] = &[
    "met", "criticized", "visited", "announced", "rejected", "signed", "praised", "opposed",
    "discussed", "welcomed", "condemned", "supported", "delayed", "demanded", "ended",
];

const WEEKDAYS: &[&str] = &["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthDoc {
    pub id: String,
    pub date: NaiveDate,
    pub title: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthConfig {
    pub docs: usize,
    /// Inclusive range of sentences per document.
    pub sentences: (usize, usize),
    pub start: NaiveDate,
    pub days: i64,
    /// Vocabulary lists are truncated to this many entries; small values
    /// make tiny corpora repeat phrases often enough to be indexed.
    pub vocab: usize,
    pub seed: u64,
}

impl SynthConfig {
    /// About 10,000 documents and two million tokens over twenty years.
    pub fn reference() -> Self {
        SynthConfig {
            docs: 10_000,
            sentences: (14, 22),
            start: NaiveDate::from_ymd_opt(1987, 1, 1).expect("valid date"),
            days: 20 * 365,
            vocab: usize::MAX,
            seed: 1987,
        }
    }

    /// A corpus of at most 50 documents and 2,000 tokens.
    pub fn toy(seed: u64) -> Self {
        SynthConfig {
            docs: 40,
            sentences: (3, 4),
            start: NaiveDate::from_ymd_opt(1993, 1, 1).expect("valid date"),
            days: 3 * 365,
            vocab: 5,
            seed,
        }
    }
}

struct Gen {
    rng: Xoshiro256PlusPlus,
    vocab: usize,
}

impl Gen {
    fn pick<'a>(&mut self, list: &'a [&'a str]) -> &'a str {
        let n = list.len().min(self.vocab).max(1);
        list[self.rng.below(n as u64) as usize]
    }

    fn pick_skewed<'a>(&mut self, list: &'a [&'a str]) -> &'a str {
        // Min of two uniform draws favours the head of the list.
        let n = list.len().min(self.vocab).max(1) as u64;
        let i = self.rng.below(n).min(self.rng.below(n));
        list[i as usize]
    }

    fn chance(&mut self, percent: u64) -> bool {
        self.rng.below(100) < percent
    }

    fn king(&mut self) -> &'static str {
        ["King Abdullah II", "King Abdullah", "Abdullah II"][self.rng.below(3) as usize]
    }

    fn person(&mut self, place: &str) -> String {
        if place == "Jordan" || place == "Amman" {
            if self.chance(50) {
                return self.king().to_string();
            }
        }
        self.pick_skewed(PEOPLE).to_string()
    }

    fn sentence(&mut self, place: &str, first: bool) -> String {
        let who = self.person(place);
        let other = self.person(place);
        let verb = self.pick(VERBS);
        let adj = self.pick(ADJECTIVES);
        let noun = self.pick(NOUNS);
        let noun2 = self.pick(NOUNS);
        let org = self.pick(ORGS);
        let elsewhere = self.pick_skewed(PLACES);
        let day = self.pick(WEEKDAYS);
        let n = 2 + self.rng.below(400);
        let template = if first { 0 } else { self.rng.below(8) };
        match template {
            0 => format!("{who} {verb} the {adj} {noun} of {place} on {day}."),
            1 => format!("The {org} {verb} the {noun} in {place}, officials said."),
            2 => format!("{who} and {other} {verb} the {adj} {noun} near {elsewhere}."),
            3 => format!("Officials in {place} said {n} {noun} had arrived before the {noun2} {noun}."),
            4 => format!("The {adj} {noun2} {verb} {who} after the {noun} in {place}."),
            5 => format!("In {place}, the {noun} of the {org} was {verb} by {other}."),
            6 => format!("{who} said the {adj} {noun} would not affect {elsewhere}."),
            _ => format!("Critics of {who} {verb} the {noun2} talks with {elsewhere} on {day}."),
        }
    }
}

/// Generate a corpus. Deterministic for a given configuration.
pub fn generate(cfg: &SynthConfig) -> Vec<SynthDoc> {
    let mut g = Gen {
        rng: Xoshiro256PlusPlus::seed_from_u64(cfg.seed),
        vocab: cfg.vocab,
    };
    let (lo, hi) = cfg.sentences;
    (0..cfg.docs)
        .map(|i| {
            let date = cfg.start + Duration::days(g.rng.below(cfg.days.max(1) as u64) as i64);
            // Each place is newsworthy in its own stretch of years.
            let place = if g.chance(60) {
                let places = PLACES.len().min(g.vocab);
                PLACES[(YearMonth::of(date).ordinal() / 9) as usize % places]
            } else {
                g.pick_skewed(PLACES)
            };
            let n = lo + g.rng.below((hi - lo + 1) as u64) as usize;
            let text = (0..n).map(|s| g.sentence(place, s == 0)).collect::<Vec<_>>().join(" ");
            SynthDoc {
                id: format!("doc-{i:05}"),
                date,
                title: format!("News from {place}"),
                text,
            }
        })
        .collect()
}

impl SynthDoc {
    pub fn to_document(&self) -> crate::ingest::Document {
        crate::ingest::Document::analyze(self.id.clone(), self.date, self.title.clone(), self.text.clone())
    }
}

/// Serialize documents as corpus JSONL.
pub fn to_jsonl(docs: &[SynthDoc]) -> String {
    let mut out = String::new();
    for d in docs {
        out.push_str(&serde_json::to_string(d).expect("serializable"));
        out.push('\n');
    }
    out
}

/// Candidate single-term and two-term queries drawn from the generator's
/// vocabulary.
pub fn query_vocabulary() -> Vec<String> {
    let mut out: Vec<String> = PLACES.iter().map(|s| s.to_string()).collect();
    out.extend(PEOPLE.iter().map(|p| p.split_whitespace().last().unwrap_or(p).to_string()));
    out.extend(["Abdullah", "aid", "election", "sanctions", "refugees", "coup"].map(String::from));
    out
}

/// A reproducible mix of benchmark requests: plain queries, two-term
/// queries, month-aligned timespans, and subjects taken from the engine's
/// own subject lists.
pub fn benchmark_requests(engine: &Engine, n: usize, seed: u64) -> Vec<StateRequest> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let vocab = query_vocabulary();
    let span = engine.bundle().corpus_span();
    let first = YearMonth::of(span.start).ordinal();
    let months = (YearMonth::of(span.end).ordinal() - first + 1) as u64;
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let mut q = vocab[rng.below(vocab.len() as u64) as usize].clone();
        if rng.below(4) == 0 {
            q = format!("{q} {}", vocab[rng.below(vocab.len() as u64) as usize]);
        }
        let mut req = StateRequest::query(q);
        req.seed = Some(rng.below(1 << 32));
        if rng.below(3) > 0 {
            let a = rng.below(months) as i64;
            let b = rng.below(months) as i64;
            req.start = Some(YearMonth::from_ordinal(first + a.min(b)).first_day());
            req.end = Some(YearMonth::from_ordinal(first + a.max(b)).last_day());
        }
        if rng.below(3) == 0 {
            if let Ok(resp) = engine.state(&req) {
                let subjects = &resp.subjects.items;
                if !subjects.is_empty() {
                    req.f = Some(subjects[rng.below(subjects.len() as u64) as usize].phrase.clone());
                }
            }
        }
        if rng.below(5) == 0 {
            req.summary_page = rng.below(3) as i64;
        }
        out.push(req);
    }
    out
}
