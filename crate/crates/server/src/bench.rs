//! Latency replay over a query file.

use std::fmt;
use std::io::BufRead;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use rookie_core::baseline::{make_snippet, rank_documents_baseline};
use rookie_core::config::BaselineConfig;
use rookie_core::summarizer::select_document_sentence;
use rookie_core::{Engine, StateRequest, StateResponse};
use serde::Serialize;

/// Read benchmark requests: one JSON object per line with `StateRequest`
/// fields, or a bare query string. Blank lines and `#` comments are
/// skipped.
pub fn read_queries<R: BufRead>(reader: R) -> Result<Vec<StateRequest>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let req = if line.starts_with('{') {
            serde_json::from_str(line).with_context(|| format!("query file line {}", i + 1))?
        } else {
            StateRequest::query(line)
        };
        out.push(req);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub queries: usize,
    pub errors: usize,
    pub p50_ms: f64,
    pub p99_ms: f64,
    pub mean_ms: f64,
    pub max_ms: f64,
}

/// Nearest-rank percentile of sorted samples.
pub fn percentile(sorted: &[Duration], p: f64) -> Duration {
    if sorted.is_empty() {
        return Duration::ZERO;
    }
    let rank = ((p / 100.0) * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

impl BenchReport {
    pub fn from_samples(mut samples: Vec<Duration>, errors: usize) -> Self {
        samples.sort();
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        let total: Duration = samples.iter().sum();
        BenchReport {
            queries: samples.len(),
            errors,
            p50_ms: ms(percentile(&samples, 50.0)),
            p99_ms: ms(percentile(&samples, 99.0)),
            mean_ms: if samples.is_empty() { 0.0 } else { ms(total) / samples.len() as f64 },
            max_ms: samples.last().map_or(0.0, |&d| ms(d)),
        }
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "queries: {}", self.queries)?;
        writeln!(f, "errors: {}", self.errors)?;
        writeln!(f, "p50: {:.2} ms", self.p50_ms)?;
        writeln!(f, "p99: {:.2} ms", self.p99_ms)?;
        writeln!(f, "mean: {:.2} ms", self.mean_ms)?;
        write!(f, "max: {:.2} ms", self.max_ms)
    }
}

/// Time each request through view assembly and JSON encoding, the work
/// `/api/state` does per call.
pub fn run(engine: &Engine, requests: &[StateRequest]) -> (BenchReport, Vec<Option<StateResponse>>) {
    let mut samples = Vec::with_capacity(requests.len());
    let mut responses = Vec::with_capacity(requests.len());
    let mut errors = 0;
    for req in requests {
        let started = Instant::now();
        let result = engine.state(req).and_then(|resp| {
            serde_json::to_vec(&resp).map_err(|e| rookie_core::Error::Io(e.into()))?;
            Ok(resp)
        });
        samples.push(started.elapsed());
        match result {
            Ok(resp) => responses.push(Some(resp)),
            Err(_) => {
                errors += 1;
                responses.push(None);
            }
        }
    }
    (BenchReport::from_samples(samples, errors), responses)
}

#[derive(Debug, Clone, Serialize)]
pub struct SnippetLengthRow {
    pub surround: usize,
    pub baseline_chars: f64,
    pub summary_chars: f64,
    pub abs_diff: f64,
}

/// Mean rendered baseline snippet length for each `surround` value next to
/// the mean summary sentence length, over the top `per_query` hits of each
/// query. Used to pick a `surround` comparable to summary sentences.
pub fn snippet_lengths(engine: &Engine, queries: &[String], surrounds: &[usize], per_query: usize) -> Result<Vec<SnippetLengthRow>> {
    let bundle = engine.bundle();
    let mut docs = Vec::new();
    for q in queries {
        let ranked = rank_documents_baseline(bundle, q, bundle.corpus_span())?;
        docs.extend(ranked.into_iter().take(per_query).map(|r| (q.as_str(), r.doc_id)));
    }
    let chars = |s: &str| s.chars().count() as f64;
    let mean = |xs: &[f64]| if xs.is_empty() { 0.0 } else { xs.iter().sum::<f64>() / xs.len() as f64 };
    let summary: Vec<f64> = docs
        .iter()
        .filter_map(|(q, id)| select_document_sentence(bundle.document(id)?, q, None))
        .map(|c| chars(&c.text))
        .collect();
    let summary_chars = mean(&summary);
    surrounds
        .iter()
        .map(|&surround| {
            let cfg = BaselineConfig {
                surround,
                ..engine.config().baseline.clone()
            };
            let mut lens = Vec::with_capacity(docs.len());
            for (q, id) in &docs {
                let doc = bundle.document(id).context("ranked document missing")?;
                lens.push(chars(&make_snippet(doc, q, &cfg)?.render()));
            }
            let baseline_chars = mean(&lens);
            Ok(SnippetLengthRow {
                surround,
                baseline_chars,
                summary_chars,
                abs_diff: (baseline_chars - summary_chars).abs(),
            })
        })
        .collect()
}
