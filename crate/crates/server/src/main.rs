use std::fs::File;
use std::io::{BufReader, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use chrono::NaiveDate;
use clap::{Parser, Subcommand};
use rookie_core::synth::{self, SynthConfig};
use rookie_core::{build_index, parse_corpus, save_index, StateRequest, StateResponse};
use rookie_server::{bench, corpus_name, load_config, open_engine, serve, AppState};

#[derive(Debug, Parser)]
#[command(name = "rookie", version, about = "Exploratory search over dated news archives")]
struct Cli {
    /// TOML config with dedup thresholds, page sizes and port.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an index directory from a JSONL corpus.
    Index {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve the JSON API over HTTP.
    Serve {
        dir: PathBuf,
        #[arg(long)]
        port: Option<u16>,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
    /// Print the linked views for one selection.
    Query {
        dir: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        from: Option<NaiveDate>,
        #[arg(long)]
        to: Option<NaiveDate>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        subjects_page: i64,
        #[arg(long, default_value_t = 0)]
        summary_page: i64,
        #[arg(long)]
        json: bool,
    },
    /// Replay a query file and report p50/p99 latencies.
    Bench {
        dir: PathBuf,
        /// JSONL of request objects, or one query per line.
        #[arg(long, required_unless_present = "generate")]
        queries: Option<PathBuf>,
        /// Generate this many benchmark requests instead of reading a file.
        #[arg(long, conflicts_with = "queries")]
        generate: Option<usize>,
        /// Write the generated requests here for later replay.
        #[arg(long, requires = "generate")]
        save_queries: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Compare baseline snippet lengths across `surround` values with
    /// summary sentence lengths.
    SnippetLengths {
        dir: PathBuf,
        /// One query per line; defaults to the synthetic vocabulary.
        #[arg(long)]
        queries: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "20,30,40,50,60,80,100")]
        surround: Vec<usize>,
        #[arg(long, default_value_t = 50)]
        per_query: usize,
    },
    /// Write a synthetic JSONL corpus.
    Synth {
        out: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        docs: usize,
        #[arg(long, default_value_t = 1987)]
        seed: u64,
    },
}

fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Index { corpus, out } => {
            let started = Instant::now();
            let reader = BufReader::new(File::open(&corpus).with_context(|| format!("opening {}", corpus.display()))?);
            let docs = parse_corpus(reader)?;
            if docs.is_empty() {
                bail!("{} contains no documents", corpus.display());
            }
            let bundle = build_index(docs)?;
            let manifest = save_index(&bundle, &out)?;
            println!(
                "indexed {} documents, {} terms, {} phrases ({} to {}) in {:.1}s",
                manifest.n_docs,
                manifest.n_terms,
                manifest.n_phrases,
                manifest.corpus_span[0],
                manifest.corpus_span[1],
                started.elapsed().as_secs_f64()
            );
        }
        Command::Serve { dir, port, host } => {
            let port = port.unwrap_or(config.server.port);
            let corpus = corpus_name(&dir);
            let engine = open_engine(&dir, config)?;
            let addr: SocketAddr = format!("{host}:{port}").parse().context("invalid host or port")?;
            let app = Arc::new(AppState { engine, corpus });
            tokio::runtime::Runtime::new()?.block_on(serve(app, addr))?;
        }
        Command::Query {
            dir,
            q,
            f,
            from,
            to,
            seed,
            subjects_page,
            summary_page,
            json,
        } => {
            let engine = open_engine(&dir, config)?;
            let req = StateRequest {
                q,
                f,
                start: from,
                end: to,
                subjects_page,
                summary_page,
                seed,
            };
            let resp = engine.state(&req)?;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            if json {
                serde_json::to_writer_pretty(&mut out, &resp)?;
                writeln!(out)?;
            } else {
                print_table(&mut out, &resp)?;
            }
        }
        Command::Bench {
            dir,
            queries,
            generate,
            save_queries,
            json,
        } => {
            let engine = open_engine(&dir, config)?;
            let requests = match (queries, generate) {
                (Some(path), _) => bench::read_queries(BufReader::new(
                    File::open(&path).with_context(|| format!("opening {}", path.display()))?,
                ))?,
                (None, Some(n)) => synth::benchmark_requests(&engine, n, 200),
                (None, None) => unreachable!("clap requires one of --queries/--generate"),
            };
            if let Some(path) = save_queries {
                let mut f = File::create(&path)?;
                for r in &requests {
                    writeln!(f, "{}", serde_json::to_string(r)?)?;
                }
            }
            let (report, _) = bench::run(&engine, &requests);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
        }
        Command::SnippetLengths {
            dir,
            queries,
            surround,
            per_query,
        } => {
            let engine = open_engine(&dir, config)?;
            let queries = match queries {
                Some(path) => bench::read_queries(BufReader::new(
                    File::open(&path).with_context(|| format!("opening {}", path.display()))?,
                ))?
                .into_iter()
                .map(|r| r.q)
                .collect(),
                None => synth::query_vocabulary(),
            };
            let rows = bench::snippet_lengths(&engine, &queries, &surround, per_query)?;
            println!("{:>8} {:>14} {:>14} {:>10}", "surround", "snippet_chars", "summary_chars", "abs_diff");
            for r in rows {
                println!("{:>8} {:>14.1} {:>14.1} {:>10.1}", r.surround, r.baseline_chars, r.summary_chars, r.abs_diff);
            }
        }
        Command::Synth { out, docs, seed } => {
            let cfg = SynthConfig {
                docs,
                seed,
                ..SynthConfig::reference()
            };
            std::fs::write(&out, synth::to_jsonl(&synth::generate(&cfg)))?;
            println!("wrote {docs} documents to {}", out.display());
        }
    }
    Ok(())
}

fn print_table(out: &mut impl Write, resp: &StateResponse) -> Result<()> {
    let s = &resp.state;
    writeln!(out, "q: {}", s.q)?;
    if let Some(f) = &s.f {
        writeln!(out, "f: {f}")?;
    }
    writeln!(out, "t: {} .. {}", s.t.start, s.t.end)?;
    writeln!(out, "total_docs: {}", resp.total_docs)?;
    writeln!(out, "seed: {}", resp.seed)?;
    writeln!(out)?;
    writeln!(out, "subjects (page {}, {} total):", resp.subjects.page, resp.subjects.total)?;
    writeln!(out, "  {:<32} {:>6} {:>6} {:>8}", "phrase", "qf", "df", "score")?;
    for subj in &resp.subjects.items {
        writeln!(out, "  {:<32} {:>6} {:>6} {:>8.3}", subj.phrase, subj.qf, subj.df, subj.score)?;
    }
    writeln!(out)?;
    writeln!(out, "summary (page {}, {} total):", resp.summary.page, resp.summary.total)?;
    for c in &resp.summary.items {
        writeln!(out, "  [{}] {} {} #{}: {}", c.tier, c.date, c.doc_id, c.sentence_index, c.text)?;
    }
    Ok(())
}
