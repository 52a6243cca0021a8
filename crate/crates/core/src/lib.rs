//! Exploratory search over dated news archives.
//!
//! A selection of query, subject and timespan drives three linked views: a
//! monthly timeline, a ranked subject list and a temporally diverse
//! one-sentence-per-document summary. A snippet engine is included for
//! side-by-side comparison.

pub mod baseline;
pub mod config;
pub mod engine;
pub mod error;
pub mod facets;
pub mod index;
pub mod ingest;
pub mod phrase;
pub mod rng;
pub mod selection;
pub mod summarizer;
pub mod synth;
pub mod timeseries;

pub use config::Config;
pub use engine::{Engine, StateRequest, StateResponse};
pub use error::{Error, Result};
pub use index::{build_index, load_index, match_documents, save_index, IndexBundle};
pub use ingest::{parse_corpus, Document};
pub use selection::{DateRange, DocumentSelection, SelectionState, YearMonth};
