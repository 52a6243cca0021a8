#![allow(dead_code)]

use std::sync::Arc;

use rookie_core::synth::{generate, SynthConfig};
use rookie_core::{build_index, Config, Engine};
use rookie_server::{serve_on, AppState};

pub fn toy_engine(seed: u64) -> Engine {
    let docs = generate(&SynthConfig::toy(seed)).iter().map(|d| d.to_document()).collect();
    Engine::new(build_index(docs).unwrap(), Config::default())
}

/// Start a server on an ephemeral port and return its base URL.
pub async fn spawn(engine: Engine, corpus: &str) -> String {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let app = Arc::new(AppState {
        engine,
        corpus: corpus.to_string(),
    });
    tokio::spawn(serve_on(app, listener));
    format!("http://{addr}")
}
