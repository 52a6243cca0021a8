//! HTTP facade and command-line plumbing around `rookie-core`.

pub mod api;
pub mod bench;

use std::net::SocketAddr;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use rookie_core::{load_index, Config, Engine};

pub use api::{router, AppState};

pub fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let raw = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(Config::from_toml(&raw)?)
        }
    }
}

pub fn open_engine(dir: &Path, config: Config) -> Result<Engine> {
    let bundle = load_index(dir).with_context(|| format!("loading index {}", dir.display()))?;
    Ok(Engine::new(bundle, config))
}

/// Corpus name clients may pass as `corpus`: the index directory's name.
pub fn corpus_name(dir: &Path) -> String {
    dir.canonicalize()
        .ok()
        .and_then(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .unwrap_or_else(|| "default".to_string())
}

/// Serve until the listener fails or the process receives Ctrl-C.
pub async fn serve(app: Arc<AppState>, addr: SocketAddr) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    serve_on(app, listener).await
}

pub async fn serve_on(app: Arc<AppState>, listener: tokio::net::TcpListener) -> Result<()> {
    tracing::info!(addr = %listener.local_addr()?, corpus = %app.corpus, "serving");
    axum::serve(listener, router(app))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
