//! JSON-over-HTTP routes.

use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use chrono::NaiveDate;
use rookie_core::{Engine, Error, StateRequest};
use serde::{Deserialize, Serialize};
use tower_http::cors::{Any, CorsLayer};

pub struct AppState {
    pub engine: Engine,
    /// Name clients may pass as `corpus`; any other value is a 404.
    pub corpus: String,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            message: message.into(),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::EmptyQuery | Error::InvalidRange { .. } | Error::NegativePage(_) => StatusCode::BAD_REQUEST,
            Error::UnknownDocument(_) | Error::UnknownPhrase(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError {
            status,
            message: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(ErrorBody { error: self.message })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn parse_date(name: &str, value: Option<&str>) -> Result<Option<NaiveDate>, ApiError> {
    match value.map(str::trim).filter(|v| !v.is_empty()) {
        None => Ok(None),
        Some(v) => NaiveDate::parse_from_str(v, "%Y-%m-%d")
            .map(Some)
            .map_err(|_| ApiError::bad_request(format!("invalid {name} date {v:?}"))),
    }
}

fn parse_int<T: std::str::FromStr>(name: &str, value: Option<&str>) -> Result<Option<T>, ApiError> {
    match value.map(str::trim).filter(|v| !v.is_empty()) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| ApiError::bad_request(format!("invalid {name} {v:?}"))),
    }
}

fn check_corpus(app: &AppState, corpus: Option<&str>) -> Result<(), ApiError> {
    match corpus {
        Some(c) if c != app.corpus => Err(ApiError::not_found(format!("unknown corpus {c:?}"))),
        _ => Ok(()),
    }
}

fn non_empty(s: Option<String>) -> Option<String> {
    s.filter(|s| !s.trim().is_empty())
}

#[derive(Debug, Default, Deserialize)]
pub struct StateParams {
    q: Option<String>,
    f: Option<String>,
    start: Option<String>,
    end: Option<String>,
    subjects_page: Option<String>,
    summary_page: Option<String>,
    seed: Option<String>,
    corpus: Option<String>,
}

impl StateParams {
    fn into_request(self) -> Result<StateRequest, ApiError> {
        Ok(StateRequest {
            q: self.q.unwrap_or_default(),
            f: non_empty(self.f),
            start: parse_date("start", self.start.as_deref())?,
            end: parse_date("end", self.end.as_deref())?,
            subjects_page: parse_int("subjects_page", self.subjects_page.as_deref())?.unwrap_or(0),
            summary_page: parse_int("summary_page", self.summary_page.as_deref())?.unwrap_or(0),
            seed: parse_int("seed", self.seed.as_deref())?,
        })
    }
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        message: e.to_string(),
    })?
}

async fn state(State(app): State<Arc<AppState>>, Query(params): Query<StateParams>) -> ApiResult<rookie_core::StateResponse> {
    check_corpus(&app, params.corpus.as_deref())?;
    let req = params.into_request()?;
    blocking(move || Ok(app.engine.state(&req)?)).await.map(Json)
}

#[derive(Debug, Default, Deserialize)]
pub struct DocParams {
    q: Option<String>,
    f: Option<String>,
    corpus: Option<String>,
}

async fn doc(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(params): Query<DocParams>,
) -> ApiResult<rookie_core::engine::DocView> {
    check_corpus(&app, params.corpus.as_deref())?;
    let q = non_empty(params.q);
    let f = non_empty(params.f);
    Ok(Json(app.engine.doc(&id, q.as_deref(), f.as_deref())?))
}

#[derive(Debug, Default, Deserialize)]
pub struct BaselineParams {
    q: Option<String>,
    start: Option<String>,
    end: Option<String>,
    page: Option<String>,
    corpus: Option<String>,
}

async fn baseline(
    State(app): State<Arc<AppState>>,
    Query(params): Query<BaselineParams>,
) -> ApiResult<rookie_core::engine::BaselineResponse> {
    check_corpus(&app, params.corpus.as_deref())?;
    let start = parse_date("start", params.start.as_deref())?;
    let end = parse_date("end", params.end.as_deref())?;
    let page = parse_int("page", params.page.as_deref())?.unwrap_or(0);
    let q = params.q.unwrap_or_default();
    blocking(move || Ok(app.engine.baseline(&q, start, end, page)?)).await.map(Json)
}

pub fn router(app: Arc<AppState>) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET])
        .allow_headers(Any);
    Router::new()
        .route("/api/state", get(state))
        .route("/api/doc/{id}", get(doc))
        .route("/api/baseline", get(baseline))
        .layer(cors)
        .with_state(app)
}
