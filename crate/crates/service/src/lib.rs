//! HTTP API over the affect mosaic pipeline.
//!
//! | method | path            | response                                  |
//! |--------|-----------------|-------------------------------------------|
//! | POST   | `/analyze`      | canonical analysis JSON                   |
//! | GET    | `/legend`       | row-major grid of hex colors              |
//! | GET    | `/lexicon/info` | `{"entries": n, "scale": [lo, hi]}`       |
//! | GET    | `/healthz`      | `ok`                                      |
//! | GET    | `/`, assets     | explorer UI                               |
//!
//! The lexicon and base mapping are shared read-only; every request is
//! computed from scratch, so responses depend only on the request.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use affect_mosaic::{
    analyze, emit_json, legend_slice, Axis, Granularity, Lexicon, MappingConfig, MappingOverrides,
};
use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::{DefaultBodyLimit, Query, Request, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{Any, CorsLayer};
use tower_http::services::ServeDir;

const INDEX_HTML: &str = include_str!("../assets/index.html");

pub const DEFAULT_MAX_TEXT_CHARS: usize = 1 << 20;
pub const DEFAULT_LEGEND_GRID: usize = 32;
pub const MAX_LEGEND_GRID: usize = 256;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Longest accepted `/analyze` text, in characters.
    pub max_text_chars: usize,
    /// Directory holding the explorer bundle; the built-in page is used for `/` otherwise.
    pub static_dir: Option<PathBuf>,
    pub cors: bool,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_text_chars: DEFAULT_MAX_TEXT_CHARS,
            static_dir: None,
            cors: true,
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    lexicon: Arc<Lexicon>,
    mapping: MappingConfig,
    config: Arc<ServiceConfig>,
}

impl AppState {
    pub fn new(lexicon: Lexicon, mapping: MappingConfig, config: ServiceConfig) -> Self {
        AppState {
            lexicon: Arc::new(lexicon),
            mapping,
            config: Arc::new(config),
        }
    }
}

/// Body of `POST /analyze`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub text: String,
    #[serde(default = "default_granularity")]
    pub granularity: String,
    #[serde(default)]
    pub mapping: Option<MappingOverrides>,
}

fn default_granularity() -> String {
    "sentence".into()
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    TooLarge { chars: usize, max: usize },
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, message) = match self {
            ApiError::BadRequest(m) => (StatusCode::BAD_REQUEST, m),
            ApiError::TooLarge { chars, max } => (
                StatusCode::PAYLOAD_TOO_LARGE,
                format!("text has {chars} characters, limit is {max}"),
            ),
            ApiError::Internal(m) => (StatusCode::INTERNAL_SERVER_ERROR, m),
        };
        (status, Json(json!({ "error": message }))).into_response()
    }
}

pub fn router(state: AppState) -> Router {
    // worst case: every char escaped as a 12-byte surrogate pair
    let body_limit = state.config.max_text_chars.saturating_mul(12) + (64 << 10);
    let api = Router::new()
        .route("/analyze", post(analyze_handler))
        .route("/legend", get(legend_handler))
        .route("/lexicon/info", get(lexicon_info))
        .layer(DefaultBodyLimit::max(body_limit));
    let api = if state.config.cors {
        api.layer(
            CorsLayer::new()
                .allow_origin(Any)
                .allow_methods([Method::GET, Method::POST])
                .allow_headers([header::CONTENT_TYPE]),
        )
    } else {
        api
    };

    let mut app = api
        .route("/healthz", get(|| async { "ok" }))
        .route("/", get(index));
    if let Some(dir) = &state.config.static_dir {
        app = app.fallback_service(ServeDir::new(dir));
    } else {
        app = app.fallback(not_found);
    }
    app.layer(middleware::from_fn(log_request)).with_state(state)
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state)).await
}

async fn log_request(req: Request, next: Next) -> Response {
    let method = req.method().clone();
    let uri = req.uri().clone();
    let started = Instant::now();
    let response = next.run(req).await;
    tracing::info!(
        "{method} {uri} {} {:.1}ms",
        response.status().as_u16(),
        started.elapsed().as_secs_f64() * 1e3
    );
    response
}

async fn not_found() -> Response {
    (StatusCode::NOT_FOUND, Json(json!({ "error": "not found" }))).into_response()
}

async fn index(State(state): State<AppState>) -> Response {
    if let Some(dir) = &state.config.static_dir {
        if let Ok(page) = tokio::fs::read(dir.join("index.html")).await {
            return ([(header::CONTENT_TYPE, "text/html; charset=utf-8")], page).into_response();
        }
    }
    ([(header::CONTENT_TYPE, "text/html; charset=utf-8")], INDEX_HTML).into_response()
}

fn json_body(body: String) -> Response {
    let mut res = body.into_response();
    res.headers_mut().insert(
        header::CONTENT_TYPE,
        HeaderValue::from_static("application/json"),
    );
    res
}

async fn analyze_handler(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let req: AnalyzeRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::BadRequest(format!("invalid request body: {e}")))?;
    let granularity: Granularity = req
        .granularity
        .parse()
        .map_err(|e| ApiError::BadRequest(format!("{e}")))?;
    let mapping = match &req.mapping {
        Some(overrides) => state
            .mapping
            .with_overrides(overrides)
            .map_err(|e| ApiError::BadRequest(e.to_string()))?,
        None => state.mapping,
    };
    let chars = req.text.chars().count();
    if chars > state.config.max_text_chars {
        return Err(ApiError::TooLarge {
            chars,
            max: state.config.max_text_chars,
        });
    }

    let lexicon = Arc::clone(&state.lexicon);
    let body = tokio::task::spawn_blocking(move || {
        emit_json(&analyze(&req.text, granularity, &lexicon, &mapping))
    })
    .await
    .map_err(|e| ApiError::Internal(format!("analysis failed: {e}")))?;
    Ok(json_body(body))
}

#[derive(Debug, Serialize)]
pub struct LegendResponse {
    pub axis: Axis,
    pub value: f64,
    pub x_axis: Axis,
    pub y_axis: Axis,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `ny` rows of `nx` hex colors.
    pub cells: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct LegendQuery {
    axis: Option<String>,
    value: Option<String>,
    nx: Option<String>,
    ny: Option<String>,
}

fn parse_param<T: std::str::FromStr>(name: &str, raw: Option<&str>, default: T) -> Result<T, ApiError> {
    match raw {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| ApiError::BadRequest(format!("invalid {name} {s:?}"))),
    }
}

async fn legend_handler(
    State(state): State<AppState>,
    query: Result<Query<LegendQuery>, QueryRejection>,
) -> Result<Response, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let axis: Axis = match q.axis.as_deref() {
        None => Axis::Dominance,
        Some(s) => s.parse().map_err(ApiError::BadRequest)?,
    };
    let value: f64 = parse_param("value", q.value.as_deref(), 0.5)?;
    let nx: usize = parse_param("nx", q.nx.as_deref(), DEFAULT_LEGEND_GRID)?;
    let ny: usize = parse_param("ny", q.ny.as_deref(), DEFAULT_LEGEND_GRID)?;
    if nx > MAX_LEGEND_GRID || ny > MAX_LEGEND_GRID {
        return Err(ApiError::BadRequest(format!(
            "legend grid {nx}x{ny} exceeds {MAX_LEGEND_GRID}x{MAX_LEGEND_GRID}"
        )));
    }
    let legend = legend_slice(axis, value, nx, ny, &state.mapping)
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let body = LegendResponse {
        axis,
        value: legend.fixed_value,
        x_axis: legend.x_axis,
        y_axis: legend.y_axis,
        nx,
        ny,
        cells: legend.cells.iter().map(|c| c.to_hex()).collect(),
    };
    Ok(json_body(serde_json::to_string(&body).expect("legend serializes")))
}

async fn lexicon_info(State(state): State<AppState>) -> Response {
    let scale = state.lexicon.source_scale();
    json_body(
        json!({
            "entries": state.lexicon.entry_count(),
            "scale": [scale.lo(), scale.hi()],
        })
        .to_string(),
    )
}
