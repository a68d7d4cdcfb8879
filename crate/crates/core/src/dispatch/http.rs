use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;

use crate::text::RawMessage;
use crate::triage::{ServiceType, TriageEngine, TriageError};

use super::directory::{nearest_services, RankedService, ServiceDirectory};
use super::geo::GeoPoint;
use super::report::{assemble_report, DEFAULT_K};
use super::store::IncidentStore;
use super::DispatchError;

/// Shared state of the HTTP service. The store is the only mutable part.
#[derive(Clone)]
pub struct AppState {
    pub engine: Arc<TriageEngine>,
    pub directory: Arc<ServiceDirectory>,
    pub store: Arc<RwLock<IncidentStore>>,
    pub k: usize,
}

impl AppState {
    pub fn new(engine: TriageEngine, directory: ServiceDirectory, store: IncidentStore) -> Self {
        Self { engine: Arc::new(engine), directory: Arc::new(directory), store: Arc::new(RwLock::new(store)), k: DEFAULT_K }
    }
}

#[derive(Debug, Deserialize)]
struct ReportRequest {
    message: String,
    lat: Option<f64>,
    lon: Option<f64>,
    k: Option<usize>,
}

fn error(status: StatusCode, kind: &str, reason: impl ToString) -> Response {
    (status, Json(json!({ "error": kind, "reason": reason.to_string() }))).into_response()
}

fn location(lat: Option<f64>, lon: Option<f64>) -> Result<Option<GeoPoint>, Response> {
    match (lat, lon) {
        (None, None) => Ok(None),
        (Some(lat), Some(lon)) => GeoPoint::new(lat, lon).map(Some).map_err(|e| error(StatusCode::BAD_REQUEST, "BadRequest", e)),
        _ => Err(error(StatusCode::BAD_REQUEST, "BadRequest", "lat and lon must be given together")),
    }
}

async fn create_report(State(state): State<AppState>, body: Bytes) -> Response {
    let req: ReportRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, "BadRequest", e),
    };
    let at = match location(req.lat, req.lon) {
        Ok(at) => at,
        Err(resp) => return resp,
    };
    let k = req.k.unwrap_or(state.k);
    if k == 0 {
        return error(StatusCode::BAD_REQUEST, "BadRequest", DispatchError::InvalidK);
    }
    let message = RawMessage::new(req.message);
    let result = match state.engine.triage(&message) {
        Ok(r) => r,
        Err(e @ TriageError::NotEmergency { .. }) => return error(StatusCode::UNPROCESSABLE_ENTITY, "NotEmergency", e),
        Err(TriageError::EmptyMessage) => return error(StatusCode::BAD_REQUEST, "EmptyMessage", TriageError::EmptyMessage),
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e),
    };
    let report = match assemble_report(message, result, at, k, &state.directory) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::INTERNAL_SERVER_ERROR, "Internal", e),
    };
    let mut store = state.store.write().unwrap_or_else(|p| p.into_inner());
    if let Err(e) = store.persist(report.clone()) {
        return error(StatusCode::INTERNAL_SERVER_ERROR, "StoreIo", e);
    }
    (StatusCode::CREATED, Json(report)).into_response()
}

async fn get_report(State(state): State<AppState>, Path(id): Path<String>) -> Response {
    let store = state.store.read().unwrap_or_else(|p| p.into_inner());
    match store.get(&id) {
        Some(r) => Json(r).into_response(),
        None => error(StatusCode::NOT_FOUND, "NotFound", format!("no report {id}")),
    }
}

async fn list_services(State(state): State<AppState>, Query(params): Query<HashMap<String, String>>) -> Response {
    let parse_f = |key: &str| -> Result<Option<f64>, Response> {
        params
            .get(key)
            .map(|v| v.parse::<f64>().map_err(|_| error(StatusCode::BAD_REQUEST, "BadRequest", format!("bad {key}"))))
            .transpose()
    };
    let (lat, lon) = match (parse_f("lat"), parse_f("lon")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(r), _) | (_, Err(r)) => return r,
    };
    let at = match location(lat, lon) {
        Ok(at) => at,
        Err(r) => return r,
    };
    let k = match params.get("k").map(|v| v.parse::<usize>()) {
        None => state.k,
        Some(Ok(k)) if k > 0 => k,
        Some(_) => return error(StatusCode::BAD_REQUEST, "BadRequest", "k must be a positive integer"),
    };
    let types: Vec<ServiceType> = match params.get("type") {
        Some(t) => match t.parse() {
            Ok(t) => vec![t],
            Err(e) => return error(StatusCode::BAD_REQUEST, "BadRequest", e),
        },
        None => ServiceType::ALL.to_vec(),
    };
    let mut out: Vec<RankedService> = Vec::new();
    for ty in types {
        let listed = match at {
            Some(at) => nearest_services(&state.directory, ty, at, k),
            None => state.directory.all_of_type(ty),
        };
        match listed {
            Ok(v) => out.extend(v),
            Err(e @ DispatchError::NoSuchServiceType(_)) if params.contains_key("type") => {
                return error(StatusCode::NOT_FOUND, "NoSuchServiceType", e)
            }
            Err(DispatchError::NoSuchServiceType(_)) => {}
            Err(e) => return error(StatusCode::BAD_REQUEST, "BadRequest", e),
        }
    }
    Json(out).into_response()
}

async fn health() -> Response {
    Json(json!({ "status": "ok" })).into_response()
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/reports", post(create_report))
        .route("/v1/reports/{id}", get(get_report))
        .route("/v1/services", get(list_services))
        .route("/v1/health", get(health))
        .with_state(state)
}

/// Serves until ctrl-c.
pub async fn serve(addr: SocketAddr, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
