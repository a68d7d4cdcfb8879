use std::process::Command;

use axum::body::Body;
use axum::http::Request;
use axum::Router;
use homeguard::dispatch::{http, IncidentStore, ServiceDirectory};
use homeguard::triage::TriageEngine;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    let engine = TriageEngine::shipped().unwrap();
    let directory = ServiceDirectory::from_graph(engine.taxonomy().graph()).unwrap();
    http::router(http::AppState::new(engine, directory, IncidentStore::in_memory()))
}

async fn send(app: &Router, req: Request<Body>) -> (u16, Value) {
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status().as_u16();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn post(body: impl Into<Body>) -> Request<Body> {
    Request::post("/v1/reports").header("content-type", "application/json").body(body.into()).unwrap()
}

fn get(uri: &str) -> Request<Body> {
    Request::get(uri).body(Body::empty()).unwrap()
}

#[tokio::test]
async fn report_lifecycle() {
    let app = app();
    let (status, report) = send(&app, post(json!({"message": "My uncle raped me. Please help me.", "lat": 23.78, "lon": 90.4}).to_string())).await;
    assert_eq!(status, 201);
    assert_eq!(report["result"]["service_types"], json!(["Hospital", "Lawyer", "Police", "NGO"]));
    let dispatched = report["dispatched"].as_object().unwrap();
    assert_eq!(dispatched.len(), 4);
    assert!(dispatched.values().all(|v| v.as_array().unwrap().len() == 3));
    let id = report["id"].as_str().unwrap();
    let (status, back) = send(&app, get(&format!("/v1/reports/{id}"))).await;
    assert_eq!((status, back), (200, report.clone()));
}

#[tokio::test]
async fn rejections() {
    let app = app();
    let (status, body) = send(&app, post(json!({"message": "The weather is lovely today."}).to_string())).await;
    assert_eq!(status, 422);
    assert_eq!(body["error"], "NotEmergency");
    assert!(!body["reason"].as_str().unwrap().is_empty());

    assert_eq!(send(&app, post("{not json")).await.0, 400);
    assert_eq!(send(&app, post(json!({"text": "hi"}).to_string())).await.0, 400);
    assert_eq!(send(&app, post(json!({"message": "   "}).to_string())).await.0, 400);
    assert_eq!(send(&app, post(json!({"message": "He hit me", "lat": 10.0}).to_string())).await.0, 400);
    assert_eq!(send(&app, post(json!({"message": "He hit me", "lat": 100.0, "lon": 0.0}).to_string())).await.0, 400);
    assert_eq!(send(&app, post(json!({"message": "He hit me", "k": 0}).to_string())).await.0, 400);
    assert_eq!(send(&app, get("/v1/reports/unknown")).await.0, 404);
}

#[tokio::test]
async fn services_and_health() {
    let app = app();
    assert_eq!(send(&app, get("/v1/health")).await, (200, json!({"status": "ok"})));

    let (status, list) = send(&app, get("/v1/services?type=Hospital&lat=23.8&lon=90.4&k=2")).await;
    assert_eq!(status, 200);
    let list = list.as_array().unwrap();
    assert_eq!(list.len(), 2);
    assert!(list.iter().all(|s| s["type"] == "Hospital"));
    assert!(list[0]["distance_km"].as_f64() <= list[1]["distance_km"].as_f64());

    let (_, all) = send(&app, get("/v1/services")).await;
    assert_eq!(all.as_array().unwrap().len(), 18);
    assert_eq!(send(&app, get("/v1/services?type=Coastguard")).await.0, 400);
    assert_eq!(send(&app, get("/v1/services?lat=23.8")).await.0, 400);
    assert_eq!(send(&app, get("/v1/services?k=0")).await.0, 400);
}

#[tokio::test]
async fn cli_and_http_agree() {
    let app = app();
    for message in ["My husband come home drunk and hit me every day. I need help.", "My boyfriend gave the threat to kill me. HELP!"] {
        let (_, report) = send(&app, post(json!({"message": message, "lat": 23.75, "lon": 90.38}).to_string())).await;
        let out = Command::new(env!("CARGO_BIN_EXE_homeguard"))
            .args(["triage", "--message", message, "--lat", "23.75", "--lon", "90.38"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let cli: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(cli["result"], report["result"]);
        assert_eq!(cli["dispatched"], report["dispatched"]);
    }
}

#[test]
fn cli_query_and_eval() {
    let bin = env!("CARGO_BIN_EXE_homeguard");
    let q = "PREFIX hg: <http://homeguard.example/ontology#> SELECT ?s WHERE { hg:Hit hg:hasCrimeLevel ?l . ?l hg:hasService ?s }";
    let out = Command::new(bin).args(["query", "--sparql", q]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "?s");
    assert_eq!(lines.len(), 4);

    let out = Command::new(bin).args(["eval", "--table1"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("16/16 rows match"));

    let out = Command::new(bin).args(["triage", "--message", "Nice weather."]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
