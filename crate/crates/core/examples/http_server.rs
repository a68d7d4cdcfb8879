//! Serves the HTTP interface on 127.0.0.1:8080 with an in-memory store.
//!
//! cargo run --example http_server
//! curl -s -XPOST localhost:8080/v1/reports -d '{"message":"He hit me. Help!","lat":23.78,"lon":90.4}'

use homeguard::dispatch::{http, IncidentStore, ServiceDirectory};
use homeguard::triage::TriageEngine;

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    tracing_subscriber::fmt().init();
    let engine = TriageEngine::shipped()?;
    let directory = ServiceDirectory::from_graph(engine.taxonomy().graph())?;
    let state = http::AppState::new(engine, directory, IncidentStore::in_memory());
    http::serve("127.0.0.1:8080".parse()?, state).await?;
    Ok(())
}
