//! Persists incident reports to a JSON-lines log and reloads them.
//!
//! cargo run --example incident_store

use homeguard::dispatch::{assemble_report, GeoPoint, IncidentStore, ServiceDirectory, DEFAULT_K};
use homeguard::text::RawMessage;
use homeguard::triage::TriageEngine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let engine = TriageEngine::shipped()?;
    let directory = ServiceDirectory::from_graph(engine.taxonomy().graph())?;
    let path = std::env::temp_dir().join(format!("homeguard-example-{}.jsonl", std::process::id()));

    let mut store = IncidentStore::open(&path)?;
    for text in ["He kicked me. Help!", "She threatened me again. Please help."] {
        let message = RawMessage::new(text);
        let result = engine.triage(&message)?;
        let report = assemble_report(message, result, Some(GeoPoint::new(23.75, 90.39)?), DEFAULT_K, &directory)?;
        println!("stored {} ({} service types)", report.id, report.dispatched.len());
        store.persist(report)?;
    }
    drop(store);

    let reloaded = IncidentStore::load(&path)?;
    println!("reloaded {} reports from {}", reloaded.len(), path.display());
    for r in reloaded.reports() {
        println!("  {}  {:?}", r.id, r.result.service_types);
    }
    std::fs::remove_file(&path)?;
    Ok(())
}
