//! Full triage of one message: graded actions, maximum level and services.
//!
//! cargo run --example triage_message -- "My uncle raped me. Please help me."

use homeguard::text::RawMessage;
use homeguard::triage::{TriageEngine, TriageError};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "He slapped me and then he stabbed me with a knife. Please help!".into());
    let engine = TriageEngine::shipped()?;
    match engine.triage(&RawMessage::new(text)) {
        Ok(result) => {
            for a in &result.actions {
                println!("{:<10} level {}  \"{}\"", a.lemma, a.level.ordinal, a.mention.surface);
            }
            match &result.max_level {
                Some(level) => println!("maximum level {}", level.ordinal),
                None => println!("no graded action; flagged for manual review"),
            }
            let services: Vec<&str> = result.service_types.iter().map(|s| s.as_str()).collect();
            println!("services: {}", services.join(", "));
        }
        Err(TriageError::NotEmergency { matched, threshold }) => {
            println!("not an emergency: {} matching words, threshold {threshold}", matched.len());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}
