//! Splits a message into sentences and shows each filter verdict.
//!
//! cargo run --example segment_and_filter -- "He hit me. Will he come back? I didn't call the police."

use homeguard::text::RawMessage;
use homeguard::triage::TriageEngine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        "He hit me. Will he come back? I didn't call the police. \
         He said \"I will kill you\" and left. It will be over soon."
            .to_string()
    });
    let engine = TriageEngine::shipped()?;
    for s in engine.pipeline().run_filters(&RawMessage::new(text))? {
        println!("[{}] {:?} {:?} {}", s.index, s.kind, s.verdict.status, s.raw);
        if !s.verdict.passed() {
            println!("      reason: {}", s.verdict.reason);
        }
        for c in &s.clauses {
            let words: Vec<&str> = s.tokens[c.tokens.clone()].iter().map(|t| t.surface.as_str()).collect();
            let connective = c.connective_before.as_ref().map(|t| t.surface.as_str()).unwrap_or("-");
            println!("      clause ({connective}) negated={} quoted={}: {}", c.negated, c.quoted, words.join(" "));
        }
    }
    Ok(())
}
