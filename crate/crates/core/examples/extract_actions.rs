//! Lists every violent-verb candidate with its subject, realization and
//! the reason it was kept or dropped.
//!
//! cargo run --example extract_actions -- "I pushed him away but he tried to run me over."

use homeguard::text::RawMessage;
use homeguard::triage::TriageEngine;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        "I kept trying to push him away. Once he even tried to run me over. \
         My boyfriend gave the threat to kill me."
            .to_string()
    });
    let engine = TriageEngine::shipped()?;
    let sentences = engine.sentences(&RawMessage::new(text))?;
    println!("{:<12} {:<14} {:<9} {:<11} {:<16} light", "lemma", "surface", "subject", "realized", "disposition");
    for c in engine.extractor().candidates(&sentences) {
        let m = &c.mention;
        let level = engine.taxonomy().level_of_action(&m.lemma).map(|l| format!(" (level {})", l.ordinal)).unwrap_or_default();
        println!(
            "{:<12} {:<14} {:<9} {:<11} {:<16} {}{level}",
            m.lemma,
            m.surface,
            format!("{:?}", m.subject),
            format!("{:?}", m.realization),
            format!("{:?}", c.disposition),
            c.light_verb
        );
    }
    Ok(())
}
