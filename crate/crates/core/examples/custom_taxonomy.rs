//! Extends the shipped ontology with a new violence term and triages with it.
//!
//! cargo run --example custom_taxonomy

use homeguard::assets;
use homeguard::text::RawMessage;
use homeguard::triage::{CrimeTaxonomy, TriageEngine};

const EXTRA: &str = "
hg:Confine rdfs:subClassOf hg:Violence ; hg:label \"lock\" ; hg:hasCrimeLevel hg:Level2 .
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let taxonomy = CrimeTaxonomy::parse(&format!("{}{EXTRA}", assets::ONTOLOGY))?;
    println!("violence terms: {}", taxonomy.violence_lemmas().collect::<Vec<_>>().join(", "));
    let engine = TriageEngine::with_taxonomy(taxonomy)?;
    let result = engine.triage(&RawMessage::new("My husband locked me in the bathroom. Please help."))?;
    for a in &result.actions {
        println!("{} -> level {}", a.lemma, a.level.ordinal);
    }
    println!("services: {:?}", result.service_types);
    Ok(())
}
