//! Runs basic graph pattern queries against the shipped ontology.
//!
//! cargo run --example sparql_query

use homeguard::rdf;
use homeguard::triage::CrimeTaxonomy;

const QUERIES: [&str; 3] = [
    "PREFIX hg: <http://homeguard.example/ontology#>
     SELECT ?term ?level WHERE { ?t hg:label ?term . ?t hg:hasCrimeLevel ?level . ?level hg:ordinal 3 }",
    "PREFIX hg: <http://homeguard.example/ontology#>
     SELECT ?service WHERE { hg:Hit hg:hasCrimeLevel ?l . ?l hg:hasService ?service }",
    "PREFIX hg: <http://homeguard.example/ontology#>
     SELECT ?name ?lat ?lon WHERE { ?s a hg:NGO . ?s hg:name ?name . ?s hg:latitude ?lat . ?s hg:longitude ?lon }",
];

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let taxonomy = CrimeTaxonomy::shipped()?;
    println!("{} triples after subclass closure\n", taxonomy.graph().len());
    for q in QUERIES {
        let rows = rdf::query(taxonomy.graph(), q)?;
        println!("{}", rows.variables().join("\t"));
        for row in rows.rows() {
            println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
        }
        println!();
    }
    Ok(())
}
