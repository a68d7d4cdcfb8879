pub mod assets;
pub mod dispatch;
pub mod eval;
pub mod extract;
pub mod rdf;
pub mod tagger;
pub mod text;
pub mod triage;
