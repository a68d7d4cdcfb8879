//! In-memory triple store hosting the crime-level ontology and the service
//! directory, with a Turtle-subset reader/writer and a basic-graph-pattern
//! query evaluator.

mod graph;
pub mod sparql;
mod term;
mod turtle;

use thiserror::Error;

pub use graph::Graph;
pub use sparql::{evaluate, match_pattern, parse_sparql, parse_sparql_with_prefixes, query, BindingSet, PatternTerm, Query, TriplePattern, Variable};
pub use term::{Datatype, Iri, Literal, Term, Triple, RDFS_SUBCLASS_OF, RDF_TYPE, XSD_DOUBLE, XSD_STRING};
pub use turtle::{parse_turtle, serialize_turtle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdfError {
    #[error("turtle syntax error at {line}:{column}: {message}")]
    TurtleSyntax { line: usize, column: usize, message: String },
    #[error("unknown prefix '{prefix}:' at {line}:{column}")]
    UnknownPrefix { prefix: String, line: usize, column: usize },
    #[error("malformed query at offset {position}: {message}")]
    MalformedQuery { position: usize, message: String },
}
