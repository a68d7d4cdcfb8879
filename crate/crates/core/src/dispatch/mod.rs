//! Service directory, nearest-service ranking, incident reports, the
//! append-only report log and the HTTP interface.

mod directory;
mod geo;
pub mod http;
mod report;
mod store;

use thiserror::Error;

use crate::rdf::RdfError;
use crate::triage::{ServiceType, TriageError};

pub use directory::{nearest_services, RankedService, ServiceDirectory, SupportService};
pub use geo::{haversine_km, GeoPoint, EARTH_RADIUS_KM};
pub use report::{assemble_report, IncidentReport, DEFAULT_K};
pub use store::IncidentStore;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DispatchError {
    #[error("coordinate out of range: lat {lat}, lon {lon}")]
    OutOfRangeCoordinate { lat: f64, lon: f64 },
    #[error("directory has no {0} service")]
    NoSuchServiceType(ServiceType),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("invalid service {iri}: {reason}")]
    InvalidService { iri: String, reason: String },
    #[error("store i/o: {0}")]
    StoreIo(String),
    #[error("corrupt store record at line {line}: {reason}")]
    CorruptRecord { line: usize, reason: String },
    #[error("duplicate report id {0}")]
    DuplicateId(String),
    #[error(transparent)]
    Triage(#[from] TriageError),
    #[error(transparent)]
    Rdf(#[from] RdfError),
}
