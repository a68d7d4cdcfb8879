use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::text::RawMessage;
use crate::triage::{ServiceType, TriageResult};

use super::directory::{nearest_services, RankedService, ServiceDirectory};
use super::geo::GeoPoint;
use super::DispatchError;

pub const DEFAULT_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidentReport {
    pub id: String,
    pub message: RawMessage,
    pub result: TriageResult,
    pub location: Option<GeoPoint>,
    /// Recommended services per assigned type; keys equal the result's
    /// service types.
    pub dispatched: BTreeMap<ServiceType, Vec<RankedService>>,
    pub needs_review: bool,
    pub created_at: DateTime<Utc>,
}

/// Builds a report. With a location each type lists its `k` nearest
/// services; without one it lists every service of the type in IRI order.
pub fn assemble_report(
    message: RawMessage,
    result: TriageResult,
    location: Option<GeoPoint>,
    k: usize,
    directory: &ServiceDirectory,
) -> Result<IncidentReport, DispatchError> {
    let mut dispatched = BTreeMap::new();
    for &ty in &result.service_types {
        let list = match location {
            Some(at) => nearest_services(directory, ty, at, k)?,
            None => directory.all_of_type(ty)?,
        };
        dispatched.insert(ty, list);
    }
    Ok(IncidentReport {
        id: uuid::Uuid::new_v4().to_string(),
        needs_review: result.needs_review(),
        message,
        result,
        location,
        dispatched,
        created_at: Utc::now(),
    })
}
