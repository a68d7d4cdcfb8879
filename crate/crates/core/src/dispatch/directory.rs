use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rdf::{self, Graph, Iri, Term, RDF_TYPE};
use crate::triage::{ServiceType, HG};

use super::geo::{haversine_km, GeoPoint};
use super::DispatchError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportService {
    pub iri: Iri,
    #[serde(rename = "type")]
    pub service_type: ServiceType,
    pub name: String,
    pub address: String,
    pub phone: String,
    pub latitude: f64,
    pub longitude: f64,
}

impl SupportService {
    pub fn location(&self) -> GeoPoint {
        GeoPoint { lat: self.latitude, lon: self.longitude }
    }
}

/// A service with its distance from the victim, when a location was given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedService {
    #[serde(flatten)]
    pub service: SupportService,
    pub distance_km: Option<f64>,
}

/// Concrete services read from the ontology graph, sorted by IRI.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ServiceDirectory {
    services: Vec<SupportService>,
}

impl ServiceDirectory {
    pub fn new(mut services: Vec<SupportService>) -> Result<Self, DispatchError> {
        for s in &services {
            s.location().validate()?;
            if s.phone.trim().is_empty() {
                return Err(DispatchError::InvalidService { iri: s.iri.to_string(), reason: "empty phone".into() });
            }
        }
        services.sort_by(|a, b| a.iri.cmp(&b.iri));
        Ok(Self { services })
    }

    /// Every individual typed with a service class, with its name, address,
    /// phone and coordinates.
    pub fn from_graph(graph: &Graph) -> Result<Self, DispatchError> {
        let mut out = Vec::new();
        for ty in ServiceType::ALL {
            let rows = rdf::query(graph, &format!("SELECT ?s WHERE {{ ?s <{RDF_TYPE}> {} }}", ty.class_iri()))?;
            for s in rows.column("s") {
                let Some(iri) = s.as_iri() else { continue };
                out.push(read_service(graph, iri, ty)?);
            }
        }
        Self::new(out)
    }

    pub fn services(&self) -> &[SupportService] {
        &self.services
    }

    pub fn of_type(&self, ty: ServiceType) -> impl Iterator<Item = &SupportService> {
        self.services.iter().filter(move |s| s.service_type == ty)
    }

    pub fn len(&self) -> usize {
        self.services.len()
    }

    pub fn is_empty(&self) -> bool {
        self.services.is_empty()
    }

    /// All services of a type in IRI order, without distances.
    pub fn all_of_type(&self, ty: ServiceType) -> Result<Vec<RankedService>, DispatchError> {
        let v: Vec<RankedService> = self.of_type(ty).map(|s| RankedService { service: s.clone(), distance_km: None }).collect();
        if v.is_empty() {
            return Err(DispatchError::NoSuchServiceType(ty));
        }
        Ok(v)
    }

    /// Services grouped by type, each list in IRI order.
    pub fn by_type(&self) -> BTreeMap<ServiceType, Vec<&SupportService>> {
        let mut m: BTreeMap<ServiceType, Vec<&SupportService>> = BTreeMap::new();
        for s in &self.services {
            m.entry(s.service_type).or_default().push(s);
        }
        m
    }
}

fn read_service(graph: &Graph, iri: &Iri, ty: ServiceType) -> Result<SupportService, DispatchError> {
    let invalid = |reason: String| DispatchError::InvalidService { iri: iri.to_string(), reason };
    let one = |prop: &str| -> Result<Term, DispatchError> {
        let rows = rdf::query(graph, &format!("SELECT ?v WHERE {{ {iri} <{HG}{prop}> ?v }}"))?;
        match rows.column("v").as_slice() {
            [t] => Ok((*t).clone()),
            [] => Err(invalid(format!("missing {prop}"))),
            _ => Err(invalid(format!("several values for {prop}"))),
        }
    };
    let text = |prop: &str| -> Result<String, DispatchError> {
        match one(prop)? {
            Term::Literal(l) => Ok(l.lexical().to_string()),
            Term::Iri(_) => Err(invalid(format!("{prop} is not a literal"))),
        }
    };
    let number = |prop: &str| -> Result<f64, DispatchError> {
        match one(prop)? {
            Term::Literal(l) => l.as_f64().ok_or_else(|| invalid(format!("{prop} is not a number"))),
            Term::Iri(_) => Err(invalid(format!("{prop} is not a literal"))),
        }
    };
    Ok(SupportService {
        iri: iri.clone(),
        service_type: ty,
        name: text("name")?,
        address: text("address")?,
        phone: text("phone")?,
        latitude: number("latitude")?,
        longitude: number("longitude")?,
    })
}

/// The `k` services of a type closest to `location`, nearest first, ties
/// broken by IRI.
pub fn nearest_services(
    directory: &ServiceDirectory,
    ty: ServiceType,
    location: GeoPoint,
    k: usize,
) -> Result<Vec<RankedService>, DispatchError> {
    if k == 0 {
        return Err(DispatchError::InvalidK);
    }
    location.validate()?;
    let mut ranked = directory
        .of_type(ty)
        .map(|s| Ok(RankedService { service: s.clone(), distance_km: Some(haversine_km(location, s.location())?) }))
        .collect::<Result<Vec<_>, DispatchError>>()?;
    if ranked.is_empty() {
        return Err(DispatchError::NoSuchServiceType(ty));
    }
    ranked.sort_by(|a, b| {
        let (da, db) = (a.distance_km.unwrap_or(0.0), b.distance_km.unwrap_or(0.0));
        da.total_cmp(&db).then_with(|| a.service.iri.cmp(&b.service.iri))
    });
    ranked.truncate(k);
    Ok(ranked)
}
