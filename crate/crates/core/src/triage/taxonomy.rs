use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::assets;
use crate::rdf::{self, Graph, Iri, Term, RDFS_SUBCLASS_OF};

use super::TriageError;

/// Namespace of the shipped vocabulary.
pub const HG: &str = "http://homeguard.example/ontology#";

pub(crate) fn hg(local: &str) -> String {
    format!("<{HG}{local}>")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ServiceType {
    Hospital,
    Lawyer,
    Police,
    #[serde(rename = "NGO")]
    Ngo,
}

impl ServiceType {
    pub const ALL: [ServiceType; 4] = [ServiceType::Hospital, ServiceType::Lawyer, ServiceType::Police, ServiceType::Ngo];

    pub fn as_str(self) -> &'static str {
        match self {
            ServiceType::Hospital => "Hospital",
            ServiceType::Lawyer => "Lawyer",
            ServiceType::Police => "Police",
            ServiceType::Ngo => "NGO",
        }
    }

    /// IRI of the service class.
    pub fn class_iri(self) -> Iri {
        Iri::new(format!("{HG}{}", self.as_str())).expect("namespace is absolute")
    }
}

impl fmt::Display for ServiceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ServiceType {
    type Err = TriageError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ServiceType::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| TriageError::UnknownServiceType(s.to_string()))
    }
}

/// Severity grade; ordered by ordinal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrimeLevel {
    pub ordinal: u8,
    pub iri: Iri,
}

impl Ord for CrimeLevel {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ordinal, &self.iri).cmp(&(other.ordinal, &other.iri))
    }
}

impl PartialOrd for CrimeLevel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CrimeLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Level {}", self.ordinal)
    }
}

/// The crime-level ontology: violence terms, their levels, and the
/// services each level calls for. Frozen after load.
#[derive(Debug, Clone)]
pub struct CrimeTaxonomy {
    graph: Arc<Graph>,
    terms: BTreeMap<String, Iri>,
    levels: BTreeMap<Iri, CrimeLevel>,
}

impl CrimeTaxonomy {
    pub fn shipped() -> Result<Self, TriageError> {
        Self::parse(assets::ONTOLOGY)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TriageError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| TriageError::Io { path: path.display().to_string(), reason: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(turtle: &str) -> Result<Self, TriageError> {
        Self::from_graph(rdf::parse_turtle(turtle)?)
    }

    /// Materializes the class hierarchy, then checks that every violence
    /// term has one label and one level, and every level an ordinal and at
    /// least one service.
    pub fn from_graph(mut graph: Graph) -> Result<Self, TriageError> {
        graph.materialize_subclass_closure();
        let bad = |m: String| TriageError::Ontology(m);

        let mut levels = BTreeMap::new();
        let rows = rdf::query(&graph, &format!("SELECT ?lvl WHERE {{ ?lvl <{RDFS_SUBCLASS_OF}> {} }}", hg("CrimeLevel")))?;
        for lvl in rows.column("lvl") {
            let iri = lvl.as_iri().cloned().ok_or_else(|| bad("crime level is not an IRI".into()))?;
            let ords = rdf::query(&graph, &format!("SELECT ?o WHERE {{ {iri} {} ?o }}", hg("ordinal")))?;
            let ordinal = match ords.column("o").as_slice() {
                [Term::Literal(l)] => l.as_f64().filter(|v| v.fract() == 0.0 && (1.0..=255.0).contains(v)),
                _ => None,
            }
            .ok_or_else(|| bad(format!("{iri} needs exactly one integer ordinal")))? as u8;
            let services = rdf::query(&graph, &format!("SELECT ?s WHERE {{ {iri} {} ?s }}", hg("hasService")))?;
            if services.is_empty() {
                return Err(bad(format!("{iri} has no service")));
            }
            levels.insert(iri.clone(), CrimeLevel { ordinal, iri });
        }
        if levels.is_empty() {
            return Err(bad("no crime levels".into()));
        }
        let ordinals: BTreeSet<u8> = levels.values().map(|l| l.ordinal).collect();
        if ordinals.len() != levels.len() {
            return Err(bad("two crime levels share an ordinal".into()));
        }

        let mut terms = BTreeMap::new();
        let rows = rdf::query(&graph, &format!("SELECT ?t WHERE {{ ?t <{RDFS_SUBCLASS_OF}> {} }}", hg("Violence")))?;
        for t in rows.column("t") {
            let iri = t.as_iri().cloned().ok_or_else(|| bad("violence term is not an IRI".into()))?;
            let labels = rdf::query(&graph, &format!("SELECT ?l WHERE {{ {iri} {} ?l }}", hg("label")))?;
            let label = match labels.column("l").as_slice() {
                [Term::Literal(l)] => l.lexical().to_lowercase(),
                _ => return Err(bad(format!("{iri} needs exactly one label"))),
            };
            let lvls = rdf::query(&graph, &format!("SELECT ?l WHERE {{ {iri} {} ?l }}", hg("hasCrimeLevel")))?;
            match lvls.column("l").as_slice() {
                [Term::Iri(l)] if levels.contains_key(l) => {}
                _ => return Err(bad(format!("{iri} needs exactly one known crime level"))),
            }
            if terms.insert(label.clone(), iri).is_some() {
                return Err(bad(format!("label '{label}' used twice")));
            }
        }
        Ok(Self { graph: Arc::new(graph), terms, levels })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    /// Canonical lemmas with a violence node, sorted.
    pub fn violence_lemmas(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn term_iri(&self, lemma: &str) -> Option<&Iri> {
        self.terms.get(lemma)
    }

    /// Levels in ascending order.
    pub fn levels(&self) -> Vec<CrimeLevel> {
        let mut v: Vec<CrimeLevel> = self.levels.values().cloned().collect();
        v.sort();
        v
    }

    pub fn level(&self, ordinal: u8) -> Option<CrimeLevel> {
        self.levels.values().find(|l| l.ordinal == ordinal).cloned()
    }

    /// Level of a canonical lemma, looked up with a graph query.
    pub fn level_of_action(&self, lemma: &str) -> Option<CrimeLevel> {
        let term = self.terms.get(lemma)?;
        let rows = rdf::query(&self.graph, &format!("SELECT ?lvl WHERE {{ {term} {} ?lvl }}", hg("hasCrimeLevel")))
            .expect("generated query is well formed");
        rows.column("lvl").into_iter().find_map(|t| t.as_iri().and_then(|i| self.levels.get(i)).cloned())
    }

    /// Service types attached to a level.
    pub fn services_for_level(&self, level: &CrimeLevel) -> Result<BTreeSet<ServiceType>, TriageError> {
        if !self.levels.contains_key(&level.iri) {
            return Err(TriageError::UnknownLevel(level.iri.to_string()));
        }
        let rows = rdf::query(
            &self.graph,
            &format!("SELECT ?svc WHERE {{ {} {} ?svc . ?svc <{RDFS_SUBCLASS_OF}> {} }}", level.iri, hg("hasService"), hg("SupportService")),
        )?;
        Ok(rows
            .column("svc")
            .into_iter()
            .filter_map(|t| t.as_iri().and_then(|i| i.local_name().parse().ok()))
            .collect())
    }
}

/// Highest level by ordinal.
pub fn max_level<'a>(levels: impl IntoIterator<Item = &'a CrimeLevel>) -> Option<CrimeLevel> {
    levels.into_iter().max().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_levels() {
        let t = CrimeTaxonomy::shipped().unwrap();
        assert_eq!(t.levels().len(), 3);
        assert_eq!(t.level_of_action("hit").unwrap().ordinal, 2);
        assert_eq!(t.level_of_action("rape").unwrap().ordinal, 3);
        assert_eq!(t.level_of_action("run over").unwrap().ordinal, 3);
        assert!(t.level_of_action("waltz").is_none());
        use ServiceType::*;
        let l1 = t.services_for_level(&t.level(1).unwrap()).unwrap();
        assert_eq!(l1, BTreeSet::from([Police]));
        let l3 = t.services_for_level(&t.level(3).unwrap()).unwrap();
        assert_eq!(l3, BTreeSet::from([Hospital, Lawyer, Police, Ngo]));
    }

    #[test]
    fn load_checks() {
        let head = "@prefix hg: <http://homeguard.example/ontology#> .\n@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n";
        let ok = format!("{head}hg:L rdfs:subClassOf hg:CrimeLevel ; hg:ordinal 1 ; hg:hasService hg:Police .\nhg:Police rdfs:subClassOf hg:SupportService .\n");
        assert!(CrimeTaxonomy::parse(&ok).is_ok());
        let no_service = format!("{head}hg:L rdfs:subClassOf hg:CrimeLevel ; hg:ordinal 1 .\n");
        assert!(matches!(CrimeTaxonomy::parse(&no_service), Err(TriageError::Ontology(_))));
        let two_levels = format!("{ok}hg:M rdfs:subClassOf hg:CrimeLevel ; hg:ordinal 2 ; hg:hasService hg:Police .\nhg:X rdfs:subClassOf hg:Violence ; hg:label \"x\" ; hg:hasCrimeLevel hg:L , hg:M .\n");
        assert!(matches!(CrimeTaxonomy::parse(&two_levels), Err(TriageError::Ontology(_))));
        let bogus = CrimeLevel { ordinal: 9, iri: Iri::new("http://x/y").unwrap() };
        let t = CrimeTaxonomy::parse(&ok).unwrap();
        assert!(matches!(t.services_for_level(&bogus), Err(TriageError::UnknownLevel(_))));
    }

    #[test]
    fn max_by_ordinal() {
        let t = CrimeTaxonomy::shipped().unwrap();
        let (l1, l2, l3) = (t.level(1).unwrap(), t.level(2).unwrap(), t.level(3).unwrap());
        assert_eq!(max_level([&l1, &l2]), Some(l2.clone()));
        assert_eq!(max_level([&l2, &l3, &l1]), Some(l3));
        assert_eq!(max_level(std::iter::empty()), None);
    }
}
