use std::collections::{BTreeMap, HashMap, HashSet};

use super::term::{Iri, Term, Triple, RDFS_SUBCLASS_OF, RDF_TYPE};

/// In-memory triple set with subject, predicate and object indexes.
///
/// Triples are stored once in insertion order; each index maps a term to the
/// positions of the triples that carry it. Inserting a duplicate is a no-op.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: Vec<Triple>,
    present: HashSet<Triple>,
    by_subject: HashMap<Iri, Vec<usize>>,
    by_predicate: HashMap<Iri, Vec<usize>>,
    by_object: HashMap<Term, Vec<usize>>,
    prefixes: BTreeMap<String, String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` if the triple was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        if self.present.contains(&triple) {
            return false;
        }
        let idx = self.triples.len();
        self.by_subject.entry(triple.subject.clone()).or_default().push(idx);
        self.by_predicate.entry(triple.predicate.clone()).or_default().push(idx);
        self.by_object.entry(triple.object.clone()).or_default().push(idx);
        self.present.insert(triple.clone());
        self.triples.push(triple);
        true
    }

    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) {
        for t in triples {
            self.insert(t);
        }
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.present.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// The triple set, ordered. Used for set comparison between graphs.
    pub fn triple_set(&self) -> std::collections::BTreeSet<Triple> {
        self.triples.iter().cloned().collect()
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn set_prefix(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.prefixes.insert(prefix.into(), namespace.into());
    }

    /// Triples matching the bound positions. Uses the most selective index
    /// available and filters the rest.
    pub fn lookup<'a>(
        &'a self,
        subject: Option<&'a Iri>,
        predicate: Option<&'a Iri>,
        object: Option<&'a Term>,
    ) -> Box<dyn Iterator<Item = &'a Triple> + 'a> {
        let candidates: Option<&Vec<usize>> = {
            let mut best: Option<&Vec<usize>> = None;
            let mut consider = |list: Option<&'a Vec<usize>>| {
                let list = list.unwrap_or(&EMPTY);
                if best.is_none_or(|b| list.len() < b.len()) {
                    best = Some(list);
                }
            };
            if let Some(s) = subject {
                consider(self.by_subject.get(s));
            }
            if let Some(p) = predicate {
                consider(self.by_predicate.get(p));
            }
            if let Some(o) = object {
                consider(self.by_object.get(o));
            }
            best
        };
        let keep = move |t: &&Triple| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        };
        match candidates {
            Some(list) => Box::new(list.iter().map(|&i| &self.triples[i]).filter(keep)),
            None => Box::new(self.triples.iter().filter(keep)),
        }
    }

    /// Same result as [`Graph::lookup`] but always by full scan.
    pub fn scan<'a>(
        &'a self,
        subject: Option<&'a Iri>,
        predicate: Option<&'a Iri>,
        object: Option<&'a Term>,
    ) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples.iter().filter(move |t| {
            subject.is_none_or(|s| &t.subject == s)
                && predicate.is_none_or(|p| &t.predicate == p)
                && object.is_none_or(|o| &t.object == o)
        })
    }

    /// Materializes the class hierarchy: `rdfs:subClassOf` is closed
    /// transitively and every `x rdf:type C` gains `x rdf:type D` for each
    /// superclass `D` of `C`. Returns the number of triples added.
    pub fn materialize_subclass_closure(&mut self) -> usize {
        let sub = iri(RDFS_SUBCLASS_OF);
        let ty = iri(RDF_TYPE);
        let before = self.len();
        loop {
            let mut added = Vec::new();
            let edges: Vec<(Iri, Iri)> = self
                .lookup(None, Some(&sub), None)
                .filter_map(|t| t.object.as_iri().map(|o| (t.subject.clone(), o.clone())))
                .collect();
            for (child, parent) in &edges {
                for t in self.lookup(None, Some(&sub), None) {
                    if &t.subject == parent {
                        if let Some(grand) = t.object.as_iri() {
                            added.push(Triple::new(child.clone(), sub.clone(), grand.clone()));
                        }
                    }
                }
                let parent_term = Term::Iri(child.clone());
                for t in self.lookup(None, Some(&ty), Some(&parent_term)) {
                    added.push(Triple::new(t.subject.clone(), ty.clone(), parent.clone()));
                }
            }
            let mut changed = false;
            for t in added {
                changed |= self.insert(t);
            }
            if !changed {
                break;
            }
        }
        self.len() - before
    }
}

static EMPTY: Vec<usize> = Vec::new();

fn iri(s: &str) -> Iri {
    Iri::new(s).expect("vocabulary IRI is absolute")
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        g.extend(iter);
        g
    }
}
