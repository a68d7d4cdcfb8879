use std::collections::HashMap;

use super::{parse_pairs, ExtractError};

/// Synonym to canonical lemma map. Keys may be phrasal ("beat up").
#[derive(Debug, Clone, Default)]
pub struct SynsetTable {
    map: HashMap<String, String>,
}

impl SynsetTable {
    /// Parses `surface<TAB>canonical` lines. Every canonical is added as a
    /// fixed point; a canonical that maps elsewhere is rejected.
    pub fn parse(text: &str) -> Result<Self, ExtractError> {
        let pairs = parse_pairs("synsets", text)?;
        let mut map: HashMap<String, String> = HashMap::new();
        for (surface, canonical) in &pairs {
            if let Some(prev) = map.get(surface) {
                if prev != canonical {
                    return Err(ExtractError::Conflict {
                        table: "synsets",
                        message: format!("'{surface}' maps to both '{prev}' and '{canonical}'"),
                    });
                }
            }
            map.insert(surface.clone(), canonical.clone());
        }
        for (_, canonical) in &pairs {
            match map.get(canonical) {
                Some(c) if c != canonical => {
                    return Err(ExtractError::Conflict {
                        table: "synsets",
                        message: format!("canonical '{canonical}' maps on to '{c}'"),
                    })
                }
                _ => {
                    map.insert(canonical.clone(), canonical.clone());
                }
            }
        }
        Ok(Self { map })
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.map.get(surface).map(String::as_str)
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.map.contains_key(surface)
    }

    /// Distinct canonical lemmas, sorted.
    pub fn canonicals(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.map.values().map(String::as_str).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Surfaces that map to `canonical`, excluding itself, sorted.
    pub fn synonyms_of(&self, canonical: &str) -> Vec<&str> {
        let mut out: Vec<&str> =
            self.map.iter().filter(|(k, v)| *v == canonical && *k != canonical).map(|(k, _)| k.as_str()).collect();
        out.sort_unstable();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// The mapped canonical lemma, or the input unchanged.
pub fn canonicalize(lemma: &str, table: &SynsetTable) -> String {
    table.get(lemma).unwrap_or(lemma).to_string()
}
