use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

/// What a matrix verb does to the verb it governs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Catenative {
    /// The complement inherits the matrix verb's realization.
    Promote,
    /// Only the matrix verb counts; the complement is unrealized.
    Demote,
    /// The complement is discarded.
    Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatenativePolicy {
    classes: HashMap<String, Catenative>,
    attempts: HashSet<String>,
}

impl Default for CatenativePolicy {
    fn default() -> Self {
        let mut classes = HashMap::new();
        for w in ["try", "attempt", "start", "begin", "keep", "continue"] {
            classes.insert(w.to_string(), Catenative::Promote);
        }
        classes.insert("threaten".to_string(), Catenative::Demote);
        for w in ["stop", "prevent", "want", "wish", "hope"] {
            classes.insert(w.to_string(), Catenative::Block);
        }
        let attempts = ["try", "attempt"].iter().map(|s| s.to_string()).collect();
        Self { classes, attempts }
    }
}

impl CatenativePolicy {
    pub fn empty() -> Self {
        Self { classes: HashMap::new(), attempts: HashSet::new() }
    }

    pub fn set(&mut self, matrix: &str, class: Catenative) {
        self.classes.insert(matrix.to_string(), class);
    }

    /// Marks a matrix verb whose promoted complements count as attempts.
    pub fn set_attempt(&mut self, matrix: &str) {
        self.attempts.insert(matrix.to_string());
    }

    /// Class of a matrix lemma; unlisted verbs promote.
    pub fn class_of(&self, matrix: &str) -> Catenative {
        self.classes.get(matrix).copied().unwrap_or(Catenative::Promote)
    }

    pub fn is_attempt(&self, matrix: &str) -> bool {
        self.attempts.contains(matrix)
    }
}
