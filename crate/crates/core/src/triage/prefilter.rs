use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::assets;
use crate::tagger::Token;

use super::{CrimeTaxonomy, TriageError};

/// Words admitting a message to triage and the count it must exceed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmergencyFilterConfig {
    pub words: BTreeSet<String>,
    pub threshold: usize,
}

/// Parsed `key = value` settings file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigFile {
    pub threshold: usize,
    pub keywords: Option<PathBuf>,
}

impl ConfigFile {
    /// Keys: `threshold` (integer, default 0) and `keywords` (path).
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, TriageError> {
        let mut out = ConfigFile { threshold: 0, keywords: None };
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| TriageError::Config { line: n + 1, message };
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            match key.trim() {
                "threshold" => {
                    out.threshold = value.trim().parse().map_err(|_| err(format!("bad threshold '{}'", value.trim())))?;
                }
                "keywords" => out.keywords = Some(PathBuf::from(value.trim())),
                other => return Err(err(format!("unknown key '{other}'"))),
            }
        }
        Ok(out)
    }
}

fn keyword_list(text: &str) -> impl Iterator<Item = String> + '_ {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim().to_lowercase())
        .filter(|l| !l.is_empty())
}

impl EmergencyFilterConfig {
    /// Violence lemmas of the taxonomy plus a keyword list.
    pub fn new(taxonomy: &CrimeTaxonomy, keywords: &str, threshold: usize) -> Self {
        let words = taxonomy.violence_lemmas().map(str::to_string).chain(keyword_list(keywords)).collect();
        Self { words, threshold }
    }

    pub fn shipped(taxonomy: &CrimeTaxonomy) -> Result<Self, TriageError> {
        let cfg = ConfigFile::parse(assets::CONFIG)?;
        Ok(Self::new(taxonomy, assets::KEYWORDS, cfg.threshold))
    }

    /// Reads a settings file; a relative keyword path resolves against the
    /// file's directory, and a missing one falls back to the shipped list.
    pub fn load(path: impl AsRef<Path>, taxonomy: &CrimeTaxonomy) -> Result<Self, TriageError> {
        let path = path.as_ref();
        let read = |p: &Path| {
            std::fs::read_to_string(p).map_err(|e| TriageError::Io { path: p.display().to_string(), reason: e.to_string() })
        };
        let cfg = ConfigFile::parse(&read(path)?)?;
        let keywords = match cfg.keywords {
            Some(k) => read(&path.parent().unwrap_or(Path::new(".")).join(k))?,
            None => assets::KEYWORDS.to_string(),
        };
        Ok(Self::new(taxonomy, &keywords, cfg.threshold))
    }

    /// Distinct configured words among the token lemmas (surfaces when a
    /// token has no lemma), sorted.
    pub fn matches<'a>(&self, tokens: impl IntoIterator<Item = &'a Token>) -> Vec<String> {
        let found: BTreeSet<String> = tokens
            .into_iter()
            .map(|t| t.lemma.clone().unwrap_or_else(|| t.lower()))
            .filter(|l| self.words.contains(l))
            .collect();
        found.into_iter().collect()
    }
}

/// True when more than `threshold` distinct configured words occur.
pub fn emergency_prefilter<'a>(tokens: impl IntoIterator<Item = &'a Token>, config: &EmergencyFilterConfig) -> bool {
    config.matches(tokens).len() > config.threshold
}
