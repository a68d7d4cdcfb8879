use std::collections::HashMap;
use std::path::Path;

use super::tag::PosTag;
use super::LexiconError;

/// Word → tags in rank order (most frequent first). Keys are lowercase.
#[derive(Debug, Clone, Default)]
pub struct TagLexicon {
    entries: HashMap<String, Vec<PosTag>>,
}

impl TagLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| LexiconError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Parses `word<TAB>TAG1,TAG2,...` lines. `#` starts a comment line.
    /// A word listed twice keeps the tags of its first line followed by any
    /// new tags of later lines, in file order.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lexicon = TagLexicon::new();
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let Some((word, tags)) = line.split_once('\t') else {
                return Err(LexiconError::Format {
                    line: line_no,
                    message: "missing tag column".into(),
                });
            };
            let word = word.trim();
            if word.is_empty() {
                return Err(LexiconError::Format {
                    line: line_no,
                    message: "empty word".into(),
                });
            }
            let mut parsed = Vec::new();
            for tag in tags.split(',').map(str::trim) {
                if tag.is_empty() {
                    continue;
                }
                let t: PosTag = tag.parse().map_err(|e: super::tag::UnknownTag| LexiconError::Format {
                    line: line_no,
                    message: e.to_string(),
                })?;
                parsed.push(t);
            }
            if parsed.is_empty() {
                return Err(LexiconError::Format {
                    line: line_no,
                    message: "no tags".into(),
                });
            }
            lexicon.add(word, parsed);
        }
        Ok(lexicon)
    }

    pub fn add(&mut self, word: &str, tags: impl IntoIterator<Item = PosTag>) {
        let entry = self.entries.entry(word.to_lowercase()).or_default();
        for t in tags {
            if !entry.contains(&t) {
                entry.push(t);
            }
        }
    }

    pub fn tags(&self, word: &str) -> Option<&[PosTag]> {
        self.entries.get(&word.to_lowercase()).map(Vec::as_slice)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(&word.to_lowercase())
    }

    pub fn has_tag(&self, word: &str, tag: PosTag) -> bool {
        self.tags(word).is_some_and(|t| t.contains(&tag))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Words carrying a `VB` reading, i.e. the known verb base forms.
    pub fn verb_bases(&self) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(|(_, t)| t.contains(&PosTag::VB))
            .map(|(w, _)| w.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[PosTag])> {
        self.entries.iter().map(|(w, t)| (w.as_str(), t.as_slice()))
    }
}
