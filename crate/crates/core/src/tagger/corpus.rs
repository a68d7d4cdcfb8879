use super::tag::PosTag;
use super::{LexiconError, Tagger};

/// One annotated sentence: words with their gold tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedSentence {
    pub words: Vec<String>,
    pub gold: Vec<PosTag>,
}

/// Parses `word_TAG word_TAG ...` lines; `#` starts a comment line.
pub fn parse_corpus(text: &str) -> Result<Vec<TaggedSentence>, LexiconError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = Vec::new();
        let mut gold = Vec::new();
        for pair in line.split_whitespace() {
            let (word, tag) = pair.rsplit_once('_').ok_or_else(|| LexiconError::Format {
                line: n + 1,
                message: format!("'{pair}' is not word_TAG"),
            })?;
            let tag: PosTag = tag.parse().map_err(|e: super::UnknownTag| LexiconError::Format {
                line: n + 1,
                message: e.to_string(),
            })?;
            words.push(word.to_string());
            gold.push(tag);
        }
        out.push(TaggedSentence { words, gold });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Accuracy {
    pub correct: usize,
    pub total: usize,
}

impl Accuracy {
    pub fn ratio(&self) -> f64 {
        if self.total == 0 {
            1.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

/// Token-level agreement between the tagger and the gold annotation.
pub fn accuracy(tagger: &Tagger, corpus: &[TaggedSentence]) -> Accuracy {
    let mut acc = Accuracy::default();
    for s in corpus {
        let predicted = tagger.tag_words(&s.words);
        acc.total += s.gold.len();
        acc.correct += predicted.iter().zip(&s.gold).filter(|(p, g)| p == g).count();
    }
    acc
}
