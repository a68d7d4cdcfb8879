//! Part-of-speech tagging with a shipped lexicon, suffix guesses for unknown
//! words, and a fixed sequence of contextual repair rules.

mod corpus;
mod lexicon;
mod rules;
mod tag;
mod tokenize;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corpus::{accuracy, parse_corpus, Accuracy, TaggedSentence};
pub use lexicon::TagLexicon;
pub use rules::{context_rule_names, suffix_guess};
pub use tag::{PosTag, UnknownTag};
pub use tokenize::{surfaces, tokenize};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("lexicon line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    /// Character offset of the first character within the sentence text.
    pub start: usize,
    pub tag: PosTag,
    pub lemma: Option<String>,
}

impl Token {
    pub fn end(&self) -> usize {
        self.start + self.surface.chars().count()
    }

    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

/// Tokenizer plus tagger over a shared, immutable lexicon.
#[derive(Debug, Clone)]
pub struct Tagger {
    lexicon: Arc<TagLexicon>,
}

impl Tagger {
    pub fn new(lexicon: TagLexicon) -> Self {
        Self { lexicon: Arc::new(lexicon) }
    }

    pub fn from_shared(lexicon: Arc<TagLexicon>) -> Self {
        Self { lexicon }
    }

    pub fn lexicon(&self) -> &TagLexicon {
        &self.lexicon
    }

    pub fn shared_lexicon(&self) -> Arc<TagLexicon> {
        Arc::clone(&self.lexicon)
    }

    pub fn tag_sentence(&self, mut tokens: Vec<Token>) -> Vec<Token> {
        rules::tag_tokens(&self.lexicon, &mut tokens);
        tokens
    }

    pub fn tag_text(&self, text: &str) -> Vec<Token> {
        self.tag_sentence(tokenize(text))
    }

    /// Tags a pre-tokenized word sequence.
    pub fn tag_words<S: AsRef<str>>(&self, words: &[S]) -> Vec<PosTag> {
        let mut start = 0;
        let tokens = words
            .iter()
            .map(|w| {
                let t = Token::untagged(w.as_ref().to_string(), start);
                start += w.as_ref().chars().count() + 1;
                t
            })
            .collect();
        self.tag_sentence(tokens).into_iter().map(|t| t.tag).collect()
    }
}
