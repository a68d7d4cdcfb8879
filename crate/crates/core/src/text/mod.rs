//! Sentence segmentation, normalization, clause splitting and the sentence
//! filters (questions, future or uncertain actions, negation, quoted speech).

mod clause;
mod filter;
mod normalize;
mod segment;

use std::ops::Range;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tagger::{Tagger, Token};

pub use clause::{is_subordinator, segment_clauses, Clause};
pub use filter::{classify_question, detect_negation, detect_uncertain, group_is_future};
pub use normalize::{mark_quoted_spans, strip_specials, strip_specials_mapped};
pub use segment::{split_spans, Abbreviations, SentenceSpan};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("message is empty")]
    EmptyMessage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMessage {
    pub id: String,
    pub text: String,
    pub received_at: DateTime<Utc>,
}

impl RawMessage {
    pub fn new(text: impl Into<String>) -> Self {
        Self::with_id(uuid::Uuid::new_v4().to_string(), text)
    }

    pub fn with_id(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self { id: id.into(), text: text.into(), received_at: Utc::now() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SentenceKind {
    Simple,
    Compound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictStatus {
    Pass,
    FilteredQuestion,
    FilteredUncertain,
    FilteredNegative,
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub status: VerdictStatus,
    pub reason: String,
}

impl FilterVerdict {
    pub fn pass() -> Self {
        Self { status: VerdictStatus::Pass, reason: String::new() }
    }

    fn filtered(status: VerdictStatus, reason: &str) -> Self {
        Self { status, reason: reason.to_string() }
    }

    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub index: usize,
    /// The sentence as it appeared in the message.
    pub raw: String,
    /// Normalized text; token and clause offsets refer to it.
    pub text: String,
    pub tokens: Vec<Token>,
    /// Character ranges of `text` that were inside double quotes.
    pub quoted_spans: Vec<Range<usize>>,
    pub kind: SentenceKind,
    pub clauses: Vec<Clause>,
    pub verdict: FilterVerdict,
}

impl Sentence {
    pub fn token_quoted(&self, i: usize) -> bool {
        let start = self.tokens[i].start;
        self.quoted_spans.iter().any(|r| r.contains(&start))
    }

    /// Index of the clause holding token `i`, if any.
    pub fn clause_of(&self, i: usize) -> Option<usize> {
        self.clauses.iter().position(|c| c.tokens.contains(&i))
    }
}

/// Segmenter, tagger and filters bundled over shared immutable assets.
#[derive(Debug, Clone)]
pub struct TextPipeline {
    abbreviations: Abbreviations,
    tagger: Tagger,
}

impl TextPipeline {
    pub fn new(abbreviations: Abbreviations, tagger: Tagger) -> Self {
        Self { abbreviations, tagger }
    }

    pub fn tagger(&self) -> &Tagger {
        &self.tagger
    }

    pub fn abbreviations(&self) -> &Abbreviations {
        &self.abbreviations
    }

    /// Splits the message into tagged sentences with clauses but without
    /// verdicts (every verdict is `Pass`).
    pub fn split_sentences(&self, message: &RawMessage) -> Result<Vec<Sentence>, TextError> {
        if message.text.trim().is_empty() {
            return Err(TextError::EmptyMessage);
        }
        Ok(split_spans(&message.text, &self.abbreviations)
            .into_iter()
            .enumerate()
            .map(|(index, span)| self.analyze(index, &span.text))
            .collect())
    }

    /// Splits and filters; every sentence carries one verdict and its
    /// clauses carry negation and quotation flags.
    pub fn run_filters(&self, message: &RawMessage) -> Result<Vec<Sentence>, TextError> {
        let mut sentences = self.split_sentences(message)?;
        for s in &mut sentences {
            for c in &mut s.clauses {
                c.negated = detect_negation(&s.tokens, c);
            }
            s.verdict = verdict(s);
        }
        Ok(sentences)
    }

    fn analyze(&self, index: usize, raw: &str) -> Sentence {
        let (text, map) = strip_specials_mapped(raw);
        let quoted_spans = normalize::project_ranges(&mark_quoted_spans(raw), &map);
        let tokens = self.tagger.tag_text(&text);
        let quoted: Vec<bool> = tokens.iter().map(|t| quoted_spans.iter().any(|r| r.contains(&t.start))).collect();
        let clauses = segment_clauses(&tokens, &quoted);
        let kind = if clauses.len() > 1 { SentenceKind::Compound } else { SentenceKind::Simple };
        Sentence {
            index,
            raw: raw.to_string(),
            text,
            tokens,
            quoted_spans,
            kind,
            clauses,
            verdict: FilterVerdict::pass(),
        }
    }
}

fn verdict(s: &Sentence) -> FilterVerdict {
    if !s.tokens.iter().any(|t| t.surface.chars().any(char::is_alphanumeric)) {
        return FilterVerdict::filtered(VerdictStatus::Empty, "no words after normalization");
    }
    if classify_question(&s.raw, &s.tokens) {
        return FilterVerdict::filtered(VerdictStatus::FilteredQuestion, "question sentence");
    }
    if detect_uncertain(&s.tokens, &s.clauses) {
        return FilterVerdict::filtered(VerdictStatus::FilteredUncertain, "main verb is future or uncertain");
    }
    let verbal: Vec<&Clause> = s
        .clauses
        .iter()
        .filter(|c| !c.quoted && clause::has_verb(&s.tokens[c.tokens.clone()]))
        .collect();
    if !verbal.is_empty() && verbal.iter().all(|c| c.negated) {
        return FilterVerdict::filtered(VerdictStatus::FilteredNegative, "every clause is negated");
    }
    FilterVerdict::pass()
}
