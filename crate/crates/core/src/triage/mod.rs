//! Emergency prefilter, grading of extracted actions against the crime
//! ontology, and aggregation into a maximum level and a service set.

mod prefilter;
mod taxonomy;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assets;
use crate::extract::{ActionExtractor, ActionMention, Candidate, Disposition, ExtractError};
use crate::rdf::RdfError;
use crate::tagger::{LexiconError, TagLexicon, Tagger};
use crate::text::{Abbreviations, RawMessage, Sentence, SentenceKind, TextError, TextPipeline, VerdictStatus};

pub use prefilter::{emergency_prefilter, ConfigFile, EmergencyFilterConfig};
pub use taxonomy::{max_level, CrimeLevel, CrimeTaxonomy, ServiceType, HG};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TriageError {
    #[error("message is empty")]
    EmptyMessage,
    #[error("not an emergency: {} matching word(s), more than {threshold} required", matched.len())]
    NotEmergency { matched: Vec<String>, threshold: usize },
    #[error("unknown crime level {0}")]
    UnknownLevel(String),
    #[error("unknown service type '{0}'")]
    UnknownServiceType(String),
    #[error("invalid ontology: {0}")]
    Ontology(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Rdf(#[from] RdfError),
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

impl From<TextError> for TriageError {
    fn from(e: TextError) -> Self {
        match e {
            TextError::EmptyMessage => TriageError::EmptyMessage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAction {
    pub lemma: String,
    pub level: CrimeLevel,
    pub mention: ActionMention,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceTrace {
    pub index: usize,
    pub text: String,
    pub kind: SentenceKind,
    pub status: VerdictStatus,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateTrace {
    #[serde(flatten)]
    pub candidate: Candidate,
    pub level: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub prefilter_matches: Vec<String>,
    pub sentences: Vec<SentenceTrace>,
    pub candidates: Vec<CandidateTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriageResult {
    pub actions: Vec<GradedAction>,
    pub max_level: Option<CrimeLevel>,
    pub service_types: BTreeSet<ServiceType>,
    pub trace: Trace,
}

impl TriageResult {
    /// No graded action although the prefilter admitted the message.
    pub fn needs_review(&self) -> bool {
        self.service_types.is_empty()
    }
}

/// The full pipeline over frozen assets.
#[derive(Debug, Clone)]
pub struct TriageEngine {
    pipeline: TextPipeline,
    extractor: ActionExtractor,
    taxonomy: CrimeTaxonomy,
    config: EmergencyFilterConfig,
}

impl TriageEngine {
    pub fn new(pipeline: TextPipeline, extractor: ActionExtractor, taxonomy: CrimeTaxonomy, config: EmergencyFilterConfig) -> Self {
        Self { pipeline, extractor, taxonomy, config }
    }

    /// Every shipped asset.
    pub fn shipped() -> Result<Self, TriageError> {
        Self::with_taxonomy(CrimeTaxonomy::shipped()?)
    }

    /// Shipped language assets and prefilter settings over a given taxonomy.
    pub fn with_taxonomy(taxonomy: CrimeTaxonomy) -> Result<Self, TriageError> {
        let config = EmergencyFilterConfig::shipped(&taxonomy)?;
        Self::with_taxonomy_and_config(taxonomy, config)
    }

    pub fn with_taxonomy_and_config(taxonomy: CrimeTaxonomy, config: EmergencyFilterConfig) -> Result<Self, TriageError> {
        let tagger = Tagger::new(TagLexicon::parse(assets::LEXICON)?);
        let extractor = ActionExtractor::from_assets(tagger.lexicon())?;
        let pipeline = TextPipeline::new(Abbreviations::parse(assets::ABBREVIATIONS), tagger);
        Ok(Self::new(pipeline, extractor, taxonomy, config))
    }

    pub fn pipeline(&self) -> &TextPipeline {
        &self.pipeline
    }

    pub fn extractor(&self) -> &ActionExtractor {
        &self.extractor
    }

    pub fn taxonomy(&self) -> &CrimeTaxonomy {
        &self.taxonomy
    }

    pub fn config(&self) -> &EmergencyFilterConfig {
        &self.config
    }

    /// Filtered, lemmatized sentences.
    pub fn sentences(&self, message: &RawMessage) -> Result<Vec<Sentence>, TriageError> {
        let mut sentences = self.pipeline.run_filters(message)?;
        for s in &mut sentences {
            self.extractor.annotate_lemmas(s);
        }
        Ok(sentences)
    }

    pub fn triage(&self, message: &RawMessage) -> Result<TriageResult, TriageError> {
        let sentences = self.sentences(message)?;
        let matched = self.config.matches(sentences.iter().flat_map(|s| &s.tokens));
        if matched.len() <= self.config.threshold {
            tracing::info!(message_id = %message.id, matched = matched.len(), threshold = self.config.threshold, "prefilter rejected message");
            return Err(TriageError::NotEmergency { matched, threshold: self.config.threshold });
        }

        let candidates: Vec<CandidateTrace> = self
            .extractor
            .candidates(&sentences)
            .into_iter()
            .map(|candidate| {
                let level = self.taxonomy.level_of_action(&candidate.mention.lemma).map(|l| l.ordinal);
                CandidateTrace { candidate, level }
            })
            .collect();
        let actions: Vec<GradedAction> = candidates
            .iter()
            .filter(|c| c.candidate.disposition == Disposition::Emitted)
            .filter_map(|c| {
                let m = &c.candidate.mention;
                self.taxonomy.level_of_action(&m.lemma).map(|level| GradedAction { lemma: m.lemma.clone(), level, mention: m.clone() })
            })
            .collect();
        let max_level = max_level(actions.iter().map(|a| &a.level));
        let service_types = match &max_level {
            Some(l) => self.taxonomy.services_for_level(l)?,
            None => BTreeSet::new(),
        };
        let sentences = sentences
            .iter()
            .map(|s| SentenceTrace {
                index: s.index,
                text: s.raw.clone(),
                kind: s.kind,
                status: s.verdict.status,
                reason: s.verdict.reason.clone(),
            })
            .collect();
        Ok(TriageResult { actions, max_level, service_types, trace: Trace { prefilter_matches: matched, sentences, candidates } })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ServiceType::*;

    fn services(engine: &TriageEngine, text: &str) -> BTreeSet<ServiceType> {
        engine.triage(&RawMessage::new(text)).unwrap().service_types
    }

    #[test]
    fn worked_examples() {
        let e = TriageEngine::shipped().unwrap();
        assert_eq!(services(&e, "My husband come home drunk and hit me every day. I need help."), BTreeSet::from([Hospital, Lawyer, Police]));
        assert_eq!(services(&e, "My uncle raped me. Nobody here in my home. Please help me."), BTreeSet::from([Hospital, Lawyer, Police, Ngo]));
        assert_eq!(services(&e, "My boyfriend gave the threat to kill me. He always told me it was my fault. HELP!"), BTreeSet::from([Police]));
    }

    #[test]
    fn outcomes() {
        let e = TriageEngine::shipped().unwrap();
        assert_eq!(e.triage(&RawMessage::new("  ")), Err(TriageError::EmptyMessage));
        assert!(matches!(e.triage(&RawMessage::new("The weather is nice today.")), Err(TriageError::NotEmergency { .. })));
        let r = e.triage(&RawMessage::new("I need help.")).unwrap();
        assert!(r.needs_review() && r.max_level.is_none());
        assert_eq!(r.trace.sentences.len(), 1);
    }
}
