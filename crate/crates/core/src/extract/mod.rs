//! Action extraction: verb groups, subject attribution, realization
//! through catenative chains, lemmatization and synonym canonicalization.

mod groups;
mod lemma;
mod policy;
mod synset;

use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::assets;
use crate::tagger::{PosTag, TagLexicon, Token};
use crate::text::{group_is_future, Sentence};

pub use groups::{extract_verb_groups, VerbGroup};
pub use lemma::LemmaRules;
pub use policy::{Catenative, CatenativePolicy};
pub use synset::{canonicalize, SynsetTable};

const NOMINATIVE: [&str; 8] = ["i", "we", "he", "she", "they", "it", "you", "u"];
const LIGHT_VERBS: [&str; 4] = ["give", "make", "issue", "send"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("{table} line {line}: {message}")]
    Format { table: &'static str, line: usize, message: String },
    #[error("{table}: {message}")]
    Conflict { table: &'static str, message: String },
}

pub(crate) fn parse_pairs(table: &'static str, text: &str) -> Result<Vec<(String, String)>, ExtractError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: &str| ExtractError::Format { table, line: n + 1, message: message.to_string() };
        let (a, b) = line.split_once('\t').ok_or_else(|| err("expected two tab-separated columns"))?;
        let (a, b) = (a.trim().to_lowercase(), b.trim().to_lowercase());
        if a.is_empty() || b.is_empty() || b.contains('\t') {
            return Err(err("empty or extra column"));
        }
        out.push((a, b));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subject {
    Reporter,
    Other,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    Realized,
    Attempted,
    Unrealized,
}

/// Why a candidate mention was or was not emitted. Variants are listed in
/// precedence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Disposition {
    SentenceFiltered,
    Quoted,
    Negated,
    ReporterSubject,
    Blocked,
    Unrealized,
    Emitted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionMention {
    pub lemma: String,
    pub surface: String,
    pub sentence_index: usize,
    pub clause_span: Range<usize>,
    pub subject: Subject,
    pub realization: Realization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub mention: ActionMention,
    pub disposition: Disposition,
    /// Token index of the verb within its sentence.
    pub token: usize,
    pub future: bool,
    pub light_verb: bool,
}

#[derive(Debug, Clone, Default)]
pub struct ActionExtractor {
    lemmas: LemmaRules,
    synsets: SynsetTable,
    policy: CatenativePolicy,
}

impl ActionExtractor {
    pub fn new(lemmas: LemmaRules, synsets: SynsetTable, policy: CatenativePolicy) -> Self {
        Self { lemmas, synsets, policy }
    }

    /// Shipped exception and synonym tables with the default policy.
    pub fn from_assets(lexicon: &TagLexicon) -> Result<Self, ExtractError> {
        Ok(Self::new(
            LemmaRules::from_tables(assets::LEMMA_EXCEPTIONS, assets::VERB_LEMMAS, lexicon)?,
            SynsetTable::parse(assets::SYNSETS)?,
            CatenativePolicy::default(),
        ))
    }

    pub fn lemma_rules(&self) -> &LemmaRules {
        &self.lemmas
    }

    pub fn synsets(&self) -> &SynsetTable {
        &self.synsets
    }

    pub fn policy(&self) -> &CatenativePolicy {
        &self.policy
    }

    pub fn lemmatize(&self, word: &str, tag: PosTag) -> String {
        self.lemmas.lemmatize(word, tag)
    }

    /// Canonical lemma of a token.
    pub fn token_lemma(&self, token: &Token) -> String {
        canonicalize(&self.lemmas.lemmatize(&token.surface, token.tag), &self.synsets)
    }

    /// Fills `lemma` on every token.
    pub fn annotate_lemmas(&self, sentence: &mut Sentence) {
        for t in &mut sentence.tokens {
            t.lemma = Some(self.token_lemma(t));
        }
    }

    /// Every candidate mention of every sentence with its disposition.
    pub fn candidates(&self, sentences: &[Sentence]) -> Vec<Candidate> {
        sentences.iter().flat_map(|s| self.sentence_candidates(s)).collect()
    }

    /// Emitted mentions only.
    pub fn extract_actions(&self, sentences: &[Sentence]) -> Vec<ActionMention> {
        self.candidates(sentences)
            .into_iter()
            .filter(|c| c.disposition == Disposition::Emitted)
            .map(|c| c.mention)
            .collect()
    }

    pub fn sentence_candidates(&self, s: &Sentence) -> Vec<Candidate> {
        let groups = extract_verb_groups(s);
        let tokens = &s.tokens;
        let mut real: Vec<Option<(Realization, bool)>> = vec![None; tokens.len()];
        let mut clause_real: Vec<Option<Realization>> = vec![None; s.clauses.len()];
        let mut out = Vec::new();

        for (gi, g) in groups.iter().enumerate() {
            let future = group_is_future(tokens, g.tokens.clone());
            let subject = resolve_subject(s, &groups, gi);
            let clause = &s.clauses[g.clause];
            for (n, &k) in g.lexical.iter().enumerate() {
                let matrix = if n > 0 { Some(g.lexical[n - 1]) } else { g.matrix.and_then(|m| groups[m].lexical.last().copied()) };
                let (realization, blocked) = match matrix {
                    Some(m) => {
                        let (m_real, _) = real[m].unwrap_or((Realization::Unrealized, false));
                        let m_lemma = self.lemmas.lemmatize(&tokens[m].surface, tokens[m].tag);
                        match self.policy.class_of(&m_lemma) {
                            Catenative::Block => (Realization::Unrealized, true),
                            Catenative::Demote => (Realization::Unrealized, false),
                            Catenative::Promote if future => (Realization::Unrealized, false),
                            Catenative::Promote if self.policy.is_attempt(&m_lemma) && m_real != Realization::Unrealized => {
                                (Realization::Attempted, false)
                            }
                            Catenative::Promote => (m_real, false),
                        }
                    }
                    None => (self.base_realization(s, &groups, gi, future, &clause_real), false),
                };
                real[k] = Some((realization, blocked));
                clause_real[g.clause].get_or_insert(realization);

                let is_last = n + 1 == g.lexical.len();
                let lemma = self.verb_lemma(tokens, k, if is_last { g.particle } else { None });
                let surface = if is_last && n == 0 { g.surface.clone() } else { tokens[k].surface.clone() };
                let mention = ActionMention {
                    lemma,
                    surface,
                    sentence_index: s.index,
                    clause_span: clause.span.clone(),
                    subject,
                    realization,
                };
                let disposition = disposition(s, g.clause, subject, realization, blocked);
                let light = self.light_verb_object(s, g, k);
                out.push(Candidate { mention: mention.clone(), disposition, token: k, future, light_verb: false });
                if let Some((lemma, end)) = light {
                    let surface = tokens[k..=end].iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
                    out.push(Candidate {
                        mention: ActionMention { lemma, surface, ..mention },
                        disposition,
                        token: k,
                        future,
                        light_verb: true,
                    });
                }
            }
        }
        out
    }

    fn verb_lemma(&self, tokens: &[Token], k: usize, particle: Option<usize>) -> String {
        let base = self.lemmas.lemmatize(&tokens[k].surface, tokens[k].tag);
        if let Some(p) = particle {
            let phrase = format!("{base} {}", tokens[p].lower());
            if self.synsets.contains(&phrase) {
                return canonicalize(&phrase, &self.synsets);
            }
        }
        canonicalize(&base, &self.synsets)
    }

    /// Realization of a group with no governing verb: finite groups are
    /// realized unless future-marked; a bare verb coordinated after an
    /// earlier clause with the subject elided takes that clause's value.
    fn base_realization(
        &self,
        s: &Sentence,
        groups: &[VerbGroup],
        gi: usize,
        future: bool,
        clause_real: &[Option<Realization>],
    ) -> Realization {
        if future {
            return Realization::Unrealized;
        }
        let g = &groups[gi];
        let head = &s.tokens[g.tokens.start];
        if matches!(head.tag, PosTag::VBD | PosTag::VBZ | PosTag::VBP | PosTag::MD) {
            return Realization::Realized;
        }
        let clause = &s.clauses[g.clause];
        let first_in_clause = gi == 0 || groups[gi - 1].clause != g.clause;
        let elided = first_in_clause
            && !clause.is_subordinate(&s.tokens)
            && scan_subject(s, g.clause, g.tokens.start).is_none();
        if !elided {
            return Realization::Unrealized;
        }
        (0..g.clause)
            .rev()
            .find(|&c| !s.clauses[c].quoted)
            .and_then(|c| clause_real[c])
            .unwrap_or(Realization::Unrealized)
    }

    /// "gave (me) the threat", "gave her a beating": a light verb followed by
    /// a noun naming an action. Returns the action lemma and the noun index.
    fn light_verb_object(&self, s: &Sentence, g: &VerbGroup, k: usize) -> Option<(String, usize)> {
        let tokens = &s.tokens;
        if !LIGHT_VERBS.contains(&self.lemmas.lemmatize(&tokens[k].surface, tokens[k].tag).as_str()) {
            return None;
        }
        if g.lexical.last() != Some(&k) {
            return None;
        }
        let end = s.clauses[g.clause].tokens.end;
        let mut i = g.after();
        let mut skipped = 0;
        while i < end && skipped < 3 && matches!(tokens[i].tag, PosTag::PRP | PosTag::PRPS | PosTag::DT | PosTag::JJ | PosTag::CD) {
            i += 1;
            skipped += 1;
        }
        let noun = tokens.get(i).filter(|t| i < end && matches!(t.tag, PosTag::NN | PosTag::NNS))?;
        let lemma = self.lemmas.lemmatize(&noun.surface, noun.tag);
        let action = match lemma.as_str() {
            "threat" => "threaten".to_string(),
            "beating" => "beat".to_string(),
            other if self.synsets.contains(other) => canonicalize(other, &self.synsets),
            _ => return None,
        };
        Some((action, i))
    }
}

fn disposition(s: &Sentence, clause: usize, subject: Subject, realization: Realization, blocked: bool) -> Disposition {
    let c = &s.clauses[clause];
    if !s.verdict.passed() {
        Disposition::SentenceFiltered
    } else if c.quoted {
        Disposition::Quoted
    } else if c.negated {
        Disposition::Negated
    } else if subject == Subject::Reporter {
        Disposition::ReporterSubject
    } else if blocked {
        Disposition::Blocked
    } else if realization == Realization::Unrealized {
        Disposition::Unrealized
    } else {
        Disposition::Emitted
    }
}

/// Subject of group `gi`: the nearest subject pronoun or subject noun
/// phrase before it in its clause, else that of the nearest earlier
/// unquoted clause. "I" and "we" are the reporter.
pub fn resolve_subject(sentence: &Sentence, groups: &[VerbGroup], gi: usize) -> Subject {
    let g = &groups[gi];
    if let Some(found) = scan_subject(sentence, g.clause, g.tokens.start) {
        return found;
    }
    let mut ci = g.clause;
    while ci > 0 {
        ci -= 1;
        if sentence.clauses[ci].quoted {
            continue;
        }
        let pos = groups.iter().find(|h| h.clause == ci).map_or(sentence.clauses[ci].tokens.end, |h| h.tokens.start);
        if let Some(found) = scan_subject(sentence, ci, pos) {
            return found;
        }
    }
    Subject::Unknown
}

fn scan_subject(s: &Sentence, ci: usize, pos: usize) -> Option<Subject> {
    let tokens = &s.tokens;
    let lo = s.clauses[ci].tokens.start;
    let mut j = pos;
    while j > lo {
        j -= 1;
        if s.token_quoted(j) {
            continue;
        }
        let t = &tokens[j];
        let w = t.lower();
        if t.tag == PosTag::PRP && NOMINATIVE.contains(&w.as_str()) {
            return Some(if w == "i" || w == "we" { Subject::Reporter } else { Subject::Other });
        }
        if w == "who" || w == "which" {
            return Some(Subject::Unknown);
        }
        if t.tag.is_noun() {
            let mut start = j;
            while start > lo
                && !s.token_quoted(start - 1)
                && (matches!(tokens[start - 1].tag, PosTag::DT | PosTag::PRPS | PosTag::JJ | PosTag::CD | PosTag::OTHER)
                    || tokens[start - 1].tag.is_noun())
            {
                start -= 1;
            }
            let opens = start == lo || {
                let before = &tokens[start - 1];
                before.tag == PosTag::CC || before.surface == "," || crate::text::is_subordinator(before)
            };
            if opens {
                return Some(Subject::Other);
            }
            j = start;
        }
    }
    None
}
