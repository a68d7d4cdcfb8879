use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::tagger::{PosTag, Token};
use crate::text::Sentence;

pub(crate) const PARTICLES: [&str; 7] = ["over", "up", "out", "away", "back", "down", "off"];
pub(crate) const OBJECT_PRONOUNS: [&str; 8] = ["me", "him", "her", "them", "us", "it", "you", "u"];
const AUX_FORMS: [&str; 26] = [
    "be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m", "have", "has", "had", "having", "'ve",
    "'d", "do", "does", "did", "get", "got", "gets", "getting", "gotten", "done",
];

/// A contiguous run of modals and verbs inside one clause, with adverbs
/// allowed between them, plus an optional phrasal particle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbGroup {
    pub clause: usize,
    pub tokens: Range<usize>,
    pub particle: Option<usize>,
    /// Index (into the sentence's group list) of the group this one
    /// complements, for "tried to run" or "stop her from hitting".
    pub matrix: Option<usize>,
    /// Verb tokens that carry lexical meaning, in order.
    pub lexical: Vec<usize>,
    pub surface: String,
}

impl VerbGroup {
    /// The token after the group and its particle.
    pub(crate) fn after(&self) -> usize {
        self.particle.map_or(self.tokens.end, |p| p + 1)
    }
}

fn is_verbal(t: &Token) -> bool {
    t.tag.is_verb() || t.tag == PosTag::MD
}

/// Verb groups of every clause of a tagged sentence, in token order.
pub fn extract_verb_groups(sentence: &Sentence) -> Vec<VerbGroup> {
    let tokens = &sentence.tokens;
    let mut groups: Vec<VerbGroup> = Vec::new();
    for (ci, clause) in sentence.clauses.iter().enumerate() {
        let end = clause.tokens.end;
        let mut i = clause.tokens.start;
        while i < end {
            if !is_verbal(&tokens[i]) {
                i += 1;
                continue;
            }
            let start = i;
            let mut last = i;
            let mut k = i + 1;
            while k < end {
                if is_verbal(&tokens[k]) {
                    last = k;
                    k += 1;
                } else if tokens[k].tag == PosTag::RB && !is_particle(&tokens[k]) {
                    k += 1;
                } else {
                    break;
                }
            }
            let run = start..last + 1;
            let particle = find_particle(tokens, run.end, end);
            let lexical = lexical_verbs(tokens, run.clone());
            let matrix = groups.last().filter(|g| g.clause == ci).and_then(|g| {
                links_to(tokens, g.after(), run.start).then_some(groups.len() - 1)
            });
            let surface = group_surface(tokens, run.clone(), particle);
            groups.push(VerbGroup { clause: ci, tokens: run, particle, matrix, lexical, surface });
            i = particle.map_or(last + 1, |p| p + 1);
        }
    }
    groups
}

fn is_particle(t: &Token) -> bool {
    PARTICLES.contains(&t.lower().as_str())
}

fn is_object_pronoun(t: &Token) -> bool {
    matches!(t.tag, PosTag::PRP | PosTag::PRPS) && OBJECT_PRONOUNS.contains(&t.lower().as_str())
}

fn find_particle(tokens: &[Token], from: usize, end: usize) -> Option<usize> {
    let ok = |i: usize| i < end && matches!(tokens[i].tag, PosTag::RB | PosTag::IN) && is_particle(&tokens[i]);
    if ok(from) {
        return Some(from);
    }
    (from < end && is_object_pronoun(&tokens[from]) && ok(from + 1)).then_some(from + 1)
}

/// Auxiliaries are modals, and be/have/do/get forms followed by another
/// verb in the run; everything else is lexical.
fn lexical_verbs(tokens: &[Token], run: Range<usize>) -> Vec<usize> {
    let verbs: Vec<usize> = run.filter(|&k| is_verbal(&tokens[k])).collect();
    verbs
        .iter()
        .enumerate()
        .filter(|&(n, &k)| {
            let t = &tokens[k];
            let has_next = n + 1 < verbs.len();
            !(t.tag == PosTag::MD || (has_next && AUX_FORMS.contains(&t.lower().as_str())))
        })
        .map(|(_, &k)| k)
        .collect()
}

/// Between a matrix group and its complement: adverbs, at most one object
/// pronoun, then "to" (before a base verb), or "from"/"on" or nothing
/// (before a gerund).
fn links_to(tokens: &[Token], from: usize, to: usize) -> bool {
    let Some(head) = tokens.get(to) else { return false };
    let mut k = from;
    let skip_rb = |k: &mut usize| {
        while *k < to && tokens[*k].tag == PosTag::RB {
            *k += 1;
        }
    };
    skip_rb(&mut k);
    if k < to && is_object_pronoun(&tokens[k]) {
        k += 1;
    }
    skip_rb(&mut k);
    match head.tag {
        PosTag::VB => {
            if k < to && tokens[k].tag == PosTag::TO {
                k += 1;
                skip_rb(&mut k);
                k == to
            } else {
                false
            }
        }
        PosTag::VBG => {
            if k < to && matches!(tokens[k].lower().as_str(), "from" | "on") {
                k += 1;
            }
            k == to
        }
        _ => false,
    }
}

fn group_surface(tokens: &[Token], run: Range<usize>, particle: Option<usize>) -> String {
    let mut s: Vec<&str> = tokens[run.clone()].iter().map(|t| t.surface.as_str()).collect();
    if let Some(p) = particle {
        if p > run.end {
            s.push("…");
        }
        s.push(&tokens[p].surface);
    }
    s.join(" ")
}
