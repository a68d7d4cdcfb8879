use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::tagger::{PosTag, Token};

pub(crate) const COORDINATORS: [&str; 4] = ["and", "but", "or", "so"];
pub(crate) const SUBORDINATORS: [&str; 12] = [
    "when", "after", "because", "while", "if", "that", "though", "although", "before", "until", "unless", "since",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    /// Character range within the normalized sentence text.
    pub span: Range<usize>,
    /// Token index range within the sentence.
    pub tokens: Range<usize>,
    pub connective_before: Option<Token>,
    pub negated: bool,
    pub quoted: bool,
}

impl Clause {
    /// True when the clause is introduced by a subordinating connective,
    /// either just before it or as its first word.
    pub fn is_subordinate(&self, tokens: &[Token]) -> bool {
        let first = tokens.get(self.tokens.start);
        self.connective_before
            .iter()
            .chain(first)
            .any(is_subordinator)
    }
}

/// A subordinating connective ("that" only when not a determiner).
pub fn is_subordinator(t: &Token) -> bool {
    SUBORDINATORS.contains(&t.lower().as_str()) && t.tag != PosTag::DT
}

pub(crate) fn has_verb(tokens: &[Token]) -> bool {
    tokens.iter().any(|t| t.tag.is_verb() || t.tag == PosTag::MD)
}

struct Segment {
    connective: Option<usize>,
    range: Range<usize>,
    region: usize,
}

/// Splits a tagged sentence into clauses.
///
/// Quoted and unquoted regions never share a clause. Inside a region,
/// candidate boundaries fall before coordinators and subordinators and at
/// commas; a candidate segment without a verb is merged into the previous
/// segment of its region, or into the next one when it opens the region.
pub fn segment_clauses(tokens: &[Token], quoted: &[bool]) -> Vec<Clause> {
    if tokens.is_empty() {
        return vec![Clause { span: 0..0, tokens: 0..0, connective_before: None, negated: false, quoted: false }];
    }
    let mut segments: Vec<Segment> = Vec::new();
    let mut region = 0;
    let mut start = 0;
    let mut connective = None;
    let mut i = 0;
    while i < tokens.len() {
        if i > 0 && quoted[i] != quoted[i - 1] {
            segments.push(Segment { connective, range: start..i, region });
            region += 1;
            start = i;
            connective = None;
        }
        let word = tokens[i].lower();
        let is_comma = tokens[i].surface == ",";
        let is_connective = !quoted[i]
            && i > start
            && (COORDINATORS.contains(&word.as_str())
                || (SUBORDINATORS.contains(&word.as_str()) && tokens[i].tag != PosTag::DT));
        if is_comma || is_connective {
            segments.push(Segment { connective, range: start..i, region });
            if is_comma {
                let next_is_connective = tokens.get(i + 1).is_some_and(|t| {
                    let w = t.lower();
                    quoted.get(i + 1) == Some(&quoted[i])
                        && (COORDINATORS.contains(&w.as_str())
                            || (SUBORDINATORS.contains(&w.as_str()) && t.tag != PosTag::DT))
                });
                if next_is_connective {
                    connective = Some(i + 1);
                    start = i + 2;
                    i += 2;
                } else {
                    connective = None;
                    start = i + 1;
                    i += 1;
                }
            } else {
                connective = Some(i);
                start = i + 1;
                i += 1;
            }
            continue;
        }
        i += 1;
    }
    segments.push(Segment { connective, range: start..tokens.len(), region });

    let merged = merge_verbless(tokens, segments);
    merged
        .into_iter()
        .map(|s| {
            let span = if s.range.is_empty() {
                let at = tokens.get(s.range.start).map_or_else(|| tokens.last().map_or(0, Token::end), |t| t.start);
                at..at
            } else {
                tokens[s.range.start].start..tokens[s.range.end - 1].end()
            };
            Clause {
                span,
                quoted: s.range.clone().any(|k| quoted[k]),
                tokens: s.range,
                connective_before: s.connective.map(|c| tokens[c].clone()),
                negated: false,
            }
        })
        .collect()
}

fn merge_verbless(tokens: &[Token], segments: Vec<Segment>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    let mut carry: Option<Segment> = None;
    for seg in segments {
        let seg = match carry.take() {
            Some(c) if c.region == seg.region => Segment { connective: c.connective, range: c.range.start..seg.range.end, region: seg.region },
            Some(c) => {
                out.push(c);
                seg
            }
            None => seg,
        };
        let verbful = has_verb(&tokens[seg.range.clone()]);
        let opens_region = out.last().is_none_or(|p| p.region != seg.region);
        if verbful {
            out.push(seg);
        } else if opens_region {
            carry = Some(seg);
        } else {
            let prev = out.last_mut().expect("region has a previous segment");
            prev.range = prev.range.start..seg.range.end;
        }
    }
    if let Some(c) = carry {
        match out.last_mut() {
            Some(prev) if prev.region == c.region => prev.range = prev.range.start..c.range.end,
            _ => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagger::{tokenize, PosTag::*};

    fn toks(spec: &[(&str, PosTag)]) -> Vec<Token> {
        let text: Vec<&str> = spec.iter().map(|(w, _)| *w).collect();
        let mut t = tokenize(&text.join(" "));
        for (tok, (_, tag)) in t.iter_mut().zip(spec) {
            tok.tag = *tag;
        }
        t
    }

    #[test]
    fn coordination_needs_verbs_on_both_sides() {
        let t = toks(&[("She", PRP), ("does", VBZ), ("n't", RB), ("give", VB), ("me", PRP), ("food", NN), ("and", CC), ("hit", VBD), ("me", PRP)]);
        let c = segment_clauses(&t, &[false; 9]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].tokens, 0..6);
        assert_eq!(c[1].tokens, 7..9);
        assert_eq!(c[1].connective_before.as_ref().unwrap().surface, "and");

        let t = toks(&[("hands", NNS), (",", SYM), ("feet", NNS), ("and", CC), ("mouth", NN)]);
        assert_eq!(segment_clauses(&t, &[false; 5]).len(), 1);
    }

    #[test]
    fn quoted_regions_are_separate() {
        let t = toks(&[("the", DT), ("you", PRP), ("hit", VBD), ("me", PRP), ("argument", NN), ("started", VBD)]);
        let q = [false, true, true, true, false, false];
        let c = segment_clauses(&t, &q);
        assert_eq!(c.len(), 3);
        assert!(c[1].quoted && !c[0].quoted && !c[2].quoted);
    }

    #[test]
    fn leading_verbless_segment_merges_forward() {
        let t = toks(&[("One", CD), ("time", NN), (",", SYM), ("he", PRP), ("broke", VBD), ("my", PRPS), ("finger", NN)]);
        let c = segment_clauses(&t, &[false; 7]);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].tokens, 0..7);
    }
}
