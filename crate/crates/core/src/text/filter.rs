use std::ops::Range;

use crate::tagger::{PosTag, Token};

use super::clause::Clause;

const WH_WORDS: [&str; 9] = ["what", "who", "whom", "whose", "which", "when", "where", "why", "how"];
const AUXILIARIES: [&str; 24] = [
    "am", "is", "are", "was", "were", "do", "does", "did", "have", "has", "had", "can", "could", "will", "would",
    "shall", "should", "may", "might", "must", "wo", "ca", "need", "dare",
];
const SUBJECT_PRONOUNS: [&str; 8] = ["i", "you", "he", "she", "it", "we", "they", "u"];
const FUTURE_MODALS: [&str; 8] = ["will", "shall", "'ll", "wo", "might", "may", "could", "gonna"];
const NEGATORS: [&str; 7] = ["not", "n't", "never", "nobody", "nothing", "none", "no"];
const OBJECT_NEGATORS: [&str; 4] = ["no", "nothing", "nobody", "none"];

/// Question test: a raw sentence ending in `?`, or tokens opening with a
/// wh-word, or with an auxiliary followed by a subject pronoun.
pub fn classify_question(raw: &str, tokens: &[Token]) -> bool {
    if raw.trim_end().ends_with('?') {
        return true;
    }
    let Some(first) = tokens.first() else { return false };
    let first = first.lower();
    if WH_WORDS.contains(&first.as_str()) {
        return true;
    }
    AUXILIARIES.contains(&first.as_str())
        && tokens.get(1).is_some_and(|t| SUBJECT_PRONOUNS.contains(&t.lower().as_str()))
}

/// Token range of the first verb group at or after `from` (and before
/// `until`): a run of modals and verbs, with adverbs allowed inside the run.
pub(crate) fn first_verb_group(tokens: &[Token], from: usize, until: usize) -> Option<Range<usize>> {
    let is_v = |t: &Token| t.tag.is_verb() || t.tag == PosTag::MD;
    let start = (from..until).find(|&i| is_v(&tokens[i]))?;
    let mut end = start + 1;
    let mut k = end;
    while k < until {
        if is_v(&tokens[k]) {
            end = k + 1;
            k += 1;
        } else if tokens[k].tag == PosTag::RB {
            k += 1;
        } else {
            break;
        }
    }
    Some(start..end)
}

/// Future or irrealis marking of a verb group: a future modal, or
/// "going to", governing a base-form verb.
pub fn group_is_future(tokens: &[Token], group: Range<usize>) -> bool {
    let words = &tokens[group.clone()];
    let modal_then_base = words.iter().enumerate().any(|(i, t)| {
        FUTURE_MODALS.contains(&t.lower().as_str()) && words[i + 1..].iter().any(|v| v.tag == PosTag::VB)
    });
    if modal_then_base {
        return true;
    }
    let last = group.end - 1;
    tokens[last].lower() == "going"
        && tokens.get(group.end).is_some_and(|t| t.tag == PosTag::TO)
        && tokens.get(group.end + 1).is_some_and(|t| t.tag == PosTag::VB)
}

/// Sentence-level uncertainty: the first verb group of the main clause is
/// future-marked. "would" and "'d" are not markers.
pub fn detect_uncertain(tokens: &[Token], clauses: &[Clause]) -> bool {
    let open: Vec<&Clause> = clauses.iter().filter(|c| !c.quoted).collect();
    let main = open
        .iter()
        .find(|c| !c.is_subordinate(tokens) && first_verb_group(tokens, c.tokens.start, c.tokens.end).is_some())
        .or_else(|| open.iter().find(|c| first_verb_group(tokens, c.tokens.start, c.tokens.end).is_some()));
    let Some(main) = main else { return false };
    let group = first_verb_group(tokens, main.tokens.start, main.tokens.end).expect("checked above");
    if group_is_future(tokens, group.clone()) {
        return true;
    }
    // Inverted modal: "will my uncle hit me".
    let lone_modal = tokens[group.clone()].iter().all(|t| t.tag == PosTag::MD || t.tag == PosTag::RB)
        && tokens[group.clone()].iter().any(|t| FUTURE_MODALS.contains(&t.lower().as_str()));
    lone_modal
        && first_verb_group(tokens, group.end, main.tokens.end)
            .is_some_and(|next| (group.end..next.start).all(|i| !tokens[i].tag.is_verb()) && tokens[next.start].tag == PosTag::VB)
}

/// Clause-level negation: a negator before or inside the first verb group,
/// or "no"/"nothing" opening the object right after it. A clause without a
/// verb is negated when it contains any negator.
pub fn detect_negation(tokens: &[Token], clause: &Clause) -> bool {
    let range = clause.tokens.clone();
    let is_neg = |i: usize| NEGATORS.contains(&tokens[i].lower().as_str());
    let Some(group) = first_verb_group(tokens, range.start, range.end) else {
        return range.clone().any(is_neg);
    };
    if (range.start..group.end).any(is_neg) {
        return true;
    }
    let mut k = group.end;
    if k < range.end && tokens[k].tag == PosTag::PRP {
        k += 1;
    }
    k < range.end && OBJECT_NEGATORS.contains(&tokens[k].lower().as_str())
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

    fn whole(tokens: &[Token]) -> Clause {
        Clause { span: 0..0, tokens: 0..tokens.len(), connective_before: None, negated: false, quoted: false }
    }

    #[test]
    fn questions() {
        let t = toks(&[("What", PRP), ("he", PRP), ("should", MD), ("do", VB)]);
        assert!(classify_question("What he should do?", &t));
        let t = toks(&[("He", PRP), ("hit", VBD), ("me", PRP)]);
        assert!(!classify_question("He hit me.", &t));
        let t = toks(&[("Did", VBD), ("he", PRP), ("hit", VB), ("you", PRP)]);
        assert!(classify_question("Did he hit you", &t));
    }

    #[test]
    fn future_groups() {
        let t = toks(&[("it", PRP), ("will", MD), ("be", VB), ("over", RB), ("soon", RB)]);
        assert!(detect_uncertain(&t, &[whole(&t)]));
        let t = toks(&[("she", PRP), ("'d", MD), ("flip", VB), ("out", RB)]);
        assert!(!detect_uncertain(&t, &[whole(&t)]));
        let t = toks(&[("he", PRP), ("is", VBZ), ("going", VBG), ("to", TO), ("hit", VB), ("me", PRP)]);
        assert!(detect_uncertain(&t, &[whole(&t)]));
        let t = toks(&[("Will", MD), ("my", PRPS), ("uncle", NN), ("hit", VB), ("me", PRP)]);
        assert!(detect_uncertain(&t, &[whole(&t)]));
        let t = toks(&[("Could", MD), ("my", PRPS), ("uncle", NN), ("hit", VBD), ("me", PRP)]);
        assert!(!detect_uncertain(&t, &[whole(&t)]));
    }

    #[test]
    fn negation() {
        let t = toks(&[("I", PRP), ("did", VBD), ("n't", RB), ("get", VB), ("out", RB)]);
        assert!(detect_negation(&t, &whole(&t)));
        let t = toks(&[("He", PRP), ("gave", VBD), ("me", PRP), ("no", DT), ("food", NN)]);
        assert!(detect_negation(&t, &whole(&t)));
        let t = toks(&[("He", PRP), ("hit", VBD), ("me", PRP)]);
        assert!(!detect_negation(&t, &whole(&t)));
        let t = toks(&[("Nobody", NN), ("here", RB)]);
        assert!(detect_negation(&t, &whole(&t)));
    }
}
