use super::lexicon::TagLexicon;
use super::tag::PosTag;
use super::tokenize::is_punct;
use super::Token;

use PosTag::*;

const NOMINATIVE: [&str; 8] = ["i", "you", "he", "she", "it", "we", "they", "u"];
const THIRD_SINGULAR: [&str; 3] = ["he", "she", "it"];
const DO_FORMS: [&str; 3] = ["do", "does", "did"];
const HAVE_FORMS: [&str; 6] = ["have", "has", "had", "having", "'ve", "'d"];
const BE_FORMS: [&str; 10] = ["be", "am", "is", "are", "was", "were", "been", "being", "'re", "'m"];

/// Assigns one tag per token.
///
/// Order: lexicon first rank, then NNP for unknown capitalized non-initial
/// words, then suffix guesses for other unknowns, then the contextual rules
/// named by [`context_rule_names`], each applied in one left-to-right pass.
pub fn tag_tokens(lexicon: &TagLexicon, tokens: &mut [Token]) {
    let readings: Vec<Vec<PosTag>> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| initial_readings(lexicon, &t.surface, i == 0))
        .collect();
    for (tok, r) in tokens.iter_mut().zip(&readings) {
        tok.tag = r[0];
    }
    let mut ctx = Context { tokens, readings: &readings };
    for (_, rule) in CONTEXT_RULES {
        rule(&mut ctx);
    }
}

fn initial_readings(lexicon: &TagLexicon, surface: &str, initial: bool) -> Vec<PosTag> {
    if is_punct(surface) {
        return vec![SYM];
    }
    if surface.chars().any(|c| c.is_ascii_digit()) && !surface.chars().any(char::is_alphabetic) {
        return vec![CD];
    }
    if let Some(tags) = lexicon.tags(surface) {
        return tags.to_vec();
    }
    if !initial && surface.chars().next().is_some_and(char::is_uppercase) {
        return vec![NNP];
    }
    vec![suffix_guess(lexicon, &surface.to_lowercase())]
}

/// Tag for a word absent from the lexicon.
pub fn suffix_guess(lexicon: &TagLexicon, word: &str) -> PosTag {
    let n = word.chars().count();
    if n > 4 && word.ends_with("ing") {
        VBG
    } else if n > 3 && word.ends_with("ed") {
        VBD
    } else if n > 2 && word.ends_with('s') && verb_stem_of_s_form(lexicon, word) {
        VBZ
    } else if n > 3 && word.ends_with("ly") {
        RB
    } else {
        NN
    }
}

fn verb_stem_of_s_form(lexicon: &TagLexicon, word: &str) -> bool {
    let stem = &word[..word.len() - 1];
    if lexicon.has_tag(stem, VB) {
        return true;
    }
    if let Some(s) = word.strip_suffix("es") {
        if lexicon.has_tag(s, VB) {
            return true;
        }
    }
    if let Some(s) = word.strip_suffix("ies") {
        return lexicon.has_tag(&format!("{s}y"), VB);
    }
    false
}

struct Context<'a> {
    tokens: &'a mut [Token],
    readings: &'a [Vec<PosTag>],
}

impl Context<'_> {
    fn lower(&self, i: usize) -> String {
        self.tokens[i].surface.to_lowercase()
    }

    fn is(&self, i: usize, words: &[&str]) -> bool {
        words.contains(&self.lower(i).as_str())
    }

    fn has(&self, i: usize, tag: PosTag) -> bool {
        self.readings[i].contains(&tag)
    }

    fn tag(&self, i: usize) -> PosTag {
        self.tokens[i].tag
    }

    /// Index of the nearest token before `i` that is not an adverb.
    fn prev_skipping_rb(&self, i: usize) -> Option<usize> {
        (0..i).rev().find(|&j| self.tag(j) != RB)
    }

    fn next_tag(&self, i: usize) -> Option<PosTag> {
        self.tokens.get(i + 1).map(|t| t.tag)
    }
}

type Rule = fn(&mut Context<'_>);

/// Names of the contextual rules, in application order.
pub fn context_rule_names() -> impl Iterator<Item = &'static str> {
    CONTEXT_RULES.iter().map(|(name, _)| *name)
}

/// Contextual repair rules in application order.
const CONTEXT_RULES: [(&str, Rule); 11] = [
    ("possessive 's after a noun", possessive_s),
    ("that: determiner before a noun or adjective", that_determiner),
    ("her: possessive before a noun or adjective, else object", her_reading),
    ("noun after a determiner or possessive", noun_after_determiner),
    ("base form after to", base_after_to),
    ("base form after a modal or do-form", base_after_modal),
    ("participle after have or be", participle_after_aux),
    ("verb reading after a subject pronoun", verb_after_pronoun),
    ("finite form after a subject", finite_after_subject),
    ("base form after an inverted modal or do-form", base_after_inversion),
    ("preposition without an object becomes an adverb", stranded_preposition),
];

fn possessive_s(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        if c.lower(i) == "'s" && c.tag(i - 1).is_noun() {
            c.tokens[i].tag = OTHER;
        }
    }
}

fn that_determiner(c: &mut Context<'_>) {
    for i in 0..c.tokens.len() {
        if c.lower(i) == "that" {
            let det = matches!(c.next_tag(i), Some(NN | NNS | JJ));
            c.tokens[i].tag = if det { DT } else { IN };
        }
    }
}

fn her_reading(c: &mut Context<'_>) {
    for i in 0..c.tokens.len() {
        if c.lower(i) == "her" {
            let poss = matches!(c.next_tag(i), Some(NN | NNS | NNP | JJ | CD));
            c.tokens[i].tag = if poss { PRPS } else { PRP };
        }
    }
}

fn noun_after_determiner(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        let p = if c.tag(i - 1) == JJ && i >= 2 { i - 2 } else { i - 1 };
        if !matches!(c.tag(p), DT | PRPS) || c.is(p, &["which", "what", "whose"]) || !c.tag(i).is_verb() {
            continue;
        }
        if c.has(i, NN) {
            c.tokens[i].tag = NN;
        } else if c.has(i, NNS) {
            c.tokens[i].tag = NNS;
        }
    }
}

fn base_after_to(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        let Some(p) = c.prev_skipping_rb(i) else { continue };
        if c.tag(p) == TO && c.has(i, VB) {
            c.tokens[i].tag = VB;
        }
    }
}

fn base_after_modal(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        let Some(p) = c.prev_skipping_rb(i) else { continue };
        let governs = c.tag(p) == MD || (c.is(p, &DO_FORMS) && c.tag(p).is_verb());
        if governs && c.has(i, VB) {
            c.tokens[i].tag = VB;
        }
    }
}

/// "Will my uncle hit me", "Did the man push you": a sentence-initial modal
/// or do-form, a short noun phrase, then the verb.
fn base_after_inversion(c: &mut Context<'_>) {
    if c.tokens.len() < 3 || !(c.tag(0) == MD || (c.is(0, &DO_FORMS) && c.tag(0).is_verb())) {
        return;
    }
    let np_end = (1..c.tokens.len().min(6)).find(|&i| !matches!(c.tag(i), DT | PRPS | PRP | JJ | NN | NNS | NNP | CD));
    let Some(i) = np_end else { return };
    if i >= 2 && c.has(i, VB) {
        c.tokens[i].tag = VB;
    }
}

fn participle_after_aux(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        let Some(p) = c.prev_skipping_rb(i) else { continue };
        if !(c.is(p, &HAVE_FORMS) || c.is(p, &BE_FORMS)) {
            continue;
        }
        if matches!(c.tag(i), VBD | VB) && c.has(i, VBN) {
            c.tokens[i].tag = VBN;
        }
    }
}

fn verb_after_pronoun(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        let Some(p) = c.prev_skipping_rb(i) else { continue };
        if c.tag(p) != PRP || !c.is(p, &NOMINATIVE) || c.tag(i).is_verb() || c.tag(i) == MD {
            continue;
        }
        if let Some(&v) = c.readings[i].iter().find(|t| t.is_verb() && **t != VBG && **t != VBN) {
            c.tokens[i].tag = v;
        }
    }
}

fn finite_after_subject(c: &mut Context<'_>) {
    for i in 1..c.tokens.len() {
        if c.tag(i) != VB {
            continue;
        }
        let Some(p) = c.prev_skipping_rb(i) else { continue };
        let subject = match c.tag(p) {
            PRP => c.is(p, &NOMINATIVE),
            NN | NNS | NNP => true,
            _ => false,
        };
        if !subject {
            continue;
        }
        let singular = c.is(p, &THIRD_SINGULAR) || matches!(c.tag(p), NN | NNP);
        c.tokens[i].tag = if singular && c.has(i, VBD) { VBD } else { VBP };
    }
}

fn stranded_preposition(c: &mut Context<'_>) {
    for i in 0..c.tokens.len() {
        if c.tag(i) != IN || c.is(i, &["that", "because", "if", "while", "after", "before", "though", "although", "until", "unless", "since"]) {
            continue;
        }
        let stranded = match c.next_tag(i) {
            None => true,
            Some(t) => matches!(t, CC | IN | SYM | TO),
        };
        if stranded {
            c.tokens[i].tag = RB;
        }
    }
}
