use std::collections::{HashMap, HashSet};

use crate::tagger::{PosTag, TagLexicon};

use super::{parse_pairs, ExtractError};

/// Verb lemmatizer: an exception table for irregular forms, then suffix
/// rules checked against a set of known base forms.
///
/// Suffix rules, in order:
/// 1. `-s` forms: `-ies` to `-y` (or `-ie`), `-es` after sibilants and `o`,
///    otherwise drop `-s`; a known base always wins.
/// 2. `-ed` and `-ing` forms: `-ied` to `-y`; a doubled final consonant is
///    undone unless the doubled stem is itself a known base; when both the
///    bare stem and stem + `e` are known, stem + `e` wins for
///    consonant-vowel-consonant stems.
/// 3. Unknown stems get a silent `e` restored after `v`, `u`, `c`, `rg`,
///    `dg`, `lg`, a consonant other than `r` before `l`, and a vowel pair
///    before `s` or `z`.
#[derive(Debug, Clone, Default)]
pub struct LemmaRules {
    exceptions: HashMap<String, String>,
    bases: HashSet<String>,
}

impl LemmaRules {
    pub fn new(exceptions: HashMap<String, String>, bases: impl IntoIterator<Item = String>) -> Self {
        Self { exceptions, bases: bases.into_iter().collect() }
    }

    /// Exceptions from a `form<TAB>lemma` table. Known bases are the verb
    /// list (one lemma per line) plus the lexicon's base-form verbs.
    pub fn from_tables(exceptions: &str, verb_lemmas: &str, lexicon: &TagLexicon) -> Result<Self, ExtractError> {
        let exceptions = parse_pairs("lemma exceptions", exceptions)?.into_iter().collect();
        let listed = verb_lemmas
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase);
        Ok(Self::new(exceptions, listed.chain(lexicon.verb_bases().map(str::to_string))))
    }

    pub fn exception(&self, word: &str) -> Option<&str> {
        self.exceptions.get(word).map(String::as_str)
    }

    pub fn is_base(&self, word: &str) -> bool {
        self.bases.contains(word)
    }

    /// Lowercase lemma of a tagged word. Non-verbs are lowercased, with
    /// plural nouns reduced to the singular.
    pub fn lemmatize(&self, word: &str, tag: PosTag) -> String {
        let w = word.to_lowercase();
        match tag {
            PosTag::VB | PosTag::VBP => {
                if self.bases.contains(&w) {
                    w
                } else {
                    self.exceptions.get(&w).cloned().unwrap_or(w)
                }
            }
            PosTag::VBZ | PosTag::VBD | PosTag::VBN | PosTag::VBG => {
                if let Some(l) = self.exceptions.get(&w) {
                    return l.clone();
                }
                match tag {
                    PosTag::VBZ => self.strip_s(&w),
                    PosTag::VBG => self.strip_suffix(&w, "ing"),
                    _ => self.strip_suffix(&w, "ed"),
                }
            }
            PosTag::NNS => singular(&w),
            _ => w,
        }
    }

    fn strip_s(&self, w: &str) -> String {
        if let Some(stem) = w.strip_suffix("ies") {
            let y = format!("{stem}y");
            let ie = format!("{stem}ie");
            if !self.bases.contains(&y) && self.bases.contains(&ie) {
                return ie;
            }
            return y;
        }
        let Some(no_s) = w.strip_suffix('s') else { return w.to_string() };
        if self.bases.contains(no_s) {
            return no_s.to_string();
        }
        if let Some(no_es) = w.strip_suffix("es") {
            if self.bases.contains(no_es) || ["ch", "sh", "ss", "x", "z", "o"].iter().any(|e| no_es.ends_with(e)) {
                return no_es.to_string();
            }
        }
        no_s.to_string()
    }

    fn strip_suffix(&self, w: &str, suffix: &str) -> String {
        let Some(stem) = w.strip_suffix(suffix) else { return w.to_string() };
        if stem.len() < 2 {
            return w.to_string();
        }
        if suffix == "ed" {
            if let Some(s) = stem.strip_suffix('i') {
                return format!("{s}y");
            }
        }
        if suffix == "ing" {
            if let Some(s) = stem.strip_suffix('y') {
                let ie = format!("{s}ie");
                if self.bases.contains(&ie) {
                    return ie;
                }
            }
        }
        let chars: Vec<char> = stem.chars().collect();
        let n = chars.len();
        if n >= 3 && chars[n - 1] == chars[n - 2] && !is_vowel(chars[n - 1]) {
            let undone: String = chars[..n - 1].iter().collect();
            if self.bases.contains(stem) {
                return stem.to_string();
            }
            if self.bases.contains(&undone) || !matches!(chars[n - 1], 'l' | 's' | 'z' | 'f') {
                return undone;
            }
            return stem.to_string();
        }
        let with_e = format!("{stem}e");
        match (self.bases.contains(stem), self.bases.contains(&with_e)) {
            (true, true) => {
                if is_cvc(&chars) {
                    with_e
                } else {
                    stem.to_string()
                }
            }
            (true, false) => stem.to_string(),
            (false, true) => with_e,
            (false, false) => {
                if needs_silent_e(&chars) {
                    with_e
                } else {
                    stem.to_string()
                }
            }
        }
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn is_cvc(chars: &[char]) -> bool {
    let n = chars.len();
    n >= 3 && !is_vowel(chars[n - 3]) && is_vowel(chars[n - 2]) && !is_vowel(chars[n - 1]) && !matches!(chars[n - 1], 'w' | 'x' | 'y')
}

fn needs_silent_e(chars: &[char]) -> bool {
    let n = chars.len();
    let last = chars[n - 1];
    let prev = chars[n - 2];
    match last {
        'v' | 'u' | 'c' => true,
        'g' => matches!(prev, 'r' | 'd' | 'l'),
        'l' => !is_vowel(prev) && prev != 'r' && prev != 'l',
        's' | 'z' => n >= 3 && is_vowel(prev) && is_vowel(chars[n - 3]),
        _ => false,
    }
}

fn singular(w: &str) -> String {
    if w.ends_with("ss") || w.len() <= 3 {
        return w.to_string();
    }
    if let Some(stem) = w.strip_suffix("ies") {
        return format!("{stem}y");
    }
    if let Some(stem) = w.strip_suffix("es") {
        if ["ch", "sh", "ss", "x"].iter().any(|e| stem.ends_with(e)) {
            return stem.to_string();
        }
    }
    w.strip_suffix('s').unwrap_or(w).to_string()
}
