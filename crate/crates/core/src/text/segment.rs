use std::collections::HashSet;
use std::ops::Range;

const TERMINATORS: [char; 3] = ['.', '!', '?'];

pub(crate) fn is_quote(c: char) -> bool {
    matches!(c, '"' | '\u{201C}' | '\u{201D}')
}

/// Words that end in a period without ending a sentence ("Mr.", "Dr.").
#[derive(Debug, Clone, Default)]
pub struct Abbreviations {
    words: HashSet<String>,
}

impl Abbreviations {
    /// One abbreviation per line, `#` comments. The trailing period is optional.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.trim_end_matches('.').to_lowercase())
            .collect();
        Self { words }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.trim_end_matches('.').to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// A sentence-sized slice of the raw message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSpan {
    pub text: String,
    /// Character range within the message.
    pub range: Range<usize>,
}

/// Splits raw text at `.`, `!`, `?` and newlines.
///
/// A run of terminators ends one sentence. A period does not split after a
/// listed abbreviation or when it is not followed by whitespace, a quote, a
/// closing bracket or the end of text (so "23.79" and "e.g." stay whole).
/// Terminators inside a double-quoted region closed on the same line do not
/// split; a closing quote right after a terminator splits when an uppercase
/// letter or the end of text follows. Pieces that are only whitespace are
/// dropped.
pub fn split_spans(text: &str, abbreviations: &Abbreviations) -> Vec<SentenceSpan> {
    let chars: Vec<char> = text.chars().collect();
    let mut cuts: Vec<(usize, usize)> = Vec::new(); // (end of sentence, start of next)
    let mut in_quote = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            in_quote = false;
            cuts.push((i, i + 1));
            i += 1;
            continue;
        }
        if is_quote(c) {
            if in_quote {
                in_quote = false;
                let before = chars[..i].iter().rev().find(|c| !c.is_whitespace());
                if before.is_some_and(|b| TERMINATORS.contains(b)) && uppercase_or_end_follows(&chars, i + 1) {
                    cuts.push((i + 1, i + 1));
                }
            } else if closes_on_line(&chars, i + 1) {
                in_quote = true;
            }
            i += 1;
            continue;
        }
        if in_quote || !TERMINATORS.contains(&c) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j < chars.len() && TERMINATORS.contains(&chars[j]) {
            j += 1;
        }
        let single_period = j == i + 1 && c == '.';
        if single_period && !period_ends_sentence(&chars, i, abbreviations) {
            i = j;
            continue;
        }
        while j < chars.len() && matches!(chars[j], ')' | ']') {
            j += 1;
        }
        cuts.push((j, j));
        i = j;
    }

    let mut spans = Vec::new();
    let mut start = 0;
    for (end, next) in cuts.into_iter().chain(std::iter::once((chars.len(), chars.len()))) {
        if end > start {
            push_trimmed(&chars, start..end, &mut spans);
        }
        start = start.max(next);
    }
    spans
}

fn push_trimmed(chars: &[char], range: Range<usize>, out: &mut Vec<SentenceSpan>) {
    let mut lo = range.start;
    let mut hi = range.end;
    while lo < hi && chars[lo].is_whitespace() {
        lo += 1;
    }
    while hi > lo && chars[hi - 1].is_whitespace() {
        hi -= 1;
    }
    if lo < hi {
        out.push(SentenceSpan { text: chars[lo..hi].iter().collect(), range: lo..hi });
    }
}

fn closes_on_line(chars: &[char], from: usize) -> bool {
    chars[from..].iter().take_while(|&&c| c != '\n').any(|&c| is_quote(c))
}

fn uppercase_or_end_follows(chars: &[char], from: usize) -> bool {
    match chars[from..].iter().find(|c| !c.is_whitespace()) {
        None => true,
        Some(c) => c.is_uppercase(),
    }
}

fn period_ends_sentence(chars: &[char], at: usize, abbreviations: &Abbreviations) -> bool {
    let next = chars.get(at + 1).copied();
    let boundary_follows = match next {
        None => true,
        Some(n) => n.is_whitespace() || is_quote(n) || matches!(n, ')' | ']'),
    };
    if !boundary_follows {
        return false;
    }
    let word_start = chars[..at].iter().rposition(|c| c.is_whitespace() || *c == '(').map_or(0, |p| p + 1);
    let word: String = chars[word_start..=at].iter().collect();
    !abbreviations.contains(&word)
}
