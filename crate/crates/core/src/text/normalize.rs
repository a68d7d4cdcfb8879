use std::ops::Range;

use super::segment::is_quote;

/// Removes every character outside letters, digits, whitespace, apostrophes,
/// hyphens and sentence-internal commas. Curly apostrophes become `'`.
pub fn strip_specials(text: &str) -> String {
    strip_specials_mapped(text).0
}

/// As [`strip_specials`], also returning for each output character the index
/// of the input character it came from.
pub fn strip_specials_mapped(text: &str) -> (String, Vec<usize>) {
    let chars: Vec<char> = text.chars().collect();
    let last_alnum = chars.iter().rposition(|c| c.is_alphanumeric());
    let mut out = String::with_capacity(text.len());
    let mut map = Vec::with_capacity(chars.len());
    for (i, &c) in chars.iter().enumerate() {
        let kept = match c {
            '\u{2019}' | '\u{2018}' => Some('\''),
            ',' => last_alnum.is_some_and(|l| i < l).then_some(','),
            c if c.is_alphanumeric() || c.is_whitespace() || c == '\'' || c == '-' => Some(c),
            _ => None,
        };
        if let Some(k) = kept {
            out.push(k);
            map.push(i);
        }
    }
    (out, map)
}

/// Character ranges strictly between paired double quotes. Quotes pair in
/// order of appearance; an unmatched opening quote runs to the end.
pub fn mark_quoted_spans(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut open: Option<usize> = None;
    let mut len = 0;
    for (i, c) in text.chars().enumerate() {
        len = i + 1;
        if !is_quote(c) {
            continue;
        }
        match open.take() {
            Some(start) => spans.push(start..i),
            None => open = Some(i + 1),
        }
    }
    if let Some(start) = open {
        spans.push(start..len);
    }
    spans.retain(|r| !r.is_empty());
    spans
}

/// Projects raw-text ranges onto the stripped text using the map from
/// [`strip_specials_mapped`].
pub(crate) fn project_ranges(ranges: &[Range<usize>], map: &[usize]) -> Vec<Range<usize>> {
    ranges
        .iter()
        .filter_map(|r| {
            let lo = map.partition_point(|&m| m < r.start);
            let hi = map.partition_point(|&m| m < r.end);
            (lo < hi).then_some(lo..hi)
        })
        .collect()
}
