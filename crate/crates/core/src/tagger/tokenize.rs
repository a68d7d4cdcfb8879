use super::tag::PosTag;
use super::Token;

const CLITICS: [&str; 6] = ["'d", "'s", "'ll", "'re", "'ve", "'m"];

/// Splits normalized sentence text into tokens. Offsets are character
/// offsets into `text`.
///
/// Whitespace separates chunks; commas and leading/trailing hyphens become
/// their own tokens; `n't` and the apostrophe clitics are detached
/// (`won't` → `wo n't`, `can't` → `ca n't`, `cannot` → `can not`).
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        split_chunk(&chars[start..i], start, &mut tokens);
    }
    tokens
}

fn push(tokens: &mut Vec<Token>, chars: &[char], start: usize) {
    if !chars.is_empty() {
        tokens.push(Token::untagged(chars.iter().collect(), start));
    }
}

fn split_chunk(chunk: &[char], offset: usize, tokens: &mut Vec<Token>) {
    // Commas split a chunk into pieces and are emitted as tokens.
    let mut piece_start = 0;
    for (j, &c) in chunk.iter().enumerate() {
        if c == ',' {
            split_piece(&chunk[piece_start..j], offset + piece_start, tokens);
            push(tokens, &chunk[j..=j], offset + j);
            piece_start = j + 1;
        }
    }
    split_piece(&chunk[piece_start..], offset + piece_start, tokens);
}

fn split_piece(piece: &[char], offset: usize, tokens: &mut Vec<Token>) {
    let mut lo = 0;
    let mut hi = piece.len();
    while lo < hi && piece[lo] == '-' {
        push(tokens, &piece[lo..=lo], offset + lo);
        lo += 1;
    }
    let mut trailing = 0;
    while hi > lo && piece[hi - 1] == '-' {
        hi -= 1;
        trailing += 1;
    }
    split_clitics(&piece[lo..hi], offset + lo, tokens);
    for k in 0..trailing {
        push(tokens, &piece[hi + k..=hi + k], offset + hi + k);
    }
}

fn split_clitics(word: &[char], offset: usize, tokens: &mut Vec<Token>) {
    let lower: String = word.iter().collect::<String>().to_lowercase();
    let n = word.len();
    if n > 3 && lower.ends_with("n't") {
        let cut = if lower == "won't" || lower == "can't" { 2 } else { n - 3 };
        push(tokens, &word[..cut], offset);
        push(tokens, &word[cut..], offset + cut);
        return;
    }
    if lower == "cannot" {
        push(tokens, &word[..3], offset);
        push(tokens, &word[3..], offset + 3);
        return;
    }
    for clitic in CLITICS {
        let len = clitic.chars().count();
        if n > len && lower.ends_with(clitic) {
            push(tokens, &word[..n - len], offset);
            push(tokens, &word[n - len..], offset + n - len);
            return;
        }
    }
    push(tokens, word, offset);
}

/// True for tokens the tagger treats as punctuation.
pub(crate) fn is_punct(surface: &str) -> bool {
    !surface.is_empty() && surface.chars().all(|c| !c.is_alphanumeric() && c != '\'')
}

/// Surface forms of tokens, for quick assertions and debugging.
pub fn surfaces(tokens: &[Token]) -> Vec<&str> {
    tokens.iter().map(|t| t.surface.as_str()).collect()
}

impl Token {
    pub(crate) fn untagged(surface: String, start: usize) -> Self {
        Token { surface, start, tag: PosTag::OTHER, lemma: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clitics_detach() {
        assert_eq!(surfaces(&tokenize("didn't")), ["did", "n't"]);
        assert_eq!(surfaces(&tokenize("she'd flip")), ["she", "'d", "flip"]);
        assert_eq!(surfaces(&tokenize("won't can't cannot")), ["wo", "n't", "ca", "n't", "can", "not"]);
        assert_eq!(surfaces(&tokenize("I'm you're we've he'll It's")), [
            "I", "'m", "you", "'re", "we", "'ve", "he", "'ll", "It", "'s"
        ]);
    }

    #[test]
    fn hyphens_and_commas() {
        assert_eq!(surfaces(&tokenize("run me over")).len(), 3);
        assert_eq!(surfaces(&tokenize("self-defense")), ["self-defense"]);
        assert_eq!(surfaces(&tokenize("club- and")), ["club", "-", "and"]);
        assert_eq!(surfaces(&tokenize("hands, feet")), ["hands", ",", "feet"]);
    }

    #[test]
    fn offsets_are_character_positions() {
        let toks = tokenize("née didn't,x");
        let starts: Vec<usize> = toks.iter().map(|t| t.start).collect();
        assert_eq!(surfaces(&toks), ["née", "did", "n't", ",", "x"]);
        assert_eq!(starts, [0, 4, 7, 10, 11]);
    }

    #[test]
    fn lone_apostrophe_word_is_kept() {
        assert_eq!(surfaces(&tokenize("'s")), ["'s"]);
        assert_eq!(surfaces(&tokenize("n't")), ["n't"]);
    }
}
