use unicode_normalization::UnicodeNormalization;

use super::abbrev::abbreviation_prefix;
use super::Token;

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

fn is_joiner(c: char) -> bool {
    c == '-' || is_apostrophe(c)
}

/// Case-folded, NFKC-normalized form of a surface string. Typographic
/// apostrophes fold to ASCII.
pub fn normalize(surface: &str) -> String {
    surface
        .nfkc()
        .flat_map(char::to_lowercase)
        .map(|c| if c == '\u{2019}' { '\'' } else { c })
        .collect()
}

/// Whether `chars[at..]` is a possessive `'s` clitic attached to a word.
fn possessive_at(chunk: &[char], at: usize) -> bool {
    at > 0
        && chunk[at - 1].is_alphanumeric()
        && is_apostrophe(chunk[at])
        && matches!(chunk.get(at + 1), Some('s' | 'S'))
        && chunk.get(at + 2).is_none_or(|c| !c.is_alphanumeric())
}

/// Length of the word starting at `start`.
fn word_len(chunk: &[char], start: usize) -> usize {
    let mut j = start;
    while j < chunk.len() {
        let c = chunk[j];
        if c.is_alphanumeric() {
            j += 1;
            continue;
        }
        let inner = j > start && j + 1 < chunk.len() && chunk[j + 1].is_alphanumeric();
        let joins = inner
            && ((is_joiner(c) && !possessive_at(chunk, j))
                || (matches!(c, '.' | ',') && chunk[j - 1].is_ascii_digit() && chunk[j + 1].is_ascii_digit()));
        if !joins {
            break;
        }
        j += 1;
    }
    j - start
}

/// Split text into tokens. Part-of-speech tags and sentence indexes are left
/// unset.
///
/// Whitespace separates tokens. Inside a whitespace-delimited chunk every
/// punctuation char becomes its own token, except hyphens and apostrophes
/// between alphanumerics, separators inside numbers ("3.5", "1,000") and
/// guarded abbreviations ("U.S."). A possessive `'s` is split off as its
/// own token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let chunk_start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        split_chunk(&chars[chunk_start..i], chunk_start, &mut tokens);
    }
    tokens
}

fn split_chunk(chunk: &[char], offset: usize, out: &mut Vec<Token>) {
    let mut i = 0;
    while i < chunk.len() {
        let len = if chunk[i].is_alphanumeric() {
            abbreviation_prefix(&chunk[i..]).unwrap_or_else(|| word_len(chunk, i))
        } else if possessive_at(chunk, i) {
            2
        } else {
            1
        };
        let surface: String = chunk[i..i + len].iter().collect();
        out.push(Token {
            normalized: normalize(&surface),
            surface,
            pos: None,
            char_offset: offset + i,
            sentence_index: 0,
        });
        i += len;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.surface).collect()
    }

    #[test]
    fn hyphenated_name_stays_whole() {
        assert_eq!(surfaces("Bashar al-Assad ruled."), ["Bashar", "al-Assad", "ruled", "."]);
    }

    #[test]
    fn whitespace_only() {
        assert!(tokenize("  ").is_empty());
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn abbreviations_kept_whole() {
        assert_eq!(surfaces("U.S."), ["U.S."]);
        assert_eq!(surfaces("U.S.,"), ["U.S.", ","]);
        assert_eq!(surfaces("Mr. Smith"), ["Mr.", "Smith"]);
        assert_eq!(surfaces("(e.g. this)"), ["(", "e.g.", "this", ")"]);
    }

    #[test]
    fn numbers_and_possessives() {
        assert_eq!(surfaces("3.5 and 1,000."), ["3.5", "and", "1,000", "."]);
        assert_eq!(surfaces("Assad's sons"), ["Assad", "'s", "sons"]);
        assert_eq!(surfaces("don't"), ["don't"]);
        assert_eq!(surfaces("O'Brien's"), ["O'Brien", "'s"]);
        assert_eq!(surfaces("parents'"), ["parents", "'"]);
        assert_eq!(surfaces("--well--"), ["-", "-", "well", "-", "-"]);
    }

    #[test]
    fn offsets_are_char_indexes() {
        let toks = tokenize("Café au lait, s'il");
        let offs: Vec<usize> = toks.iter().map(|t| t.char_offset).collect();
        assert_eq!(offs, [0, 5, 8, 12, 14]);
        assert_eq!(toks[0].normalized, "café");
    }

    #[test]
    fn normalization_folds_case_and_apostrophe() {
        assert_eq!(normalize("Assad\u{2019}s"), "assad's");
        assert_eq!(normalize("ＡＢＣ"), "abc");
    }
}
