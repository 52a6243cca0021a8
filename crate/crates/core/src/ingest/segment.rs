use super::abbrev::is_abbreviation;
use super::Sentence;

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '"' | '\'' | '\u{201d}' | '\u{2019}' | ')' | ']')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '\u{201c}' | '\u{2018}' | '(' | '[')
}

fn starts_sentence(chars: &[char], at: usize) -> bool {
    let mut i = at;
    while i < chars.len() && is_opener(chars[i]) {
        i += 1;
    }
    chars
        .get(i)
        .is_some_and(|c| c.is_uppercase() || c.is_ascii_digit())
}

/// Whether the period at `dot` closes a guarded abbreviation or an initial.
fn guarded(chars: &[char], dot: usize) -> bool {
    let mut start = dot;
    while start > 0 && !chars[start - 1].is_whitespace() {
        start -= 1;
    }
    while start < dot && !chars[start].is_alphanumeric() {
        start += 1;
    }
    let word: String = chars[start..=dot].iter().collect();
    if is_abbreviation(&word) {
        return true;
    }
    // Single-letter initial such as "J."
    dot - start == 1 && chars[start].is_uppercase()
}

/// Split `text` into sentences.
///
/// A boundary falls after `.`, `!` or `?` (plus any closing quotes or
/// brackets) when followed by whitespace and then an uppercase letter or a
/// digit. Periods closing a guarded abbreviation never split.
pub fn segment_sentences(text: &str) -> Vec<Sentence> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut start = match chars.iter().position(|c| !c.is_whitespace()) {
        Some(s) => s,
        None => return sentences,
    };

    let mut i = start;
    while i < chars.len() {
        if !is_terminal(chars[i]) {
            i += 1;
            continue;
        }
        let mut end = i + 1;
        while end < chars.len() && is_closer(chars[end]) {
            end += 1;
        }
        let followed_by_space = chars.get(end).is_some_and(|c| c.is_whitespace());
        if !followed_by_space || (chars[i] == '.' && guarded(&chars, i)) {
            i = end;
            continue;
        }
        let mut next = end;
        while next < chars.len() && chars[next].is_whitespace() {
            next += 1;
        }
        if next < chars.len() && starts_sentence(&chars, next) {
            sentences.push(Sentence {
                index: sentences.len(),
                char_span: [start, end],
                token_span: [0, 0],
            });
            start = next;
        }
        i = next;
    }

    let mut last = chars.len();
    while last > start && chars[last - 1].is_whitespace() {
        last -= 1;
    }
    if last > start {
        sentences.push(Sentence {
            index: sentences.len(),
            char_span: [start, last],
            token_span: [0, 0],
        });
    }
    sentences
}
