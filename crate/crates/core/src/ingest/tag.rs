use super::{Pos, Token};

const DETERMINERS: &[&str] = &[
    "the", "a", "an", "this", "that", "these", "those", "his", "her", "its", "their", "our", "my",
    "your", "some", "any", "each", "every", "no", "another", "both", "either", "neither",
];

const ADPOSITIONS: &[&str] = &[
    "of", "in", "on", "for", "with", "at", "by", "from", "to", "into", "onto", "over", "under",
    "about", "after", "before", "during", "between", "against", "through", "without", "within",
    "among", "across", "since", "until", "near", "per", "via", "amid", "toward", "towards", "upon",
    "despite", "behind", "beyond", "inside", "outside", "throughout", "around",
];

const VERBS: &[&str] = &[
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have", "had", "do", "does",
    "did", "will", "would", "shall", "should", "can", "could", "may", "might", "must", "said",
    "says", "say", "met", "made", "make", "took", "take", "told", "tell", "went", "go", "came",
    "come", "got", "get", "saw", "see", "left", "gave", "give", "found", "find", "held", "hold",
    "began", "begin", "won", "lost", "fled", "sent", "led", "ran", "became", "become", "knew",
    "know", "thought", "brought", "kept", "stood", "fell", "spoke", "wrote", "chose", "drove",
    "rose", "meets", "makes", "takes", "leads", "wants", "seeks", "calls", "rules",
];

/// Function words that head no noun phrase: pronouns, conjunctions,
/// adverbs, particles and the possessive clitic.
const OTHERS: &[&str] = &[
    "and", "or", "but", "nor", "so", "yet", "if", "than", "as", "because", "while", "although",
    "though", "whether", "when", "where", "which", "who", "whom", "whose", "what", "why", "how",
    "he", "she", "it", "they", "we", "i", "you", "him", "them", "us", "me", "himself", "herself",
    "itself", "themselves", "not", "also", "very", "too", "only", "just", "then", "there", "here",
    "now", "still", "already", "never", "ever", "again", "however", "'s", "'", "s", "up", "out",
    "off", "down", "away", "back", "more", "most", "less", "least", "such",
];

const ADJECTIVES: &[&str] = &[
    "eldest", "oldest", "youngest", "new", "old", "young", "former", "big", "small", "large",
    "great", "good", "bad", "high", "low", "long", "short", "early", "late", "first", "last",
    "next", "major", "minor", "senior", "junior", "foreign", "military", "civil", "human", "chief",
    "top", "key", "main", "local", "free", "open", "full", "whole", "many", "few", "several",
    "other", "same", "own", "deputy", "acting", "interim", "exiled", "elected",
];

/// Nouns that a suffix rule would otherwise misread.
const NOUN_EXCEPTIONS: &[&str] = &[
    "morning", "evening", "building", "meeting", "thing", "something", "nothing", "everything",
    "anything", "wedding", "ceiling", "hundred", "bed", "need", "seed", "speed", "creed", "greed",
];

const ADJ_SUFFIXES: &[&str] = &["ous", "ful", "ive", "al"];
const VERB_SUFFIXES: &[&str] = &["ed", "ing"];

fn has_suffix(word: &str, suffixes: &[&str]) -> bool {
    // Require a stem of at least three chars so "king" or "bed" stay nouns.
    let n = word.chars().count();
    suffixes
        .iter()
        .any(|s| word.ends_with(s) && n >= s.chars().count() + 3)
}

fn is_number(word: &str) -> bool {
    let mut chars = word.chars();
    if !chars.next().is_some_and(|c| c.is_ascii_digit()) {
        return false;
    }
    let digits_end = word
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || matches!(c, '.' | ',' | ':' | '/' | '-')))
        .map_or(word.len(), |(i, _)| i);
    matches!(&word[digits_end..], "" | "s" | "st" | "nd" | "rd" | "th")
}

/// Tag one token given whether it opens its sentence.
pub fn tag_word(surface: &str, normalized: &str, sentence_initial: bool) -> Pos {
    if !surface.chars().any(char::is_alphanumeric) {
        return Pos::Punct;
    }
    if is_number(normalized) {
        return Pos::Num;
    }
    let w = normalized;
    if DETERMINERS.contains(&w) {
        return Pos::Det;
    }
    if ADPOSITIONS.contains(&w) {
        return Pos::Adp;
    }
    if VERBS.contains(&w) {
        return Pos::Verb;
    }
    if OTHERS.contains(&w) {
        return Pos::Other;
    }
    if !sentence_initial && surface.chars().next().is_some_and(char::is_uppercase) {
        return Pos::Propn;
    }
    if ADJECTIVES.contains(&w) {
        return Pos::Adj;
    }
    if NOUN_EXCEPTIONS.contains(&w) {
        return Pos::Noun;
    }
    if has_suffix(w, ADJ_SUFFIXES) {
        return Pos::Adj;
    }
    if has_suffix(w, VERB_SUFFIXES) {
        return Pos::Verb;
    }
    Pos::Noun
}

/// Assign coarse part-of-speech tags with deterministic rules.
///
/// Rule order: punctuation class, number pattern, closed-class lexicons,
/// capitalization (non-sentence-initial words become PROPN), adjective
/// lexicon, suffix heuristics, and NOUN as the fallback. The first
/// non-punctuation token of each sentence counts as sentence-initial.
pub fn tag_pos(mut tokens: Vec<Token>) -> Vec<Token> {
    let mut current_sentence = None;
    let mut seen_word = false;
    for tok in &mut tokens {
        if current_sentence != Some(tok.sentence_index) {
            current_sentence = Some(tok.sentence_index);
            seen_word = false;
        }
        let pos = tag_word(&tok.surface, &tok.normalized, !seen_word);
        if pos != Pos::Punct {
            seen_word = true;
        }
        tok.pos = Some(pos);
    }
    tokens
}
