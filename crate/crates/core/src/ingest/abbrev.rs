/// Abbreviations that end in a period but never end a sentence. Stored
/// lowercase with their trailing period.
pub(crate) const ABBREVIATIONS: &[&str] = &[
    "u.s.a.", "e.g.", "i.e.", "u.s.", "u.n.", "u.k.", "mrs.", "sept.", "gov.", "gen.", "sen.",
    "rep.", "mr.", "ms.", "dr.", "jr.", "sr.", "st.", "lt.", "col.", "vs.",
];

/// Length in chars of the guarded abbreviation that `chars` starts with, if
/// any. The abbreviation must not be followed by an alphanumeric char.
pub(crate) fn abbreviation_prefix(chars: &[char]) -> Option<usize> {
    ABBREVIATIONS.iter().find_map(|abbr| {
        let n = abbr.chars().count();
        if chars.len() < n {
            return None;
        }
        let matches = chars[..n]
            .iter()
            .zip(abbr.chars())
            .all(|(c, a)| c.to_lowercase().eq(std::iter::once(a)));
        let bounded = chars.get(n).is_none_or(|c| !c.is_alphanumeric());
        (matches && bounded).then_some(n)
    })
}

pub(crate) fn is_abbreviation(word: &str) -> bool {
    let lower = word.to_lowercase();
    ABBREVIATIONS.contains(&lower.as_str())
}
