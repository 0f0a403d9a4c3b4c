use alloc::string::String;

/// Trims, collapses internal whitespace and lowercases a concept or adverb
/// token, so that `"  Lung   Cancer "` and `"lung cancer"` are the same key.
pub fn canonicalize(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for word in raw.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.extend(word.chars().flat_map(char::to_lowercase));
    }
    out
}
