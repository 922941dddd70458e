//! Words over an interned alphabet.
//!
//! A symbol is an index into the owning presentation's alphabet; a word is a
//! plain vector of symbols. Lexicographic order everywhere is the order of
//! the alphabet indices, which document loading keeps stable, so all
//! tie-breaks in the crate are reproducible.

pub type Sym = u32;
pub type Word = Vec<Sym>;

/// Render a word through an alphabet for messages and reports.
pub fn render(word: &[Sym], alphabet: &[String]) -> Vec<String> {
    word.iter().map(|&s| alphabet[s as usize].clone()).collect()
}

/// All words of the given length over `0..k`, lexicographic. Used by
/// brute-force oracles in tests; keep lengths small.
pub fn all_words(k: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * k);
        for w in &out {
            for s in 0..k {
                let mut v = w.clone();
                v.push(s as Sym);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// True when `needle` occurs in `haystack` as a contiguous subword.
pub fn contains(haystack: &[Sym], needle: &[Sym]) -> bool {
    if needle.is_empty() {
        return true;
    }
    if needle.len() > haystack.len() {
        return false;
    }
    haystack.windows(needle.len()).any(|w| w == needle)
}
