//! Ordered alphabets and word utilities.
//!
//! A [`Sym`] is the rank of a symbol inside its [`OrderedAlphabet`], so the
//! derived `Ord` on `Sym` *is* the alphabet order. Reordering an alphabet
//! therefore means relabelling the automaton that uses it (see
//! [`crate::Automaton::with_alphabet_order`]).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Token reserved for the label of the initial state.
pub const INITIAL_MARKER: &str = "#";

/// A symbol, identified by its rank in the owning alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u32);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word; the empty vector is ε.
pub type Word = Vec<Sym>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("duplicate symbol `{0}`")]
    Duplicate(String),
    #[error("symbol `#` is reserved for the initial state")]
    Reserved,
    #[error("symbol `{0}` contains whitespace or is empty")]
    Malformed(String),
    #[error("unknown symbol `{0}`")]
    Unknown(String),
}

/// The alphabet Σ together with its total order; the listed order is the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAlphabet {
    symbols: Vec<String>,
    position: HashMap<String, Sym>,
}

impl OrderedAlphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = OrderedAlphabet {
            symbols: Vec::new(),
            position: HashMap::new(),
        };
        for s in symbols {
            out.push(s.into())?;
        }
        Ok(out)
    }

    /// Appends a new largest symbol.
    pub fn push(&mut self, symbol: String) -> Result<Sym, AlphabetError> {
        if symbol.is_empty() || symbol.chars().any(char::is_whitespace) {
            return Err(AlphabetError::Malformed(symbol));
        }
        if symbol == INITIAL_MARKER {
            return Err(AlphabetError::Reserved);
        }
        if self.position.contains_key(&symbol) {
            return Err(AlphabetError::Duplicate(symbol));
        }
        let sym = Sym(self.symbols.len() as u32);
        self.position.insert(symbol.clone(), sym);
        self.symbols.push(symbol);
        Ok(sym)
    }

    /// Mints a symbol named `base`, or `base!`, `base!!`, ... if taken.
    pub fn push_fresh(&mut self, base: &str) -> Sym {
        let mut name = base.to_string();
        while self.position.contains_key(&name) {
            name.push('!');
        }
        self.push(name).expect("fresh symbol names are well formed")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.symbols.len() as u32).map(Sym)
    }

    pub fn name(&self, sym: Sym) -> &str {
        &self.symbols[sym.index()]
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.position.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position.contains_key(name)
    }

    fn single_char_tokens(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read one symbol per
    /// character (`"dcf"`); otherwise symbols are whitespace separated.
    /// `""` and `"ε"` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlphabetError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        if self.single_char_tokens() && !text.contains(char::is_whitespace) {
            text.chars()
                .map(|c| {
                    let s = c.to_string();
                    self.sym(&s).ok_or(AlphabetError::Unknown(s))
                })
                .collect()
        } else {
            text.split_whitespace()
                .map(|s| self.sym(s).ok_or_else(|| AlphabetError::Unknown(s.to_string())))
                .collect()
        }
    }

    /// Renders a word in the form accepted by [`OrderedAlphabet::parse_word`].
    pub fn render(&self, word: &[Sym]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char_tokens() { "" } else { " " };
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(" < "))
    }
}

/// Co-lexicographic comparison: compare the reversed words lexicographically.
pub fn colex_compare(alpha: &[Sym], beta: &[Sym]) -> Ordering {
    alpha.iter().rev().cmp(beta.iter().rev())
}

/// Wrapper ordering words co-lexicographically, handy as a sort key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Colex<'a>(pub &'a [Sym]);

impl PartialOrd for Colex<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Colex<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        colex_compare(self.0, other.0)
    }
}

/// `alpha ⊣ beta`: alpha is a suffix of beta.
pub fn is_suffix(alpha: &[Sym], beta: &[Sym]) -> bool {
    beta.ends_with(alpha)
}

/// True iff `word` is not `β^i` for some `β ≠ ε`, `i > 1`. `None` for ε.
pub fn is_primitive(word: &[Sym]) -> Option<bool> {
    let n = word.len();
    if n == 0 {
        return None;
    }
    for period in 1..n {
        if n.is_multiple_of(period) && (period..n).all(|i| word[i] == word[i - period]) {
            return Some(false);
        }
    }
    Some(true)
}

/// `word^times`.
pub fn power(word: &[Sym], times: usize) -> Word {
    let mut out = Vec::with_capacity(word.len() * times);
    for _ in 0..times {
        out.extend_from_slice(word);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acdf() -> OrderedAlphabet {
        OrderedAlphabet::new(["a", "c", "d", "f"]).unwrap()
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert_eq!(
            OrderedAlphabet::new(["a", "a"]),
            Err(AlphabetError::Duplicate("a".into()))
        );
        assert_eq!(OrderedAlphabet::new(["#"]), Err(AlphabetError::Reserved));
        assert!(OrderedAlphabet::new(["a b"]).is_err());
    }

    #[test]
    fn colex_examples() {
        let s = acdf();
        let w = |t: &str| s.parse_word(t).unwrap();
        assert_eq!(colex_compare(&w("ac"), &w("dc")), Ordering::Less);
        assert_eq!(colex_compare(&w(""), &w("a")), Ordering::Less);
        assert_eq!(colex_compare(&w("acc"), &w("dc")), Ordering::Less);
        assert_eq!(colex_compare(&w("dcc"), &w("dc")), Ordering::Less);
        assert_eq!(colex_compare(&w("dcf"), &w("df")), Ordering::Less);
        assert_eq!(colex_compare(&w("dcf"), &w("dcf")), Ordering::Equal);
    }

    #[test]
    fn suffix_and_primitive() {
        let s = OrderedAlphabet::new(["a", "b"]).unwrap();
        let w = |t: &str| s.parse_word(t).unwrap();
        assert!(is_suffix(&w(""), &w("ab")));
        assert!(is_suffix(&w("b"), &w("ab")));
        assert!(!is_suffix(&w("a"), &w("ab")));
        assert_eq!(is_primitive(&w("aba")), Some(true));
        assert_eq!(is_primitive(&w("abab")), Some(false));
        assert_eq!(is_primitive(&w("aaa")), Some(false));
        assert_eq!(is_primitive(&w("")), None);
    }

    #[test]
    fn multi_char_tokens_render_with_spaces() {
        let mut s = OrderedAlphabet::new(["a", "b"]).unwrap();
        let x = s.push_fresh("a");
        assert_eq!(s.name(x), "a!");
        let w = vec![Sym(0), x];
        assert_eq!(s.render(&w), "a a!");
        assert_eq!(s.parse_word("a a!").unwrap(), w);
    }
}
