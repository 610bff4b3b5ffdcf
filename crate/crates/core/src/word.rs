//! Alphabets and words.
//!
//! A [`Word`] stores symbol indices into an [`Alphabet`]; the alphabet owns
//! the symbol names and handles parsing and rendering. Words order shortlex
//! (length first, then lexicographically by alphabet position).

use std::cmp::Ordering;
use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("alphabet symbols must be non-empty strings")]
    EmptySymbol,
    #[error("duplicate alphabet symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("symbol index {index} is outside an alphabet of size {size}")]
    ForeignSymbol { index: usize, size: usize },
}

/// A finite, ordered set of distinct symbol names.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: IndexSet<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = IndexSet::new();
        for sym in symbols {
            let sym = sym.into();
            if sym.is_empty() {
                return Err(WordError::EmptySymbol);
            }
            if !set.insert(sym.clone()) {
                return Err(WordError::DuplicateSymbol(sym));
            }
        }
        if set.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Alphabet { symbols: set })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self, WordError> {
        Alphabet::new(chars.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, index: usize) -> Option<&str> {
        self.symbols.get_index(index).map(String::as_str)
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.get_index_of(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    /// Every symbol as a one-letter word, in alphabet order.
    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.len()
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Symbols are comma-separated; when every symbol is a
    /// single character, plain concatenation (`"aba"`) is also accepted. The
    /// empty string and `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let lookup = |s: &str| {
            self.index_of(s)
                .ok_or_else(|| WordError::UnknownSymbol(s.to_string()))
        };
        if text.contains(',') || !self.single_char() {
            return text.split(',').map(|s| lookup(s.trim())).collect();
        }
        text.chars().map(|c| lookup(c.encode_utf8(&mut [0; 4]))).collect()
    }

    /// Parses a word given as an explicit list of symbol names.
    pub fn word_from_symbols<I, S>(&self, symbols: I) -> Result<Word, WordError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        symbols
            .into_iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| WordError::UnknownSymbol(s.as_ref().to_string()))
            })
            .collect()
    }

    /// Symbol names of `word`, in order.
    pub fn symbol_names<'a>(&'a self, word: &'a Word) -> Result<Vec<&'a str>, WordError> {
        word.iter()
            .map(|i| {
                self.symbol(i).ok_or(WordError::ForeignSymbol {
                    index: i,
                    size: self.len(),
                })
            })
            .collect()
    }

    /// Human-readable form: `ε`, `aba` for single-character alphabets, or
    /// `sym1,sym2` otherwise.
    pub fn render(&self, word: &Word) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { "," };
        word.iter()
            .map(|i| self.symbol(i).unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Fails if `word` uses an index outside this alphabet.
    pub fn check(&self, word: &Word) -> Result<(), WordError> {
        match word.iter().find(|&i| i >= self.len()) {
            Some(index) => Err(WordError::ForeignSymbol {
                index,
                size: self.len(),
            }),
            None => Ok(()),
        }
    }

    /// All words of length at most `max_len`, in shortlex order.
    pub fn words_up_to(&self, max_len: usize) -> ShortlexWords {
        ShortlexWords {
            radix: self.len(),
            max_len,
            next: Some(Word::empty()),
        }
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.symbols.iter()).finish()
    }
}

/// A finite sequence of symbol indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_indices(symbols: Vec<usize>) -> Word {
        Word(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self · σ`.
    pub fn push(&self, symbol: usize) -> Word {
        let mut v = self.0.clone();
        v.push(symbol);
        Word(v)
    }

    /// `σ · self`.
    pub fn prepend(&self, symbol: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(symbol);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.len() - len..].to_vec())
    }

    /// Prefix without its last symbol, if any.
    pub fn parent(&self) -> Option<Word> {
        (!self.is_empty()).then(|| self.prefix(self.len() - 1))
    }

    /// Every suffix, shortest first, from `ε` up to the word itself.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(|k| self.suffix(k))
    }

    /// Every prefix, shortest first, from `ε` up to the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(|k| self.prefix(k))
    }

    pub fn repeat(symbol: usize, times: usize) -> Word {
        Word(vec![symbol; times])
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Shortlex enumeration of all words up to a length bound.
#[derive(Debug, Clone)]
pub struct ShortlexWords {
    radix: usize,
    max_len: usize,
    next: Option<Word>,
}

impl Iterator for ShortlexWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        if current.len() > self.max_len {
            return None;
        }
        // Odometer increment; wrap to the next length when every digit overflows.
        let mut digits = current.0.clone();
        let mut pos = digits.len();
        let successor = loop {
            if pos == 0 {
                break Word(vec![0; digits.len() + 1]);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < self.radix {
                break Word(digits);
            }
            digits[pos] = 0;
        };
        if successor.len() <= self.max_len {
            self.next = Some(successor);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(WordError::EmptyAlphabet));
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(WordError::DuplicateSymbol("a".into()))
        );
        assert_eq!(Alphabet::new(["a", ""]), Err(WordError::EmptySymbol));
    }

    #[test]
    fn parse_and_render() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let w = ab.parse_word("aba").unwrap();
        assert_eq!(w, Word::from_indices(vec![0, 1, 0]));
        assert_eq!(ab.parse_word("a,b,a").unwrap(), w);
        assert_eq!(ab.render(&w), "aba");
        assert_eq!(ab.parse_word("").unwrap(), Word::empty());
        assert_eq!(ab.parse_word("ε").unwrap(), Word::empty());
        assert!(ab.parse_word("abc").is_err());

        let multi = Alphabet::new(["go", "stop"]).unwrap();
        let w = multi.parse_word("go,stop,go").unwrap();
        assert_eq!(multi.render(&w), "go,stop,go");
        assert!(multi.parse_word("gostop").is_err());
    }

    #[test]
    fn shortlex_order_and_enumeration() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let words: Vec<String> = ab.words_up_to(2).map(|w| ab.render(&w)).collect();
        assert_eq!(words, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(ab.words_up_to(0).count(), 1);
        let abc = Alphabet::from_chars("abc").unwrap();
        assert_eq!(abc.words_up_to(3).count(), 1 + 3 + 9 + 27);
        let all: Vec<Word> = abc.words_up_to(3).collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn suffixes_shortest_first() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let w = ab.parse_word("aba").unwrap();
        let sufs: Vec<String> = w.suffixes().map(|s| ab.render(&s)).collect();
        assert_eq!(sufs, ["ε", "a", "ba", "aba"]);
    }

    #[test]
    fn foreign_symbols_detected() {
        let ab = Alphabet::from_chars("ab").unwrap();
        assert!(ab.check(&Word::from_indices(vec![0, 2])).is_err());
        assert!(ab.check(&Word::from_indices(vec![1, 0])).is_ok());
    }
}
