//! Alphabets and finite words.
//!
//! Letters are dense indices `0..k`. Words are stored in reading order, so
//! position 0 is the first letter an automaton consumes. For the binary
//! odometer this is the lowest digit.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Letter = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        let mut seen = HashSet::new();
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The alphabet `{0, 1, ..., k-1}` with decimal symbols.
    pub fn numeric(k: usize) -> Result<Self> {
        Self::new((0..k).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.symbols[letter]
    }

    pub fn letter(&self, symbol: &str) -> Result<Letter> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownLetter(symbol.to_string()))
    }

    fn single_char_symbols(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. When every symbol is a single character the word is read
    /// character by character (`"0110"`); otherwise it must be whitespace
    /// separated. The empty string and `ε` both denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let letters = if self.single_char_symbols() && !text.contains(char::is_whitespace) {
            text.chars()
                .map(|c| self.letter(c.encode_utf8(&mut [0u8; 4])))
                .collect::<Result<Vec<_>>>()?
        } else {
            text.split_whitespace()
                .map(|tok| self.letter(tok))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Word(letters))
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if self.single_char_symbols() {
            word.iter().map(|&x| self.symbols[x].as_str()).collect()
        } else {
            word.iter()
                .map(|&x| self.symbols[x].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn check_word(&self, word: &[Letter]) -> Result<()> {
        match word.iter().find(|&&x| x >= self.size()) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                size: self.size(),
            }),
            None => Ok(()),
        }
    }

    /// All words of the given length, ordered by [`Word::rank`].
    pub fn words(&self, length: usize) -> impl Iterator<Item = Word> {
        let k = self.size();
        let total = k
            .checked_pow(length as u32)
            .expect("level too large to enumerate");
        (0..total).map(move |rank| Word::from_rank(rank, k, length))
    }
}

/// A finite word over some alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// The prefix formed by the first `l` letters (the whole word if shorter).
    pub fn prefix(&self, l: usize) -> Word {
        Word(self.0[..l.min(self.0.len())].to_vec())
    }

    /// Base-`k` value with the first letter as the lowest digit.
    pub fn rank(&self, k: usize) -> usize {
        self.0.iter().rev().fold(0, |acc, &x| acc * k + x)
    }

    pub fn from_rank(mut rank: usize, k: usize, length: usize) -> Word {
        let mut letters = Vec::with_capacity(length);
        for _ in 0..length {
            letters.push(rank % k);
            rank /= k;
        }
        Word(letters)
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(other);
        Word(letters)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    /// Formats letters as decimal indices; use [`Alphabet::format_word`] for symbols.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.0.iter().all(|&x| x < 10);
        for (i, x) in self.0.iter().enumerate() {
            if !digits && i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
