//! Alphabets, finite words and ultimately periodic ω-words (lassos).
//!
//! A lasso `u:v` denotes the ω-word `u v v v …`. Lassos are the only
//! representation of infinite words in this crate; two lassos denote the same
//! word iff their [normal forms](LassoWord::normalize) coincide.

use std::fmt;

use crate::error::{Error, Result};

/// An ordered set of single-character letters (lowercase ASCII letters and digits).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
    index: [u8; 128],
}

const NO_LETTER: u8 = u8::MAX;

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut out = Alphabet {
            letters: Vec::new(),
            index: [NO_LETTER; 128],
        };
        for c in letters {
            if !(c.is_ascii_lowercase() || c.is_ascii_digit()) {
                return Err(Error::InvalidAlphabet(format!(
                    "`{c}` is not a lowercase letter or digit"
                )));
            }
            if out.contains(c) {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{c}`")));
            }
            out.index[c as usize] = out.letters.len() as u8;
            out.letters.push(c);
        }
        if out.letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index]
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Position of `c` in declaration order.
    pub fn index_of(&self, c: char) -> Option<usize> {
        if c.is_ascii() {
            match self.index[c as usize] {
                NO_LETTER => None,
                i => Some(i as usize),
            }
        } else {
            None
        }
    }

    pub fn require(&self, c: char) -> Result<usize> {
        self.index_of(c).ok_or(Error::UnknownLetter(c))
    }

    /// Same letters, possibly in a different order.
    pub fn same_letters(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.letters.iter().all(|&c| other.contains(c))
    }

    /// All words of length exactly `len`, in lexicographic order of the declaration order.
    pub fn words_of_length(&self, len: usize) -> Vec<FiniteWord> {
        let mut out = vec![FiniteWord::empty()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.letters.iter().map(move |&c| {
                        let mut next = w.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        out
    }

    /// All words of length `0..=max_len`, shortest first.
    pub fn words_up_to(&self, max_len: usize) -> Vec<FiniteWord> {
        (0..=max_len).flat_map(|n| self.words_of_length(n)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word; possibly empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(Vec<char>);

impl FiniteWord {
    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let letters: Vec<char> = text.chars().collect();
        for &c in &letters {
            alphabet.require(c)?;
        }
        Ok(FiniteWord(letters))
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, c: char) {
        self.0.push(c);
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        FiniteWord(letters)
    }

    /// Checks every letter against `alphabet`.
    pub fn check(&self, alphabet: &Alphabet) -> Result<()> {
        for &c in &self.0 {
            alphabet.require(c)?;
        }
        Ok(())
    }

    /// Shortest `r` with `self = r^k`.
    pub fn primitive_root(&self) -> FiniteWord {
        let n = self.0.len();
        for d in 1..n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return FiniteWord(self.0[..d].to_vec());
            }
        }
        self.clone()
    }
}

impl From<Vec<char>> for FiniteWord {
    fn from(letters: Vec<char>) -> Self {
        FiniteWord(letters)
    }
}

impl From<&str> for FiniteWord {
    /// Unchecked conversion; use [`FiniteWord::parse`] for alphabet-checked input.
    fn from(text: &str) -> Self {
        FiniteWord(text.chars().collect())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    prefix: FiniteWord,
    period: FiniteWord,
}

impl LassoWord {
    pub fn new(prefix: FiniteWord, period: FiniteWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::MalformedLasso(format!("{prefix}:")));
        }
        Ok(LassoWord { prefix, period })
    }

    /// `period^ω`.
    pub fn omega(period: FiniteWord) -> Result<Self> {
        LassoWord::new(FiniteWord::empty(), period)
    }

    /// Parses `<prefix>:<period>`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let (prefix, period) = text
            .split_once(':')
            .ok_or_else(|| Error::MalformedLasso(text.to_string()))?;
        if period.is_empty() || period.contains(':') {
            return Err(Error::MalformedLasso(text.to_string()));
        }
        LassoWord::new(
            FiniteWord::parse(prefix, alphabet)?,
            FiniteWord::parse(period, alphabet)?,
        )
    }

    pub fn prefix(&self) -> &FiniteWord {
        &self.prefix
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    pub fn check(&self, alphabet: &Alphabet) -> Result<()> {
        self.prefix.check(alphabet)?;
        self.period.check(alphabet)
    }

    /// `u · self`.
    pub fn prepend(&self, u: &FiniteWord) -> LassoWord {
        LassoWord {
            prefix: u.concat(&self.prefix),
            period: self.period.clone(),
        }
    }

    /// Letter at position `i` of the ω-word.
    pub fn letter_at(&self, i: usize) -> char {
        let p = self.prefix.len();
        if i < p {
            self.prefix.0[i]
        } else {
            self.period.0[(i - p) % self.period.len()]
        }
    }

    /// The first `n` letters.
    pub fn unroll(&self, n: usize) -> FiniteWord {
        FiniteWord((0..n).map(|i| self.letter_at(i)).collect())
    }

    /// Minimal prefix with a primitive period.
    pub fn normalize(&self) -> LassoWord {
        let mut prefix = self.prefix.0.clone();
        let mut period = self.period.primitive_root().0;
        while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
            if a != b {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        LassoWord {
            prefix: FiniteWord(prefix),
            period: FiniteWord(period),
        }
    }

    /// Whether both lassos denote the same ω-word.
    pub fn same_word(&self, other: &LassoWord) -> bool {
        self.normalize() == other.normalize()
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.prefix, self.period)
    }
}
