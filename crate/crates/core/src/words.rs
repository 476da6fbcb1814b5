//! The free monoid: alphabets, words, the deglex order and overlaps.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub const MAX_LETTERS: usize = 64;

/// An ordered alphabet of single-character letter names. Position is
/// precedence: `letters[0]` is the smallest letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
    index: HashMap<char, u8>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.len() > MAX_LETTERS {
            return Err(Error::Alphabet(format!(
                "{} letters exceeds the limit of {MAX_LETTERS}",
                letters.len()
            )));
        }
        let mut index = HashMap::with_capacity(letters.len());
        for (i, &c) in letters.iter().enumerate() {
            if !c.is_alphabetic() {
                return Err(Error::Alphabet(format!("letter `{c}` is not alphabetic")));
            }
            if index.insert(c, i as u8).is_some() {
                return Err(Error::Alphabet(format!("duplicate letter `{c}`")));
            }
        }
        Ok(Alphabet { letters, index })
    }

    /// The first `n` lowercase letters `a, b, c, ...`.
    pub fn standard(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::Alphabet(format!("no standard naming for {n} letters")));
        }
        Self::new((b'a'..b'a' + n as u8).map(char::from))
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

    pub fn letter(&self, i: u8) -> char {
        self.letters[i as usize]
    }

    pub fn index_of(&self, c: char) -> Option<u8> {
        self.index.get(&c).copied()
    }

    /// Parses a bare word such as `a^2*b*c` or `aabc`; `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut out = Word::empty();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c == '*' && i > 0 && i + 1 < chars.len() {
                i += 1;
                continue;
            }
            let letter = self.index_of(c).ok_or_else(|| Error::Parse {
                position: i,
                message: format!("undeclared letter `{c}`"),
            })?;
            i += 1;
            let mut power = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                power = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse {
                        position: start,
                        message: "expected exponent after `^`".into(),
                    })?;
            }
            for _ in 0..power {
                out.push(letter);
            }
        }
        if out.is_empty() {
            return Err(Error::Parse { position: 0, message: "empty word".into() });
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { alphabet: self, word: w }
    }
}

/// A word over an alphabet, stored as letter indices. The empty word is the
/// unit `1`.
///
/// `Ord` is the deglex order: shorter words first, equal lengths compared
/// letter by letter.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 16]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(l: u8) -> Self {
        Word(smallvec::smallvec![l])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, l: u8) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `left · self · right`
    pub fn sandwich(left: &[u8], mid: &[u8], right: &[u8]) -> Word {
        let mut v = SmallVec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::from_letters(&self.0[start..end])
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        !pattern.is_empty() && first_occurrence(pattern.letters(), self.letters()).is_some()
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_deglex(self, other)
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
            return write!(f, "1");
        }
        for &l in self.letters() {
            if l < 26 {
                write!(f, "{}", (b'a' + l) as char)?;
            } else {
                write!(f, "[{l}]")?;
            }
        }
        Ok(())
    }
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            write!(f, "{}", self.alphabet.letter(letters[i]))?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Deglex comparison: degree first, then the first differing letter.
pub fn compare_deglex(u: &Word, w: &Word) -> Ordering {
    u.0.len().cmp(&w.0.len()).then_with(|| u.0.as_slice().cmp(w.0.as_slice()))
}

fn first_occurrence(pattern: &[u8], w: &[u8]) -> Option<usize> {
    if pattern.len() > w.len() {
        return None;
    }
    w.windows(pattern.len()).position(|win| win == pattern)
}

/// All start positions of `pattern` inside `w`, ascending.
pub fn find_occurrences(pattern: &Word, w: &Word) -> Result<Vec<usize>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.degree() > w.degree() {
        return Ok(Vec::new());
    }
    Ok(w.0
        .windows(pattern.degree())
        .enumerate()
        .filter(|(_, win)| *win == pattern.letters())
        .map(|(i, _)| i)
        .collect())
}

/// A decomposition `w1 = left · overlap`, `w2 = overlap · right` with all three
/// parts nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub left: Word,
    pub overlap: Word,
    pub right: Word,
}

impl Overlap {
    /// The overlap word `left · overlap · right`.
    pub fn span(&self) -> Word {
        Word::sandwich(self.left.letters(), self.overlap.letters(), self.right.letters())
    }

    pub fn span_degree(&self) -> usize {
        self.left.degree() + self.overlap.degree() + self.right.degree()
    }
}

/// Proper overlaps of a suffix of `w1` with a prefix of `w2`, by increasing
/// overlap length. Fails if one word is a proper subword of the other.
pub fn proper_overlaps(w1: &Word, w2: &Word) -> Result<Vec<Overlap>> {
    if w1 != w2 {
        if w1.degree() < w2.degree() && w2.contains(w1) {
            return Err(Error::ProperSubword { inner: format!("{w1:?}"), outer: format!("{w2:?}") });
        }
        if w2.degree() < w1.degree() && w1.contains(w2) {
            return Err(Error::ProperSubword { inner: format!("{w2:?}"), outer: format!("{w1:?}") });
        }
    }
    Ok(overlap_lengths(w1.letters(), w2.letters())
        .map(|k| Overlap {
            left: w1.slice(0, w1.degree() - k),
            overlap: w1.slice(w1.degree() - k, w1.degree()),
            right: w2.slice(k, w2.degree()),
        })
        .collect())
}

/// Lengths `k` in `1..min(|a|,|b|)` such that the last `k` letters of `a`
/// equal the first `k` letters of `b`.
pub(crate) fn overlap_lengths<'a>(a: &'a [u8], b: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
    let max = a.len().min(b.len()).saturating_sub(1);
    (1..=max).filter(move |&k| a[a.len() - k..] == b[..k])
}
