//! The 15-letter alphabet, words over it and their canonical text form.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Deref, Sub};
use core::str::FromStr;

use thiserror::Error;

/// A page of the book, i.e. an element of Z/3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PageIndex(u8);

impl PageIndex {
    pub const ALL: [PageIndex; 3] = [PageIndex(0), PageIndex(1), PageIndex(2)];

    /// Reduces `value` modulo 3.
    pub const fn new(value: u8) -> Self {
        PageIndex(value % 3)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn next(self) -> Self {
        PageIndex((self.0 + 1) % 3)
    }

    pub const fn prev(self) -> Self {
        PageIndex((self.0 + 2) % 3)
    }
}

impl Add<u8> for PageIndex {
    type Output = PageIndex;
    fn add(self, rhs: u8) -> PageIndex {
        PageIndex::new(self.0 + rhs % 3)
    }
}

impl Sub<u8> for PageIndex {
    type Output = PageIndex;
    fn sub(self, rhs: u8) -> PageIndex {
        PageIndex::new(self.0 + 3 - rhs % 3)
    }
}

impl fmt::Display for PageIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterKind {
    A,
    B,
    C,
    D,
    X,
}

impl LetterKind {
    pub const ALL: [LetterKind; 5] = [LetterKind::A, LetterKind::B, LetterKind::C, LetterKind::D, LetterKind::X];

    pub const fn as_char(self) -> char {
        match self {
            LetterKind::A => 'a',
            LetterKind::B => 'b',
            LetterKind::C => 'c',
            LetterKind::D => 'd',
            LetterKind::X => 'x',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_lowercase() {
            'a' => LetterKind::A,
            'b' => LetterKind::B,
            'c' => LetterKind::C,
            'd' => LetterKind::D,
            'x' => LetterKind::X,
            _ => return None,
        })
    }
}

/// One of the letters `a_i, b_i, c_i, d_i, x_i`, packed as `kind * 3 + page`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub const fn new(kind: LetterKind, page: PageIndex) -> Self {
        Letter(kind as u8 * 3 + page.0)
    }

    /// All 15 letters, ordered by kind then page.
    pub fn all() -> impl Iterator<Item = Letter> {
        (0..15).map(Letter)
    }

    pub const fn kind(self) -> LetterKind {
        match self.0 / 3 {
            0 => LetterKind::A,
            1 => LetterKind::B,
            2 => LetterKind::C,
            3 => LetterKind::D,
            _ => LetterKind::X,
        }
    }

    pub const fn page(self) -> PageIndex {
        PageIndex(self.0 % 3)
    }

    /// Dense index in `0..15`.
    pub const fn code(self) -> usize {
        self.0 as usize
    }

    pub const fn is_singular(self) -> bool {
        self.0 >= 12
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind().as_char(), self.page())
    }
}

/// Shorthand constructors used throughout the rule tables.
pub fn a(i: PageIndex) -> Letter {
    Letter::new(LetterKind::A, i)
}
pub fn b(i: PageIndex) -> Letter {
    Letter::new(LetterKind::B, i)
}
pub fn c(i: PageIndex) -> Letter {
    Letter::new(LetterKind::C, i)
}
pub fn d(i: PageIndex) -> Letter {
    Letter::new(LetterKind::D, i)
}
pub fn x(i: PageIndex) -> Letter {
    Letter::new(LetterKind::X, i)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown letter {found:?} at byte {offset}")]
    UnknownKind { offset: usize, found: char },
    #[error("page index must be 0, 1 or 2 at byte {offset}")]
    BadPage { offset: usize },
    #[error("letter at byte {offset} is missing its page index")]
    MissingPage { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match *self {
            ParseError::UnknownKind { offset, .. }
            | ParseError::BadPage { offset }
            | ParseError::MissingPage { offset } => offset,
        }
    }
}

/// A finite word over the alphabet. The empty word is the unit.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` repeated `n` times.
    pub fn pow(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// Replaces `len` letters at `pos` with `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + with.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    pub fn count_x(&self) -> usize {
        self.0.iter().filter(|l| l.is_singular()).count()
    }

    /// Leftmost occurrence of `pat` at or after `from`.
    pub fn find(&self, pat: &[Letter], from: usize) -> Option<usize> {
        if pat.is_empty() {
            return (from <= self.len()).then_some(from);
        }
        if pat.len() > self.len() {
            return None;
        }
        (from..=self.len() - pat.len()).find(|&p| self.0[p..].starts_with(pat))
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Canonical form: lowercase, single spaces, `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, l) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_word(s)
    }
}

/// Parses whitespace-separated or contiguous tokens such as `a0 b1x2`.
/// A lone `1` (or blank input) is the empty word.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    if text.trim() == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((offset, ch)) = chars.next() {
        if ch.is_whitespace() {
            continue;
        }
        let kind = LetterKind::from_char(ch).ok_or(ParseError::UnknownKind { offset, found: ch })?;
        let page = match chars.next() {
            Some((_, '0')) => 0,
            Some((_, '1')) => 1,
            Some((_, '2')) => 2,
            Some((po, p)) if p.is_ascii_digit() => return Err(ParseError::BadPage { offset: po }),
            _ => return Err(ParseError::MissingPage { offset }),
        };
        letters.push(Letter::new(kind, PageIndex(page)));
    }
    Ok(Word(letters))
}

/// Same as `Word::to_string`, kept as a named operation for callers that
/// want the canonical text explicitly.
pub fn format_word(w: &Word) -> String {
    use alloc::string::ToString;
    w.to_string()
}

/// Builds a word from a literal; panics on malformed input.
#[macro_export]
macro_rules! w {
    ($s:expr) => {
        $crate::word::parse_word($s).expect("malformed word literal")
    };
}
