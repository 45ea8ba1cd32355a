//! Decomposition of `i`-balanced words into the elementary factors of
//! [`basis`]. Every transformation is recorded as a [`Derivation`].
//!
//! In page `i` the letters of page `i` are bullets, `b_{i-1}` opens and
//! `d_{i-1}` closes. A star of depth `k` is `b_{i-1}^k s d_{i-1}^k` with a
//! single bullet `s`.

use alloc::vec::Vec;

use thiserror::Error;

use super::{bracket_projection, is_i_balanced, page_action, PageAction, Token};
use crate::checker::{check_step, StepBudget};
use crate::rewrite::{apply_step, Derivation, Direction, RewriteStep};
use crate::rules::{basis, enumerate, family_instances, Family, Relation, RuleSet};
use crate::word::{a, b, c, d, x, Letter, LetterKind, PageIndex, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("word is not {page}-balanced")]
    NotBalanced { page: PageIndex },
    #[error("letter {letter} at position {position} is outside the alphabet of page {page}")]
    OutsideAlphabet { letter: Letter, position: usize, page: PageIndex },
    #[error("could not derive the elimination of {kind}' in page {page}")]
    Unproved { kind: char, page: PageIndex },
}

/// A member of [`basis`] for a fixed page.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StarFactor(Word);

impl StarFactor {
    pub fn new(w: Word, page: PageIndex) -> Option<Self> {
        basis(page).contains(&w).then_some(StarFactor(w))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarDecomposition {
    pub page: PageIndex,
    pub factors: Vec<StarFactor>,
    /// From the input word to the concatenation of `factors`.
    pub derivation: Derivation,
    /// Depth after star normalization, then after each round of depth
    /// reduction.
    pub depths: Vec<usize>,
}

impl StarDecomposition {
    pub fn word(&self) -> Word {
        self.factors.iter().flat_map(|f| f.0.iter().copied()).collect()
    }
}

struct Table {
    relations: Vec<Relation>,
}

impl Table {
    fn new() -> Self {
        let mut relations = enumerate(RuleSet::Sk);
        relations.extend(enumerate(RuleSet::Derived));
        Table { relations }
    }

    /// The step of `family` turning `from` into `to` at `position`.
    fn step(&self, number: u8, from: &Word, to: &Word, position: usize) -> RewriteStep {
        let family = Family::plain(number);
        for r in self.relations.iter().filter(|r| r.id.family == family) {
            let direction = if r.lhs == *from && r.rhs == *to {
                Direction::Forward
            } else if r.rhs == *from && r.lhs == *to {
                Direction::Backward
            } else {
                continue;
            };
            return RewriteStep { position, relation: r.clone(), direction };
        }
        panic!("no instance of {family} rewrites {from} to {to}");
    }
}

/// A derivation under construction together with its current end word.
struct Trail {
    word: Word,
    derivation: Derivation,
}

impl Trail {
    fn new(start: Word) -> Self {
        Trail { word: start.clone(), derivation: Derivation::empty(start) }
    }

    fn push(&mut self, step: RewriteStep) {
        self.word = apply_step(&self.word, &step).expect("step matches the current word");
        self.derivation.steps.push(step);
    }

    /// Replays `sub` on the factor starting at `position`.
    fn splice_in(&mut self, position: usize, sub: &Derivation) {
        for s in &sub.steps {
            self.push(RewriteStep { position: s.position + position, ..s.clone() });
        }
    }
}

fn lw(letters: &[Letter]) -> Word {
    Word::from_letters(letters.to_vec())
}

/// Whether `l` belongs to `a_i, b_i, c_i, d_i, x_i, b_{i-1}, d_{i-1}`.
fn in_restricted(l: Letter, i: PageIndex) -> bool {
    l.page() == i || l == b(i - 1) || l == d(i - 1)
}

/// One substitution of the letter table, if `l` needs one.
fn substitution(l: Letter, i: PageIndex) -> Option<(u8, Word)> {
    let (p, m) = (i + 1, i - 1);
    let s = l.page();
    Some(match l.kind() {
        LetterKind::A if s == m => (1, lw(&[a(i), d(p)])),
        LetterKind::A if s == p => (28, lw(&[a(i), b(m)])),
        LetterKind::C if s == m => (1, lw(&[b(p), c(i)])),
        LetterKind::C if s == p => (28, lw(&[d(m), c(i)])),
        LetterKind::B if s == p => (25, lw(&[d(m), d(i)])),
        LetterKind::D if s == p => (26, lw(&[b(i), b(m)])),
        LetterKind::X if s == m => (2, lw(&[d(i), x(p), b(i)])),
        LetterKind::X if s == p => (2, lw(&[d(m), x(i), b(m)])),
        _ => return None,
    })
}

fn restrict_with(table: &Table, trail: &mut Trail, i: PageIndex) {
    while let Some(pos) = trail.word.iter().position(|&l| !in_restricted(l, i)) {
        let l = trail.word[pos];
        let (number, to) = substitution(l, i).expect("letter outside the alphabet has a substitution");
        let step = table.step(number, &lw(&[l]), &to, pos);
        trail.push(step);
    }
}

/// Expands one letter into the alphabet of page `i`. Letters already in it
/// give an empty derivation.
pub fn substitute_letter(l: Letter, i: PageIndex) -> (Word, Derivation) {
    let table = Table::new();
    let mut trail = Trail::new(lw(&[l]));
    restrict_with(&table, &mut trail, i);
    (trail.word, trail.derivation)
}

/// Rewrites an `i`-balanced word over `a_i, b_i, c_i, d_i, x_i, b_{i-1},
/// d_{i-1}`, always substituting the leftmost offending letter.
pub fn restrict_to_page_alphabet(w: &Word, i: PageIndex) -> Result<(Word, Derivation), StarError> {
    if !is_i_balanced(w, i) {
        return Err(StarError::NotBalanced { page: i });
    }
    let table = Table::new();
    let mut trail = Trail::new(w.clone());
    restrict_with(&table, &mut trail, i);
    Ok((trail.word, trail.derivation))
}

fn check_restricted(w: &Word, i: PageIndex) -> Result<(), StarError> {
    if !is_i_balanced(w, i) {
        return Err(StarError::NotBalanced { page: i });
    }
    match w.iter().position(|&l| !in_restricted(l, i)) {
        Some(position) => Err(StarError::OutsideAlphabet { letter: w[position], position, page: i }),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Open,
    Close,
    Bullet,
}

fn mark(l: Letter, i: PageIndex) -> Mark {
    match page_action(l, i) {
        PageAction::None => Mark::Bullet,
        PageAction::Open => Mark::Open,
        _ => Mark::Close,
    }
}

fn normalize_with(table: &Table, trail: &mut Trail, i: PageIndex) {
    let m = i - 1;
    let pair = lw(&[b(m), d(m)]);
    let rev = lw(&[d(m), b(m)]);
    let mut pos = 0;
    while pos < trail.word.len() {
        let w = &trail.word;
        let mut q = pos;
        while mark(w[q], i) == Mark::Open {
            q += 1;
        }
        let k = q - pos;
        if mark(w[q], i) == Mark::Close {
            let step = table.step(4, &pair, &Word::empty(), q - 1);
            trail.push(step);
            continue;
        }
        let mut r = q + 1;
        while r < w.len() && r - q - 1 < k && mark(w[r], i) == Mark::Close {
            r += 1;
        }
        let j = r - q - 1;
        for n in 0..k - j {
            let step = table.step(4, &Word::empty(), &rev, r + n);
            trail.push(step);
        }
        pos = q + 1 + k;
    }
}

/// Turns an `i`-balanced word over the restricted alphabet into a
/// concatenation of stars, scanning left to right. The running difference
/// at every bullet is kept, so the depth only drops by cancelled empty pairs.
pub fn star_normalize(w: &Word, i: PageIndex) -> Result<(Word, Derivation), StarError> {
    check_restricted(w, i)?;
    let table = Table::new();
    let mut trail = Trail::new(w.clone());
    normalize_with(&table, &mut trail, i);
    Ok((trail.word, trail.derivation))
}

/// `(start, depth)` of every star of a star decomposable word.
fn stars(w: &Word, i: PageIndex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let k = w[pos..].iter().take_while(|&&l| mark(l, i) == Mark::Open).count();
        out.push((pos, k));
        pos += 2 * k + 1;
    }
    out
}

fn double(s: Letter, i: PageIndex) -> Word {
    let m = i - 1;
    lw(&[b(m), b(m), s, d(m), d(m)])
}

fn relation_rhs(table: &Table, number: u8, i: PageIndex) -> Word {
    let family = Family::plain(number);
    table
        .relations
        .iter()
        .find(|r| r.id.family == family && r.id.page == i)
        .map(|r| r.rhs.clone())
        .expect("family has an instance on every page")
}

/// Replaces `b_{i-1}^2 s d_{i-1}^2` at `pos` by a word of depth one.
fn reduce_double(table: &Table, trail: &mut Trail, pos: usize, s: Letter, i: PageIndex) {
    let number = match s.kind() {
        LetterKind::A => 41,
        LetterKind::C => 42,
        LetterKind::B => 43,
        LetterKind::D => 44,
        LetterKind::X => 45,
    };
    let rhs = relation_rhs(table, number, i);
    trail.push(table.step(number, &double(s, i), &rhs, pos));
    if s.kind() == LetterKind::X {
        let tail = rhs.len() - 5;
        let dd = double(d(i), i);
        trail.push(table.step(44, &dd, &relation_rhs(table, 44, i), pos + tail));
        let bb = double(b(i), i);
        trail.push(table.step(43, &bb, &relation_rhs(table, 43, i), pos));
    }
}

/// Derivation from `s' = b_{i-1} s_i d_{i-1}` to a product of basis words, for
/// `s` one of `a`, `c`, `x`.
pub fn prime_elimination(kind: LetterKind, i: PageIndex) -> Result<Derivation, StarError> {
    let (p, m) = (i + 1, i - 1);
    let chain: Vec<(&[u8], Word)> = match kind {
        LetterKind::A => alloc::vec![
            (&[25], lw(&[d(i), d(p), a(i), d(m)])),
            (&[4], lw(&[d(i), d(p), a(i), b(i), d(i), d(m)])),
            (&[35], lw(&[d(i), a(i), b(i), d(p), d(i), d(m)])),
            (&[26], lw(&[d(i), a(i), b(i), b(i), b(m), d(i), d(m)])),
        ],
        LetterKind::C => alloc::vec![
            (&[26], lw(&[b(m), c(i), b(p), b(i)])),
            (&[4], lw(&[b(m), b(i), d(i), c(i), b(p), b(i)])),
            (&[33], lw(&[b(m), b(i), b(p), d(i), c(i), b(i)])),
            (&[25], lw(&[b(m), b(i), d(m), d(i), d(i), c(i), b(i)])),
        ],
        LetterKind::X => alloc::vec![
            (&[4], lw(&[b(m), b(i), b(p), d(p), d(i), x(i), b(i), d(i), d(m)])),
            (&[38], lw(&[b(m), b(i), b(p), d(i), x(i), b(i), d(p), d(i), d(m)])),
            (&[25], lw(&[b(m), b(i), d(m), d(i), d(i), x(i), b(i), d(p), d(i), d(m)])),
            (&[26], lw(&[b(m), b(i), d(m), d(i), d(i), x(i), b(i), b(i), b(m), d(i), d(m)])),
        ],
        _ => return Ok(Derivation::empty(lw(&[b(m), Letter::new(kind, i), d(m)]))),
    };
    let unproved = StarError::Unproved { kind: kind.as_char(), page: i };
    let mut trail = Trail::new(lw(&[b(m), Letter::new(kind, i), d(m)]));
    for (families, next) in chain {
        let relations: Vec<Relation> = families.iter().flat_map(|&n| family_instances(Family::plain(n))).collect();
        let sub = check_step(&trail.word, &next, &relations, &StepBudget::default()).map_err(|_| unproved.clone())?;
        trail.splice_in(0, &sub);
    }
    Ok(trail.derivation)
}

fn max_depth(w: &Word, i: PageIndex) -> usize {
    bracket_projection(w, i).depth
}

/// Rewrites an `i`-balanced word into a product of [`basis`] words.
///
/// Pipeline: letter restriction, star normalization, repeated depth
/// reduction of every star of depth at least two (each round lowers the
/// maximal depth by one), then elimination of `a'`, `c'` and `x'`.
pub fn star_decompose(w: &Word, i: PageIndex) -> Result<StarDecomposition, StarError> {
    if !is_i_balanced(w, i) {
        return Err(StarError::NotBalanced { page: i });
    }
    let table = Table::new();
    let mut trail = Trail::new(w.clone());
    restrict_with(&table, &mut trail, i);
    normalize_with(&table, &mut trail, i);
    let mut depths = alloc::vec![max_depth(&trail.word, i)];
    while max_depth(&trail.word, i) >= 2 {
        let found = stars(&trail.word, i);
        for &(start, k) in found.iter().rev() {
            if k >= 2 {
                let s = trail.word[start + k];
                reduce_double(&table, &mut trail, start + k - 2, s, i);
            }
        }
        normalize_with(&table, &mut trail, i);
        depths.push(max_depth(&trail.word, i));
    }
    let found = stars(&trail.word, i);
    for &(start, k) in found.iter().rev() {
        let kind = trail.word[start + k].kind();
        if k == 1 && matches!(kind, LetterKind::A | LetterKind::C | LetterKind::X) {
            let sub = prime_elimination(kind, i)?;
            trail.splice_in(start, &sub);
        }
    }
    let factors = factorize(&trail.word, i);
    Ok(StarDecomposition { page: i, factors, derivation: trail.derivation, depths })
}

fn factorize(w: &Word, i: PageIndex) -> Vec<StarFactor> {
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let len = if w[pos] == b(i - 1) { 3 } else { 1 };
        let f = lw(&w[pos..pos + len]);
        out.push(StarFactor::new(f, i).expect("depth one factors lie in the basis"));
        pos += len;
    }
    out
}

/// Running difference at each bullet, left to right. Star normalization
/// keeps this sequence and the depth of its output is its maximum.
pub fn bullet_depths(w: &Word, i: PageIndex) -> Vec<usize> {
    let prof = bracket_projection(w, i);
    prof.tokens.iter().zip(&prof.dif).filter(|(t, _)| **t == Token::Bullet).map(|(_, &d)| d.max(0) as usize).collect()
}
