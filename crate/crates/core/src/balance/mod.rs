//! Per-page bracket projections of words and the i-balance criterion.
//!
//! In page `p` every letter acts as nothing, an opening bracket, a closing
//! bracket, or (for singular letters) a closing bracket followed by an
//! opening one. A word is `p`-balanced when its projection to page `p` is a
//! correctly nested bracket expression, and balanced when that holds for all
//! three pages.

mod star;

pub use star::{
    bullet_depths, prime_elimination, restrict_to_page_alphabet, star_decompose, star_normalize, substitute_letter,
    StarDecomposition, StarError, StarFactor,
};

use alloc::string::String;
use alloc::vec::Vec;

use crate::word::{Letter, LetterKind, PageIndex, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PageAction {
    None,
    Open,
    Close,
    CloseOpen,
}

/// How `letter` looks from page `page`.
pub fn page_action(letter: Letter, page: PageIndex) -> PageAction {
    let s = letter.page();
    if page == s {
        return PageAction::None;
    }
    match letter.kind() {
        LetterKind::A => PageAction::Open,
        LetterKind::C => PageAction::Close,
        LetterKind::X => PageAction::CloseOpen,
        LetterKind::B if page == s.next() => PageAction::Open,
        LetterKind::B => PageAction::Close,
        LetterKind::D if page == s.prev() => PageAction::Open,
        LetterKind::D => PageAction::Close,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Token {
    Open,
    Close,
    /// A letter that lives in the projected page itself.
    Bullet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketProfile {
    pub tokens: Vec<Token>,
    /// Index of the letter each token came from.
    pub sources: Vec<usize>,
    /// Running `#open - #close` after each token.
    pub dif: Vec<i64>,
    pub depth: usize,
}

impl BracketProfile {
    /// The projection with bullets dropped, e.g. `((()))`.
    pub fn brackets(&self) -> String {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                Token::Open => Some('('),
                Token::Close => Some(')'),
                Token::Bullet => None,
            })
            .collect()
    }

    /// The projection with bullets shown as `*`.
    pub fn encoding(&self) -> String {
        self.tokens
            .iter()
            .map(|t| match t {
                Token::Open => '(',
                Token::Close => ')',
                Token::Bullet => '*',
            })
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.dif.iter().all(|&d| d >= 0) && self.dif.last().is_none_or(|&d| d == 0)
    }

    /// First token position at which the running difference goes negative.
    pub fn first_deficit(&self) -> Option<usize> {
        self.dif.iter().position(|&d| d < 0)
    }
}

pub fn bracket_projection(w: &Word, page: PageIndex) -> BracketProfile {
    let mut tokens = Vec::new();
    let mut sources = Vec::new();
    for (n, &l) in w.iter().enumerate() {
        let mut push = |t| {
            tokens.push(t);
            sources.push(n);
        };
        match page_action(l, page) {
            PageAction::None => push(Token::Bullet),
            PageAction::Open => push(Token::Open),
            PageAction::Close => push(Token::Close),
            PageAction::CloseOpen => {
                push(Token::Close);
                push(Token::Open);
            }
        }
    }
    let mut dif = Vec::with_capacity(tokens.len());
    let mut run = 0i64;
    let mut depth = 0i64;
    for t in &tokens {
        match t {
            Token::Open => run += 1,
            Token::Close => run -= 1,
            Token::Bullet => {}
        }
        depth = depth.max(run);
        dif.push(run);
    }
    BracketProfile { tokens, sources, dif, depth: depth as usize }
}

pub fn is_i_balanced(w: &Word, page: PageIndex) -> bool {
    let mut run = 0i64;
    for &l in w.iter() {
        match page_action(l, page) {
            PageAction::None => {}
            PageAction::Open => run += 1,
            PageAction::Close => run -= 1,
            PageAction::CloseOpen => {
                if run == 0 {
                    return false;
                }
            }
        }
        if run < 0 {
            return false;
        }
    }
    run == 0
}

pub fn is_balanced(w: &Word) -> bool {
    PageIndex::ALL.iter().all(|&p| is_i_balanced(w, p))
}

/// Maximum running difference of the page projection.
pub fn depth(w: &Word, page: PageIndex) -> usize {
    bracket_projection(w, page).depth
}

/// What is left of a page projection after cancelling every matched `()`:
/// `closes` closing brackets followed by `opens` opening ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    pub closes: usize,
    pub opens: usize,
}

pub fn signature(w: &Word, page: PageIndex) -> Signature {
    let mut sig = Signature::default();
    let close = |sig: &mut Signature| {
        if sig.opens > 0 {
            sig.opens -= 1;
        } else {
            sig.closes += 1;
        }
    };
    for &l in w.iter() {
        match page_action(l, page) {
            PageAction::None => {}
            PageAction::Open => sig.opens += 1,
            PageAction::Close => close(&mut sig),
            PageAction::CloseOpen => {
                close(&mut sig);
                sig.opens += 1;
            }
        }
    }
    sig
}

pub fn signatures(w: &Word) -> [Signature; 3] {
    PageIndex::ALL.map(|p| signature(w, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::w;

    fn p(i: u8) -> PageIndex {
        PageIndex::new(i)
    }

    const WK: &str = "a0 a1 b2 b0 x0 b2 d2 c1 c2";

    #[test]
    fn projection_examples() {
        assert_eq!(bracket_projection(&w!(WK), p(0)).brackets(), "((()))");
        assert_eq!(bracket_projection(&w!(WK), p(1)).brackets(), "()()()()");
        assert_eq!(bracket_projection(&w!(WK), p(2)).brackets(), "(())()");
        let e = bracket_projection(&Word::empty(), p(1));
        assert!(e.tokens.is_empty());
        assert_eq!(e.depth, 0);
    }

    #[test]
    fn x_projects_close_then_open() {
        assert_eq!(bracket_projection(&w!("x0"), p(1)).brackets(), ")(");
        assert_eq!(bracket_projection(&w!("x0"), p(2)).brackets(), ")(");
        assert_eq!(bracket_projection(&w!("x0"), p(0)).encoding(), "*");
    }

    #[test]
    fn i_balanced_examples() {
        assert!(is_i_balanced(&w!("a0 c0"), p(1)));
        assert!(!is_i_balanced(&w!("d2 c2 a2 b2"), p(0)));
        assert_eq!(bracket_projection(&w!("d2 c2 a2 b2"), p(0)).brackets(), "))((");
        assert!(is_i_balanced(&Word::empty(), p(2)));
        assert!(!is_i_balanced(&w!("x1"), p(0)));
        assert!(is_i_balanced(&w!("a1 x1 c1"), p(0)));
    }

    #[test]
    fn balanced_examples() {
        assert!(is_balanced(&w!(WK)));
        assert!(is_balanced(&w!("a0 c0")));
        assert!(!is_balanced(&w!("d2 c2 a2 b2")));
    }

    #[test]
    fn depth_examples() {
        assert_eq!(depth(&w!("b2 b2 a0 d2 d2"), p(0)), 2);
        assert_eq!(bracket_projection(&w!("b2 b2 a0 d2 d2"), p(0)).encoding(), "((*))");
        assert_eq!(depth(&Word::empty(), p(0)), 0);
        assert_eq!(depth(&w!(WK), p(0)), 3);
    }

    #[test]
    fn signature_reduces_matched_pairs() {
        assert_eq!(signature(&w!("d2 c2 a2 b2"), p(0)), Signature { closes: 2, opens: 2 });
        assert_eq!(signature(&w!(WK), p(2)), Signature::default());
        assert_eq!(signature(&w!("x0"), p(1)), Signature { closes: 1, opens: 1 });
        assert_eq!(signature(&w!("a0 x0"), p(1)), Signature { closes: 0, opens: 1 });
    }
}
