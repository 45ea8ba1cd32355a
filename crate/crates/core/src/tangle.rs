//! Singular tangle generators, their images as words, shifts, paddings and
//! the images of the tangle relations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::balance::signature;
use crate::rewrite::{search_equiv_with, Derivation, RuleIndex, SearchBudget, SearchOutcome, Strategy};
use crate::rules::{family_instances, Family};
use crate::word::{a, b, c, d, x, PageIndex, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Xi,
    Eta,
    Sigma,
    SigmaInv,
    Tau,
}

impl GenKind {
    pub const ALL: [GenKind; 5] = [GenKind::Xi, GenKind::Eta, GenKind::Sigma, GenKind::SigmaInv, GenKind::Tau];

    fn token(self) -> &'static str {
        match self {
            GenKind::Xi => "xi",
            GenKind::Eta => "eta",
            GenKind::Sigma => "sigma",
            GenKind::SigmaInv => "isigma",
            GenKind::Tau => "tau",
        }
    }
}

/// A generator acting on strands `k` and `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleGen {
    pub kind: GenKind,
    pub strand: u32,
}

impl TangleGen {
    /// Panics if `strand` is zero.
    pub fn new(kind: GenKind, strand: u32) -> Self {
        assert!(strand >= 1, "strand index must be positive");
        TangleGen { kind, strand }
    }
}

impl fmt::Display for TangleGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.token(), self.strand)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("bad generator `{token}` at byte {offset}")]
    BadToken { offset: usize, token: String },
    #[error("strand index must be positive at byte {offset}")]
    ZeroStrand { offset: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MorseWord(pub Vec<TangleGen>);

impl MorseWord {
    pub fn concat(&self, other: &MorseWord) -> MorseWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        MorseWord(v)
    }
}

impl From<Vec<TangleGen>> for MorseWord {
    fn from(v: Vec<TangleGen>) -> Self {
        MorseWord(v)
    }
}

impl fmt::Display for MorseWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, g) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses whitespace-separated tokens such as `xi_1 isigma_2`; `1` is the
/// empty word.
pub fn parse_morse(text: &str) -> Result<MorseWord, MorseError> {
    let mut out = Vec::new();
    let base = text.as_ptr() as usize;
    for tok in text.split_whitespace() {
        let offset = tok.as_ptr() as usize - base;
        if tok == "1" {
            continue;
        }
        let bad = || MorseError::BadToken { offset, token: tok.into() };
        let (name, num) = tok.split_once('_').ok_or_else(bad)?;
        let kind = GenKind::ALL.into_iter().find(|k| k.token() == name).ok_or_else(bad)?;
        if num.is_empty() || !num.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let strand: u32 = num.parse().map_err(|_| bad())?;
        if strand == 0 {
            return Err(MorseError::ZeroStrand { offset });
        }
        out.push(TangleGen { kind, strand });
    }
    Ok(MorseWord(out))
}

impl FromStr for MorseWord {
    type Err = MorseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_morse(s)
    }
}

fn p(i: u8) -> PageIndex {
    PageIndex::new(i)
}

fn power(l: crate::word::Letter, n: u32) -> Word {
    Word::from_letters(alloc::vec![l; n as usize])
}

pub fn phi_gen(g: TangleGen) -> Word {
    let k = g.strand;
    let (d2, b2) = (d(p(2)), b(p(2)));
    let core = |ls: &[crate::word::Letter]| Word::from_letters(ls.to_vec());
    let (pre, mid, post) = match g.kind {
        GenKind::Xi => (k, core(&[c(p(2))]), k - 1),
        GenKind::Eta => (k - 1, core(&[a(p(2))]), k),
        GenKind::Sigma => (k - 1, core(&[b(p(1)), d2, d(p(1))]), k),
        GenKind::SigmaInv => (k, core(&[b(p(1)), b2, d(p(1))]), k - 1),
        GenKind::Tau => (k, core(&[x(p(2))]), k),
    };
    power(d2, pre).concat(&mid).concat(&power(b2, post))
}

/// The image of a generator sequence: the concatenation of generator images.
pub fn compile(mw: &MorseWord) -> Word {
    mw.0.iter().flat_map(|&g| phi_gen(g).into_letters()).collect()
}

pub fn theta_shift(mw: &MorseWord, k: u32) -> MorseWord {
    MorseWord(mw.0.iter().map(|g| TangleGen { kind: g.kind, strand: g.strand + k }).collect())
}

/// `d2^k w b2^k`.
pub fn rho_shift(w: &Word, k: u32) -> Word {
    power(d(p(2)), k).concat(w).concat(&power(b(p(2)), k))
}

/// `b1^n2 d2^n1 w b2^m1 d1^m2`, where `n` counts the unmatched closing and
/// `m` the unmatched opening brackets of `w` in pages 1 and 2. The result is
/// 1-balanced and 2-balanced.
pub fn almost_balance_pad(w: &Word) -> Word {
    let s1 = signature(w, p(1));
    let s2 = signature(w, p(2));
    power(b(p(1)), s2.closes as u32)
        .concat(&power(d(p(2)), s1.closes as u32))
        .concat(w)
        .concat(&power(b(p(2)), s1.opens as u32))
        .concat(&power(d(p(1)), s2.opens as u32))
}

/// `a0^l a1^l w c1^l c0^l`.
pub fn knot_closure_pad(w: &Word, l: u32) -> Word {
    power(a(p(0)), l).concat(&power(a(p(1)), l)).concat(w).concat(&power(c(p(1)), l)).concat(&power(c(p(0)), l))
}

/// A tangle relation label: `(11)`-`(23)` or `(23')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StFamily {
    pub number: u8,
    pub prime: bool,
}

impl fmt::Display for StFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime {
            write!(f, "({}')", self.number)
        } else {
            write!(f, "({})", self.number)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StVariant {
    /// The relations that only hold for singular knots.
    Sk,
    /// With `sigma_k tau_k = tau_k` in place of the last relation.
    Fg,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StRelation {
    pub family: StFamily,
    pub k: u32,
    pub l: Option<u32>,
    /// Which equation of the family: the generator kind for (11)-(14), the
    /// left or right equation otherwise.
    pub variant: u8,
    pub lhs: MorseWord,
    pub rhs: MorseWord,
}

impl StRelation {
    pub fn images(&self) -> (Word, Word) {
        (compile(&self.lhs), compile(&self.rhs))
    }

    /// A short name such as `st13-k1-l4-sigma`.
    pub fn label(&self) -> String {
        let mut s = alloc::format!("st{}{}-k{}", self.family.number, if self.family.prime { "p" } else { "" }, self.k);
        if let Some(l) = self.l {
            s.push_str(&alloc::format!("-l{l}-{}", GenKind::ALL[self.variant as usize].token()));
        } else {
            s.push_str(&alloc::format!("-v{}", self.variant));
        }
        s
    }
}

impl fmt::Display for StRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} = {}", self.family, self.lhs, self.rhs)
    }
}

fn g(kind: GenKind, strand: u32) -> TangleGen {
    TangleGen::new(kind, strand)
}

/// Images of the tangle relations for `1 <= k <= kmax` and `l <= lmax`,
/// respecting the side conditions `l >= k` for (11) and `l >= k + 2` for
/// (12)-(14). The far commutations (13) and (14) keep the generator on both
/// sides.
pub fn st_relation_images(kmax: u32, lmax: u32, variant: StVariant) -> Vec<StRelation> {
    use GenKind::*;
    let mut out = Vec::new();
    let mut push =
        |number: u8, prime: bool, k: u32, l: Option<u32>, v: u8, lhs: Vec<TangleGen>, rhs: Vec<TangleGen>| {
            out.push(StRelation {
                family: StFamily { number, prime },
                k,
                l,
                variant: v,
                lhs: MorseWord(lhs),
                rhs: MorseWord(rhs),
            })
        };
    for k in 1..=kmax {
        for l in k..=lmax {
            for (v, u) in GenKind::ALL.into_iter().enumerate() {
                push(
                    11,
                    false,
                    k,
                    Some(l),
                    v as u8,
                    alloc::vec![g(Xi, k), g(u, l)],
                    alloc::vec![g(u, l + 2), g(Xi, k)],
                );
            }
        }
        for l in (k + 2)..=lmax {
            for (v, u) in GenKind::ALL.into_iter().enumerate() {
                push(
                    12,
                    false,
                    k,
                    Some(l),
                    v as u8,
                    alloc::vec![g(Eta, k), g(u, l)],
                    alloc::vec![g(u, l - 2), g(Eta, k)],
                );
            }
            for front in [Sigma, Tau] {
                let number = if front == Sigma { 13 } else { 14 };
                for (v, u) in GenKind::ALL.into_iter().enumerate() {
                    push(
                        number,
                        false,
                        k,
                        Some(l),
                        v as u8,
                        alloc::vec![g(front, k), g(u, l)],
                        alloc::vec![g(u, l), g(front, k)],
                    );
                }
            }
        }
        push(15, false, k, None, 0, alloc::vec![g(Eta, k + 1), g(Xi, k)], alloc::vec![]);
        push(15, false, k, None, 1, alloc::vec![g(Eta, k), g(Xi, k + 1)], alloc::vec![]);
        for (number, mid, rhs) in [(16, Sigma, SigmaInv), (17, Tau, Tau)] {
            push(
                number,
                false,
                k,
                None,
                0,
                alloc::vec![g(Eta, k + 2), g(mid, k + 1), g(Xi, k)],
                alloc::vec![g(rhs, k)],
            );
            push(
                number,
                false,
                k,
                None,
                1,
                alloc::vec![g(Eta, k), g(mid, k + 1), g(Xi, k + 2)],
                alloc::vec![g(rhs, k)],
            );
        }
        push(18, false, k, None, 0, alloc::vec![g(Eta, k), g(Sigma, k)], alloc::vec![g(Eta, k)]);
        push(18, false, k, None, 1, alloc::vec![g(Sigma, k), g(Xi, k)], alloc::vec![g(Xi, k)]);
        push(19, false, k, None, 0, alloc::vec![g(Sigma, k), g(SigmaInv, k)], alloc::vec![]);
        push(19, false, k, None, 1, alloc::vec![g(SigmaInv, k), g(Sigma, k)], alloc::vec![]);
        push(
            20,
            false,
            k,
            None,
            0,
            alloc::vec![g(Sigma, k), g(Sigma, k + 1), g(Sigma, k)],
            alloc::vec![g(Sigma, k + 1), g(Sigma, k), g(Sigma, k + 1)],
        );
        push(
            21,
            false,
            k,
            None,
            0,
            alloc::vec![g(Sigma, k), g(Sigma, k + 1), g(Tau, k)],
            alloc::vec![g(Tau, k + 1), g(Sigma, k), g(Sigma, k + 1)],
        );
        push(
            22,
            false,
            k,
            None,
            0,
            alloc::vec![g(Tau, k), g(Sigma, k + 1), g(Sigma, k)],
            alloc::vec![g(Sigma, k + 1), g(Sigma, k), g(Tau, k + 1)],
        );
        match variant {
            StVariant::Sk => {
                push(23, false, k, None, 0, alloc::vec![g(Sigma, k), g(Tau, k)], alloc::vec![g(Tau, k), g(Sigma, k)])
            }
            StVariant::Fg => push(23, true, k, None, 0, alloc::vec![g(Sigma, k), g(Tau, k)], alloc::vec![g(Tau, k)]),
        }
    }
    out
}

/// The same relation at strand 1: every strand index lowered by `k - 1`.
pub fn base_relation(r: &StRelation) -> StRelation {
    let down = |mw: &MorseWord| {
        MorseWord(mw.0.iter().map(|t| TangleGen { kind: t.kind, strand: t.strand - (r.k - 1) }).collect())
    };
    StRelation {
        family: r.family,
        k: 1,
        l: r.l.map(|l| l - (r.k - 1)),
        variant: r.variant,
        lhs: down(&r.lhs),
        rhs: down(&r.rhs),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("base derivation does not connect the strand-1 images")]
    WrongBase,
    #[error("cancellation search failed between {from} and {to}")]
    NoCancellation { from: Word, to: Word },
}

/// Lifts a derivation of the strand-1 image of `r` to `r` itself: conjugate
/// by `d2^(k-1)` and `b2^(k-1)`, and connect each side to the conjugate
/// using only `b2 d2 = 1` and `d2 b2 = 1`.
pub fn lift_by_shift(r: &StRelation, base: &Derivation) -> Result<Derivation, LiftError> {
    let b1 = base_relation(r);
    let (l1, r1) = b1.images();
    let end = base.end().map_err(|_| LiftError::WrongBase)?;
    if base.start != l1 || end != r1 {
        return Err(LiftError::WrongBase);
    }
    let (lk, rk) = r.images();
    let shift = r.k - 1;
    let cancel =
        RuleIndex::new(family_instances(Family::plain(4)).into_iter().filter(|rel| rel.id.page == p(2)).collect());
    let budget = SearchBudget {
        max_len: Some(lk.len().max(rk.len()) + 4 * shift as usize + 4),
        max_nodes: 100_000,
        max_depth: 64,
        normalize: false,
        strategy: Strategy::ShortestFirst,
        rulesets: Vec::new(),
    };
    let connect = |from: &Word, to: &Word| match search_equiv_with(&cancel, from, to, &budget) {
        SearchOutcome::Proved(d) => Ok(d),
        SearchOutcome::Unknown { .. } => Err(LiftError::NoCancellation { from: from.clone(), to: to.clone() }),
    };
    let pre = power(d(p(2)), shift);
    let post = power(b(p(2)), shift);
    let mut out = connect(&lk, &rho_shift(&l1, shift))?;
    out.extend(base.embed(&pre, &post));
    out.extend(connect(&rho_shift(&r1, shift), &rk)?);
    Ok(out)
}
