//! Relation tables.
//!
//! Three rule sets are provided: `Sk` (families (1)-(10)), `Fg` (the same with
//! (6) replaced by (6')), and `Derived` (families (25)-(45), with the witness
//! slot `w` ranging over the seven-element basis sets). Families (33)-(40)
//! also have parametric forms `(33')`-`(40')` whose witness may be any word
//! that is balanced in the relevant page.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::balance::is_i_balanced;
use crate::word::{a, b, c, d, x, Letter, PageIndex, Word};

/// A family label such as `(8)`, `(6')` or `(37')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Family {
    pub number: u8,
    pub prime: bool,
}

impl Family {
    pub const fn plain(number: u8) -> Self {
        Family { number, prime: false }
    }

    pub const fn primed(number: u8) -> Self {
        Family { number, prime: true }
    }

    /// Whether the label names a known family.
    pub fn is_known(self) -> bool {
        matches!((self.number, self.prime), (1..=10 | 25..=45, false) | (6 | 33..=40, true))
    }

    /// Families (33')-(40'), instantiated on demand with a checked witness.
    pub fn is_parametric(self) -> bool {
        self.prime && (33..=40).contains(&self.number)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prime {
            write!(f, "({}')", self.number)
        } else {
            write!(f, "({})", self.number)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleSet {
    Sk,
    Fg,
    Derived,
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSet::Sk => "sk",
            RuleSet::Fg => "fg",
            RuleSet::Derived => "derived",
        })
    }
}

/// Stable identifier of one relation instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationId {
    pub family: Family,
    pub page: PageIndex,
    /// Which of the listed equations of the family.
    pub variant: u8,
    /// Index into the family's witness list, if it has one.
    pub slot: Option<u8>,
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[i={}", self.family, self.page)?;
        if self.variant > 0 {
            write!(f, ",v={}", self.variant)?;
        }
        if let Some(s) = self.slot {
            write!(f, ",w={s}")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub id: RelationId,
    pub lhs: Word,
    pub rhs: Word,
    pub ruleset: RuleSet,
    /// The word filling the `w` slot, for commutation families.
    pub witness: Option<Word>,
    /// Derivable from the rest of its rule set; kept active anyway.
    pub superfluous: bool,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} = {}", self.id, self.lhs, self.rhs)
    }
}

fn word(letters: &[Letter]) -> Word {
    Word::from_letters(letters.to_vec())
}

/// `t_i = b_{i+1} d_{i-1} d_{i+1} b_{i-1}`.
pub fn t_word(i: PageIndex) -> Word {
    word(&[b(i + 1), d(i - 1), d(i + 1), b(i - 1)])
}

/// `t'_i = d_{i-1} b_{i+1} b_{i-1} d_{i+1}`, the inverse of `t_i`.
pub fn t_prime_word(i: PageIndex) -> Word {
    word(&[d(i - 1), b(i + 1), b(i - 1), d(i + 1)])
}

/// The seven elementary `i`-balanced words
/// `a_i, b_i, c_i, d_i, x_i, b_{i-1} b_i d_{i-1}, b_{i-1} d_i d_{i-1}`.
pub fn basis(i: PageIndex) -> [Word; 7] {
    [
        word(&[a(i)]),
        word(&[b(i)]),
        word(&[c(i)]),
        word(&[d(i)]),
        word(&[x(i)]),
        word(&[b(i - 1), b(i), d(i - 1)]),
        word(&[b(i - 1), d(i), d(i - 1)]),
    ]
}

struct Builder {
    ruleset: RuleSet,
    out: Vec<Relation>,
}

impl Builder {
    fn push(&mut self, family: Family, i: PageIndex, variant: u8, lhs: Word, rhs: Word) {
        self.out.push(Relation {
            id: RelationId { family, page: i, variant, slot: None },
            lhs,
            rhs,
            ruleset: self.ruleset,
            witness: None,
            superfluous: false,
        });
    }

    /// `t w = w t` for each `w` in `witnesses`.
    fn commute(&mut self, family: Family, i: PageIndex, variant: u8, t: &Word, witnesses: &[Word]) {
        for (slot, w) in witnesses.iter().enumerate() {
            self.out.push(Relation {
                id: RelationId { family, page: i, variant, slot: Some(slot as u8) },
                lhs: t.concat(w),
                rhs: w.concat(t),
                ruleset: self.ruleset,
                witness: Some(w.clone()),
                superfluous: false,
            });
        }
    }
}

/// The instance of (4) recorded as superfluous: `d_2 b_2 = 1`.
pub fn superfluous_id() -> RelationId {
    RelationId { family: Family::plain(4), page: PageIndex::new(2), variant: 1, slot: None }
}

fn push_base(bld: &mut Builder, fg: bool) {
    let e = Word::empty;
    for i in PageIndex::ALL {
        let f = Family::plain(1);
        bld.push(f, i, 0, word(&[a(i)]), word(&[a(i + 1), d(i - 1)]));
        bld.push(f, i, 1, word(&[b(i)]), word(&[a(i - 1), c(i + 1)]));
        bld.push(f, i, 2, word(&[c(i)]), word(&[b(i - 1), c(i + 1)]));
        bld.push(f, i, 3, word(&[d(i)]), word(&[a(i + 1), c(i - 1)]));
    }
    for i in PageIndex::ALL {
        bld.push(Family::plain(2), i, 0, word(&[x(i)]), word(&[d(i + 1), x(i - 1), b(i + 1)]));
    }
    let i0 = PageIndex::new(0);
    bld.push(Family::plain(3), i0, 0, word(&[d(i0), d(i0 + 1), d(i0 + 2)]), e());
    for i in PageIndex::ALL {
        bld.push(Family::plain(4), i, 0, word(&[b(i), d(i)]), e());
        bld.push(Family::plain(4), i, 1, word(&[d(i), b(i)]), e());
    }
    let sup = superfluous_id();
    for r in bld.out.iter_mut().filter(|r| r.id == sup) {
        r.superfluous = true;
    }
    for i in PageIndex::ALL {
        let dxd = word(&[d(i), x(i), d(i)]);
        let bxb = word(&[b(i), x(i), b(i)]);
        bld.push(Family::plain(5), i, 0, dxd.clone(), word(&[a(i)]).concat(&dxd).concat(&word(&[c(i)])));
        bld.push(Family::plain(5), i, 1, bxb.clone(), word(&[a(i)]).concat(&bxb).concat(&word(&[c(i)])));
    }
    for i in PageIndex::ALL {
        let delta = word(&[d(i + 1), d(i), d(i - 1)]);
        let xi = word(&[x(i)]);
        if fg {
            bld.push(Family::primed(6), i, 0, xi.concat(&delta), xi);
        } else {
            bld.push(Family::plain(6), i, 0, xi.concat(&delta), delta.concat(&xi));
        }
    }
    for i in PageIndex::ALL {
        let bdd = word(&[b(i), d(i + 1), d(i)]);
        bld.commute(Family::plain(7), i, 0, &word(&[d(i), c(i)]), &[word(&[c(i + 1)]), word(&[x(i + 1)]), bdd]);
    }
    let next_letters = |i: PageIndex| {
        vec![word(&[a(i + 1)]), word(&[b(i + 1)]), word(&[c(i + 1)]), word(&[x(i + 1)]), word(&[b(i), d(i + 1), d(i)])]
    };
    for i in PageIndex::ALL {
        bld.commute(Family::plain(8), i, 0, &word(&[a(i), b(i)]), &next_letters(i));
    }
    for i in PageIndex::ALL {
        let ws = [word(&[a(i)]), word(&[b(i)]), word(&[c(i)]), word(&[x(i)]), word(&[b(i - 1), d(i), d(i - 1)])];
        bld.commute(Family::plain(9), i, 0, &t_word(i), &ws);
    }
    for i in PageIndex::ALL {
        bld.commute(Family::plain(10), i, 0, &word(&[d(i), x(i), b(i)]), &next_letters(i));
    }
}

/// Left factor `t` of the commutation families (33)-(39), by family number.
fn commutation_factor(number: u8, variant: u8, i: PageIndex) -> Option<Word> {
    Some(match number {
        33 => word(&[d(i), c(i)]),
        34 => word(&[b(i), c(i)]),
        35 => word(&[a(i), b(i)]),
        36 => word(&[a(i), d(i)]),
        37 if variant == 0 => t_word(i),
        37 => t_prime_word(i),
        38 => word(&[d(i), x(i), b(i)]),
        39 => word(&[b(i), x(i), d(i)]),
        _ => return None,
    })
}

/// Page in which the witness of families (33)-(40) must be balanced.
pub fn witness_page(number: u8, i: PageIndex) -> Option<PageIndex> {
    match number {
        33 | 35 | 38 => Some(i + 1),
        34 | 36 | 39 => Some(i - 1),
        37 | 40 => Some(i),
        _ => None,
    }
}

fn sandwich_40(i: PageIndex, w: &Word) -> (Word, Word) {
    let lhs = word(&[d(i + 1), b(i - 1)]).concat(w).concat(&word(&[d(i - 1), b(i + 1)]));
    let rhs = word(&[b(i - 1), d(i + 1)]).concat(w).concat(&word(&[b(i + 1), d(i - 1)]));
    (lhs, rhs)
}

fn push_derived(bld: &mut Builder) {
    let f = Family::plain;
    for i in PageIndex::ALL {
        bld.push(f(25), i, 0, word(&[b(i)]), word(&[d(i + 1), d(i - 1)]));
    }
    for i in PageIndex::ALL {
        bld.push(f(26), i, 0, word(&[d(i)]), word(&[b(i - 1), b(i + 1)]));
    }
    for i in PageIndex::ALL {
        let t = t_word(i);
        bld.push(f(27), i, 0, word(&[d(i + 1), b(i - 1)]), word(&[b(i - 1), d(i + 1)]).concat(&t));
        bld.push(f(27), i, 1, word(&[b(i + 1), d(i - 1)]), t.concat(&word(&[d(i - 1), b(i + 1)])));
    }
    for i in PageIndex::ALL {
        bld.push(f(28), i, 0, word(&[a(i)]), word(&[a(i - 1), b(i + 1)]));
        bld.push(f(28), i, 1, word(&[c(i)]), word(&[d(i + 1), c(i - 1)]));
    }
    for i in PageIndex::ALL {
        bld.push(f(29), i, 0, word(&[a(i), b(i)]), word(&[a(i - 1), d(i - 1)]));
        bld.push(f(29), i, 1, word(&[d(i), c(i)]), word(&[b(i - 1), c(i - 1)]));
    }
    for i in PageIndex::ALL {
        bld.push(f(30), i, 0, word(&[b(i)]), word(&[a(i), b(i), c(i)]));
        bld.push(f(30), i, 1, word(&[d(i)]), word(&[a(i), d(i), c(i)]));
    }
    for i in PageIndex::ALL {
        bld.push(f(31), i, 0, word(&[b(i - 1), x(i + 1), d(i - 1)]), word(&[x(i)]));
    }
    for i in PageIndex::ALL {
        bld.push(f(32), i, 0, word(&[b(i), x(i), d(i)]), word(&[d(i + 1), x(i + 1), b(i + 1)]));
    }
    for number in 33..=39u8 {
        let variants = if number == 37 { 2 } else { 1 };
        for i in PageIndex::ALL {
            let page = witness_page(number, i).expect("commutation family");
            for v in 0..variants {
                let t = commutation_factor(number, v, i).expect("commutation family");
                bld.commute(f(number), i, v, &t, &basis(page));
            }
        }
    }
    for i in PageIndex::ALL {
        for (slot, w) in basis(i).iter().enumerate() {
            let (lhs, rhs) = sandwich_40(i, w);
            bld.out.push(Relation {
                id: RelationId { family: f(40), page: i, variant: 0, slot: Some(slot as u8) },
                lhs,
                rhs,
                ruleset: RuleSet::Derived,
                witness: Some(w.clone()),
                superfluous: false,
            });
        }
    }
    for i in PageIndex::ALL {
        let (bm, dm) = (b(i - 1), d(i - 1));
        let prime = |s: Letter| word(&[bm, s, dm]);
        let double = |s: Letter| word(&[bm, bm, s, dm, dm]);
        let bi = word(&[b(i)]);
        let di = word(&[d(i)]);
        let di2 = di.pow(2);
        let bi2 = bi.pow(2);
        bld.push(f(41), i, 0, double(a(i)), prime(a(i)).concat(&di2).concat(&prime(b(i))).concat(&bi));
        bld.push(f(42), i, 0, double(c(i)), di.concat(&prime(d(i))).concat(&bi2).concat(&prime(c(i))));
        bld.push(f(43), i, 0, double(b(i)), prime(b(i)).concat(&di2).concat(&prime(b(i))).concat(&bi));
        bld.push(f(44), i, 0, double(d(i)), di.concat(&prime(d(i))).concat(&bi2).concat(&prime(d(i))));
        let rhs45 = double(b(i))
            .concat(&prime(d(i)))
            .concat(&di2)
            .concat(&word(&[x(i)]))
            .concat(&bi2)
            .concat(&prime(b(i)))
            .concat(&double(d(i)));
        bld.push(f(45), i, 0, double(x(i)), rhs45);
    }
}

/// All relation instances of a rule set, in a fixed order.
pub fn enumerate(set: RuleSet) -> Vec<Relation> {
    let mut bld = Builder { ruleset: set, out: Vec::new() };
    match set {
        RuleSet::Sk => push_base(&mut bld, false),
        RuleSet::Fg => push_base(&mut bld, true),
        RuleSet::Derived => push_derived(&mut bld),
    }
    bld.out
}

/// Number of instances not flagged superfluous.
pub fn official_count(set: RuleSet) -> usize {
    enumerate(set).iter().filter(|r| !r.superfluous).count()
}

/// Every instance of a single family: SK families come from `Sk`, (6') from
/// `Fg`, (25)-(45) from `Derived`.
pub fn family_instances(family: Family) -> Vec<Relation> {
    let set = match (family.number, family.prime) {
        (6, true) => RuleSet::Fg,
        (1..=10, false) => RuleSet::Sk,
        (25..=45, false) => RuleSet::Derived,
        _ => return Vec::new(),
    };
    enumerate(set).into_iter().filter(|r| r.id.family == family).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("{family} has no parametric form")]
    NotParametric { family: Family },
    #[error("witness {witness} is not {page}-balanced as {family} requires")]
    Unbalanced { family: Family, page: PageIndex, witness: Word },
}

/// A commutation (or sandwich) family whose witness may be any balanced
/// word in a fixed page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricRelation {
    pub family: Family,
    pub page: PageIndex,
    pub variant: u8,
    /// The witness must be balanced in this page.
    pub constraint: PageIndex,
}

impl ParametricRelation {
    /// `(number')` at index `i`; `variant` selects `t` or `t'` for (37').
    pub fn new(number: u8, i: PageIndex, variant: u8) -> Result<Self, InstantiateError> {
        let family = Family::primed(number);
        let constraint = witness_page(number, i).ok_or(InstantiateError::NotParametric { family })?;
        let variants = if number == 37 { 2 } else { 1 };
        if variant >= variants {
            return Err(InstantiateError::NotParametric { family });
        }
        Ok(ParametricRelation { family, page: i, variant, constraint })
    }

    /// Every variant of `(number')` at index `i`.
    pub fn variants(number: u8, i: PageIndex) -> Vec<Self> {
        (0..2).filter_map(|v| Self::new(number, i, v).ok()).collect()
    }
}

/// Instantiates `p` with `witness` after checking its balance certificate.
pub fn instantiate_parametric(p: &ParametricRelation, witness: &Word) -> Result<Relation, InstantiateError> {
    if !is_i_balanced(witness, p.constraint) {
        return Err(InstantiateError::Unbalanced { family: p.family, page: p.constraint, witness: witness.clone() });
    }
    let (lhs, rhs) = match p.family.number {
        40 => sandwich_40(p.page, witness),
        n => {
            let t =
                commutation_factor(n, p.variant, p.page).ok_or(InstantiateError::NotParametric { family: p.family })?;
            (t.concat(witness), witness.concat(&t))
        }
    };
    Ok(Relation {
        id: RelationId { family: p.family, page: p.page, variant: p.variant, slot: None },
        lhs,
        rhs,
        ruleset: RuleSet::Derived,
        witness: Some(witness.clone()),
        superfluous: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balance::{signatures, Signature};
    use crate::w;
    use alloc::collections::BTreeMap;
    use alloc::collections::BTreeSet;

    fn p(i: u8) -> PageIndex {
        PageIndex::new(i)
    }

    #[test]
    fn sk_family_counts() {
        let mut counts = BTreeMap::new();
        for r in enumerate(RuleSet::Sk) {
            *counts.entry(r.id.family.number).or_insert(0) += 1;
        }
        let expected = [(1, 12), (2, 3), (3, 1), (4, 6), (5, 6), (6, 3), (7, 9), (8, 15), (9, 15), (10, 15)];
        assert_eq!(counts, expected.into_iter().collect());
        assert_eq!(enumerate(RuleSet::Sk).len(), 85);
        assert_eq!(official_count(RuleSet::Sk), 84);
    }

    #[test]
    fn fg_swaps_family_six() {
        let fg = enumerate(RuleSet::Fg);
        assert_eq!(fg.len(), 85);
        assert_eq!(official_count(RuleSet::Fg), 84);
        assert!(fg.iter().all(|r| r.id.family != Family::plain(6)));
        let six: Vec<_> = fg.iter().filter(|r| r.id.family == Family::primed(6)).collect();
        assert_eq!(six.len(), 3);
        assert_eq!(six[0].lhs, w!("x0 d1 d0 d2"));
        assert_eq!(six[0].rhs, w!("x0"));
    }

    #[test]
    fn superfluous_is_d2_b2() {
        let sk = enumerate(RuleSet::Sk);
        let flagged: Vec<_> = sk.iter().filter(|r| r.superfluous).collect();
        assert_eq!(flagged.len(), 1);
        assert_eq!(flagged[0].lhs, w!("d2 b2"));
        assert!(flagged[0].rhs.is_empty());
    }

    #[test]
    fn ids_unique_and_sides_distinct() {
        for set in [RuleSet::Sk, RuleSet::Fg, RuleSet::Derived] {
            let rules = enumerate(set);
            let ids: BTreeSet<_> = rules.iter().map(|r| r.id).collect();
            assert_eq!(ids.len(), rules.len(), "{set}");
            for r in &rules {
                assert_ne!(r.lhs, r.rhs, "{r}");
                assert_eq!(r.lhs.count_x(), r.rhs.count_x(), "{r}");
            }
        }
    }

    #[test]
    fn signatures_agree_except_cancellations() {
        // The cancelling relations delete a `)(` pair in one page.
        let cancel = Signature { closes: 1, opens: 1 };
        for set in [RuleSet::Sk, RuleSet::Fg, RuleSet::Derived] {
            for r in enumerate(set) {
                let (l, rr) = (signatures(&r.lhs), signatures(&r.rhs));
                if matches!(r.id.family.number, 3 | 4) {
                    assert!(r.rhs.is_empty());
                    assert_eq!(l.iter().filter(|&&s| s == cancel).count(), 1, "{r}");
                    assert_eq!(l.iter().filter(|&&s| s == Signature::default()).count(), 2, "{r}");
                } else {
                    assert_eq!(l, rr, "{r}");
                }
            }
        }
    }

    #[test]
    fn net_charge_agrees_on_every_instance() {
        let net = |w: &Word| signatures(w).map(|s| s.opens as i64 - s.closes as i64);
        for set in [RuleSet::Sk, RuleSet::Fg, RuleSet::Derived] {
            for r in enumerate(set) {
                assert_eq!(net(&r.lhs), net(&r.rhs), "{r}");
            }
        }
    }

    #[test]
    fn spot_check_instances() {
        let sk = enumerate(RuleSet::Sk);
        let find = |fam: u8, i: u8, v: u8, s: Option<u8>| {
            sk.iter()
                .find(|r| r.id == RelationId { family: Family::plain(fam), page: p(i), variant: v, slot: s })
                .unwrap()
                .clone()
        };
        let r = find(1, 0, 0, None);
        assert_eq!((r.lhs, r.rhs), (w!("a0"), w!("a1 d2")));
        let r = find(2, 0, 0, None);
        assert_eq!((r.lhs, r.rhs), (w!("x0"), w!("d1 x2 b1")));
        let r = find(9, 1, 0, Some(4));
        assert_eq!(r.lhs, w!("b2 d0 d2 b0 b0 d1 d0"));
        assert_eq!(t_word(p(0)), w!("b1 d2 d1 b2"));
        assert_eq!(t_prime_word(p(0)), w!("d2 b1 b2 d1"));
    }

    #[test]
    fn derived_spot_checks() {
        let der = enumerate(RuleSet::Derived);
        let by = |fam: u8, i: u8| der.iter().filter(move |r| r.id.family.number == fam && r.id.page == p(i));
        let r41 = by(41, 0).next().unwrap();
        assert_eq!(r41.lhs, w!("b2 b2 a0 d2 d2"));
        assert_eq!(r41.rhs, w!("b2 a0 d2 d0 d0 b2 b0 d2 b0"));
        assert_eq!(by(33, 0).count(), 7);
        assert_eq!(by(37, 0).count(), 14);
        assert_eq!(by(28, 0).next().unwrap().rhs, w!("a2 b1"));
    }

    #[test]
    fn parametric_instantiation() {
        let p34 = ParametricRelation::new(34, p(2), 0).unwrap();
        assert_eq!(p34.constraint, p(1));
        let r = instantiate_parametric(&p34, &w!("d2 c2")).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (w!("b2 c2 d2 c2"), w!("d2 c2 b2 c2")));
        assert_eq!(r.witness, Some(w!("d2 c2")));

        let p33 = ParametricRelation::new(33, p(2), 0).unwrap();
        let r = instantiate_parametric(&p33, &w!("a0")).unwrap();
        let fixed = family_instances(Family::plain(33))
            .into_iter()
            .find(|f| f.id.page == p(2) && f.witness == Some(w!("a0")))
            .unwrap();
        assert_eq!((r.lhs, r.rhs), (fixed.lhs, fixed.rhs));

        // a2 b2 projects to "((" in page 0, the constraint page of (34') at i=1
        let p34_1 = ParametricRelation::new(34, p(1), 0).unwrap();
        assert!(matches!(instantiate_parametric(&p34_1, &w!("a2 b2")), Err(InstantiateError::Unbalanced { .. })));
        assert!(ParametricRelation::new(28, p(0), 0).is_err());
        assert_eq!(ParametricRelation::variants(37, p(0)).len(), 2);
    }
}
