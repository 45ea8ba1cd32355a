//! Two-sided rewriting with relation instances, cancellation normalization
//! and bounded bidirectional search for derivations.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;

use hashbrown::HashMap;
use thiserror::Error;

use crate::balance::is_balanced;
use crate::rules::{enumerate, Family, Relation, RuleSet};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Replace the left-hand side by the right-hand side.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub position: usize,
    pub relation: Relation,
    pub direction: Direction,
}

impl RewriteStep {
    pub fn source(&self) -> &Word {
        match self.direction {
            Direction::Forward => &self.relation.lhs,
            Direction::Backward => &self.relation.rhs,
        }
    }

    pub fn target(&self) -> &Word {
        match self.direction {
            Direction::Forward => &self.relation.rhs,
            Direction::Backward => &self.relation.lhs,
        }
    }

    /// The step undoing `self` when applied to its result.
    pub fn inverse(&self) -> Self {
        RewriteStep { position: self.position, relation: self.relation.clone(), direction: self.direction.flip() }
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.direction {
            Direction::Forward => "->",
            Direction::Backward => "<-",
        };
        write!(f, "{} {arrow} @{}", self.relation.id, self.position)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("{pattern} does not occur at position {position} of {word}")]
    NoMatch { word: Word, position: usize, pattern: Word },
}

pub fn apply_step(w: &Word, step: &RewriteStep) -> Result<Word, StepError> {
    let src = step.source();
    let fits = step.position + src.len() <= w.len() && w[step.position..].starts_with(src);
    if !fits {
        return Err(StepError::NoMatch { word: w.clone(), position: step.position, pattern: src.clone() });
    }
    Ok(w.splice(step.position, src.len(), step.target()))
}

/// A start word and a chain of elementary steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<RewriteStep>,
}

impl Derivation {
    pub fn empty(start: Word) -> Self {
        Derivation { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every intermediate word, starting with `start`.
    pub fn words(&self) -> Result<Vec<Word>, StepError> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start.clone());
        for s in &self.steps {
            let next = apply_step(out.last().expect("nonempty"), s)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self) -> Result<Word, StepError> {
        let mut w = self.start.clone();
        for s in &self.steps {
            w = apply_step(&w, s)?;
        }
        Ok(w)
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: Derivation) {
        self.steps.extend(other.steps);
    }

    /// Shifts every step right by `offset` letters and wraps the start word
    /// in `prefix`/`suffix`.
    pub fn embed(&self, prefix: &Word, suffix: &Word) -> Derivation {
        Derivation {
            start: prefix.concat(&self.start).concat(suffix),
            steps: self
                .steps
                .iter()
                .map(|s| RewriteStep { position: s.position + prefix.len(), ..s.clone() })
                .collect(),
        }
    }

    /// The derivation read backwards. `end` must be the end word of `self`.
    pub fn reversed(&self, end: Word) -> Derivation {
        Derivation { start: end, steps: self.steps.iter().rev().map(RewriteStep::inverse).collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Edge {
    mv: u32,
    pos: u32,
}

#[derive(Clone, Debug)]
struct Move {
    rel: usize,
    direction: Direction,
}

/// Relations prepared for matching: both directions of every relation, keyed
/// by the first letter of the side being replaced.
#[derive(Clone, Debug)]
pub struct RuleIndex {
    relations: Vec<Relation>,
    moves: Vec<Move>,
    by_first: [Vec<u32>; 15],
    insertions: Vec<u32>,
    erasers: Vec<u32>,
}

impl RuleIndex {
    pub fn new(relations: Vec<Relation>) -> Self {
        let mut moves = Vec::with_capacity(relations.len() * 2);
        let mut by_first: [Vec<u32>; 15] = Default::default();
        let mut insertions = Vec::new();
        let mut erasers = Vec::new();
        for (rel, r) in relations.iter().enumerate() {
            for direction in [Direction::Forward, Direction::Backward] {
                let id = moves.len() as u32;
                let (src, dst) = match direction {
                    Direction::Forward => (&r.lhs, &r.rhs),
                    Direction::Backward => (&r.rhs, &r.lhs),
                };
                match src.first() {
                    Some(l) => by_first[l.code()].push(id),
                    None => insertions.push(id),
                }
                if dst.is_empty() && !src.is_empty() {
                    erasers.push(id);
                }
                moves.push(Move { rel, direction });
            }
        }
        RuleIndex { relations, moves, by_first, insertions, erasers }
    }

    pub fn from_sets(sets: &[RuleSet]) -> Self {
        Self::new(sets.iter().flat_map(|&s| enumerate(s)).collect())
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn families(&self) -> Vec<Family> {
        let mut f: Vec<_> = self.relations.iter().map(|r| r.id.family).collect();
        f.sort();
        f.dedup();
        f
    }

    fn sides(&self, mv: u32) -> (&Word, &Word) {
        let m = &self.moves[mv as usize];
        let r = &self.relations[m.rel];
        match m.direction {
            Direction::Forward => (&r.lhs, &r.rhs),
            Direction::Backward => (&r.rhs, &r.lhs),
        }
    }

    fn step(&self, e: Edge) -> RewriteStep {
        let m = &self.moves[e.mv as usize];
        RewriteStep { position: e.pos as usize, relation: self.relations[m.rel].clone(), direction: m.direction }
    }

    fn apply(&self, w: &Word, e: Edge) -> Word {
        let (src, dst) = self.sides(e.mv);
        w.splice(e.pos as usize, src.len(), dst)
    }

    /// Calls `f` with every single-step rewrite of `w` no longer than
    /// `max_len`.
    fn for_each_successor(&self, w: &Word, max_len: usize, with_insertions: bool, mut f: impl FnMut(Edge, Word)) {
        let n = w.len();
        for pos in 0..n {
            for &mv in &self.by_first[w[pos].code()] {
                let (src, dst) = self.sides(mv);
                if w[pos..].starts_with(src) && n - src.len() + dst.len() <= max_len {
                    let e = Edge { mv, pos: pos as u32 };
                    f(e, w.splice(pos, src.len(), dst));
                }
            }
        }
        if with_insertions {
            for &mv in &self.insertions {
                let (_, dst) = self.sides(mv);
                if n + dst.len() > max_len {
                    continue;
                }
                for pos in 0..=n {
                    f(Edge { mv, pos: pos as u32 }, w.splice(pos, 0, dst));
                }
            }
        }
    }

    /// Deletes erasable subwords (those equal to a side whose other side is
    /// empty), always the leftmost one first, until none remain.
    fn normalize(&self, w: Word, trail: &mut Vec<Edge>) -> Word {
        let mut w = w;
        'outer: loop {
            for pos in 0..w.len() {
                for &mv in &self.erasers {
                    let (src, _) = self.sides(mv);
                    if src.first() == Some(&w[pos]) && w[pos..].starts_with(src) {
                        let e = Edge { mv, pos: pos as u32 };
                        w = self.apply(&w, e);
                        trail.push(e);
                        continue 'outer;
                    }
                }
            }
            return w;
        }
    }

    fn derivation(&self, start: Word, edges: &[Edge]) -> Derivation {
        Derivation { start, steps: edges.iter().map(|&e| self.step(e)).collect() }
    }

    /// Every single-step rewrite of `w` whose result has at most `max_len`
    /// letters. Insertions of whole sides are included when asked for.
    pub fn applicable_steps(&self, w: &Word, max_len: usize, with_insertions: bool) -> Vec<RewriteStep> {
        let mut out = Vec::new();
        self.for_each_successor(w, max_len, with_insertions, |e, _| out.push(self.step(e)));
        out
    }

    /// Normalizes `w` with the erasing relations of this index.
    pub fn normalize_word(&self, w: &Word) -> (Word, Derivation) {
        let mut trail = Vec::new();
        let out = self.normalize(w.clone(), &mut trail);
        (out, self.derivation(w.clone(), &trail))
    }
}

/// Deletes `b_i d_i`, `d_i b_i` and `d_0 d_1 d_2` (leftmost first) until no
/// such subword remains.
pub fn cancel_normalize(w: &Word) -> (Word, Derivation) {
    let rels = enumerate(RuleSet::Sk)
        .into_iter()
        .filter(|r| matches!(r.id.family.number, 3 | 4) && !r.id.family.prime)
        .collect();
    RuleIndex::new(rels).normalize_word(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Breadth-first from both ends, expanding the smaller frontier.
    #[default]
    Bidirectional,
    /// Best-first from the start word, always expanding a shortest unexpanded
    /// word.
    ShortestFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Longest intermediate word; `None` means `max(|w1|, |w2|) + 6`.
    pub max_len: Option<usize>,
    /// Most words whose successors get generated.
    pub max_nodes: usize,
    /// Longest derivation, counting only non-cancelling steps when
    /// `normalize` is set.
    pub max_depth: usize,
    /// Deduplicate states modulo leftmost cancellation. Insertions of
    /// erasable subwords are skipped in this mode since normalization would
    /// immediately undo them.
    pub normalize: bool,
    pub strategy: Strategy,
    pub rulesets: Vec<RuleSet>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_len: None,
            max_nodes: 1_000_000,
            max_depth: 64,
            normalize: true,
            strategy: Strategy::Bidirectional,
            rulesets: vec![RuleSet::Sk],
        }
    }
}

impl SearchBudget {
    pub fn with_sets(mut self, sets: &[RuleSet]) -> Self {
        self.rulesets = sets.to_vec();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Derivation),
    /// Budget exhausted. Not a proof of inequivalence.
    Unknown {
        visited: usize,
    },
}

impl SearchOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SearchOutcome::Proved(d) => Some(d),
            SearchOutcome::Unknown { .. } => None,
        }
    }
}

struct Node {
    word: Word,
    parent: u32,
    depth: u32,
    /// Edges leading from the parent's word to this word.
    trail: Vec<Edge>,
}

struct Side {
    nodes: Vec<Node>,
    index: HashMap<Word, u32>,
    frontier: Vec<u32>,
    depth: usize,
}

impl Side {
    fn new(root: Word, trail: Vec<Edge>) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Side { nodes: vec![Node { word: root, parent: u32::MAX, depth: 0, trail }], index, frontier: vec![0], depth: 0 }
    }

    /// Edges from the root's original (unnormalized) word to node `n`.
    fn path_to(&self, mut n: u32) -> Vec<Edge> {
        let mut chunks = Vec::new();
        loop {
            let node = &self.nodes[n as usize];
            chunks.push(&node.trail);
            if node.parent == u32::MAX {
                break;
            }
            n = node.parent;
        }
        chunks.into_iter().rev().flatten().copied().collect()
    }

    /// Records `w` as a child of `parent` unless already seen.
    fn add(&mut self, parent: u32, w: Word, trail: Vec<Edge>) -> Option<u32> {
        if self.index.contains_key(&w) {
            return None;
        }
        let id = self.nodes.len() as u32;
        let depth = self.nodes[parent as usize].depth + 1;
        self.index.insert(w.clone(), id);
        self.nodes.push(Node { word: w, parent, depth, trail });
        Some(id)
    }
}

enum Expansion {
    Met(u32, u32),
    Exhausted,
    Continue,
}

struct Searcher<'a> {
    rules: &'a RuleIndex,
    max_len: usize,
    max_nodes: usize,
    normalize: bool,
    visited: usize,
}

impl Searcher<'_> {
    fn root(&self, w: &Word) -> Side {
        let mut trail = Vec::new();
        let root = if self.normalize { self.rules.normalize(w.clone(), &mut trail) } else { w.clone() };
        Side::new(root, trail)
    }

    /// Generates the successors of node `parent`, adding new ones to `side`.
    /// Stops early and returns the new node when `hit` accepts it.
    fn successors(
        &mut self,
        side: &mut Side,
        parent: u32,
        mut hit: impl FnMut(&Word) -> bool,
        mut added: impl FnMut(u32, &Word),
    ) -> Option<u32> {
        self.visited += 1;
        let pw = side.nodes[parent as usize].word.clone();
        let mut found = None;
        self.rules.for_each_successor(&pw, self.max_len, !self.normalize, |e, w| {
            if found.is_some() {
                return;
            }
            let mut trail = vec![e];
            let w = if self.normalize { self.rules.normalize(w, &mut trail) } else { w };
            if let Some(id) = side.add(parent, w, trail) {
                let w = &side.nodes[id as usize].word;
                added(id, w);
                if hit(w) {
                    found = Some(id);
                }
            }
        });
        found
    }

    /// Expands one full BFS level of `side`, stopping when a word known to
    /// `other` (or accepted by `goal`) is reached.
    fn expand_level(&mut self, side: &mut Side, other: &Side, goal: &dyn Fn(&Word) -> bool) -> Expansion {
        let frontier = core::mem::take(&mut side.frontier);
        side.depth += 1;
        let mut next = Vec::new();
        for parent in frontier {
            if self.visited >= self.max_nodes {
                return Expansion::Exhausted;
            }
            let mut meet = u32::MAX;
            let hit = |w: &Word| match other.index.get(w) {
                Some(&o) => {
                    meet = o;
                    true
                }
                None => goal(w),
            };
            if let Some(id) = self.successors(side, parent, hit, |id, _| next.push(id)) {
                return Expansion::Met(id, meet);
            }
        }
        side.frontier = next;
        if side.frontier.is_empty() {
            Expansion::Exhausted
        } else {
            Expansion::Continue
        }
    }

    /// Best-first search from the root of `side`, shortest words first and
    /// oldest first among equals.
    fn shortest_first(&mut self, side: &mut Side, max_depth: usize, goal: &dyn Fn(&Word) -> bool) -> Option<u32> {
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((side.nodes[0].word.len(), 0u32)));
        while let Some(Reverse((_, n))) = heap.pop() {
            if self.visited >= self.max_nodes {
                return None;
            }
            if side.nodes[n as usize].depth as usize >= max_depth {
                continue;
            }
            let found = self.successors(side, n, goal, |id, w| heap.push(Reverse((w.len(), id))));
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Searches for a derivation from `w1` to `w2` using the relations in
/// `rules`.
pub fn search_equiv_with(rules: &RuleIndex, w1: &Word, w2: &Word, budget: &SearchBudget) -> SearchOutcome {
    let max_len = budget.max_len.unwrap_or(w1.len().max(w2.len()) + 6);
    let mut s = Searcher { rules, max_len, max_nodes: budget.max_nodes, normalize: budget.normalize, visited: 0 };
    let mut fwd = s.root(w1);
    let bwd = s.root(w2);
    let finish = |fwd: &Side, bwd: &Side, f: u32, b: u32| {
        let mut edges = fwd.path_to(f);
        let back = bwd.path_to(b);
        edges.extend(back.iter().rev().map(|e| Edge { mv: e.mv ^ 1, pos: e.pos }));
        rules.derivation(w1.clone(), &edges)
    };
    if fwd.nodes[0].word == bwd.nodes[0].word {
        return SearchOutcome::Proved(finish(&fwd, &bwd, 0, 0));
    }
    match budget.strategy {
        Strategy::ShortestFirst => {
            let target = bwd.nodes[0].word.clone();
            let goal = move |w: &Word| *w == target;
            if let Some(n) = s.shortest_first(&mut fwd, budget.max_depth, &goal) {
                return SearchOutcome::Proved(finish(&fwd, &bwd, n, 0));
            }
        }
        Strategy::Bidirectional => {
            let mut bwd = bwd;
            let no_goal = |_: &Word| false;
            while fwd.depth + bwd.depth < budget.max_depth {
                let forward = fwd.frontier.len() <= bwd.frontier.len();
                let result = if forward {
                    s.expand_level(&mut fwd, &bwd, &no_goal)
                } else {
                    s.expand_level(&mut bwd, &fwd, &no_goal)
                };
                match result {
                    Expansion::Met(a, b) => {
                        let (f, bk) = if forward { (a, b) } else { (b, a) };
                        return SearchOutcome::Proved(finish(&fwd, &bwd, f, bk));
                    }
                    Expansion::Exhausted => break,
                    Expansion::Continue => {}
                }
            }
        }
    }
    SearchOutcome::Unknown { visited: s.visited }
}

/// Searches with the rule sets named in `budget`.
pub fn search_equiv(w1: &Word, w2: &Word, budget: &SearchBudget) -> SearchOutcome {
    let rules = RuleIndex::from_sets(&budget.rulesets);
    search_equiv_with(&rules, w1, w2, budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CentralityOutcome {
    /// A balanced word equivalent to the input, with the derivation reaching it.
    BalancedWitness(Word, Derivation),
    Unknown {
        visited: usize,
    },
}

/// Searches from `w` for an equivalent balanced word. Finding one certifies
/// that `w` is central; not finding one proves nothing.
pub fn centrality_witness_with(rules: &RuleIndex, w: &Word, budget: &SearchBudget) -> CentralityOutcome {
    if is_balanced(w) {
        return CentralityOutcome::BalancedWitness(w.clone(), Derivation::empty(w.clone()));
    }
    let mut s = Searcher {
        rules,
        max_len: budget.max_len.unwrap_or(w.len() + 6),
        max_nodes: budget.max_nodes,
        normalize: budget.normalize,
        visited: 0,
    };
    let mut side = s.root(w);
    let done = |side: &Side, n: u32| {
        let d = rules.derivation(w.clone(), &side.path_to(n));
        CentralityOutcome::BalancedWitness(side.nodes[n as usize].word.clone(), d)
    };
    if is_balanced(&side.nodes[0].word) {
        return done(&side, 0);
    }
    match budget.strategy {
        Strategy::ShortestFirst => {
            if let Some(n) = s.shortest_first(&mut side, budget.max_depth, &is_balanced) {
                return done(&side, n);
            }
        }
        Strategy::Bidirectional => {
            let mut nothing = Side::new(Word::empty(), Vec::new());
            nothing.index.clear();
            while side.depth < budget.max_depth {
                match s.expand_level(&mut side, &nothing, &is_balanced) {
                    Expansion::Met(n, _) => return done(&side, n),
                    Expansion::Exhausted => break,
                    Expansion::Continue => {}
                }
            }
        }
    }
    CentralityOutcome::Unknown { visited: s.visited }
}

pub fn centrality_witness(w: &Word, budget: &SearchBudget) -> CentralityOutcome {
    let rules = RuleIndex::from_sets(&budget.rulesets);
    centrality_witness_with(&rules, w, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{superfluous_id, RelationId};
    use crate::w;
    use crate::word::PageIndex;

    fn rel(fam: u8, i: u8, v: u8) -> Relation {
        enumerate(RuleSet::Sk)
            .into_iter()
            .find(|r| {
                r.id == RelationId { family: Family::plain(fam), page: PageIndex::new(i), variant: v, slot: None }
            })
            .unwrap()
    }

    #[test]
    fn apply_step_examples() {
        let s = RewriteStep { position: 0, relation: rel(4, 0, 0), direction: Direction::Forward };
        assert_eq!(apply_step(&w!("b0 d0"), &s).unwrap(), Word::empty());
        let s = RewriteStep { position: 0, relation: rel(1, 0, 0), direction: Direction::Forward };
        assert_eq!(apply_step(&w!("a0 c0"), &s).unwrap(), w!("a1 d2 c0"));
        let s = RewriteStep { position: 0, relation: rel(2, 0, 0), direction: Direction::Backward };
        assert_eq!(apply_step(&w!("d1 x2 b1"), &s).unwrap(), w!("x0"));
        let s = RewriteStep { position: 1, relation: rel(2, 0, 0), direction: Direction::Backward };
        assert!(apply_step(&w!("d1 x2 b1"), &s).is_err());
    }

    #[test]
    fn step_inverse_round_trips() {
        let s = RewriteStep { position: 1, relation: rel(1, 0, 0), direction: Direction::Forward };
        let w = w!("c0 a0 c0");
        let v = apply_step(&w, &s).unwrap();
        assert_eq!(v.len(), w.len() - 1 + 2);
        assert_eq!(apply_step(&v, &s.inverse()).unwrap(), w);
    }

    #[test]
    fn cancel_normalize_examples() {
        let (n, d) = cancel_normalize(&w!("a1 d2 b2 c1"));
        assert_eq!(n, w!("a1 c1"));
        assert_eq!(d.len(), 1);
        assert_eq!(d.end().unwrap(), n);
        assert_eq!(cancel_normalize(&w!("d0 d1 d2")).0, Word::empty());
        let (n, d) = cancel_normalize(&w!("a0 c0"));
        assert_eq!(n, w!("a0 c0"));
        assert!(d.is_empty());
    }

    #[test]
    fn search_examples() {
        let budget = SearchBudget::default();
        let out = search_equiv(&w!("b0 d0"), &Word::empty(), &budget);
        let d = out.derivation().unwrap();
        assert_eq!(d.len(), 1);

        let out = search_equiv(&w!("a0 c0"), &w!("a1 c1"), &budget);
        let d = out.derivation().expect("a0 c0 ~ a1 c1");
        assert_eq!(d.end().unwrap(), w!("a1 c1"));
        assert!(d.len() <= 4);

        let small = SearchBudget { max_nodes: 2_000, ..SearchBudget::default() };
        assert!(!search_equiv(&w!("a0"), &w!("c0"), &small).is_proved());
    }

    #[test]
    fn raw_search_reaches_superfluous_instance() {
        let rels: Vec<_> = enumerate(RuleSet::Sk)
            .into_iter()
            .filter(|r| matches!(r.id.family.number, 3 | 4) && r.id != superfluous_id())
            .collect();
        let idx = RuleIndex::new(rels);
        let budget = SearchBudget {
            normalize: false,
            max_nodes: 10_000,
            max_len: Some(10),
            strategy: Strategy::ShortestFirst,
            ..SearchBudget::default()
        };
        let out = search_equiv_with(&idx, &w!("d2 b2"), &Word::empty(), &budget);
        let d = out.derivation().expect("d2 b2 derivable");
        assert_eq!(d.end().unwrap(), Word::empty());
        assert!(d.steps.iter().all(|s| s.relation.id != superfluous_id()));
    }

    #[test]
    fn centrality_examples() {
        let wk = w!("a0 a1 b2 b0 x0 b2 d2 c1 c2");
        match centrality_witness(&wk, &SearchBudget::default()) {
            CentralityOutcome::BalancedWitness(v, d) => {
                assert_eq!(v, wk);
                assert!(d.is_empty());
            }
            other => panic!("{other:?}"),
        }
        let small = SearchBudget { max_nodes: 5_000, ..SearchBudget::default() };
        assert!(matches!(centrality_witness(&w!("a0"), &small), CentralityOutcome::Unknown { .. }));
    }
}
