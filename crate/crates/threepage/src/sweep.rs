//! Geometric soundness of the relation tables: both sides of every instance,
//! placed in one balanced context, must give embeddings with the same
//! number of circles and singular points.

use rayon::prelude::*;
use threepage_core::geometry::{balanced_context, reconstruct, stats, ContextKind};
use threepage_core::rules::{enumerate, Relation, RuleSet};
use threepage_core::Word;

#[derive(Clone, Debug)]
pub struct SweepCase {
    pub relation: Relation,
    /// `None` when no balanced context was found.
    pub context: Option<(Word, Word, ContextKind)>,
    /// `(circles, singular points)` of the padded left and right sides.
    pub counts: Option<[(usize, usize); 2]>,
}

impl SweepCase {
    pub fn agrees(&self) -> bool {
        self.counts.is_some_and(|[l, r]| l == r)
    }
}

fn counts(w: &Word) -> Option<(usize, usize)> {
    let s = stats(&reconstruct(w).ok()?);
    Some((s.circles, s.singular_points))
}

pub fn sweep_relation(r: &Relation) -> SweepCase {
    let context = balanced_context(&[&r.lhs, &r.rhs]);
    let counts = context.as_ref().and_then(|(u, v, _)| {
        let l = counts(&u.concat(&r.lhs).concat(v))?;
        let rr = counts(&u.concat(&r.rhs).concat(v))?;
        Some([l, rr])
    });
    SweepCase { relation: r.clone(), context, counts }
}

/// Every instance of the given sets, in parallel.
pub fn soundness_sweep(sets: &[RuleSet]) -> Vec<SweepCase> {
    let relations: Vec<Relation> = sets.iter().flat_map(|&s| enumerate(s)).collect();
    relations.par_iter().map(sweep_relation).collect()
}
