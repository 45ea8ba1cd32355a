//! Decoding balanced words into three-page embeddings.
//!
//! Every letter is a point on the axis. In each page the opening and closing
//! brackets of the projection are matched by a stack scan, giving
//! non-crossing arcs. Following arcs through the points traces the circles
//! of the embedded graph: a transit point joins its two arc ends, a singular
//! point `x_s` joins the two ends in page `s+1` and, separately, the two ends
//! in page `s-1`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::balance::{page_action, signature, PageAction};
use crate::tangle::knot_closure_pad;
use crate::word::{a, c, Letter, PageIndex, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Two arc ends, in different pages.
    Transit,
    /// Four arc ends, two in each page other than the letter's own.
    Singular,
}

/// An arc between axis points `start < end` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub letters: Vec<Letter>,
    /// Arcs of each page, sorted.
    pub arcs: [Vec<Arc>; 3],
}

impl Embedding {
    pub fn axis_points(&self) -> usize {
        self.letters.len()
    }

    pub fn kind(&self, point: usize) -> VertexKind {
        if self.letters[point].is_singular() {
            VertexKind::Singular
        } else {
            VertexKind::Transit
        }
    }

    /// Arcs of `page` as 1-based pairs.
    pub fn arcs_one_based(&self, page: PageIndex) -> Vec<(usize, usize)> {
        self.arcs[page.value() as usize].iter().map(|a| (a.start + 1, a.end + 1)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unmatched {
    /// A closing bracket with nothing open.
    Close,
    /// An opening bracket never closed.
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("word is not balanced in page {page}: unmatched {} at letter {position}", match .kind { Unmatched::Close => "closing bracket", Unmatched::Open => "opening bracket" })]
pub struct ReconstructError {
    pub page: PageIndex,
    /// 1-based letter index.
    pub position: usize,
    pub kind: Unmatched,
}

pub fn reconstruct(w: &Word) -> Result<Embedding, ReconstructError> {
    let mut arcs: [Vec<Arc>; 3] = Default::default();
    for page in PageIndex::ALL {
        let out = &mut arcs[page.value() as usize];
        let mut stack: Vec<usize> = Vec::new();
        let err = |position: usize, kind| ReconstructError { page, position: position + 1, kind };
        for (j, &l) in w.iter().enumerate() {
            let action = page_action(l, page);
            if matches!(action, PageAction::Close | PageAction::CloseOpen) {
                let start = stack.pop().ok_or_else(|| err(j, Unmatched::Close))?;
                out.push(Arc { start, end: j });
            }
            if matches!(action, PageAction::Open | PageAction::CloseOpen) {
                stack.push(j);
            }
        }
        if let Some(&j) = stack.last() {
            return Err(err(j, Unmatched::Open));
        }
        out.sort();
    }
    Ok(Embedding { letters: w.to_vec(), arcs })
}

/// One end of an arc at an axis point.
#[derive(Clone, Copy, Debug)]
struct End {
    arc: usize,
    page: PageIndex,
}

struct ArcGraph {
    /// `(page, arc)` for each global arc id.
    arcs: Vec<(PageIndex, Arc)>,
    /// For each arc, the arc continuing past its start and past its end.
    next: Vec<[usize; 2]>,
}

fn arc_graph(e: &Embedding) -> ArcGraph {
    let mut arcs = Vec::new();
    let mut ends: Vec<Vec<End>> = vec![Vec::new(); e.axis_points()];
    for page in PageIndex::ALL {
        for &a in &e.arcs[page.value() as usize] {
            let id = arcs.len();
            arcs.push((page, a));
            ends[a.start].push(End { arc: id, page });
            ends[a.end].push(End { arc: id, page });
        }
    }
    let mut next = vec![[usize::MAX; 2]; arcs.len()];
    let mut link = |x: usize, y: usize, point: usize, arcs: &[(PageIndex, Arc)]| {
        for (u, v) in [(x, y), (y, x)] {
            let side = if arcs[u].1.start == point { 0 } else { 1 };
            next[u][side] = v;
        }
    };
    for (point, here) in ends.iter().enumerate() {
        match e.kind(point) {
            VertexKind::Transit => {
                debug_assert_eq!(here.len(), 2);
                link(here[0].arc, here[1].arc, point, &arcs);
            }
            VertexKind::Singular => {
                debug_assert_eq!(here.len(), 4);
                let s = e.letters[point].page();
                for page in [s.next(), s.prev()] {
                    let pair: Vec<_> = here.iter().filter(|x| x.page == page).collect();
                    debug_assert_eq!(pair.len(), 2);
                    link(pair[0].arc, pair[1].arc, point, &arcs);
                }
            }
        }
    }
    ArcGraph { arcs, next }
}

/// Each circle as the cyclic sequence of 0-based axis points it passes
/// through, starting and ending at its smallest point.
pub fn trace_circles(e: &Embedding) -> Vec<Vec<usize>> {
    let g = arc_graph(e);
    let mut seen = vec![false; g.arcs.len()];
    let mut out = Vec::new();
    // Arcs are visited in order of their smallest endpoint, so each circle
    // starts at its smallest point.
    let mut order: Vec<usize> = (0..g.arcs.len()).collect();
    order.sort_by_key(|&i| (g.arcs[i].1.start, g.arcs[i].1.end));
    for first in order {
        if seen[first] {
            continue;
        }
        let start = g.arcs[first].1.start;
        let mut path = vec![start];
        let (mut arc, mut at) = (first, g.arcs[first].1.end);
        loop {
            seen[arc] = true;
            path.push(at);
            let (_, a) = g.arcs[arc];
            let nxt = g.next[arc][if a.start == at { 0 } else { 1 }];
            if nxt == first && at == start {
                break;
            }
            let (_, b) = g.arcs[nxt];
            at = if b.start == at { b.end } else { b.start };
            arc = nxt;
        }
        out.push(path);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconStats {
    pub axis_points: usize,
    pub singular_points: usize,
    pub circles: usize,
    /// 1-based arcs of pages 0, 1 and 2.
    pub arcs: [Vec<(usize, usize)>; 3],
}

pub fn stats(e: &Embedding) -> ReconStats {
    ReconStats {
        axis_points: e.axis_points(),
        singular_points: e.letters.iter().filter(|l| l.is_singular()).count(),
        circles: trace_circles(e).len(),
        arcs: PageIndex::ALL.map(|p| e.arcs_one_based(p)),
    }
}

const SPACING: usize = 40;

/// A standalone SVG drawing: page 0 arcs above the axis, pages 1 and 2
/// below, page 2 dashed, singular points as larger discs.
pub fn render_svg(e: &Embedding) -> String {
    let n = e.axis_points();
    let reach = |p: usize| e.arcs[p].iter().map(|a| (a.end - a.start) * SPACING / 2).max().unwrap_or(0);
    let above = reach(0) + SPACING / 2;
    let below = reach(1).max(reach(2)) + SPACING / 2;
    let width = (n + 1) * SPACING;
    let height = above + below;
    let y = above;
    let x = |j: usize| (j + 1) * SPACING;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, r#"<line x1="0" y1="{y}" x2="{width}" y2="{y}" stroke="black" stroke-width="1"/>"#);
    for page in 0..3 {
        let (sweep, dash) = match page {
            0 => (1, ""),
            1 => (0, ""),
            _ => (0, r#" stroke-dasharray="6 4""#),
        };
        for a in &e.arcs[page] {
            let r = (a.end - a.start) * SPACING / 2;
            let _ = writeln!(
                s,
                r#"<path class="page{page}" d="M {} {y} A {r} {r} 0 0 {sweep} {} {y}" fill="none" stroke="black" stroke-width="1.5"{dash}/>"#,
                x(a.start),
                x(a.end),
            );
        }
    }
    for (j, l) in e.letters.iter().enumerate() {
        let r = if l.is_singular() { 6 } else { 3 };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{y}" r="{r}" fill="black"><title>{j1} {l}</title></circle>"#,
            x(j),
            j1 = j + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextKind {
    /// `a0^l a1^l _ c1^l c0^l`.
    KnotClosure { l: u32 },
    /// `a0^p a1^q a2^r _ c0^s c1^t c2^u`.
    General,
}

/// Words `u`, `v` with `u w v` balanced for every `w` in `sides`, trying
/// `a0^l a1^l _ c1^l c0^l` for `l <= 8` first and then general runs of
/// `a` letters before and `c` letters after.
pub fn balanced_context(sides: &[&Word]) -> Option<(Word, Word, ContextKind)> {
    for l in 0..=8 {
        let u = knot_closure_pad(&Word::empty(), l);
        let (pre, post) = u.split_at(2 * l as usize);
        let (pre, post) = (Word::from_letters(pre.to_vec()), Word::from_letters(post.to_vec()));
        if sides.iter().all(|w| crate::balance::is_balanced(&pre.concat(w).concat(&post))) {
            return Some((pre, post, ContextKind::KnotClosure { l }));
        }
    }
    let sig = |w: &Word| PageIndex::ALL.map(|p| signature(w, p));
    let sigs: Vec<_> = sides.iter().map(|w| sig(w)).collect();
    let need = |p: usize| sigs.iter().map(|s| s[p].closes).max().unwrap_or(0);
    let net = |p: usize| sigs.first().map_or(0, |s| s[p].opens as i64 - s[p].closes as i64);
    if sigs.iter().any(|s| (0..3).any(|p| s[p].opens as i64 - s[p].closes as i64 != net(p))) {
        return None;
    }
    let bound = 2 + (0..3).map(need).max().unwrap_or(0) as i64 + (0..3).map(|p| net(p).abs()).max().unwrap_or(0);
    // Letter `a_s` opens pages `s+1` and `s-1`; `c_s` closes them.
    let mut best: Option<([i64; 3], [i64; 3])> = None;
    for p0 in 0..=bound {
        for p1 in 0..=bound {
            for p2 in 0..=bound {
                let opens = [p1 + p2, p0 + p2, p0 + p1];
                if (0..3).any(|p| opens[p] < need(p) as i64) {
                    continue;
                }
                let close = [opens[0] + net(0), opens[1] + net(1), opens[2] + net(2)];
                let total = close[0] + close[1] + close[2];
                if total % 2 != 0 {
                    continue;
                }
                let half = total / 2;
                let q = [half - close[0], half - close[1], half - close[2]];
                if q.iter().any(|&v| v < 0) {
                    continue;
                }
                let size = p0 + p1 + p2 + q.iter().sum::<i64>();
                if best.is_none_or(|(bp, bq)| size < bp.iter().sum::<i64>() + bq.iter().sum::<i64>()) {
                    best = Some(([p0, p1, p2], q));
                }
            }
        }
    }
    let (pa, qc) = best?;
    let run = |f: fn(PageIndex) -> Letter, counts: [i64; 3]| -> Word {
        PageIndex::ALL.iter().flat_map(|&i| core::iter::repeat_n(f(i), counts[i.value() as usize] as usize)).collect()
    };
    let (u, v) = (run(a, pa), run(c, qc));
    debug_assert!(sides.iter().all(|w| crate::balance::is_balanced(&u.concat(w).concat(&v))));
    Some((u, v, ContextKind::General))
}

/// Short human-readable description of a circle, e.g. `1-3-8-5-1`.
pub fn format_circle(points: &[usize]) -> String {
    let mut s = String::new();
    for (n, p) in points.iter().enumerate() {
        if n > 0 {
            s.push('-');
        }
        s.push_str(&format!("{}", p + 1));
    }
    s
}
