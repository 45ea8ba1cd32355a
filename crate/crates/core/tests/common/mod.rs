#![allow(dead_code)]

use threepage_core::word::{Letter, LetterKind, PageIndex};
use threepage_core::Word;

pub fn p(i: u8) -> PageIndex {
    PageIndex::new(i)
}

pub fn letter(kind: LetterKind, page: u8) -> Letter {
    Letter::new(kind, p(page % 3))
}

/// Page behaviour written out from the letter name alone: `None` when the
/// letter is a bullet in `page`, else `(closes, opens)`.
pub fn oracle_action(l: Letter, page: u8) -> Option<(bool, bool)> {
    let name = l.to_string();
    let mut chars = name.chars();
    let kind = chars.next().unwrap();
    let s = chars.next().unwrap().to_digit(10).unwrap() as u8;
    if page == s {
        return None;
    }
    let up = page == (s + 1) % 3;
    Some(match kind {
        'a' => (false, true),
        'c' => (true, false),
        'b' => (!up, up),
        'd' => (up, !up),
        'x' => (true, true),
        _ => unreachable!(),
    })
}

fn legal(l: Letter, open: &[usize; 3]) -> bool {
    (0..3u8).all(|q| match oracle_action(l, q) {
        Some((true, _)) => open[q as usize] > 0,
        _ => true,
    })
}

fn apply(l: Letter, open: &mut [usize; 3]) {
    for q in 0..3u8 {
        if let Some((close, op)) = oracle_action(l, q) {
            if close {
                open[q as usize] -= 1;
            }
            if op {
                open[q as usize] += 1;
            }
        }
    }
}

/// A balanced word steered by `choices`: each choice picks among the
/// letters that keep every page prefix non-negative, then the open
/// brackets are closed with `c` and `d` letters.
pub fn balanced_word(choices: &[u8]) -> Word {
    let all: Vec<Letter> = Letter::all().collect();
    let mut open = [0usize; 3];
    let mut out = Vec::new();
    for &ch in choices {
        let cands: Vec<Letter> = all.iter().copied().filter(|&l| legal(l, &open)).collect();
        let l = cands[ch as usize % cands.len()];
        apply(l, &mut open);
        out.push(l);
    }
    loop {
        let pos: Vec<u8> = (0..3u8).filter(|&q| open[q as usize] > 0).collect();
        let l = match pos.len() {
            0 => break,
            1 => letter(LetterKind::D, pos[0] + 2),
            _ => letter(LetterKind::C, 3 - pos[0] - pos[1]),
        };
        apply(l, &mut open);
        out.push(l);
    }
    Word::from_letters(out)
}

/// A word balanced in page `i` only.
pub fn i_balanced_word(choices: &[u8], i: u8) -> Word {
    let all: Vec<Letter> = Letter::all().collect();
    let mut depth = 0usize;
    let mut out = Vec::new();
    let step = |l: Letter, depth: &mut usize| {
        if let Some((close, op)) = oracle_action(l, i) {
            if close {
                *depth -= 1;
            }
            if op {
                *depth += 1;
            }
        }
    };
    for &ch in choices {
        let cands: Vec<Letter> =
            all.iter().copied().filter(|&l| !matches!(oracle_action(l, i), Some((true, _))) || depth > 0).collect();
        let l = cands[ch as usize % cands.len()];
        step(l, &mut depth);
        out.push(l);
    }
    while depth > 0 {
        out.push(letter(LetterKind::C, i + 1));
        depth -= 1;
    }
    Word::from_letters(out)
}

/// An `i`-balanced word over `a_i b_i c_i d_i x_i b_{i-1} d_{i-1}`.
pub fn restricted_word(choices: &[u8], i: u8) -> Word {
    let bullets = [LetterKind::A, LetterKind::B, LetterKind::C, LetterKind::D, LetterKind::X];
    let mut depth = 0usize;
    let mut out = Vec::new();
    for &ch in choices {
        match ch % 8 {
            0 | 1 => {
                out.push(letter(LetterKind::B, i + 2));
                depth += 1;
            }
            2 | 3 if depth > 0 => {
                out.push(letter(LetterKind::D, i + 2));
                depth -= 1;
            }
            k => out.push(letter(bullets[(k as usize + ch as usize / 8) % 5], i)),
        }
    }
    for _ in 0..depth {
        out.push(letter(LetterKind::D, i + 2));
    }
    Word::from_letters(out)
}

/// Arcs found by repeatedly removing an adjacent `(` `)` pair from the
/// token list, plus the circle count from a union-find over arcs. `None`
/// when some page does not reduce to nothing.
pub struct OracleEmbedding {
    pub arcs: [Vec<(usize, usize)>; 3],
    pub circles: usize,
}

pub fn oracle_embedding(w: &Word) -> Option<OracleEmbedding> {
    let mut arcs: [Vec<(usize, usize)>; 3] = Default::default();
    for q in 0..3u8 {
        let mut toks: Vec<(usize, bool)> = Vec::new();
        for (j, &l) in w.iter().enumerate() {
            if let Some((close, op)) = oracle_action(l, q) {
                if close {
                    toks.push((j, false));
                }
                if op {
                    toks.push((j, true));
                }
            }
        }
        while !toks.is_empty() {
            let k = (0..toks.len() - 1).find(|&k| toks[k].1 && !toks[k + 1].1)?;
            arcs[q as usize].push((toks[k].0 + 1, toks[k + 1].0 + 1));
            toks.drain(k..k + 2);
        }
        arcs[q as usize].sort();
    }
    let ids: Vec<(usize, (usize, usize))> = (0..3).flat_map(|q| arcs[q].iter().map(move |&a| (q, a))).collect();
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for (j, &l) in w.iter().enumerate() {
        let at: Vec<(usize, usize)> = ids
            .iter()
            .enumerate()
            .filter(|(_, (_, a))| a.0 == j + 1 || a.1 == j + 1)
            .map(|(n, (q, _))| (n, *q))
            .collect();
        let groups: Vec<Vec<usize>> = if l.is_singular() {
            (0..3).map(|q| at.iter().filter(|e| e.1 == q).map(|e| e.0).collect()).collect()
        } else {
            vec![at.iter().map(|e| e.0).collect()]
        };
        for g in groups {
            for pair in g.windows(2) {
                let (ra, rb) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
                parent[ra] = rb;
            }
        }
    }
    let circles = (0..ids.len()).filter(|&v| find(&mut parent, v) == v).count();
    Some(OracleEmbedding { arcs, circles })
}
