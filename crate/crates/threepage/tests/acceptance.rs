//! Acceptance run. Prints one line per criterion and exits non-zero when an
//! outcome differs from the recorded expectation.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use threepage::cli::run;
use threepage::corpus::{bundled_dir, load_corpus, run_corpus};
use threepage::sweep::soundness_sweep;
use threepage_core::balance::{is_balanced, signatures};
use threepage_core::checker::{check_script, Script, StepBudget};
use threepage_core::geometry::{reconstruct, stats};
use threepage_core::rewrite::{
    apply_step, search_equiv, search_equiv_with, Derivation, RuleIndex, SearchBudget, SearchOutcome, Strategy,
};
use threepage_core::rules::{enumerate, family_instances, superfluous_id, Family, Relation, RuleSet};
use threepage_core::tangle::{
    base_relation, compile, lift_by_shift, rho_shift, st_relation_images, theta_shift, GenKind, MorseWord, StVariant,
    TangleGen,
};
use threepage_core::{w, Word};

const WK: &str = "a0 a1 b2 b0 x0 b2 d2 c1 c2";

struct Line {
    number: u8,
    pass: bool,
    expected_pass: bool,
    detail: String,
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn is_cancellation(r: &Relation) -> bool {
    !r.id.family.prime && matches!(r.id.family.number, 3 | 4)
}

fn replays(d: &Derivation, from: &Word, to: &Word) -> bool {
    d.start == *from && d.end().is_ok_and(|e| e == *to)
}

fn census() -> Line {
    let t = Instant::now();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut lines = Vec::new();
    for set in ["sk", "fg"] {
        out.clear();
        run(["threepage", "rules", "--set", set, "--count"], &mut out, &mut err);
        lines.push(String::from_utf8(out.clone()).unwrap().trim().to_string());
    }
    let fg_has_6p = enumerate(RuleSet::Fg).iter().any(|r| r.id.family == Family::primed(6))
        && !enumerate(RuleSet::Fg).iter().any(|r| r.id.family == Family::plain(6));
    let el = t.elapsed();
    let pass = lines.iter().all(|l| l == "85 instances (84 official)") && fg_has_6p && el < Duration::from_secs(1);
    Line {
        number: 1,
        pass,
        expected_pass: true,
        detail: format!("sk \"{}\", fg \"{}\" with (6') in place of (6), {}", lines[0], lines[1], secs(el)),
    }
}

fn corpus(scripts: &mut HashMap<String, Script>) -> Line {
    let t = Instant::now();
    let files = load_corpus(&bundled_dir()).expect("bundled corpus loads");
    let report = run_corpus(&files, &StepBudget::default());
    let el = t.elapsed();
    for f in files {
        for s in f.scripts {
            scripts.insert(s.name.clone(), s);
        }
    }
    Line {
        number: 2,
        pass: report.passed() && el < Duration::from_secs(60),
        expected_pass: true,
        detail: format!(
            "{} files, {} scripts, {} failed, {} elementary steps, per-step budget 6, {}",
            report.files.len(),
            report.script_count(),
            report.failed_count(),
            report.elementary_steps(),
            secs(el)
        ),
    }
}

fn superfluous() -> Line {
    let target = superfluous_id();
    let mut rels = family_instances(Family::plain(3));
    rels.extend(family_instances(Family::plain(4)).into_iter().filter(|r| r.id != target));
    let flagged = family_instances(Family::plain(4)).into_iter().find(|r| r.id == target).unwrap();
    let budget = SearchBudget {
        max_len: Some(10),
        max_nodes: 10_000,
        max_depth: 64,
        normalize: false,
        strategy: Strategy::ShortestFirst,
        rulesets: Vec::new(),
    };
    let t = Instant::now();
    let outcome = search_equiv_with(&RuleIndex::new(rels), &flagged.lhs, &flagged.rhs, &budget);
    let el = t.elapsed();
    let (pass, detail) = match &outcome {
        SearchOutcome::Proved(d) => {
            let ok = replays(d, &flagged.lhs, &flagged.rhs) && d.steps.iter().all(|s| s.relation.id != target);
            (ok, format!("{} proved in {} steps without itself, node budget 10^4, {}", flagged, d.len(), secs(el)))
        }
        SearchOutcome::Unknown { visited } => (false, format!("{} unknown after {visited} words", flagged)),
    };
    Line { number: 3, pass, expected_pass: true, detail }
}

fn round_trip() -> Line {
    let wk = w!(WK);
    let balanced = is_balanced(&wk);
    let st = stats(&reconstruct(&wk).unwrap());
    let oracle = common::oracle_embedding(&wk).unwrap();
    let arcs_match = (0..3u8).all(|q| st.arcs[q as usize] == oracle.arcs[q as usize]);
    let pass = balanced && st.axis_points == 9 && st.singular_points == 1 && st.circles == oracle.circles && arcs_match;
    Line {
        number: 4,
        pass,
        expected_pass: true,
        detail: format!(
            "w_K balanced={balanced}, {} axis points, {} singular, {} circles (oracle {})",
            st.axis_points, st.singular_points, st.circles, oracle.circles
        ),
    }
}

fn sweep() -> Line {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut mismatched = Vec::new();
    let mut exact = true;
    for set in [RuleSet::Sk, RuleSet::Fg, RuleSet::Derived] {
        let cases = soundness_sweep(&[set]);
        let bad: Vec<_> = cases.iter().filter(|c| !c.agrees()).collect();
        parts.push(format!("{set} {}/{}", cases.len() - bad.len(), cases.len()));
        match set {
            RuleSet::Fg => mismatched.extend(bad.iter().map(|c| c.relation.id)),
            _ => exact &= bad.is_empty(),
        }
    }
    let el = t.elapsed();
    let six = Family::primed(6);
    let expected_fg = mismatched.len() == 2
        && mismatched.iter().all(|id| id.family == six)
        && mismatched.iter().any(|id| id.page.value() == 0)
        && mismatched.iter().any(|id| id.page.value() == 2);
    let ids: Vec<String> = mismatched.iter().map(ToString::to_string).collect();
    Line {
        number: 5,
        pass: mismatched.is_empty() && exact,
        expected_pass: !(exact && expected_fg && el < Duration::from_secs(30)),
        detail: format!(
            "agreeing {}; fg mismatches {} (circles differ), {}",
            parts.join(", "),
            ids.join(" "),
            secs(el)
        ),
    }
}

fn signature_check() -> Line {
    let mut parts = Vec::new();
    let mut exceptions_ok = true;
    let mut total_bad = 0;
    for set in [RuleSet::Sk, RuleSet::Fg, RuleSet::Derived] {
        let rels = enumerate(set);
        let bad: Vec<&Relation> = rels.iter().filter(|r| signatures(&r.lhs) != signatures(&r.rhs)).collect();
        exceptions_ok &=
            bad.iter().all(|r| is_cancellation(r)) && bad.len() == rels.iter().filter(|r| is_cancellation(r)).count();
        total_bad += bad.len();
        parts.push(format!("{set} {}/{}", rels.len() - bad.len(), rels.len()));
    }
    Line {
        number: 6,
        pass: total_bad == 0,
        expected_pass: !exceptions_ok,
        detail: format!(
            "identical signatures {}; every mismatch is a (3) or (4) instance: {exceptions_ok}",
            parts.join(", ")
        ),
    }
}

fn random_morse(rng: &mut StdRng) -> MorseWord {
    let n = rng.gen_range(0..8);
    MorseWord((0..n).map(|_| TangleGen::new(GenKind::ALL[rng.gen_range(0..5)], rng.gen_range(1..8))).collect())
}

fn homomorphism() -> Line {
    let mut rng = StdRng::seed_from_u64(7);
    let mut pairs_ok = 0;
    for _ in 0..1000 {
        let (u, v) = (random_morse(&mut rng), random_morse(&mut rng));
        if compile(&u.concat(&v)) == compile(&u).concat(&compile(&v)) {
            pairs_ok += 1;
        }
    }
    let mut diagram_ok = 0;
    let mut diagram_total = 0;
    for kind in GenKind::ALL {
        for strand in 1..=5 {
            let u = MorseWord(vec![TangleGen::new(kind, strand)]);
            for k in 0..=10 {
                diagram_total += 1;
                if compile(&theta_shift(&u, k)).to_string() == rho_shift(&compile(&u), k).to_string() {
                    diagram_ok += 1;
                }
            }
        }
    }
    Line {
        number: 7,
        pass: pairs_ok == 1000 && diagram_ok == diagram_total,
        expected_pass: true,
        detail: format!("multiplicative on {pairs_ok}/1000 pairs; shift diagram exact on {diagram_ok}/{diagram_total} (generator, strand <= 5, k <= 10)"),
    }
}

fn st_images(scripts: &HashMap<String, Script>) -> Line {
    let budget = StepBudget::default();
    let mut base: Vec<_> = st_relation_images(1, 5, StVariant::Sk);
    base.extend(st_relation_images(1, 5, StVariant::Fg).into_iter().filter(|r| r.family.prime));
    let mut derivations = HashMap::new();
    let mut missing = Vec::new();
    for r in &base {
        let (l, rr) = r.images();
        let d = scripts
            .get(&r.label())
            .filter(|s| *s.start() == l && *s.end() == rr)
            .and_then(|s| check_script(s, &budget).derivation());
        match d {
            Some(d) => {
                derivations.insert(r.label(), d);
            }
            None => missing.push(r.label()),
        }
    }
    let mut lifted = 0;
    let mut lift_total = 0;
    let mut lift_failed = Vec::new();
    for variant in [StVariant::Sk, StVariant::Fg] {
        for r in st_relation_images(3, 5, variant).into_iter().filter(|r| r.k > 1) {
            if variant == StVariant::Fg && !r.family.prime {
                continue;
            }
            lift_total += 1;
            let (l, rr) = r.images();
            let ok = derivations.get(&base_relation(&r).label()).is_some_and(|b| {
                lift_by_shift(&r, b).is_ok_and(|d| {
                    replays(&d, &l, &rr)
                        && d.steps
                            .iter()
                            .all(|s| is_d2_b2_cancel(&s.relation) || b.steps.iter().any(|x| x.relation == s.relation))
                })
            });
            if ok {
                lifted += 1;
            } else {
                lift_failed.push(r.label());
            }
        }
    }
    Line {
        number: 8,
        pass: missing.is_empty() && lift_failed.is_empty(),
        expected_pass: true,
        detail: format!(
            "k=1, l<=5: {}/{} pairs proved by corpus scripts; k=2,3: {lifted}/{lift_total} lifted by d2/b2 conjugation and (4){}",
            base.len() - missing.len(),
            base.len(),
            if missing.is_empty() && lift_failed.is_empty() { String::new() } else { format!(" missing {missing:?} {lift_failed:?}") }
        ),
    }
}

fn is_d2_b2_cancel(r: &Relation) -> bool {
    r.id.family == Family::plain(4) && r.id.page.value() == 2
}

fn unknot(scripts: &HashMap<String, Script>) -> Line {
    let depth4 = SearchBudget { max_depth: 4, ..SearchBudget::default() };
    let mut proved = Vec::new();
    for (a, b) in [("a0 c0", "a1 c1"), ("a1 c1", "a2 c2")] {
        let ok = search_equiv(&w!(a), &w!(b), &depth4)
            .derivation()
            .is_some_and(|d| d.len() <= 4 && replays(d, &w!(a), &w!(b)));
        proved.push(ok);
    }
    let literal = SearchBudget { max_nodes: 200_000, ..SearchBudget::default() };
    let t = Instant::now();
    let literal_outcome = search_equiv(&w!("d2 c2 a2 b2"), &w!("a0 c0"), &literal);
    let literal_el = t.elapsed();
    let literal_proved = literal_outcome.is_proved();
    let t = Instant::now();
    let replay = scripts.get("unknot-eta-xi").map(|s| {
        let rep = check_script(s, &StepBudget::default());
        rep.passed() && *s.start() == w!("a2 b2 d2 c2") && *s.end() == w!("a0 c0")
    });
    let replay_el = t.elapsed();
    let replay_ok = replay == Some(true) && replay_el < Duration::from_secs(1);
    let visited = match literal_outcome {
        SearchOutcome::Unknown { visited } => format!("unknown after {visited} words"),
        SearchOutcome::Proved(d) => format!("proved in {} steps", d.len()),
    };
    Line {
        number: 9,
        pass: proved.iter().all(|&b| b) && literal_proved && replay_ok,
        expected_pass: !(proved.iter().all(|&b| b) && replay_ok && !literal_proved),
        detail: format!(
            "a0 c0 ~ a1 c1 {}, a1 c1 ~ a2 c2 {} within depth 4; d2 c2 a2 b2 ~ a0 c0 {visited}, length cap 10 ({}); \
             frozen a2 b2 d2 c2 ~ a0 c0 replays {} in {}",
            proved[0],
            proved[1],
            secs(literal_el),
            replay == Some(true),
            secs(replay_el)
        ),
    }
}

fn walks() -> Line {
    let rules = RuleIndex::from_sets(&[RuleSet::Sk]);
    let mut rng = StdRng::seed_from_u64(11);
    let mut steps_taken = 0;
    let mut rejected = 0;
    let mut rejected_other = 0;
    let mut broken = 0;
    let mut stuck = 0;
    for start in [w!(WK), w!("a0 c0")] {
        let s0 = stats(&reconstruct(&start).unwrap());
        for _ in 0..100 {
            let mut cur = start.clone();
            for _ in 0..50 {
                let cands = rules.applicable_steps(&cur, (start.len() + 6).max(cur.len()), true);
                let mut good = Vec::new();
                for s in cands {
                    let next = apply_step(&cur, &s).unwrap();
                    if is_balanced(&next) {
                        good.push(next);
                    } else {
                        rejected += 1;
                        if !is_cancellation(&s.relation) {
                            rejected_other += 1;
                        }
                    }
                }
                if good.is_empty() {
                    stuck += 1;
                    break;
                }
                cur = good.swap_remove(rng.gen_range(0..good.len()));
                steps_taken += 1;
                let st = stats(&reconstruct(&cur).unwrap());
                if st.circles != s0.circles || st.singular_points != s0.singular_points {
                    broken += 1;
                }
            }
        }
    }
    Line {
        number: 10,
        pass: broken == 0 && rejected_other == 0 && stuck == 0,
        expected_pass: true,
        detail: format!(
            "200 walks, {steps_taken} steps through balanced words, circles and singular points unchanged at {} steps; \
             {rejected} unbalancing candidates skipped, {rejected_other} of them outside (3)/(4)",
            steps_taken - broken
        ),
    }
}

fn main() {
    let mut scripts = HashMap::new();
    let lines = vec![
        census(),
        corpus(&mut scripts),
        superfluous(),
        round_trip(),
        sweep(),
        signature_check(),
        homomorphism(),
        st_images(&scripts),
        unknot(&scripts),
        walks(),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let note = match (l.pass, l.expected_pass) {
            (true, true) | (false, false) => "",
            _ => {
                unexpected += 1;
                " [UNEXPECTED]"
            }
        };
        println!("criterion {:>2}: {verdict}{note}: {}", l.number, l.detail);
    }
    let fails = lines.iter().filter(|l| !l.pass).count();
    println!("{} passed, {fails} failed, {unexpected} unexpected", lines.len() - fails);
    if unexpected > 0 {
        std::process::exit(1);
    }
}
