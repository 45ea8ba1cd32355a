//! JSON renderings shared by the subcommands.

use serde_json::{json, Map, Value};
use threepage_core::balance::BracketProfile;
use threepage_core::checker::ScriptReport;
use threepage_core::geometry::ReconStats;
use threepage_core::rewrite::Derivation;

use crate::corpus::CorpusReport;

/// `{"axis_points":N,"singular_points":S,"circles":C,"arcs":{"0":[[j,k],...],...}}`
/// with 1-based arc ends.
pub fn stats_json(s: &ReconStats) -> Value {
    let mut arcs = Map::new();
    for (p, list) in s.arcs.iter().enumerate() {
        arcs.insert(p.to_string(), json!(list.iter().map(|&(j, k)| [j, k]).collect::<Vec<_>>()));
    }
    json!({
        "axis_points": s.axis_points,
        "singular_points": s.singular_points,
        "circles": s.circles,
        "arcs": arcs,
    })
}

pub fn profile_json(p: &BracketProfile) -> Value {
    json!({
        "encoding": p.encoding(),
        "brackets": p.brackets(),
        "dif": p.dif,
        "depth": p.depth,
        "balanced": p.is_balanced(),
    })
}

/// The words of `d` with the relation used to reach each one.
pub fn derivation_json(d: &Derivation) -> Value {
    let words = d.words().unwrap_or_default();
    let steps: Vec<Value> = d
        .steps
        .iter()
        .zip(words.iter().skip(1))
        .map(|(s, w)| json!({"relation": s.relation.id.to_string(), "position": s.position, "word": w.to_string()}))
        .collect();
    json!({"start": d.start.to_string(), "steps": steps})
}

pub fn script_report_json(r: &ScriptReport) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| {
            let cited: Vec<String> = s.cited.iter().map(ToString::to_string).collect();
            match &s.outcome {
                Ok(d) => json!({"line": s.line, "cited": cited, "ok": true, "elementary": d.len()}),
                Err(e) => json!({"line": s.line, "cited": cited, "ok": false, "visited": e.visited}),
            }
        })
        .collect();
    json!({
        "name": r.name,
        "passed": r.passed(),
        "elementary_steps": r.elementary_steps(),
        "steps": steps,
    })
}

pub fn corpus_report_json(r: &CorpusReport) -> Value {
    let files: Vec<Value> = r
        .files
        .iter()
        .map(|f| {
            json!({
                "file": f.entry.file,
                "label": f.entry.label,
                "passed": f.passed(),
                "scripts": f.scripts.iter().map(script_report_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "passed": r.passed(),
        "scripts": r.script_count(),
        "failed": r.failed_count(),
        "elementary_steps": r.elementary_steps(),
        "files": files,
    })
}
