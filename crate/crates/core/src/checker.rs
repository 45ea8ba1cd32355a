//! Annotated derivation scripts and their verification.
//!
//! A script is a chain of words, each line citing the relation families that
//! connect it to the previous line:
//!
//! ```text
//! # comments start with '#'
//! script chain-28-i0
//! rules sk
//! a2 b1 ; start
//! a0 d1 b1 ; (1)
//! a0 ; (4)
//! end
//! ```
//!
//! A step is accepted when a bounded search using only instances of the
//! cited families connects the two words.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::rewrite::{search_equiv_with, Derivation, RuleIndex, SearchBudget, SearchOutcome, Strategy};
use crate::rules::{
    family_instances, instantiate_parametric, Family, InstantiateError, ParametricRelation, Relation, RuleSet,
};
use crate::word::{parse_word, PageIndex, ParseError, Word};

/// One cited family, optionally narrowed to a witness and an index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Citation {
    pub family: Family,
    pub witness: Option<Word>,
    pub page: Option<PageIndex>,
}

impl Citation {
    pub fn family(family: Family) -> Self {
        Citation { family, witness: None, page: None }
    }

    /// The narrowest citation covering `r`.
    pub fn of(r: &Relation) -> Self {
        if r.id.family.is_parametric() {
            Citation { family: r.id.family, witness: r.witness.clone(), page: Some(r.id.page) }
        } else {
            Citation::family(r.id.family)
        }
    }
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        if let Some(w) = &self.witness {
            write!(f, " w=[{w}]")?;
        }
        if let Some(i) = self.page {
            write!(f, " i={i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScriptError {
    #[error("no script found")]
    Empty,
    #[error("line {line}: script has no steps")]
    NoSteps { line: usize },
    #[error("line {line}: {source}")]
    BadWord { line: usize, source: ParseError },
    #[error("line {line}: unknown citation {label}")]
    UnknownCitation { line: usize, label: String },
    #[error("line {line}: {family} is not available under rules {ruleset}")]
    NotAllowed { line: usize, family: Family, ruleset: RuleSet },
    #[error("line {line}: {source}")]
    BadWitness { line: usize, source: InstantiateError },
    #[error("line {line}: no instance of {citation}")]
    NoInstance { line: usize, citation: String },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptLine {
    /// 1-based line number in the source text.
    pub line: usize,
    pub word: Word,
    pub citations: Vec<Citation>,
    /// The relation instances the citations resolve to.
    pub relations: Vec<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub name: String,
    pub ruleset: RuleSet,
    /// The first line is the start word and cites nothing.
    pub lines: Vec<ScriptLine>,
}

impl Script {
    pub fn start(&self) -> &Word {
        &self.lines[0].word
    }

    pub fn end(&self) -> &Word {
        &self.lines[self.lines.len() - 1].word
    }
}

fn malformed(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError::Malformed { line, message: message.into() }
}

fn parse_family(label: &str, line: usize) -> Result<Family, ScriptError> {
    let unknown = || ScriptError::UnknownCitation { line, label: label.to_string() };
    let inner = label.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(unknown)?;
    let (digits, prime) = match inner.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (inner, false),
    };
    let number: u8 = digits.parse().map_err(|_| unknown())?;
    let family = Family { number, prime };
    if family.is_known() {
        Ok(family)
    } else {
        Err(unknown())
    }
}

/// Parses `(34') w=[d2 c2] i=1`.
pub fn parse_citation(text: &str, line: usize) -> Result<Citation, ScriptError> {
    let text = text.trim();
    let (label, mut rest) = match text.find(char::is_whitespace) {
        Some(k) => (&text[..k], text[k..].trim_start()),
        None => (text, ""),
    };
    let mut cit = Citation::family(parse_family(label, line)?);
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix("w=[") {
            let close = r.find(']').ok_or_else(|| malformed(line, "unterminated witness"))?;
            let w = parse_word(&r[..close]).map_err(|source| ScriptError::BadWord { line, source })?;
            cit.witness = Some(w);
            rest = r[close + 1..].trim_start();
        } else if let Some(r) = rest.strip_prefix("i=") {
            let end = r.find(char::is_whitespace).unwrap_or(r.len());
            let i: u8 = r[..end].parse().map_err(|_| malformed(line, "bad index"))?;
            if i > 2 {
                return Err(malformed(line, "index out of range"));
            }
            cit.page = Some(PageIndex::new(i));
            rest = r[end..].trim_start();
        } else {
            return Err(malformed(line, format!("unexpected `{rest}` in citation")));
        }
    }
    Ok(cit)
}

/// Splits a citation field on commas that are not inside a witness.
fn split_citations(field: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (k, ch) in field.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&field[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&field[start..]);
    out
}

/// The relation instances a citation stands for under `ruleset`.
pub fn resolve(cit: &Citation, ruleset: RuleSet, line: usize) -> Result<Vec<Relation>, ScriptError> {
    let family = cit.family;
    let forbidden = match (family.number, family.prime) {
        (6, false) => ruleset == RuleSet::Fg,
        (6, true) => ruleset != RuleSet::Fg,
        _ => false,
    };
    if forbidden {
        return Err(ScriptError::NotAllowed { line, family, ruleset });
    }
    let no_instance = || ScriptError::NoInstance { line, citation: cit.to_string() };
    if family.is_parametric() {
        let witness = cit.witness.as_ref().ok_or_else(|| malformed(line, format!("{family} needs w=[...]")))?;
        let pages = match cit.page {
            Some(i) => alloc::vec![i],
            None => PageIndex::ALL.to_vec(),
        };
        let mut out = Vec::new();
        for i in pages {
            for p in ParametricRelation::variants(family.number, i) {
                match instantiate_parametric(&p, witness) {
                    Ok(r) => out.push(r),
                    Err(source) if cit.page.is_some() => return Err(ScriptError::BadWitness { line, source }),
                    Err(_) => {}
                }
            }
        }
        if out.is_empty() {
            return Err(no_instance());
        }
        return Ok(out);
    }
    let out: Vec<_> = family_instances(family)
        .into_iter()
        .filter(|r| cit.page.is_none_or(|i| r.id.page == i))
        .filter(|r| cit.witness.is_none() || r.witness == cit.witness)
        .collect();
    if out.is_empty() {
        return Err(no_instance());
    }
    Ok(out)
}

fn parse_ruleset(s: &str, line: usize) -> Result<RuleSet, ScriptError> {
    match s {
        "sk" => Ok(RuleSet::Sk),
        "fg" => Ok(RuleSet::Fg),
        "derived" => Ok(RuleSet::Derived),
        other => Err(malformed(line, format!("unknown rule set `{other}`"))),
    }
}

struct Draft {
    name: String,
    ruleset: RuleSet,
    header_line: usize,
    raw: Vec<(usize, Word, Option<String>)>,
}

impl Draft {
    fn finish(self) -> Result<Script, ScriptError> {
        if self.raw.is_empty() {
            return Err(ScriptError::NoSteps { line: self.header_line });
        }
        let mut lines = Vec::with_capacity(self.raw.len());
        for (n, (line, word, field)) in self.raw.into_iter().enumerate() {
            let mut citations = Vec::new();
            let mut relations = Vec::new();
            match (n, field) {
                (0, None) => {}
                (0, Some(f)) if f.trim() == "start" => {}
                (0, Some(_)) => return Err(malformed(line, "first line must cite `start`")),
                (_, None) => return Err(malformed(line, "missing citation")),
                (_, Some(f)) => {
                    for part in split_citations(&f) {
                        let cit = parse_citation(part, line)?;
                        relations.extend(resolve(&cit, self.ruleset, line)?);
                        citations.push(cit);
                    }
                }
            }
            lines.push(ScriptLine { line, word, citations, relations });
        }
        Ok(Script { name: self.name, ruleset: self.ruleset, lines })
    }
}

/// Parses every script block in `text`. Lines before the first `script`
/// header form an unnamed script; a missing final `end` is tolerated.
pub fn parse_scripts(text: &str) -> Result<Vec<Script>, ScriptError> {
    let mut out = Vec::new();
    let mut cur: Option<Draft> = None;
    for (k, raw_line) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw_line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.splitn(2, char::is_whitespace);
        let head = words.next().unwrap_or("");
        let arg = words.next().unwrap_or("").trim();
        match head {
            "script" => {
                if let Some(d) = cur.take() {
                    out.push(d.finish()?);
                }
                cur = Some(Draft { name: arg.to_string(), ruleset: RuleSet::Sk, header_line: line, raw: Vec::new() });
            }
            "rules" => {
                let d = cur.get_or_insert_with(|| Draft {
                    name: String::new(),
                    ruleset: RuleSet::Sk,
                    header_line: line,
                    raw: Vec::new(),
                });
                if !d.raw.is_empty() {
                    return Err(malformed(line, "`rules` must precede the steps"));
                }
                d.ruleset = parse_ruleset(arg, line)?;
            }
            "end" => match cur.take() {
                Some(d) => out.push(d.finish()?),
                None => return Err(malformed(line, "`end` without script")),
            },
            _ => {
                let (word_text, field) = match content.split_once(';') {
                    Some((w, f)) => (w, Some(f.trim().to_string())),
                    None => (content, None),
                };
                let word = parse_word(word_text).map_err(|source| ScriptError::BadWord { line, source })?;
                let d = cur.get_or_insert_with(|| Draft {
                    name: String::new(),
                    ruleset: RuleSet::Sk,
                    header_line: line,
                    raw: Vec::new(),
                });
                d.raw.push((line, word, field));
            }
        }
    }
    if let Some(d) = cur.take() {
        out.push(d.finish()?);
    }
    if out.is_empty() {
        return Err(ScriptError::Empty);
    }
    Ok(out)
}

/// Parses text holding exactly one script.
pub fn parse_script(text: &str) -> Result<Script, ScriptError> {
    let mut all = parse_scripts(text)?;
    if all.len() != 1 {
        return Err(malformed(1, format!("expected one script, found {}", all.len())));
    }
    Ok(all.remove(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepBudget {
    /// Most elementary applications per displayed step.
    pub max_steps: usize,
    /// Intermediate words may exceed the longer endpoint by this much.
    pub slack: usize,
    pub max_nodes: usize,
}

impl Default for StepBudget {
    fn default() -> Self {
        StepBudget { max_steps: 6, slack: 4, max_nodes: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no derivation within {max_steps} steps ({visited} words expanded)")]
pub struct StepFailure {
    pub max_steps: usize,
    pub visited: usize,
}

/// Connects `from` to `to` with at most `budget.max_steps` applications of
/// the given relation instances.
pub fn check_step(
    from: &Word,
    to: &Word,
    relations: &[Relation],
    budget: &StepBudget,
) -> Result<Derivation, StepFailure> {
    if from == to {
        return Ok(Derivation::empty(from.clone()));
    }
    let rules = RuleIndex::new(relations.to_vec());
    let search = SearchBudget {
        max_len: Some(from.len().max(to.len()) + budget.slack),
        max_nodes: budget.max_nodes,
        max_depth: budget.max_steps,
        normalize: false,
        strategy: Strategy::Bidirectional,
        rulesets: Vec::new(),
    };
    match search_equiv_with(&rules, from, to, &search) {
        SearchOutcome::Proved(d) => Ok(d),
        SearchOutcome::Unknown { visited } => Err(StepFailure { max_steps: budget.max_steps, visited }),
    }
}

/// [`check_step`] with citations resolved under `ruleset`.
pub fn check_cited_step(
    from: &Word,
    to: &Word,
    cited: &[Citation],
    ruleset: RuleSet,
    budget: &StepBudget,
) -> Result<Result<Derivation, StepFailure>, ScriptError> {
    let mut relations = Vec::new();
    for c in cited {
        relations.extend(resolve(c, ruleset, 0)?);
    }
    Ok(check_step(from, to, &relations, budget))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub line: usize,
    pub from: Word,
    pub to: Word,
    pub cited: Vec<Citation>,
    pub outcome: Result<Derivation, StepFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptReport {
    pub name: String,
    pub steps: Vec<StepReport>,
}

impl ScriptReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.outcome.is_ok())
    }

    /// Total elementary applications over the passing steps.
    pub fn elementary_steps(&self) -> usize {
        self.steps.iter().filter_map(|s| s.outcome.as_ref().ok()).map(Derivation::len).sum()
    }

    /// The whole chain as one derivation, if every step passed.
    pub fn derivation(&self) -> Option<Derivation> {
        let first = self.steps.first()?;
        let mut d = Derivation::empty(first.from.clone());
        for s in &self.steps {
            d.extend(s.outcome.clone().ok()?);
        }
        Some(d)
    }
}

pub fn check_script(s: &Script, budget: &StepBudget) -> ScriptReport {
    let steps = s
        .lines
        .windows(2)
        .map(|pair| {
            let (a, b) = (&pair[0], &pair[1]);
            StepReport {
                line: b.line,
                from: a.word.clone(),
                to: b.word.clone(),
                cited: b.citations.clone(),
                outcome: check_step(&a.word, &b.word, &b.relations, budget),
            }
        })
        .collect();
    ScriptReport { name: s.name.clone(), steps }
}

/// Writes `d` as a script with one elementary step per line.
pub fn derivation_to_script(name: &str, ruleset: RuleSet, d: &Derivation) -> Result<String, crate::rewrite::StepError> {
    let words = d.words()?;
    let mut out = format!("script {name}\nrules {ruleset}\n{} ; start\n", words[0]);
    for (step, w) in d.steps.iter().zip(&words[1..]) {
        out.push_str(&format!("{w} ; {}\n", Citation::of(&step.relation)));
    }
    out.push_str("end\n");
    Ok(out)
}
