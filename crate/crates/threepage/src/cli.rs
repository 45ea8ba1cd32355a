//! Subcommands. Exit codes: 0 success, 1 a checked failure (unbalanced
//! word, search gave up, script step failed), 2 usage or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use threepage_core::balance::{bracket_projection, is_balanced, is_i_balanced, star_decompose};
use threepage_core::checker::{check_script, derivation_to_script, parse_scripts, StepBudget};
use threepage_core::geometry::{format_circle, reconstruct, render_svg, stats, trace_circles};
use threepage_core::rewrite::{
    centrality_witness_with, search_equiv_with, CentralityOutcome, Derivation, RuleIndex, SearchBudget, SearchOutcome,
    Strategy,
};
use threepage_core::rules::{enumerate, official_count, Family, Relation, RuleSet};
use threepage_core::tangle::{almost_balance_pad, compile, parse_morse};
use threepage_core::{parse_word, PageIndex, Word};

use crate::corpus::{corpus_dir, load_corpus, run_corpus};
use crate::json::{corpus_report_json, derivation_json, profile_json, script_report_json, stats_json};
use crate::sweep::soundness_sweep;

#[derive(Parser, Debug)]
#[command(name = "threepage", version, about = "Words of three-page embeddings of singular knots")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel subcommands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SetArg {
    Sk,
    Fg,
    Derived,
}

impl From<SetArg> for RuleSet {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::Sk => RuleSet::Sk,
            SetArg::Fg => RuleSet::Fg,
            SetArg::Derived => RuleSet::Derived,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Bidirectional,
    ShortestFirst,
}

#[derive(clap::Args, Debug)]
struct SearchArgs {
    /// Most words expanded before giving up.
    #[arg(long, default_value_t = 1_000_000)]
    budget_nodes: usize,
    /// Longest intermediate word; default is the longer input plus 6.
    #[arg(long)]
    budget_len: Option<usize>,
    /// Longest derivation.
    #[arg(long, default_value_t = 64)]
    budget_depth: usize,
    /// Rule sets to search with; repeatable.
    #[arg(long = "set", value_enum, default_values_t = [SetArg::Sk])]
    sets: Vec<SetArg>,
    /// Restrict to these families, e.g. `--family 3 --family 4`.
    #[arg(long = "family")]
    families: Vec<String>,
    /// Leave out the instance of (4) flagged as superfluous.
    #[arg(long)]
    drop_superfluous: bool,
    /// Search plain words instead of words modulo cancellation.
    #[arg(long)]
    raw: bool,
    #[arg(long, value_enum, default_value_t = StrategyArg::Bidirectional)]
    strategy: StrategyArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a word and report its balance in each page.
    Validate { word: String },
    /// Bracket projection, running difference and depth in one page.
    Balance {
        word: String,
        #[arg(short = 'i', long = "page")]
        page: u8,
    },
    /// Count or list relation instances.
    Rules {
        #[arg(long = "set", value_enum, default_value_t = SetArg::Sk)]
        set: SetArg,
        #[arg(long, conflicts_with = "dump")]
        count: bool,
        #[arg(long)]
        dump: bool,
    },
    /// Search for a derivation between two words.
    Equiv {
        w1: String,
        w2: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Print the derivation as a script with this name.
        #[arg(long)]
        emit_script: Option<String>,
    },
    /// Search for a balanced word equivalent to the input.
    Central {
        word: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a script file, or the whole corpus.
    Check {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        /// Most elementary applications per displayed step.
        #[arg(long, default_value_t = 6)]
        max_steps: usize,
        /// Intermediate words may exceed the longer endpoint by this much.
        #[arg(long, default_value_t = 4)]
        slack: usize,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
    },
    /// Compile generator tokens such as `xi_1 eta_1` to a word.
    Compile {
        #[arg(required = true, num_args = 1..)]
        tokens: Vec<String>,
        /// Pad the result to be 1- and 2-balanced.
        #[arg(long)]
        pad: bool,
    },
    /// Rebuild the embedding of a balanced word.
    Reconstruct {
        word: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Rewrite an i-balanced word into a product of elementary factors.
    Decompose {
        word: String,
        #[arg(short = 'i', long = "page")]
        page: u8,
    },
    /// Compare circle and singular counts of both sides of every relation
    /// placed in a balanced context.
    Sweep {
        #[arg(long = "set", value_enum, default_values_t = [SetArg::Sk, SetArg::Fg, SetArg::Derived])]
        sets: Vec<SetArg>,
    },
}

struct Io<'a> {
    out: &'a mut (dyn Write + Send),
    json: bool,
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn value(&mut self, v: &serde_json::Value) -> Result<()> {
        self.line(serde_json::to_string(v)?)
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, out)),
            Err(e) => Err(anyhow!(e)),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn word_arg(text: &str) -> Result<Word> {
    parse_word(text).with_context(|| format!("cannot parse word {text:?}"))
}

fn page_arg(p: u8) -> Result<PageIndex> {
    if p > 2 {
        bail!("page index must be 0, 1 or 2");
    }
    Ok(PageIndex::new(p))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cli: &Cli, out: &mut (dyn Write + Send)) -> Result<i32> {
    let mut io = Io { out, json: cli.format == Format::Json };
    match &cli.command {
        Command::Validate { word } => validate(&mut io, &word_arg(word)?),
        Command::Balance { word, page } => balance(&mut io, &word_arg(word)?, page_arg(*page)?),
        Command::Rules { set, count, dump } => rules(&mut io, (*set).into(), *count && !*dump),
        Command::Equiv { w1, w2, search, emit_script } => {
            equiv(&mut io, &word_arg(w1)?, &word_arg(w2)?, search, emit_script.as_deref())
        }
        Command::Central { word, search } => central(&mut io, &word_arg(word)?, search),
        Command::Check { file, corpus, max_steps, slack, max_nodes } => {
            let budget = StepBudget { max_steps: *max_steps, slack: *slack, max_nodes: *max_nodes };
            if *corpus {
                check_corpus(&mut io, &budget)
            } else {
                check_file(&mut io, file.as_ref().expect("clap requires a file"), &budget)
            }
        }
        Command::Compile { tokens, pad } => {
            let mw = parse_morse(&tokens.join(" ")).map_err(|e| anyhow!("{e}"))?;
            let mut w = compile(&mw);
            if *pad {
                w = almost_balance_pad(&w);
            }
            if io.json {
                io.value(&json!({"morse": mw.to_string(), "word": w.to_string()}))?;
            } else {
                io.line(w.to_string())?;
            }
            Ok(0)
        }
        Command::Reconstruct { word, json, svg } => {
            let json = *json || io.json;
            io.json = json;
            reconstruct_cmd(&mut io, &word_arg(word)?, svg.as_ref())
        }
        Command::Decompose { word, page } => decompose(&mut io, &word_arg(word)?, page_arg(*page)?),
        Command::Sweep { sets } => sweep(&mut io, sets),
    }
}

fn validate(io: &mut Io, w: &Word) -> Result<i32> {
    let pages: Vec<_> = PageIndex::ALL.iter().map(|&p| (p, bracket_projection(w, p))).collect();
    let balanced = is_balanced(w);
    if io.json {
        let per: Vec<_> = pages
            .iter()
            .map(|(p, prof)| json!({"page": p.value(), "brackets": prof.brackets(), "balanced": prof.is_balanced()}))
            .collect();
        io.value(&json!({"word": w.to_string(), "length": w.len(), "balanced": balanced, "pages": per}))?;
    } else {
        io.line(format!("word: {w}"))?;
        for (p, prof) in &pages {
            io.line(format!("page {p}: {} {}", prof.brackets(), if prof.is_balanced() { "ok" } else { "unbalanced" }))?;
        }
        io.line(format!("balanced: {}", yes(balanced)))?;
    }
    Ok(if balanced { 0 } else { 1 })
}

fn balance(io: &mut Io, w: &Word, page: PageIndex) -> Result<i32> {
    let prof = bracket_projection(w, page);
    if io.json {
        io.value(&profile_json(&prof))?;
    } else {
        io.line(format!("encoding: {}", prof.encoding()))?;
        io.line(format!("brackets: {}", prof.brackets()))?;
        let dif: Vec<String> = prof.dif.iter().map(ToString::to_string).collect();
        io.line(format!("dif: {}", dif.join(" ")))?;
        io.line(format!("depth: {}", prof.depth))?;
        io.line(format!("{page}-balanced: {}", yes(prof.is_balanced())))?;
    }
    Ok(if is_i_balanced(w, page) { 0 } else { 1 })
}

fn rules(io: &mut Io, set: RuleSet, count: bool) -> Result<i32> {
    let all = enumerate(set);
    if count {
        let official = official_count(set);
        if io.json {
            io.value(&json!({"set": set.to_string(), "instances": all.len(), "official": official}))?;
        } else {
            io.line(format!("{} instances ({official} official)", all.len()))?;
        }
    } else if io.json {
        let list: Vec<_> = all
            .iter()
            .map(|r| {
                json!({"id": r.id.to_string(), "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "superfluous": r.superfluous})
            })
            .collect();
        io.value(&json!(list))?;
    } else {
        for r in &all {
            io.line(r.to_string())?;
        }
    }
    Ok(0)
}

fn parse_family_arg(text: &str) -> Result<Family> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (digits, prime) = match inner.strip_suffix('\'') {
        Some(d) => (d, true),
        None => (inner, false),
    };
    let number: u8 = digits.parse().map_err(|_| anyhow!("bad family {text:?}"))?;
    let f = Family { number, prime };
    if !f.is_known() {
        bail!("unknown family {text:?}");
    }
    Ok(f)
}

fn selected_rules(args: &SearchArgs) -> Result<RuleIndex> {
    let families = args.families.iter().map(|f| parse_family_arg(f)).collect::<Result<Vec<_>>>()?;
    let mut sets: Vec<RuleSet> = args.sets.iter().map(|&s| s.into()).collect();
    sets.dedup();
    let relations: Vec<Relation> = sets
        .iter()
        .flat_map(|&s| enumerate(s))
        .filter(|r| families.is_empty() || families.contains(&r.id.family))
        .filter(|r| !(args.drop_superfluous && r.superfluous))
        .collect();
    if relations.is_empty() {
        bail!("no relations selected");
    }
    Ok(RuleIndex::new(relations))
}

fn search_budget(args: &SearchArgs) -> SearchBudget {
    SearchBudget {
        max_len: args.budget_len,
        max_nodes: args.budget_nodes,
        max_depth: args.budget_depth,
        normalize: !args.raw,
        strategy: match args.strategy {
            StrategyArg::Bidirectional => Strategy::Bidirectional,
            StrategyArg::ShortestFirst => Strategy::ShortestFirst,
        },
        rulesets: args.sets.iter().map(|&s| s.into()).collect(),
    }
}

fn print_derivation(io: &mut Io, d: &Derivation) -> Result<()> {
    io.line(format!("  {}", d.start))?;
    let words = d.words()?;
    for (s, w) in d.steps.iter().zip(&words[1..]) {
        io.line(format!("  {w}    {}", s.relation.id))?;
    }
    Ok(())
}

fn equiv(io: &mut Io, w1: &Word, w2: &Word, args: &SearchArgs, emit: Option<&str>) -> Result<i32> {
    let rules = selected_rules(args)?;
    let outcome = search_equiv_with(&rules, w1, w2, &search_budget(args));
    match outcome {
        SearchOutcome::Proved(d) => {
            if let Some(name) = emit {
                let set = args.sets.first().map_or(RuleSet::Sk, |&s| s.into());
                io.line(derivation_to_script(name, set, &d)?.trim_end())?;
            } else if io.json {
                io.value(&json!({"status": "proved", "steps": d.len(), "derivation": derivation_json(&d)}))?;
            } else {
                io.line(format!("proved: {} steps", d.len()))?;
                print_derivation(io, &d)?;
            }
            Ok(0)
        }
        SearchOutcome::Unknown { visited } => {
            if io.json {
                io.value(&json!({"status": "unknown", "visited": visited}))?;
            } else {
                io.line(format!("unknown: no derivation found after expanding {visited} words"))?;
            }
            Ok(1)
        }
    }
}

fn central(io: &mut Io, w: &Word, args: &SearchArgs) -> Result<i32> {
    let rules = selected_rules(args)?;
    match centrality_witness_with(&rules, w, &search_budget(args)) {
        CentralityOutcome::BalancedWitness(found, d) => {
            if io.json {
                io.value(
                    &json!({"status": "central", "witness": found.to_string(), "derivation": derivation_json(&d)}),
                )?;
            } else {
                io.line(format!("central: balanced witness {found} ({} steps)", d.len()))?;
                print_derivation(io, &d)?;
            }
            Ok(0)
        }
        CentralityOutcome::Unknown { visited } => {
            if io.json {
                io.value(&json!({"status": "unknown", "visited": visited}))?;
            } else {
                io.line(format!("unknown: no balanced word found after expanding {visited} words"))?;
            }
            Ok(1)
        }
    }
}

fn check_file(io: &mut Io, path: &PathBuf, budget: &StepBudget) -> Result<i32> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let scripts = parse_scripts(&text).with_context(|| format!("{}", path.display()))?;
    let reports: Vec<_> = scripts.iter().map(|s| check_script(s, budget)).collect();
    let passed = reports.iter().all(|r| r.passed());
    if io.json {
        let list: Vec<_> = reports.iter().map(script_report_json).collect();
        io.value(&json!({"file": path.display().to_string(), "passed": passed, "scripts": list}))?;
    } else {
        for r in &reports {
            report_script(io, r)?;
        }
    }
    Ok(if passed { 0 } else { 1 })
}

fn report_script(io: &mut Io, r: &threepage_core::checker::ScriptReport) -> Result<()> {
    if r.passed() {
        io.line(format!("ok   {} ({} steps, {} elementary)", r.name, r.steps.len(), r.elementary_steps()))?;
    } else {
        io.line(format!("FAIL {}", r.name))?;
        for s in r.steps.iter().filter(|s| s.outcome.is_err()) {
            let cited: Vec<String> = s.cited.iter().map(ToString::to_string).collect();
            let e = s.outcome.as_ref().expect_err("failed step");
            io.line(format!("     line {}: {} ~ {} by {}: {e}", s.line, s.from, s.to, cited.join(",")))?;
        }
    }
    Ok(())
}

fn check_corpus(io: &mut Io, budget: &StepBudget) -> Result<i32> {
    let dir = corpus_dir();
    let files = load_corpus(&dir)?;
    let report = run_corpus(&files, budget);
    if io.json {
        io.value(&corpus_report_json(&report))?;
    } else {
        for f in &report.files {
            for r in &f.scripts {
                report_script(io, r)?;
            }
        }
        io.line(format!(
            "{} files, {} scripts, {} failed, {} elementary steps",
            report.files.len(),
            report.script_count(),
            report.failed_count(),
            report.elementary_steps()
        ))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn reconstruct_cmd(io: &mut Io, w: &Word, svg: Option<&PathBuf>) -> Result<i32> {
    let e = match reconstruct(w) {
        Ok(e) => e,
        Err(e) => {
            if io.json {
                io.value(&json!({"error": e.to_string()}))?;
            } else {
                io.line(format!("not balanced: {e}"))?;
            }
            return Ok(1);
        }
    };
    if let Some(path) = svg {
        std::fs::write(path, render_svg(&e)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let s = stats(&e);
    if io.json {
        io.value(&stats_json(&s))?;
    } else {
        io.line(format!("axis points: {}", s.axis_points))?;
        io.line(format!("singular points: {}", s.singular_points))?;
        io.line(format!("circles: {}", s.circles))?;
        for (p, arcs) in s.arcs.iter().enumerate() {
            let list: Vec<String> = arcs.iter().map(|(j, k)| format!("({j},{k})")).collect();
            io.line(format!("page {p} arcs: {}", list.join(" ")))?;
        }
        for c in trace_circles(&e) {
            io.line(format!("circle: {}", format_circle(&c)))?;
        }
    }
    Ok(0)
}

fn decompose(io: &mut Io, w: &Word, page: PageIndex) -> Result<i32> {
    let dec = match star_decompose(w, page) {
        Ok(d) => d,
        Err(e) => {
            io.line(format!("cannot decompose: {e}"))?;
            return Ok(1);
        }
    };
    let factors: Vec<String> = dec.factors.iter().map(|f| format!("({})", f.word())).collect();
    if io.json {
        io.value(&json!({
            "factors": dec.factors.iter().map(|f| f.word().to_string()).collect::<Vec<_>>(),
            "depths": dec.depths,
            "derivation": derivation_json(&dec.derivation),
        }))?;
    } else {
        io.line(format!("factors: {}", factors.join(" ")))?;
        let depths: Vec<String> = dec.depths.iter().map(ToString::to_string).collect();
        io.line(format!("depths: {}", depths.join(" ")))?;
        io.line(format!("steps: {}", dec.derivation.len()))?;
    }
    Ok(0)
}

fn sweep(io: &mut Io, sets: &[SetArg]) -> Result<i32> {
    let sets: Vec<RuleSet> = sets.iter().map(|&s| s.into()).collect();
    let cases = soundness_sweep(&sets);
    let bad: Vec<_> = cases.iter().filter(|c| !c.agrees()).collect();
    if io.json {
        let list: Vec<_> = bad.iter().map(|c| json!(c.relation.id.to_string())).collect();
        io.value(&json!({"instances": cases.len(), "disagreements": list}))?;
    } else {
        for c in &bad {
            match (&c.context, c.counts) {
                (Some((u, v, _)), Some([l, r])) => io.line(format!(
                    "mismatch {} in context {u} _ {v}: circles {} vs {}, singular {} vs {}",
                    c.relation, l.0, r.0, l.1, r.1
                ))?,
                _ => io.line(format!("no balanced context for {}", c.relation))?,
            }
        }
        io.line(format!("{} instances, {} mismatches", cases.len(), bad.len()))?;
    }
    Ok(if bad.is_empty() { 0 } else { 1 })
}
