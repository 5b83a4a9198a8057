//! Command implementations behind the `prefarg` binary. Every command
//! renders its output into a string so it can be tested without a process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prefarg::argument::{build_universe, ArgumentUniverse, BuildError};
use prefarg::check::{check_framework, check_universe, Status};
use prefarg::coherence::{check_correspondence, ClauseStatus};
use prefarg::formula::{equivalent, parse_formula, Formula};
use prefarg::framework::{parse_abstract_framework, DefeatKind, Framework, PreferenceKind};
use prefarg::kb::{parse_kb, StratifiedKb};
use prefarg::semantics::{self, ArgSet, ConflictMode, SemanticsError, DEFAULT_CAP};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_CAP: u8 = 2;
pub const EXIT_CHECK: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "prefarg", version, about = "Preference-based argumentation over stratified knowledge bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the argument universe of a knowledge base
    Arguments(Opts),
    /// Acceptability classes, grounded, complete and stable extensions
    Extensions(Opts),
    /// Is the query accepted?
    Accept(Opts),
    /// INCL-preferred subbases and the correspondence checks
    Coherence(Opts),
    /// Attack graph in DOT (or JSON)
    Graph(Opts),
    /// Run the invariant suite on the input
    Check(Opts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Kb,
    Af,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Defeat {
    Rebut,
    Undercut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pref {
    Certainty,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Weak,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Selection {
    Grounded,
    Complete,
    Stable,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Input file (`.kb` knowledge base or `.af` abstract framework)
    pub input: PathBuf,
    /// Override the input kind inferred from the extension
    #[arg(long, value_enum)]
    pub kind: Option<InputKind>,
    /// Defeat relation for knowledge bases [default: undercut]
    #[arg(long, value_enum)]
    pub defeat: Option<Defeat>,
    /// Preference for knowledge bases [default: certainty]
    #[arg(long, value_enum)]
    pub pref: Option<Pref>,
    #[arg(long, value_enum, default_value = "weak")]
    pub mode: Mode,
    /// Query formula (knowledge bases) or argument name (frameworks)
    #[arg(long)]
    pub query: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Largest framework for which extensions are enumerated
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub semantics: Selection,
}

/// Rendered output plus the exit code it should produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: EXIT_OK }
    }
}

/// Exit code for an error returned by [`run`]: cap violations map to 2,
/// everything else to 1.
pub fn error_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if matches!(cause.downcast_ref::<SemanticsError>(), Some(SemanticsError::CapExceeded { .. }))
            || matches!(cause.downcast_ref::<BuildError>(), Some(BuildError::TooManyBeliefs { .. }))
        {
            return EXIT_CAP;
        }
    }
    EXIT_USAGE
}

/// A loaded input, resolved against the flags.
#[allow(clippy::large_enum_variant)]
pub enum Input {
    Kb { kb: StratifiedKb, universe: ArgumentUniverse, framework: Framework, query: Option<Formula> },
    Af { framework: Framework, query: Option<usize> },
}

impl Input {
    pub fn framework(&self) -> &Framework {
        match self {
            Input::Kb { framework, .. } | Input::Af { framework, .. } => framework,
        }
    }
}

fn infer_kind(path: &Path, kind: Option<InputKind>) -> Result<InputKind> {
    if let Some(k) = kind {
        return Ok(k);
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("kb") => Ok(InputKind::Kb),
        Some("af") | Some("apx") => Ok(InputKind::Af),
        _ => bail!("cannot infer the input kind of {}; pass --kind kb|af", path.display()),
    }
}

pub fn load(opts: &Opts) -> Result<Input> {
    let text = std::fs::read_to_string(&opts.input).with_context(|| format!("reading {}", opts.input.display()))?;
    load_text(opts, &text)
}

/// Like [`load`], with the file contents supplied by the caller.
pub fn load_text(opts: &Opts, text: &str) -> Result<Input> {
    let name = opts.input.display();
    match infer_kind(&opts.input, opts.kind)? {
        InputKind::Kb => {
            let kb = parse_kb(text).with_context(|| format!("parsing {name}"))?;
            let query = match &opts.query {
                Some(q) => Some(parse_formula(q).with_context(|| format!("parsing query `{q}`"))?),
                None => None,
            };
            let universe = build_universe(&kb, query.as_ref())?;
            let defeat = match opts.defeat.unwrap_or(Defeat::Undercut) {
                Defeat::Rebut => DefeatKind::Rebut,
                Defeat::Undercut => DefeatKind::Undercut,
            };
            let pref = match opts.pref.unwrap_or(Pref::Certainty) {
                Pref::Certainty => PreferenceKind::Certainty,
                Pref::None => PreferenceKind::None,
            };
            let framework = Framework::from_universe(&universe, defeat, pref);
            Ok(Input::Kb { kb, universe, framework, query })
        }
        InputKind::Af => {
            if opts.defeat.is_some() || opts.pref.is_some() {
                bail!("--defeat and --pref apply to knowledge bases; {name} carries its own relations");
            }
            let framework = parse_abstract_framework(text).with_context(|| format!("parsing {name}"))?;
            let query = match &opts.query {
                Some(q) => Some(framework.index_of(q).with_context(|| format!("no argument named `{q}`"))?),
                None => None,
            };
            Ok(Input::Af { framework, query })
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Arguments(o) => cmd_arguments(o, &load(o)?),
        Command::Extensions(o) => cmd_extensions(o, &load(o)?),
        Command::Accept(o) => cmd_accept(o, &load(o)?),
        Command::Coherence(o) => cmd_coherence(o, &load(o)?),
        Command::Graph(o) => cmd_graph(o, &load(o)?),
        Command::Check(o) => cmd_check(o, &load(o)?),
    }
}

fn no_dot(opts: &Opts, command: &str) -> Result<()> {
    if opts.format == Format::Dot {
        bail!("--format dot is only available for `graph`, not `{command}`");
    }
    Ok(())
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values serialise");
    s.push('\n');
    s
}

fn show(fw: &Framework, set: &ArgSet) -> String {
    format!("{{{}}}", set.names(fw).join(", "))
}

pub fn cmd_arguments(opts: &Opts, input: &Input) -> Result<Outcome> {
    no_dot(opts, "arguments")?;
    let Input::Kb { kb, universe, .. } = input else {
        bail!("`arguments` needs a knowledge base; abstract frameworks have no supports");
    };
    Ok(Outcome::ok(match opts.format {
        Format::Json => to_json(&universe.to_json()),
        _ => universe.arguments().iter().map(|a| format!("{}\n", a.describe(kb))).collect(),
    }))
}

fn argument_listing(input: &Input) -> String {
    match input {
        Input::Kb { kb, universe, .. } => {
            let mut out = String::from("arguments:\n");
            for a in universe.arguments() {
                let _ = writeln!(out, "  {}", a.describe(kb));
            }
            out
        }
        Input::Af { .. } => String::new(),
    }
}

pub fn cmd_extensions(opts: &Opts, input: &Input) -> Result<Outcome> {
    no_dot(opts, "extensions")?;
    let fw = input.framework();
    let mode = match opts.mode {
        Mode::Weak => ConflictMode::Weak,
        Mode::Strict => ConflictMode::Strict,
    };
    let want_complete = matches!(opts.semantics, Selection::Complete | Selection::All);
    let want_stable = matches!(opts.semantics, Selection::Stable | Selection::All);
    let cap = if want_complete || want_stable { opts.cap } else { usize::MAX };
    let report = semantics::evaluate(fw, mode, cap);
    let named = report.named(fw);
    let code = if report.capped { EXIT_CAP } else { EXIT_OK };

    let output = match opts.format {
        Format::Json => {
            let mut value = serde_json::to_value(&named).expect("report serialises");
            let map = value.as_object_mut().expect("report is an object");
            if !want_complete {
                map.remove("complete");
            }
            if !want_stable {
                map.remove("stable");
            }
            let mut doc = json!({ "report": value });
            if let Input::Kb { universe, .. } = input {
                doc["arguments"] = universe.to_json();
            }
            to_json(&doc)
        }
        _ => {
            let mut out = argument_listing(input);
            let _ = writeln!(out, "mode: {}", report.mode);
            let _ = writeln!(out, "C_R: {}", show(fw, &report.class_r));
            let _ = writeln!(out, "C_R,Pref: {}", show(fw, &report.class_r_pref));
            let _ = writeln!(out, "grounded: {}", show(fw, &report.grounded));
            let _ = writeln!(out, "F applications to reach it: {}", report.iterations);
            let _ = writeln!(out, "G(grounded): {}", show(fw, &report.greatest_fp));
            let _ = writeln!(out, "unique complete: {}", if report.unique_complete { "yes" } else { "no" });
            let mut list = |label: &str, sets: &[ArgSet]| {
                if report.capped {
                    let _ = writeln!(out, "{label}: not enumerated ({} arguments, cap {})", fw.len(), opts.cap);
                    return;
                }
                let _ = writeln!(out, "{label} ({}):", sets.len());
                for s in sets {
                    let _ = writeln!(out, "  {}", show(fw, s));
                }
            };
            if want_complete {
                list("complete", &report.complete);
            }
            if want_stable {
                list("stable", &report.stable);
            }
            out
        }
    };
    Ok(Outcome { output, code })
}

pub fn cmd_accept(opts: &Opts, input: &Input) -> Result<Outcome> {
    no_dot(opts, "accept")?;
    let fw = input.framework();
    let supporting: Vec<usize> = match input {
        Input::Kb { query: Some(q), universe, .. } => universe
            .arguments()
            .iter()
            .enumerate()
            .filter(|(_, a)| equivalent(&a.conclusion, q))
            .map(|(i, _)| i)
            .collect(),
        Input::Af { query: Some(i), .. } => vec![*i],
        _ => bail!("`accept` needs --query"),
    };
    let query_text = match input {
        Input::Kb { query: Some(q), .. } => q.to_string(),
        _ => opts.query.clone().unwrap_or_default(),
    };
    let class_r = semantics::class_cr(fw);
    let class_r_pref = semantics::class_cr_pref(fw);
    let (grounded, _) = semantics::grounded(fw);
    let stable = semantics::stable_extensions(fw, ConflictMode::Weak, opts.cap).ok();
    let accepted = supporting.iter().any(|&i| grounded.contains(i));

    let rows: Vec<Value> = supporting
        .iter()
        .map(|&i| {
            let in_stable = stable.as_ref().map(|list| list.iter().filter(|s| s.contains(i)).count());
            json!({
                "argument": fw.name(i),
                "description": match input {
                    Input::Kb { kb, universe, .. } => universe.arguments()[i].describe(kb),
                    Input::Af { .. } => fw.name(i).to_string(),
                },
                "class_r": class_r.contains(i),
                "class_r_pref": class_r_pref.contains(i),
                "grounded": grounded.contains(i),
                "stable_extensions_containing": in_stable,
            })
        })
        .collect();
    let output = match opts.format {
        Format::Json => to_json(&json!({
            "query": query_text,
            "stable_extensions": stable.as_ref().map(|l| l.len()),
            "arguments": rows,
            "verdict": if accepted { "accepted" } else { "not accepted" },
        })),
        _ => {
            let yes = |b: &Value| if b.as_bool() == Some(true) { "yes" } else { "no" };
            let mut out = format!("query: {query_text}\n");
            if rows.is_empty() {
                out.push_str("no argument supports the query\n");
            }
            for row in &rows {
                let stable_part = match (&row["stable_extensions_containing"], &stable) {
                    (Value::Number(k), Some(list)) => format!("{k}/{}", list.len()),
                    _ => format!("not enumerated (cap {})", opts.cap),
                };
                let _ = writeln!(
                    out,
                    "{}\n  C_R: {}  C_R,Pref: {}  grounded: {}  stable: {}",
                    row["description"].as_str().unwrap_or_default(),
                    yes(&row["class_r"]),
                    yes(&row["class_r_pref"]),
                    yes(&row["grounded"]),
                    stable_part
                );
            }
            let _ = writeln!(out, "verdict: {}", if accepted { "accepted" } else { "not accepted" });
            out
        }
    };
    Ok(Outcome::ok(output))
}

pub fn cmd_coherence(opts: &Opts, input: &Input) -> Result<Outcome> {
    no_dot(opts, "coherence")?;
    let Input::Kb { universe, .. } = input else {
        bail!("`coherence` needs a knowledge base");
    };
    let report = check_correspondence(universe, opts.cap)?;
    let code = if report.clauses.iter().any(|c| c.status == ClauseStatus::Skipped) { EXIT_CAP } else { EXIT_OK };
    let output = match opts.format {
        Format::Json => to_json(&serde_json::to_value(&report).expect("report serialises")),
        _ => {
            let set = |items: &[String]| format!("{{{}}}", items.join(", "));
            let mut out = String::from("INCL-preferred subbases:\n");
            for s in &report.incl_subbases {
                let _ = writeln!(out, "  {}", set(s));
            }
            let _ = writeln!(out, "INCL intersection: {}", set(&report.intersection_incl));
            out.push_str("maximal consistent subbases:\n");
            for s in &report.max_consistent_subbases {
                let _ = writeln!(out, "  {}", set(s));
            }
            let _ = writeln!(out, "C_Undercut,Pref: {}", set(&report.class_undercut_pref));
            let _ = writeln!(out, "grounded: {}", set(&report.grounded));
            let _ = writeln!(out, "grounded support: {}", set(&report.grounded_support));
            let _ = writeln!(out, "correspondence ({}):", report.scope);
            for c in &report.clauses {
                let status = match c.status {
                    ClauseStatus::Pass => "pass",
                    ClauseStatus::Fail => "FAIL",
                    ClauseStatus::Skipped => "skipped",
                };
                let _ = writeln!(out, "  ({}) {}: {}", c.clause, c.statement, status);
                for ce in &c.counterexamples {
                    let _ = writeln!(out, "      {ce}");
                }
            }
            out
        }
    };
    Ok(Outcome { output, code })
}

pub fn cmd_graph(opts: &Opts, input: &Input) -> Result<Outcome> {
    let fw = input.framework();
    Ok(Outcome::ok(match opts.format {
        Format::Json => to_json(&fw.to_json()),
        _ => fw.to_dot(),
    }))
}

pub fn cmd_check(opts: &Opts, input: &Input) -> Result<Outcome> {
    no_dot(opts, "check")?;
    let mut report = check_framework(input.framework(), opts.cap);
    if let Input::Kb { universe, .. } = input {
        report.checks.extend(check_universe(universe, opts.cap).checks);
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_CHECK };
    let output = match opts.format {
        Format::Json => to_json(&serde_json::to_value(&report).expect("report serialises")),
        _ => {
            let mut out = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "{tag} {}: {d}", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "{tag} {}", c.name);
                    }
                }
            }
            let failed = report.failures().count();
            let _ = writeln!(out, "{} checks, {failed} failed", report.checks.len());
            out
        }
    };
    Ok(Outcome { output, code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(path: &str) -> Opts {
        Opts {
            input: PathBuf::from(path),
            kind: None,
            defeat: None,
            pref: None,
            mode: Mode::Weak,
            query: None,
            format: Format::Text,
            cap: DEFAULT_CAP,
            semantics: Selection::All,
        }
    }

    #[test]
    fn kind_inference() {
        assert_eq!(infer_kind(Path::new("x.kb"), None).unwrap(), InputKind::Kb);
        assert_eq!(infer_kind(Path::new("x.af"), None).unwrap(), InputKind::Af);
        assert_eq!(infer_kind(Path::new("x.txt"), Some(InputKind::Af)).unwrap(), InputKind::Af);
        assert!(infer_kind(Path::new("x.txt"), None).is_err());
    }

    #[test]
    fn af_rejects_kb_flags() {
        let mut o = opts("x.af");
        o.pref = Some(Pref::None);
        let err = load_text(&o, "arg(a).").err().unwrap();
        assert_eq!(error_code(&err), EXIT_USAGE);
    }

    #[test]
    fn empty_kb_lists_nothing() {
        let mut o = opts("x.kb");
        o.query = Some("a".into());
        let input = load_text(&o, "").unwrap();
        assert_eq!(cmd_arguments(&o, &input).unwrap().output, "");
    }

    #[test]
    fn consistent_kb_accepts() {
        let mut o = opts("x.kb");
        o.query = Some("p".into());
        let input = load_text(&o, "[stratum 1]\np\n").unwrap();
        assert!(cmd_accept(&o, &input).unwrap().output.ends_with("verdict: accepted\n"));
    }

    #[test]
    fn accept_needs_a_query() {
        let o = opts("x.kb");
        let input = load_text(&o, "[stratum 1]\np\n").unwrap();
        assert!(cmd_accept(&o, &input).is_err());
    }

    #[test]
    fn too_many_beliefs_is_a_cap_error() {
        let text: String = (0..21).map(|i| format!("p{i}\n")).collect();
        let err = load_text(&opts("x.kb"), &format!("[stratum 1]\n{text}")).err().unwrap();
        assert_eq!(error_code(&err), EXIT_CAP);
    }

    #[test]
    fn capped_extensions_exit_2() {
        let mut o = opts("x.af");
        o.cap = 2;
        let input = load_text(&o, "arg(a). arg(b). arg(c).").unwrap();
        let out = cmd_extensions(&o, &input).unwrap();
        assert_eq!(out.code, EXIT_CAP);
        assert!(out.output.contains("not enumerated"));
        o.semantics = Selection::Grounded;
        assert_eq!(cmd_extensions(&o, &input).unwrap().code, EXIT_OK);
    }
}
