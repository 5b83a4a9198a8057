//! Defeat relations, preferences and the attack relation they induce.
//!
//! A framework carries a defeat relation `R` (rebut, undercut, or given
//! explicitly for abstract arguments) and a preorder `Pref`. `B` attacks `A`
//! when `B R A` and `A` is not strictly preferred to `B`: a defeat is
//! neutralised when its target defends itself by preference.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::argument::{Argument, ArgumentUniverse};
use crate::formula::{equivalent, negate_canonical, Formula};
use crate::kb::StratifiedKb;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FrameworkError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: argument `{name}` is not declared")]
    Undeclared { line: usize, name: String },
    #[error("line {line}: argument `{name}` is declared twice")]
    Redeclared { line: usize, name: String },
    #[error("edge ({from}, {to}) references an argument outside the framework")]
    DanglingEdge { from: usize, to: usize },
    #[error("no argument named `{0}`")]
    UnknownArgument(String),
    #[error("argument `{0}` is abstract and has no support")]
    AbstractArgument(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefeatKind {
    Rebut,
    Undercut,
    Abstract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PreferenceKind {
    Certainty,
    Explicit,
    None,
}

/// A preorder over the arguments of one framework, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preference {
    None,
    /// Lower level is better; equal levels are indifferent.
    Certainty(Vec<usize>),
    /// Reflexive-transitive closure: `closure[a]` holds every `b` with `a Pref b`.
    Explicit(Vec<FixedBitSet>),
}

impl Preference {
    /// Closes `pairs` (`(better, worse)`) reflexively and transitively over `n`
    /// arguments. Cycles collapse into indifference classes.
    pub fn explicit(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut closure: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            closure[a].insert(b);
        }
        // Warshall
        for k in 0..n {
            let via = closure[k].clone();
            for row in closure.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Preference::Explicit(closure)
    }

    pub fn kind(&self) -> PreferenceKind {
        match self {
            Preference::None => PreferenceKind::None,
            Preference::Certainty(_) => PreferenceKind::Certainty,
            Preference::Explicit(_) => PreferenceKind::Explicit,
        }
    }

    /// `a Pref b`.
    pub fn weakly_prefers(&self, a: usize, b: usize) -> bool {
        match self {
            Preference::None => a == b,
            Preference::Certainty(levels) => levels[a] <= levels[b],
            Preference::Explicit(closure) => closure[a].contains(b),
        }
    }

    /// The strict part: `a Pref b` and not `b Pref a`.
    pub fn strictly_prefers(&self, a: usize, b: usize) -> bool {
        match self {
            Preference::None => false,
            Preference::Certainty(levels) => levels[a] < levels[b],
            Preference::Explicit(closure) => closure[a].contains(b) && !closure[b].contains(a),
        }
    }

    /// All strictly ordered pairs `(better, worse)` over `n` arguments.
    pub fn strict_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.strictly_prefers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Strict preference between two KB arguments by certainty level.
pub fn prefers_by_level(a: &Argument, b: &Argument) -> bool {
    a.level < b.level
}

/// `a` rebuts `b`: the conclusion of `a` is equivalent to the negation of `b`'s.
pub fn rebuts(a: &Argument, b: &Argument) -> bool {
    equivalent(&a.conclusion, &Formula::not(b.conclusion.clone()))
}

/// `a` undercuts `b`: the conclusion of `a` is equivalent to the negation of
/// some member of `b`'s support.
pub fn undercuts(kb: &StratifiedKb, a: &Argument, b: &Argument) -> bool {
    b.support_formulas(kb).any(|k| equivalent(&a.conclusion, &Formula::not(k.clone())))
}

/// Memoises the equivalence tests behind rebut and undercut over a universe:
/// each distinct (conclusion, target) pair is decided once.
struct ConflictOracle {
    cache: HashMap<(Formula, Formula), bool>,
}

impl ConflictOracle {
    fn contradicts(&mut self, conclusion: &Formula, target: &Formula) -> bool {
        let key = (conclusion.clone(), target.clone());
        if let Some(&hit) = self.cache.get(&key) {
            return hit;
        }
        // Structural shortcut first; the canonical negation is equivalent to ¬target.
        let hit = *conclusion == negate_canonical(target) || equivalent(conclusion, &Formula::not(target.clone()));
        self.cache.insert(key, hit);
        hit
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> (Vec<FixedBitSet>, Vec<FixedBitSet>) {
    let mut incoming = vec![FixedBitSet::with_capacity(n); n];
    let mut outgoing = vec![FixedBitSet::with_capacity(n); n];
    for &(from, to) in edges {
        outgoing[from].insert(to);
        incoming[to].insert(from);
    }
    (incoming, outgoing)
}

/// A preference-based argumentation framework `⟨A, R, Pref⟩` with its derived attack relation.
#[derive(Clone, Debug)]
pub struct Framework {
    names: Vec<String>,
    universe: Option<ArgumentUniverse>,
    defeat_kind: DefeatKind,
    defeats: Vec<(usize, usize)>,
    preference: Preference,
    attacks: Vec<(usize, usize)>,
    defeat_in: Vec<FixedBitSet>,
    defeat_out: Vec<FixedBitSet>,
    attack_in: Vec<FixedBitSet>,
    attack_out: Vec<FixedBitSet>,
}

impl Framework {
    /// Builds a framework over named abstract arguments.
    pub fn new(
        names: Vec<String>,
        defeats: Vec<(usize, usize)>,
        preference: Preference,
    ) -> Result<Self, FrameworkError> {
        Self::assemble(names, None, DefeatKind::Abstract, defeats, preference)
    }

    fn assemble(
        names: Vec<String>,
        universe: Option<ArgumentUniverse>,
        defeat_kind: DefeatKind,
        mut defeats: Vec<(usize, usize)>,
        preference: Preference,
    ) -> Result<Self, FrameworkError> {
        let n = names.len();
        if let Some(&(from, to)) = defeats.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(FrameworkError::DanglingEdge { from, to });
        }
        defeats.sort_unstable();
        defeats.dedup();
        let attacks: Vec<(usize, usize)> =
            defeats.iter().copied().filter(|&(b, a)| !preference.strictly_prefers(a, b)).collect();
        let (defeat_in, defeat_out) = adjacency(n, &defeats);
        let (attack_in, attack_out) = adjacency(n, &attacks);
        Ok(Framework {
            names,
            universe,
            defeat_kind,
            defeats,
            preference,
            attacks,
            defeat_in,
            defeat_out,
            attack_in,
            attack_out,
        })
    }

    /// Builds `⟨A(Σ), defeat, Pref⟩` over a KB argument universe.
    pub fn from_universe(universe: &ArgumentUniverse, defeat: DefeatKind, preference: PreferenceKind) -> Self {
        let args = universe.arguments();
        let kb = universe.kb();
        let mut oracle = ConflictOracle { cache: HashMap::new() };
        let mut defeats = Vec::new();
        for (i, a) in args.iter().enumerate() {
            for (j, b) in args.iter().enumerate() {
                let hit = match defeat {
                    DefeatKind::Rebut => oracle.contradicts(&a.conclusion, &b.conclusion),
                    DefeatKind::Undercut => b.support_formulas(kb).any(|k| oracle.contradicts(&a.conclusion, k)),
                    DefeatKind::Abstract => false,
                };
                if hit {
                    defeats.push((i, j));
                }
            }
        }
        let preference = match preference {
            PreferenceKind::Certainty => Preference::Certainty(args.iter().map(|a| a.level).collect()),
            PreferenceKind::None => Preference::None,
            PreferenceKind::Explicit => Preference::explicit(args.len(), &[]),
        };
        let names = args.iter().map(|a| a.id.clone()).collect();
        Self::assemble(names, Some(universe.clone()), defeat, defeats, preference)
            .expect("edges are built from the universe")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The KB universe this framework was built from, if any.
    pub fn universe(&self) -> Option<&ArgumentUniverse> {
        self.universe.as_ref()
    }

    /// The KB argument at index `i`, if the framework is KB-derived.
    pub fn argument(&self, i: usize) -> Option<&Argument> {
        self.universe.as_ref().map(|u| &u.arguments()[i])
    }

    pub fn defeat_kind(&self) -> DefeatKind {
        self.defeat_kind
    }

    pub fn preference(&self) -> &Preference {
        &self.preference
    }

    /// `R`, sorted.
    pub fn defeats(&self) -> &[(usize, usize)] {
        &self.defeats
    }

    /// `Att`, sorted.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    pub fn defeats_edge(&self, from: usize, to: usize) -> bool {
        self.defeat_out[from].contains(to)
    }

    pub fn attacks_edge(&self, from: usize, to: usize) -> bool {
        self.attack_out[from].contains(to)
    }

    /// Strict preference `a ≫ b`.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.preference.strictly_prefers(a, b)
    }

    /// Does `b` attack `a`, by name.
    pub fn attacks_by_name(&self, b: &str, a: &str) -> Result<bool, FrameworkError> {
        let bi = self.index_of(b).ok_or_else(|| FrameworkError::UnknownArgument(b.to_string()))?;
        let ai = self.index_of(a).ok_or_else(|| FrameworkError::UnknownArgument(a.to_string()))?;
        Ok(self.attacks_edge(bi, ai))
    }

    /// Undercut test between two framework members; abstract arguments have
    /// no support, so asking is a usage error.
    pub fn undercuts(&self, a: usize, b: usize) -> Result<bool, FrameworkError> {
        let universe = self.universe.as_ref().ok_or_else(|| FrameworkError::AbstractArgument(self.names[b].clone()))?;
        let args = universe.arguments();
        Ok(undercuts(universe.kb(), &args[a], &args[b]))
    }

    pub fn attackers(&self, a: usize) -> &FixedBitSet {
        &self.attack_in[a]
    }

    pub fn attacked_by(&self, a: usize) -> &FixedBitSet {
        &self.attack_out[a]
    }

    pub fn defeaters(&self, a: usize) -> &FixedBitSet {
        &self.defeat_in[a]
    }

    pub fn defeated_by(&self, a: usize) -> &FixedBitSet {
        &self.defeat_out[a]
    }

    /// Node label used in exports: `id` for abstract arguments, `id @level` otherwise.
    pub fn label(&self, i: usize) -> String {
        match self.argument(i) {
            Some(arg) => format!("{} @{}", arg.id, arg.level),
            None => self.names[i].clone(),
        }
    }

    /// JSON export of `R`, the strict part of `Pref`, and `Att` as name pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let pairs = |edges: &[(usize, usize)]| -> Vec<[&str; 2]> {
            edges.iter().map(|&(a, b)| [self.names[a].as_str(), self.names[b].as_str()]).collect()
        };
        serde_json::json!({
            "arguments": self.names,
            "defeat": self.defeat_kind,
            "preference_kind": self.preference.kind(),
            "defeats": pairs(&self.defeats),
            "preference": pairs(&self.preference.strict_pairs(self.len())),
            "attacks": pairs(&self.attacks),
        })
    }

    /// Graphviz rendering: solid edges for attacks, dashed for defeats that
    /// preference neutralised.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph framework {\n  rankdir=LR;\n  node [shape=box];\n");
        for i in 0..self.len() {
            let mut label = self.label(i);
            if let Some(arg) = self.argument(i) {
                let support: Vec<String> =
                    arg.support_formulas(self.universe.as_ref().unwrap().kb()).map(|f| f.to_string()).collect();
                label = format!("{label}\\n({{{}}}, {})", support.join(", "), arg.conclusion);
            }
            let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", escape(&self.names[i]), escape_label(&label));
        }
        for &(from, to) in &self.defeats {
            let style = if self.attacks_edge(from, to) { "" } else { " [style=dashed]" };
            let _ = writeln!(out, "  \"{}\" -> \"{}\"{style};", escape(&self.names[from]), escape(&self.names[to]));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

// keeps the `\n` line breaks we insert on purpose
fn escape_label(s: &str) -> String {
    s.replace('"', "\\\"")
}

/// Parses the abstract framework format: `arg(a).`, `def(a,b).`,
/// `pref(better,worse).`, with `%` line comments.
pub fn parse_abstract_framework(text: &str) -> Result<Framework, FrameworkError> {
    struct Fact {
        line: usize,
        predicate: String,
        args: Vec<String>,
    }

    let mut facts = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('%').next().unwrap_or("");
        let mut rest = content;
        loop {
            let trimmed = rest.trim_start();
            if trimmed.is_empty() {
                break;
            }
            let column = content.len() - trimmed.len() + 1;
            let syntax = |message: String| FrameworkError::Syntax { line, column, message };
            let end = trimmed.find('.').ok_or_else(|| syntax("missing `.` after fact".into()))?;
            let fact = trimmed[..end].trim();
            let open = fact.find('(').ok_or_else(|| syntax(format!("expected `(` in `{fact}`")))?;
            let inner = fact[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| syntax(format!("expected `)` at the end of `{fact}`")))?;
            let predicate = fact[..open].trim().to_string();
            let args: Vec<String> = inner.split(',').map(|s| s.trim().to_string()).collect();
            let arity = match predicate.as_str() {
                "arg" => 1,
                "def" | "att" | "pref" => 2,
                other => return Err(syntax(format!("unknown predicate `{other}`"))),
            };
            if args.len() != arity {
                return Err(syntax(format!("`{predicate}` takes {arity} argument(s), got {}", args.len())));
            }
            if let Some(bad) = args.iter().find(|a| a.is_empty() || !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
                return Err(syntax(format!("bad argument name `{bad}`")));
            }
            facts.push(Fact { line, predicate, args });
            rest = &trimmed[end + 1..];
        }
    }

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for fact in facts.iter().filter(|f| f.predicate == "arg") {
        let name = &fact.args[0];
        if index.contains_key(name) {
            return Err(FrameworkError::Redeclared { line: fact.line, name: name.clone() });
        }
        index.insert(name.clone(), names.len());
        names.push(name.clone());
    }
    let lookup = |fact: &Fact, k: usize| {
        index
            .get(&fact.args[k])
            .copied()
            .ok_or_else(|| FrameworkError::Undeclared { line: fact.line, name: fact.args[k].clone() })
    };
    let mut defeats = Vec::new();
    let mut prefs = Vec::new();
    for fact in facts.iter().filter(|f| f.predicate != "arg") {
        let edge = (lookup(fact, 0)?, lookup(fact, 1)?);
        if fact.predicate == "pref" {
            prefs.push(edge);
        } else {
            defeats.push(edge);
        }
    }
    let n = names.len();
    let preference = if prefs.is_empty() { Preference::None } else { Preference::explicit(n, &prefs) };
    Framework::new(names, defeats, preference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::argument::build_universe;
    use crate::formula::parse_formula;
    use crate::kb::parse_kb;

    const MUTUAL_DEFEAT: &str = "arg(a). arg(b). arg(c). arg(d). def(c,d). def(d,c).";

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn arg(kb: &StratifiedKb, support: &[&str], conclusion: &str) -> Argument {
        let mut refs: Vec<_> = support.iter().map(|t| kb.find(&f(t)).unwrap()).collect();
        refs.sort();
        let level = kb.certainty_level(&refs).unwrap();
        Argument { id: String::new(), support: refs, conclusion: f(conclusion), level }
    }

    #[test]
    fn parses_mutual_defeat() {
        let fw = parse_abstract_framework(MUTUAL_DEFEAT).unwrap();
        assert_eq!(fw.names(), ["a", "b", "c", "d"]);
        assert_eq!(fw.defeats(), [(2, 3), (3, 2)]);
        assert_eq!(fw.attacks(), fw.defeats());
        assert_eq!(fw.preference(), &Preference::None);
    }

    #[test]
    fn preference_strips_defeat() {
        let fw = parse_abstract_framework(&format!("{MUTUAL_DEFEAT}\npref(c,d).")).unwrap();
        assert_eq!(fw.attacks(), [(2, 3)]);
        assert!(!fw.attacks_by_name("d", "c").unwrap());
        assert!(fw.attacks_by_name("c", "d").unwrap());
        assert!(fw.attacks_by_name("x", "c").is_err());
    }

    #[test]
    fn blocked_chain_has_no_attacks() {
        let fw = parse_abstract_framework("arg(a). arg(b). arg(c). def(a,b). def(b,c). pref(b,a). pref(c,b).").unwrap();
        assert!(fw.attacks().is_empty());
        // transitive closure: c over a
        assert!(fw.prefers(2, 0));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_abstract_framework("def(a,b)."), Err(FrameworkError::Undeclared { line: 1, .. })));
        assert!(matches!(parse_abstract_framework("arg(a). arg(a)."), Err(FrameworkError::Redeclared { .. })));
        assert!(matches!(parse_abstract_framework("arg(a)"), Err(FrameworkError::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(
            parse_abstract_framework("arg(a).\n  foo(a)."),
            Err(FrameworkError::Syntax { line: 2, column: 3, .. })
        ));
        assert!(matches!(parse_abstract_framework("arg(a,b)."), Err(FrameworkError::Syntax { .. })));
        assert!(matches!(parse_abstract_framework("arg(a b)."), Err(FrameworkError::Syntax { .. })));
    }

    #[test]
    fn comments_and_self_defeat() {
        let fw = parse_abstract_framework("% a self-defeating argument\narg(a). % trailing\ndef(a,a).\n").unwrap();
        assert_eq!(fw.attacks(), [(0, 0)]);
    }

    #[test]
    fn explicit_preference_cycle_collapses() {
        let p = Preference::explicit(3, &[(0, 1), (1, 0), (1, 2)]);
        assert!(p.weakly_prefers(0, 1) && p.weakly_prefers(1, 0));
        assert!(!p.strictly_prefers(0, 1) && !p.strictly_prefers(1, 0));
        assert!(p.strictly_prefers(0, 2));
        assert!(!p.strictly_prefers(2, 2));
        assert_eq!(p.strict_pairs(3), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn level_preference() {
        let p = Preference::Certainty(vec![2, 3, 3]);
        assert!(p.strictly_prefers(0, 1));
        assert!(!p.strictly_prefers(1, 2));
        assert!(!p.strictly_prefers(0, 0));
        assert!(p.weakly_prefers(1, 2) && p.weakly_prefers(2, 1));
    }

    #[test]
    fn rebut_and_undercut_examples() {
        let kb2 = parse_kb("[stratum 1]\na\n!a\n[stratum 2]\na -> b\n[stratum 3]\n!b\n").unwrap();
        let b = arg(&kb2, &["a", "a -> b"], "b");
        let nb = arg(&kb2, &["!b"], "!b");
        let a = arg(&kb2, &["a"], "a");
        let ab = arg(&kb2, &["a -> b"], "a -> b");
        assert!(rebuts(&b, &nb) && rebuts(&nb, &b));
        assert!(!rebuts(&a, &a));
        assert!(!rebuts(&a, &ab));
        assert!(!undercuts(&kb2, &a, &b));
        assert!(prefers_by_level(&b, &nb));
        assert!(!prefers_by_level(&nb, &nb));

        let kb3 = parse_kb("[stratum 1]\nx\n!r\n[stratum 2]\nx -> t\n[stratum 3]\nt -> r\n[stratum 4]\n!r -> p\n").unwrap();
        let r = arg(&kb3, &["x", "x -> t", "t -> r"], "r");
        let p = arg(&kb3, &["!r", "!r -> p"], "p");
        let ntr = arg(&kb3, &["x", "x -> t", "!r"], "!(t -> r)");
        assert!(undercuts(&kb3, &r, &p));
        assert!(undercuts(&kb3, &ntr, &r));
        assert!(prefers_by_level(&r, &p));
        assert!(prefers_by_level(&ntr, &r));
    }

    #[test]
    fn conflicting_strata_frameworks() {
        let kb = parse_kb("[stratum 1]\na\n!a\n[stratum 2]\na -> b\n[stratum 3]\n!b\n").unwrap();
        let u = build_universe(&kb, None).unwrap();
        let idx = |support: &[&str], c: &str| {
            let a = arg(&kb, support, c);
            u.arguments().iter().position(|x| x.support == a.support && x.conclusion == a.conclusion).unwrap()
        };
        let b = idx(&["a", "a -> b"], "b");
        let na = idx(&["!a"], "!a");
        let nb = idx(&["!b"], "!b");

        let under = Framework::from_universe(&u, DefeatKind::Undercut, PreferenceKind::Certainty);
        assert!(under.attacks_edge(na, b));
        assert!(under.undercuts(na, b).unwrap());

        let rebut = Framework::from_universe(&u, DefeatKind::Rebut, PreferenceKind::Certainty);
        assert!(rebut.defeats_edge(nb, b));
        assert!(!rebut.attacks_edge(nb, b));
        assert!(rebut.attacks_edge(b, nb));
        assert!(rebut.attackers(b).is_clear());
    }

    #[test]
    fn undercut_chain_preference_strips_undercut() {
        let kb = parse_kb("[stratum 1]\nx\n!r\n[stratum 2]\nx -> t\n[stratum 3]\nt -> r\n[stratum 4]\n!r -> p\n").unwrap();
        let u = build_universe(&kb, Some(&f("p"))).unwrap();
        let fw = Framework::from_universe(&u, DefeatKind::Undercut, PreferenceKind::Certainty);
        let pos = |support: &[&str], c: &str| {
            let a = arg(&kb, support, c);
            u.arguments().iter().position(|x| x.support == a.support && x.conclusion == a.conclusion).unwrap()
        };
        let r = pos(&["x", "x -> t", "t -> r"], "r");
        let ntr = pos(&["x", "x -> t", "!r"], "!(t -> r)");
        assert!(fw.defeats_edge(r, ntr));
        assert!(!fw.attacks_edge(r, ntr));
        assert!(fw.attacks_edge(ntr, r));
        let dot = fw.to_dot();
        let line = format!("\"{}\" -> \"{}\" [style=dashed];", fw.name(r), fw.name(ntr));
        assert!(dot.contains(&line), "{dot}");
    }

    #[test]
    fn undercut_on_abstract_argument_is_an_error() {
        let fw = parse_abstract_framework(MUTUAL_DEFEAT).unwrap();
        assert!(matches!(fw.undercuts(2, 3), Err(FrameworkError::AbstractArgument(_))));
    }

    #[test]
    fn dot_classifies_edges() {
        let fw = parse_abstract_framework(&format!("{MUTUAL_DEFEAT} pref(c,d).")).unwrap();
        let dot = fw.to_dot();
        assert!(dot.contains("\"c\" -> \"d\";"));
        assert!(dot.contains("\"d\" -> \"c\" [style=dashed];"));
    }

    #[test]
    fn dangling_edges_rejected() {
        assert_eq!(
            Framework::new(vec!["a".into()], vec![(0, 1)], Preference::None).unwrap_err(),
            FrameworkError::DanglingEdge { from: 0, to: 1 }
        );
    }
}
