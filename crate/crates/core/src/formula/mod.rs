//! Propositional formulas: the AST, its canonical text form, and the
//! satisfiability-based reasoning services (consistency, entailment,
//! equivalence) everything else is built on.

mod parse;
pub mod sat;

use std::fmt;

use indexmap::IndexSet;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::{is_atom_name, parse_formula, ParseError};
use sat::{Cnf, Vocabulary};

/// A propositional formula.
///
/// Binary connectives nest by boxing; formulas are small (a handful of
/// connectives) so sharing is not worth the bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Collects the atom names occurring in the formula, in first-occurrence order.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = IndexSet::new();
        self.collect_atoms(&mut out);
        out.into_iter().collect()
    }

    fn collect_atoms<'a>(&'a self, out: &mut IndexSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Evaluates the formula under an assignment given as a lookup function.
    pub fn eval(&self, value: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(name) => value(name),
            Formula::Not(f) => !f.eval(value),
            Formula::And(l, r) => l.eval(value) && r.eval(value),
            Formula::Or(l, r) => l.eval(value) || r.eval(value),
            Formula::Implies(l, r) => !l.eval(value) || r.eval(value),
            Formula::Iff(l, r) => l.eval(value) == r.eval(value),
        }
    }

    /// Binding strength used by the renderer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) => 6,
            Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Implies(..) => 2,
            Formula::Iff(..) => 1,
        }
    }
}

/// Returns `¬f`, except that `¬g` maps to `g` rather than `¬¬g`.
///
/// This picks one canonical representative of the negation so that the
/// conclusion closure used for argument construction stays finite.
pub fn negate_canonical(f: &Formula) -> Formula {
    match f {
        Formula::Not(inner) => (**inner).clone(),
        other => Formula::not(other.clone()),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(inner) => {
                f.write_str("!")?;
                write_operand(f, inner, inner.precedence() < self.precedence())
            }
            Formula::And(l, r) | Formula::Or(l, r) => {
                let op = if matches!(self, Formula::And(..)) { " & " } else { " | " };
                // left-associative
                write_operand(f, l, l.precedence() < self.precedence())?;
                f.write_str(op)?;
                write_operand(f, r, r.precedence() <= self.precedence())
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let op = if matches!(self, Formula::Implies(..)) { " -> " } else { " <-> " };
                // right-associative
                write_operand(f, l, l.precedence() <= self.precedence())?;
                f.write_str(op)?;
                write_operand(f, r, r.precedence() < self.precedence())
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, operand: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({operand})")
    } else {
        write!(f, "{operand}")
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

/// An ordered collection of formulas without structural duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FormulaSet(IndexSet<Formula>);

impl FormulaSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `f`, returning `false` if a structurally identical formula was already present.
    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Formula> {
        self.0.get_index(index)
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.0.get_index_of(f)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Formula> + '_ {
        self.0.iter()
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        FormulaSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = &'a Formula;
    type IntoIter = indexmap::set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl IntoIterator for FormulaSet {
    type Item = Formula;
    type IntoIter = indexmap::set::IntoIter<Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

fn clausify<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> (Vocabulary, Cnf) {
    let mut vocab = Vocabulary::default();
    let mut cnf = Cnf::default();
    for f in formulas {
        cnf.extend(Cnf::from_formula(f, &mut vocab));
    }
    (vocab, cnf)
}

/// True iff the conjunction of `set` is satisfiable. The empty set is consistent.
pub fn is_consistent<'a>(set: impl IntoIterator<Item = &'a Formula>) -> bool {
    let (vocab, cnf) = clausify(set);
    sat::is_satisfiable(vocab.len(), cnf.clauses())
}

/// True iff every model of `premises` satisfies `conclusion`, i.e. the
/// premises together with `¬conclusion` are unsatisfiable.
pub fn entails<'a>(premises: impl IntoIterator<Item = &'a Formula>, conclusion: &Formula) -> bool {
    let (mut vocab, mut cnf) = clausify(premises);
    cnf.extend(Cnf::from_negation(conclusion, &mut vocab));
    !sat::is_satisfiable(vocab.len(), cnf.clauses())
}

/// Logical equivalence, decided by entailment in both directions.
pub fn equivalent(f: &Formula, g: &Formula) -> bool {
    entails([f], g) && entails([g], f)
}
