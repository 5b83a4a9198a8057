//! Clausal form and a small DPLL satisfiability procedure.
//!
//! Formulas are converted to CNF by negation normal form followed by
//! distribution. The bases handled here are tiny (tens of atoms at most), so
//! no auxiliary variables are introduced.

use indexmap::IndexSet;

use super::Formula;

/// Interns atom names to dense variable indices.
#[derive(Clone, Debug, Default)]
pub struct Vocabulary(IndexSet<String>);

impl Vocabulary {
    pub fn var(&mut self, name: &str) -> u32 {
        match self.0.get_index_of(name) {
            Some(i) => i as u32,
            None => self.0.insert_full(name.to_string()).0 as u32,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, var: u32) -> Option<&str> {
        self.0.get_index(var as usize).map(String::as_str)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    fn negated(self) -> Self {
        Literal { var: self.var, positive: !self.positive }
    }
}

/// A disjunction of literals, kept sorted and duplicate-free.
pub type Clause = Vec<Literal>;

/// A conjunction of clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf(Vec<Clause>);

/// Negation normal form: negations only on atoms, no implications.
enum Nnf {
    Lit(Literal),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, positive: bool, vocab: &mut Vocabulary) -> Nnf {
    match (f, positive) {
        (Formula::Atom(name), _) => Nnf::Lit(Literal { var: vocab.var(name), positive }),
        (Formula::Not(inner), _) => nnf(inner, !positive, vocab),
        (Formula::And(l, r), true) => Nnf::And(vec![nnf(l, true, vocab), nnf(r, true, vocab)]),
        (Formula::And(l, r), false) => Nnf::Or(vec![nnf(l, false, vocab), nnf(r, false, vocab)]),
        (Formula::Or(l, r), true) => Nnf::Or(vec![nnf(l, true, vocab), nnf(r, true, vocab)]),
        (Formula::Or(l, r), false) => Nnf::And(vec![nnf(l, false, vocab), nnf(r, false, vocab)]),
        (Formula::Implies(l, r), true) => Nnf::Or(vec![nnf(l, false, vocab), nnf(r, true, vocab)]),
        (Formula::Implies(l, r), false) => Nnf::And(vec![nnf(l, true, vocab), nnf(r, false, vocab)]),
        // l <-> r  ==  (!l | r) & (l | !r)
        (Formula::Iff(l, r), true) => Nnf::And(vec![
            Nnf::Or(vec![nnf(l, false, vocab), nnf(r, true, vocab)]),
            Nnf::Or(vec![nnf(l, true, vocab), nnf(r, false, vocab)]),
        ]),
        // !(l <-> r)  ==  (l | r) & (!l | !r)
        (Formula::Iff(l, r), false) => Nnf::And(vec![
            Nnf::Or(vec![nnf(l, true, vocab), nnf(r, true, vocab)]),
            Nnf::Or(vec![nnf(l, false, vocab), nnf(r, false, vocab)]),
        ]),
    }
}

/// Sorts and dedups a clause; returns `None` for tautological clauses.
fn normalize(mut clause: Clause) -> Option<Clause> {
    clause.sort_unstable();
    clause.dedup();
    let tautology = clause.windows(2).any(|w| w[0].var == w[1].var);
    (!tautology).then_some(clause)
}

fn to_clauses(n: Nnf) -> Vec<Clause> {
    match n {
        Nnf::Lit(l) => vec![vec![l]],
        Nnf::And(parts) => parts.into_iter().flat_map(to_clauses).collect(),
        Nnf::Or(parts) => {
            let mut acc: Vec<Clause> = vec![Vec::new()];
            for part in parts {
                let rhs = to_clauses(part);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        let merged: Clause = a.iter().chain(b).copied().collect();
                        if let Some(c) = normalize(merged) {
                            next.push(c);
                        }
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

impl Cnf {
    pub fn from_formula(f: &Formula, vocab: &mut Vocabulary) -> Self {
        let clauses = to_clauses(nnf(f, true, vocab)).into_iter().filter_map(normalize).collect();
        Cnf(clauses)
    }

    /// Clausal form of `¬f`.
    pub fn from_negation(f: &Formula, vocab: &mut Vocabulary) -> Self {
        let clauses = to_clauses(nnf(f, false, vocab)).into_iter().filter_map(normalize).collect();
        Cnf(clauses)
    }

    pub fn extend(&mut self, other: Cnf) {
        self.0.extend(other.0);
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

fn lit_value(assign: &[Value], lit: Literal) -> Value {
    match (assign[lit.var as usize], lit.positive) {
        (Value::Unset, _) => Value::Unset,
        (Value::True, true) | (Value::False, false) => Value::True,
        _ => Value::False,
    }
}

fn set(assign: &mut [Value], lit: Literal) {
    assign[lit.var as usize] = if lit.positive { Value::True } else { Value::False };
}

enum Propagation {
    Conflict,
    Satisfied,
    Branch(Literal),
}

/// Unit propagation to quiescence; on success returns a branching literal
/// drawn from the first open clause, or reports all clauses satisfied.
fn propagate(clauses: &[&Clause], assign: &mut [Value]) -> Propagation {
    loop {
        let mut changed = false;
        let mut open: Option<Literal> = None;
        for clause in clauses {
            let mut unassigned = None;
            let mut unassigned_count = 0;
            let mut satisfied = false;
            for &lit in clause.iter() {
                match lit_value(assign, lit) {
                    Value::True => {
                        satisfied = true;
                        break;
                    }
                    Value::Unset => {
                        unassigned_count += 1;
                        unassigned = Some(lit);
                    }
                    Value::False => {}
                }
            }
            if satisfied {
                continue;
            }
            match (unassigned_count, unassigned) {
                (0, _) => return Propagation::Conflict,
                (1, Some(lit)) => {
                    set(assign, lit);
                    changed = true;
                }
                (_, Some(lit)) => {
                    open.get_or_insert(lit);
                }
                _ => unreachable!(),
            }
        }
        if !changed {
            return match open {
                Some(lit) => Propagation::Branch(lit),
                None => Propagation::Satisfied,
            };
        }
    }
}

fn dpll(clauses: &[&Clause], assign: &mut Vec<Value>) -> bool {
    match propagate(clauses, assign) {
        Propagation::Conflict => false,
        Propagation::Satisfied => true,
        Propagation::Branch(lit) => {
            for choice in [lit, lit.negated()] {
                let mut trial = assign.clone();
                set(&mut trial, choice);
                if dpll(clauses, &mut trial) {
                    *assign = trial;
                    return true;
                }
            }
            false
        }
    }
}

/// Decides satisfiability of a clause set over variables `0..num_vars`.
pub fn is_satisfiable<'a, I>(num_vars: usize, clauses: I) -> bool
where
    I: IntoIterator<Item = &'a Clause>,
{
    let clauses: Vec<&Clause> = clauses.into_iter().collect();
    let mut assign = vec![Value::Unset; num_vars];
    dpll(&clauses, &mut assign)
}

/// Like [`is_satisfiable`] but returns a model, with unconstrained variables set to false.
pub fn find_model<'a, I>(num_vars: usize, clauses: I) -> Option<Vec<bool>>
where
    I: IntoIterator<Item = &'a Clause>,
{
    let clauses: Vec<&Clause> = clauses.into_iter().collect();
    let mut assign = vec![Value::Unset; num_vars];
    dpll(&clauses, &mut assign).then(|| assign.into_iter().map(|v| v == Value::True).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn cnf_of(texts: &[&str]) -> (Vocabulary, Cnf) {
        let mut vocab = Vocabulary::default();
        let mut cnf = Cnf::default();
        for t in texts {
            cnf.extend(Cnf::from_formula(&parse_formula(t).unwrap(), &mut vocab));
        }
        (vocab, cnf)
    }

    #[test]
    fn tautologies_vanish() {
        let (_, cnf) = cnf_of(&["a | !a", "a -> a"]);
        assert!(cnf.is_empty());
    }

    #[test]
    fn empty_clause_set_is_satisfiable() {
        assert!(is_satisfiable(0, &[]));
    }

    #[test]
    fn model_satisfies_formulas() {
        let texts = ["!r", "x -> t", "t -> r", "x | q"];
        let (vocab, cnf) = cnf_of(&texts);
        let model = find_model(vocab.len(), cnf.clauses()).unwrap();
        let value = |name: &str| {
            (0..vocab.len() as u32).find(|&v| vocab.name(v) == Some(name)).map(|v| model[v as usize]).unwrap()
        };
        for t in texts {
            assert!(parse_formula(t).unwrap().eval(&value), "{t}");
        }
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p_ij: pigeon i in hole j
        let mut texts = vec![];
        for i in 0..3 {
            texts.push(format!("p{i}a | p{i}b"));
        }
        for h in ["a", "b"] {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    texts.push(format!("!(p{i}{h} & p{j}{h})"));
                }
            }
        }
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let (vocab, cnf) = cnf_of(&refs);
        assert!(!is_satisfiable(vocab.len(), cnf.clauses()));
    }

    #[test]
    fn negation_cnf_matches_not() {
        let f = parse_formula("(a <-> b) -> c").unwrap();
        let mut v1 = Vocabulary::default();
        let mut v2 = Vocabulary::default();
        let a = Cnf::from_negation(&f, &mut v1);
        let b = Cnf::from_formula(&Formula::not(f), &mut v2);
        assert_eq!(a, b);
    }
}
