//! Argument construction from a stratified KB.
//!
//! An argument is a pair `(H, h)`: `H ⊆ E` is consistent with the core,
//! entails `h` together with the core, and is inclusion-minimal with those
//! two properties. The set of all such pairs is infinite (any formula can be
//! a conclusion), so a universe is built over a finite candidate set of
//! conclusions: every belief, the canonical negation of every belief, and the
//! optional query together with its canonical negation. Undercut targets are
//! exactly negated beliefs and rebuttal targets are negated candidates, so
//! every defeat in the full set has a representative here.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::sat::{self, Cnf, Vocabulary};
use crate::formula::{negate_canonical, Formula, FormulaSet};
use crate::kb::{BeliefRef, StratifiedKb};

/// Largest `|E|` the exhaustive support search accepts.
pub const MAX_BELIEFS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("{beliefs} beliefs exceed the exhaustive support search limit of {limit}")]
    TooManyBeliefs { beliefs: usize, limit: usize },
}

/// An argument `(support, conclusion)` with its certainty level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Argument {
    pub id: String,
    /// Sorted, duplicate-free.
    pub support: Vec<BeliefRef>,
    pub conclusion: Formula,
    pub level: usize,
}

impl Argument {
    /// Support formulas in reference order.
    pub fn support_formulas<'a>(&'a self, kb: &'a StratifiedKb) -> impl Iterator<Item = &'a Formula> + 'a {
        self.support.iter().map(move |&r| kb.belief(r).expect("support refs resolve"))
    }

    /// `id: ({h1, h2}, conclusion) @level`
    pub fn describe(&self, kb: &StratifiedKb) -> String {
        let support: Vec<String> = self.support_formulas(kb).map(|f| f.to_string()).collect();
        format!("{}: ({{{}}}, {}) @{}", self.id, support.join(", "), self.conclusion, self.level)
    }
}

/// The finite argument universe of a KB relative to an optional query.
#[derive(Clone, Debug)]
pub struct ArgumentUniverse {
    kb: StratifiedKb,
    query: Option<Formula>,
    candidates: FormulaSet,
    arguments: Vec<Argument>,
}

impl ArgumentUniverse {
    pub fn kb(&self) -> &StratifiedKb {
        &self.kb
    }

    pub fn query(&self) -> Option<&Formula> {
        self.query.as_ref()
    }

    pub fn candidates(&self) -> &FormulaSet {
        &self.candidates
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Argument> {
        self.arguments.iter().find(|a| a.id == id)
    }

    /// Finds the argument with exactly this support and conclusion.
    pub fn find(&self, support: &[BeliefRef], conclusion: &Formula) -> Option<&Argument> {
        let mut sorted = support.to_vec();
        sorted.sort_unstable();
        self.arguments.iter().find(|a| a.support == sorted && &a.conclusion == conclusion)
    }

    /// JSON export: `[{id, support: [formula text], conclusion, level}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .arguments
            .iter()
            .map(|a| {
                serde_json::json!({
                    "id": a.id,
                    "support": a.support_formulas(&self.kb).map(|f| f.to_string()).collect::<Vec<_>>(),
                    "conclusion": a.conclusion.to_string(),
                    "level": a.level,
                })
            })
            .collect();
        serde_json::Value::Array(rows)
    }
}

/// Candidate conclusions: each belief and its canonical negation, then the
/// query and its canonical negation, deduplicated structurally.
pub fn candidate_conclusions(kb: &StratifiedKb, query: Option<&Formula>) -> FormulaSet {
    let mut out = FormulaSet::new();
    for (_, f) in kb.beliefs() {
        out.insert(f.clone());
        out.insert(negate_canonical(f));
    }
    if let Some(q) = query {
        out.insert(q.clone());
        out.insert(negate_canonical(q));
    }
    out
}

/// Union of the supports of `args`.
pub fn supp_of<'a>(args: impl IntoIterator<Item = &'a Argument>) -> BTreeSet<BeliefRef> {
    args.into_iter().flat_map(|a| a.support.iter().copied()).collect()
}

/// Clausal view of a KB, shared by all support searches over it.
pub(crate) struct SupportSearch<'kb> {
    kb: &'kb StratifiedKb,
    vocab: Vocabulary,
    core: Cnf,
    beliefs: Vec<Cnf>,
    /// Consistency of `K ∪ H` per belief mask; `None` until computed.
    consistent: Vec<Option<bool>>,
}

impl<'kb> SupportSearch<'kb> {
    pub(crate) fn new(kb: &'kb StratifiedKb) -> Result<Self, BuildError> {
        let n = kb.num_beliefs();
        if n > MAX_BELIEFS {
            return Err(BuildError::TooManyBeliefs { beliefs: n, limit: MAX_BELIEFS });
        }
        let mut vocab = Vocabulary::default();
        let mut core = Cnf::default();
        for f in kb.core() {
            core.extend(Cnf::from_formula(f, &mut vocab));
        }
        let beliefs = kb.beliefs().map(|(_, f)| Cnf::from_formula(f, &mut vocab)).collect();
        Ok(SupportSearch { kb, vocab, core, beliefs, consistent: vec![None; 1 << n] })
    }

    fn clauses_for(&self, mask: u32) -> impl Iterator<Item = &sat::Clause> + '_ {
        let beliefs = self
            .beliefs
            .iter()
            .enumerate()
            .filter(move |(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, cnf)| cnf.clauses());
        self.core.clauses().iter().chain(beliefs)
    }

    pub(crate) fn is_consistent(&mut self, mask: u32) -> bool {
        if let Some(known) = self.consistent[mask as usize] {
            return known;
        }
        let result = sat::is_satisfiable(self.vocab.len(), self.clauses_for(mask));
        self.consistent[mask as usize] = Some(result);
        result
    }

    fn entails(&self, mask: u32, negated_conclusion: &Cnf, num_vars: usize) -> bool {
        !sat::is_satisfiable(num_vars, self.clauses_for(mask).chain(negated_conclusion.clauses()))
    }

    /// Inclusion-minimal supports of `conclusion` as belief masks, found by
    /// increasing cardinality and skipping supersets of earlier hits.
    fn minimal_masks(&mut self, conclusion: &Formula) -> Vec<u32> {
        let mut vocab = self.vocab.clone();
        let negated = Cnf::from_negation(conclusion, &mut vocab);
        let num_vars = vocab.len();
        let n = self.beliefs.len() as u32;
        let mut found: Vec<u32> = Vec::new();
        for size in 0..=n {
            for mask in masks_of_size(n, size) {
                if found.iter().any(|&s| s & !mask == 0) {
                    continue;
                }
                if self.entails(mask, &negated, num_vars) && self.is_consistent(mask) {
                    found.push(mask);
                }
            }
        }
        found
    }

    pub(crate) fn refs_of(&self, mask: u32) -> Vec<BeliefRef> {
        let refs = self.kb.belief_refs();
        (0..refs.len()).filter(|i| mask & (1 << i) != 0).map(|i| refs[i]).collect()
    }
}

/// All masks over `n` bits with exactly `k` bits set, in increasing numeric order.
fn masks_of_size(n: u32, k: u32) -> impl Iterator<Item = u32> {
    let limit: u64 = 1u64 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first).filter(|&m| m < limit || (k == 0));
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let c = current & current.wrapping_neg();
            let r = current + c;
            let candidate = (((r ^ current) >> 2) / c) | r;
            (candidate < limit).then_some(candidate)
        };
        Some(current as u32)
    })
}

/// All inclusion-minimal supports of `conclusion`, sorted lexicographically.
pub fn minimal_supports(kb: &StratifiedKb, conclusion: &Formula) -> Result<Vec<Vec<BeliefRef>>, BuildError> {
    let mut search = SupportSearch::new(kb)?;
    let mut supports: Vec<Vec<BeliefRef>> =
        search.minimal_masks(conclusion).into_iter().map(|m| search.refs_of(m)).collect();
    supports.sort();
    Ok(supports)
}

/// Builds the argument universe: one argument per candidate conclusion and
/// minimal support. Arguments are ordered by level, then support, then
/// conclusion text, and named `A1, A2, …` in that order.
pub fn build_universe(kb: &StratifiedKb, query: Option<&Formula>) -> Result<ArgumentUniverse, BuildError> {
    let candidates = candidate_conclusions(kb, query);
    let mut search = SupportSearch::new(kb)?;
    let mut rows: Vec<(usize, Vec<BeliefRef>, String, Formula)> = Vec::new();
    for c in &candidates {
        for mask in search.minimal_masks(c) {
            let support = search.refs_of(mask);
            let level = kb.certainty_level(&support).expect("refs come from the KB");
            rows.push((level, support, c.to_string(), c.clone()));
        }
    }
    rows.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    let arguments = rows
        .into_iter()
        .enumerate()
        .map(|(i, (level, support, _, conclusion))| Argument { id: format!("A{}", i + 1), support, conclusion, level })
        .collect();
    Ok(ArgumentUniverse { kb: kb.clone(), query: query.cloned(), candidates, arguments })
}
