//! Coherence-based reasoning over a stratified KB, and the checks tying it
//! to the argumentation side.
//!
//! An INCL-preferred subbase is a consistent `S = S1 ∪ … ∪ Sn` whose prefix
//! `S1 ∪ … ∪ Sj` is a maximal consistent subset of `Σ1 ∪ … ∪ Σj` for every
//! `j`. Consistency is always relative to the core `K`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::argument::{supp_of, ArgumentUniverse, BuildError, SupportSearch};
use crate::framework::{DefeatKind, Framework, PreferenceKind};
use crate::kb::{BeliefRef, StratifiedKb};
use crate::semantics::{self, ArgSet, ConflictMode, SemanticsError};

/// A `K`-consistent subset of the beliefs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subbase {
    /// Sorted.
    pub members: Vec<BeliefRef>,
}

impl Subbase {
    pub fn contains(&self, r: BeliefRef) -> bool {
        self.members.binary_search(&r).is_ok()
    }

    /// Members per stratum, `S1..Sn`.
    pub fn slices(&self, kb: &StratifiedKb) -> Vec<Vec<BeliefRef>> {
        (1..=kb.num_strata())
            .map(|j| self.members.iter().copied().filter(|r| r.stratum == j).collect())
            .collect()
    }

    pub fn formulas(&self, kb: &StratifiedKb) -> Vec<String> {
        self.members.iter().map(|&r| kb.belief(r).expect("subbase drawn from kb").to_string()).collect()
    }
}

/// Every inclusion-maximal `X ⊆ pool` such that `base ∪ X` is consistent,
/// as masks, found by include/exclude search with a maximality check at the leaves.
fn maximal_extensions(search: &mut SupportSearch<'_>, base: u32, pool: &[u32]) -> Vec<u32> {
    fn go(search: &mut SupportSearch<'_>, base: u32, pool: &[u32], i: usize, chosen: u32, out: &mut Vec<u32>) {
        if i == pool.len() {
            let set = base | chosen;
            let maximal = pool.iter().all(|&bit| set & bit != 0 || !search.is_consistent(set | bit));
            if maximal {
                out.push(chosen);
            }
            return;
        }
        let bit = pool[i];
        if search.is_consistent(base | chosen | bit) {
            go(search, base, pool, i + 1, chosen | bit, out);
        }
        go(search, base, pool, i + 1, chosen, out);
    }
    let mut out = Vec::new();
    go(search, base, pool, 0, 0, &mut out);
    out
}

fn to_subbases(search: &SupportSearch<'_>, masks: Vec<u32>) -> Vec<Subbase> {
    let mut out: Vec<Subbase> = masks.into_iter().map(|m| Subbase { members: search.refs_of(m) }).collect();
    out.sort();
    out.dedup();
    out
}

/// All INCL-preferred subbases, built stratum by stratum: each prefix is
/// extended by every maximal consistent choice from the next stratum.
pub fn incl_subbases(kb: &StratifiedKb) -> Result<Vec<Subbase>, BuildError> {
    let mut search = SupportSearch::new(kb)?;
    let mut prefixes = vec![0u32];
    for j in 1..=kb.num_strata() {
        let pool: Vec<u32> = kb
            .belief_refs()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.stratum == j)
            .map(|(i, _)| 1u32 << i)
            .collect();
        let mut next = Vec::new();
        for &prefix in &prefixes {
            for ext in maximal_extensions(&mut search, prefix, &pool) {
                next.push(prefix | ext);
            }
        }
        prefixes = next;
    }
    Ok(to_subbases(&search, prefixes))
}

/// `∩INCL(Σ)`.
pub fn intersection_incl(kb: &StratifiedKb) -> Result<BTreeSet<BeliefRef>, BuildError> {
    let subbases = incl_subbases(kb)?;
    let mut iter = subbases.iter();
    let first: BTreeSet<BeliefRef> = iter.next().map(|s| s.members.iter().copied().collect()).unwrap_or_default();
    Ok(iter.fold(first, |acc, s| acc.into_iter().filter(|&r| s.contains(r)).collect()))
}

/// All inclusion-maximal `K`-consistent subsets of `E`, ignoring the strata.
pub fn max_consistent_subbases(kb: &StratifiedKb) -> Result<Vec<Subbase>, BuildError> {
    let mut search = SupportSearch::new(kb)?;
    let pool: Vec<u32> = (0..kb.num_beliefs()).map(|i| 1u32 << i).collect();
    let masks = maximal_extensions(&mut search, 0, &pool);
    Ok(to_subbases(&search, masks))
}

/// `Arg(T)`: the arguments of the universe whose support lies inside `T`.
pub fn arg_of(universe: &ArgumentUniverse, subbase: &Subbase) -> ArgSet {
    ArgSet::from_indices(
        universe.len(),
        universe
            .arguments()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.support.iter().all(|&r| subbase.contains(r)))
            .map(|(i, _)| i),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseStatus {
    Pass,
    Fail,
    /// Could not be evaluated within the enumeration cap.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub statement: &'static str,
    pub status: ClauseStatus,
    pub counterexamples: Vec<String>,
}

impl ClauseResult {
    fn new(clause: &'static str, statement: &'static str, counterexamples: Vec<String>) -> Self {
        let status = if counterexamples.is_empty() { ClauseStatus::Pass } else { ClauseStatus::Fail };
        ClauseResult { clause, statement, status, counterexamples }
    }

    fn skipped(clause: &'static str, statement: &'static str, why: String) -> Self {
        ClauseResult { clause, statement, status: ClauseStatus::Skipped, counterexamples: vec![why] }
    }
}

/// Outcome of [`check_correspondence`]. Everything is evaluated within the
/// finite argument universe.
#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub scope: &'static str,
    pub incl_subbases: Vec<Vec<String>>,
    pub intersection_incl: Vec<String>,
    pub max_consistent_subbases: Vec<Vec<String>>,
    /// Grounded extension of the undercut framework with certainty preference.
    pub grounded: Vec<String>,
    pub grounded_support: Vec<String>,
    pub class_undercut_pref: Vec<String>,
    pub stable_extensions: Option<Vec<Vec<String>>>,
    pub clauses: Vec<ClauseResult>,
}

impl CorrespondenceReport {
    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status == ClauseStatus::Pass)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

fn names(fw: &Framework, set: &ArgSet) -> Vec<String> {
    set.names(fw)
}

/// Cross-checks the coherence side against the undercut framework of `universe`:
///
/// - (i) `Arg(T)` is stable for every INCL-preferred `T`;
/// - (ii) `Supp(C_Undercut,Pref) ⊆ ∩INCL(Σ)`;
/// - (iii) `C_Undercut,Pref` lies in every stable extension;
/// - (iv) without preference, the stable extensions are exactly the `Arg(T)`
///   for maximal consistent `T`.
///
/// `cap` bounds the universe size for the clauses that enumerate stable extensions.
pub fn check_correspondence(universe: &ArgumentUniverse, cap: usize) -> Result<CorrespondenceReport, BuildError> {
    let kb = universe.kb();
    let incl = incl_subbases(kb)?;
    let inter = intersection_incl(kb)?;
    let maxcons = max_consistent_subbases(kb)?;
    let fw = Framework::from_universe(universe, DefeatKind::Undercut, PreferenceKind::Certainty);
    let class = semantics::class_cr_pref(&fw);
    let (grounded, _) = semantics::grounded(&fw);
    let describe_subbase = |t: &Subbase| format!("{{{}}}", t.formulas(kb).join(", "));
    let mut clauses = Vec::new();

    let failing: Vec<String> = incl
        .iter()
        .filter(|t| {
            let s = arg_of(universe, t);
            !(semantics::conflict_free(&fw, &s, ConflictMode::Weak) && semantics::g_step(&fw, &s) == s)
        })
        .map(describe_subbase)
        .collect();
    clauses.push(ClauseResult::new("i", "Arg(T) is a stable extension for every INCL-preferred T", failing));

    let class_args = class.iter().map(|i| &universe.arguments()[i]);
    let outside: Vec<String> = supp_of(class_args)
        .into_iter()
        .filter(|r| !inter.contains(r))
        .map(|r| kb.belief(r).expect("ref resolves").to_string())
        .collect();
    clauses.push(ClauseResult::new("ii", "Supp(C_Undercut,Pref) is included in the INCL intersection", outside));

    let stable = semantics::stable_extensions(&fw, ConflictMode::Weak, cap);
    let stable_names = stable.as_ref().ok().map(|list| list.iter().map(|s| names(&fw, s)).collect());
    const III: &str = "C_Undercut,Pref is included in every stable extension";
    match &stable {
        Ok(list) => {
            let missing: Vec<String> =
                list.iter().filter(|s| !class.is_subset(s)).map(|s| format!("{:?}", names(&fw, s))).collect();
            clauses.push(ClauseResult::new("iii", III, missing));
        }
        Err(e) => clauses.push(ClauseResult::skipped("iii", III, e.to_string())),
    }

    const IV: &str = "without preference, stable extensions are exactly Arg(T) for maximal consistent T";
    let flat = Framework::from_universe(universe, DefeatKind::Undercut, PreferenceKind::None);
    match semantics::stable_extensions(&flat, ConflictMode::Weak, cap) {
        Ok(found) => {
            let mut expected: Vec<ArgSet> = maxcons.iter().map(|t| arg_of(universe, t)).collect();
            expected.sort();
            expected.dedup();
            let mut diffs: Vec<String> = Vec::new();
            for s in found.iter().filter(|s| !expected.contains(s)) {
                diffs.push(format!("stable but not Arg(T): {:?}", names(&flat, s)));
            }
            for s in expected.iter().filter(|s| !found.contains(s)) {
                diffs.push(format!("Arg(T) but not stable: {:?}", names(&flat, s)));
            }
            clauses.push(ClauseResult::new("iv", IV, diffs));
        }
        Err(SemanticsError::CapExceeded { size, cap }) => {
            clauses.push(ClauseResult::skipped("iv", IV, format!("{size} arguments exceed cap {cap}")))
        }
        Err(e) => clauses.push(ClauseResult::skipped("iv", IV, e.to_string())),
    }

    let grounded_args = grounded.iter().map(|i| &universe.arguments()[i]);
    Ok(CorrespondenceReport {
        scope: "finite-universe verification",
        incl_subbases: incl.iter().map(|t| t.formulas(kb)).collect(),
        intersection_incl: inter.iter().map(|&r| kb.belief(r).expect("ref resolves").to_string()).collect(),
        max_consistent_subbases: maxcons.iter().map(|t| t.formulas(kb)).collect(),
        grounded: names(&fw, &grounded),
        grounded_support: supp_of(grounded_args)
            .into_iter()
            .map(|r| kb.belief(r).expect("ref resolves").to_string())
            .collect(),
        class_undercut_pref: names(&fw, &class),
        stable_extensions: stable_names,
        clauses,
    })
}
