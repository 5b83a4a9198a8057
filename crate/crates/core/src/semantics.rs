//! Acceptability classes and fixed-point semantics over a [`Framework`].
//!
//! `F(S)` is the set of arguments defended by `S` (every attacker is
//! attacked by a member of `S`), `G(S)` the set of arguments not attacked
//! by `S`. Complete extensions are conflict-free fixed points of `F`, stable
//! extensions conflict-free fixed points of `G`, and the grounded extension
//! is the least fixed point of `F`.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::framework::Framework;

/// Default upper bound on the framework size for extension enumeration.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("framework has {size} arguments, enumeration cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("no argument named `{0}`")]
    UnknownArgument(String),
}

/// Conflict-freeness: `Weak` forbids internal attacks, `Strict` forbids internal defeats.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConflictMode {
    #[default]
    Weak,
    Strict,
}

impl fmt::Display for ConflictMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConflictMode::Weak => "weak",
            ConflictMode::Strict => "strict",
        })
    }
}

/// A subset of a framework's arguments, by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArgSet(FixedBitSet);

impl ArgSet {
    pub fn empty(n: usize) -> Self {
        ArgSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ArgSet(bits)
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Resolves argument names against `fw`.
    pub fn from_names<'a>(fw: &Framework, names: impl IntoIterator<Item = &'a str>) -> Result<Self, SemanticsError> {
        let mut set = Self::empty(fw.len());
        for name in names {
            let i = fw.index_of(name).ok_or_else(|| SemanticsError::UnknownArgument(name.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn universe_size(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &ArgSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union(&self, other: &ArgSet) -> ArgSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn intersection(&self, other: &ArgSet) -> ArgSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn complement(&self) -> ArgSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn names(&self, fw: &Framework) -> Vec<String> {
        self.iter().map(|i| fw.name(i).to_string()).collect()
    }
}

/// Ordered by cardinality, then lexicographically by member indices.
impl Ord for ArgSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ArgSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `C_R`: arguments without any defeater.
pub fn class_cr(fw: &Framework) -> ArgSet {
    ArgSet::from_indices(fw.len(), (0..fw.len()).filter(|&a| fw.defeaters(a).is_clear()))
}

/// `C_R,Pref`: arguments strictly preferred to each of their defeaters, i.e.
/// arguments without an attacker.
pub fn class_cr_pref(fw: &Framework) -> ArgSet {
    ArgSet::from_indices(fw.len(), (0..fw.len()).filter(|&a| fw.attackers(a).is_clear()))
}

fn conflict_out(fw: &Framework, a: usize, mode: ConflictMode) -> &FixedBitSet {
    match mode {
        ConflictMode::Weak => fw.attacked_by(a),
        ConflictMode::Strict => fw.defeated_by(a),
    }
}

pub fn conflict_free(fw: &Framework, set: &ArgSet, mode: ConflictMode) -> bool {
    set.iter().all(|a| conflict_out(fw, a, mode).is_disjoint(set.bits()))
}

/// Everything attacked by some member of `set`.
pub fn attacked_by_set(fw: &Framework, set: &ArgSet) -> ArgSet {
    let mut out = ArgSet::empty(fw.len());
    for a in set.iter() {
        out.0.union_with(fw.attacked_by(a));
    }
    out
}

/// `F(S)`: the arguments defended by `S`.
pub fn f_step(fw: &Framework, set: &ArgSet) -> ArgSet {
    let attacked = attacked_by_set(fw, set);
    ArgSet::from_indices(fw.len(), (0..fw.len()).filter(|&a| fw.attackers(a).is_subset(attacked.bits())))
}

/// `G(S)`: the arguments not attacked by `S`.
pub fn g_step(fw: &Framework, set: &ArgSet) -> ArgSet {
    attacked_by_set(fw, set).complement()
}

/// Least fixed point of `F`, iterating from the empty set. The count is the
/// number of `F` applications, including the one that confirmed stability.
pub fn grounded(fw: &Framework) -> (ArgSet, usize) {
    let mut current = ArgSet::empty(fw.len());
    let mut iterations = 0;
    loop {
        let next = f_step(fw, &current);
        iterations += 1;
        if next == current {
            return (current, iterations);
        }
        current = next;
    }
}

/// `G(S̲)` and whether it is conflict-free, which holds exactly when the
/// grounded extension is the only complete extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreatestFixedPoint {
    pub set: ArgSet,
    pub unique_complete: bool,
}

pub fn greatest_fixed_point(fw: &Framework) -> GreatestFixedPoint {
    let (least, _) = grounded(fw);
    greatest_from(fw, &least)
}

fn greatest_from(fw: &Framework, least: &ArgSet) -> GreatestFixedPoint {
    let set = g_step(fw, least);
    let unique_complete = conflict_free(fw, &set, ConflictMode::Weak);
    GreatestFixedPoint { set, unique_complete }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Target {
    Complete,
    Stable,
}

/// Depth-first search over in/out decisions, most-connected arguments first.
/// Pruning uses only local consequences of the definitions; each leaf is
/// re-checked exactly.
struct ExtensionSearch<'a> {
    fw: &'a Framework,
    mode: ConflictMode,
    target: Target,
    order: Vec<usize>,
    inside: FixedBitSet,
    outside: FixedBitSet,
    found: Vec<ArgSet>,
}

impl ExtensionSearch<'_> {
    fn attacked_by_inside(&self) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.fw.len());
        for a in self.inside.ones() {
            out.union_with(self.fw.attacked_by(a));
        }
        out
    }

    /// Decided out, or undecided but in conflict with the current inside.
    fn excluded(&self) -> FixedBitSet {
        let mut excluded = self.outside.clone();
        for a in 0..self.fw.len() {
            if !self.inside.contains(a) && !self.outside.contains(a) && !self.can_include(a) {
                excluded.insert(a);
            }
        }
        excluded
    }

    fn viable(&self) -> bool {
        let fw = self.fw;
        let attacked = self.attacked_by_inside();
        let excluded = self.excluded();
        // no attacker of `b` can ever be in the set
        let hopeless = |b: usize| fw.attackers(b).is_subset(&excluded);
        if self.target == Target::Complete {
            // attackers of an "in" argument must end up counter-attacked
            for a in self.inside.ones() {
                if fw.attackers(a).ones().any(|b| !attacked.contains(b) && hopeless(b)) {
                    return false;
                }
            }
        }
        for a in excluded.ones() {
            match self.target {
                // out of a fixed point of F means some attacker stays unanswered
                Target::Complete => {
                    if fw.attackers(a).is_subset(&attacked) {
                        return false;
                    }
                }
                // out of a fixed point of G means attacked from inside
                Target::Stable => {
                    if !attacked.contains(a) && hopeless(a) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn can_include(&self, a: usize) -> bool {
        let fw = self.fw;
        let out = conflict_out(fw, a, self.mode);
        if out.contains(a) || !out.is_disjoint(&self.inside) {
            return false;
        }
        self.inside.ones().all(|b| !conflict_out(fw, b, self.mode).contains(a))
    }

    fn run(&mut self, depth: usize) {
        if !self.viable() {
            return;
        }
        if depth == self.order.len() {
            let candidate = ArgSet(self.inside.clone());
            let fixed = match self.target {
                Target::Complete => f_step(self.fw, &candidate) == candidate,
                Target::Stable => g_step(self.fw, &candidate) == candidate,
            };
            if fixed && conflict_free(self.fw, &candidate, self.mode) {
                self.found.push(candidate);
            }
            return;
        }
        let next = self.order[depth];
        if self.can_include(next) {
            self.inside.insert(next);
            self.run(depth + 1);
            self.inside.set(next, false);
        }
        self.outside.insert(next);
        self.run(depth + 1);
        self.outside.set(next, false);
    }
}

fn enumerate(fw: &Framework, mode: ConflictMode, cap: usize, target: Target) -> Result<Vec<ArgSet>, SemanticsError> {
    if fw.len() > cap {
        return Err(SemanticsError::CapExceeded { size: fw.len(), cap });
    }
    let n = fw.len();
    let degree = |a: usize| fw.attackers(a).count_ones(..) + fw.attacked_by(a).count_ones(..);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&a| (std::cmp::Reverse(degree(a)), a));
    let mut search = ExtensionSearch {
        fw,
        mode,
        target,
        order,
        inside: FixedBitSet::with_capacity(n),
        outside: FixedBitSet::with_capacity(n),
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// All complete extensions (conflict-free fixed points of `F`), sorted.
pub fn complete_extensions(fw: &Framework, mode: ConflictMode, cap: usize) -> Result<Vec<ArgSet>, SemanticsError> {
    enumerate(fw, mode, cap, Target::Complete)
}

/// All stable extensions (conflict-free fixed points of `G`), sorted.
pub fn stable_extensions(fw: &Framework, mode: ConflictMode, cap: usize) -> Result<Vec<ArgSet>, SemanticsError> {
    enumerate(fw, mode, cap, Target::Stable)
}

/// Stability by the attack characterisation: conflict-free and attacking
/// every argument outside the set.
pub fn attacks_all_outsiders(fw: &Framework, set: &ArgSet) -> bool {
    let attacked = attacked_by_set(fw, set);
    set.complement().is_subset(&attacked)
}

/// Everything computed about one framework under one conflict mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub mode: ConflictMode,
    pub class_r: ArgSet,
    pub class_r_pref: ArgSet,
    pub grounded: ArgSet,
    pub greatest_fp: ArgSet,
    pub complete: Vec<ArgSet>,
    pub stable: Vec<ArgSet>,
    pub unique_complete: bool,
    pub iterations: usize,
    /// Set when the framework exceeded the cap; `complete` and `stable` are then empty.
    pub capped: bool,
}

pub fn evaluate(fw: &Framework, mode: ConflictMode, cap: usize) -> ExtensionReport {
    let (least, iterations) = grounded(fw);
    let greatest = greatest_from(fw, &least);
    let (complete, stable, capped) = match (complete_extensions(fw, mode, cap), stable_extensions(fw, mode, cap)) {
        (Ok(c), Ok(s)) => (c, s, false),
        _ => (Vec::new(), Vec::new(), true),
    };
    ExtensionReport {
        mode,
        class_r: class_cr(fw),
        class_r_pref: class_cr_pref(fw),
        grounded: least,
        greatest_fp: greatest.set,
        complete,
        stable,
        unique_complete: greatest.unique_complete,
        iterations,
        capped,
    }
}

/// Serialized form of an [`ExtensionReport`], with arguments by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedReport {
    pub mode: ConflictMode,
    pub class_r: Vec<String>,
    pub class_r_pref: Vec<String>,
    pub grounded: Vec<String>,
    pub greatest_fp: Vec<String>,
    pub complete: Vec<Vec<String>>,
    pub stable: Vec<Vec<String>>,
    pub unique_complete: bool,
    pub iterations: usize,
    pub capped: bool,
}

impl ExtensionReport {
    pub fn named(&self, fw: &Framework) -> NamedReport {
        NamedReport {
            mode: self.mode,
            class_r: self.class_r.names(fw),
            class_r_pref: self.class_r_pref.names(fw),
            grounded: self.grounded.names(fw),
            greatest_fp: self.greatest_fp.names(fw),
            complete: self.complete.iter().map(|s| s.names(fw)).collect(),
            stable: self.stable.iter().map(|s| s.names(fw)).collect(),
            unique_complete: self.unique_complete,
            iterations: self.iterations,
            capped: self.capped,
        }
    }
}

impl NamedReport {
    /// Resolves names back to argument sets of `fw`.
    pub fn resolve(&self, fw: &Framework) -> Result<ExtensionReport, SemanticsError> {
        let set = |names: &[String]| ArgSet::from_names(fw, names.iter().map(String::as_str));
        let list = |sets: &[Vec<String>]| sets.iter().map(|s| set(s)).collect::<Result<Vec<_>, _>>();
        Ok(ExtensionReport {
            mode: self.mode,
            class_r: set(&self.class_r)?,
            class_r_pref: set(&self.class_r_pref)?,
            grounded: set(&self.grounded)?,
            greatest_fp: set(&self.greatest_fp)?,
            complete: list(&self.complete)?,
            stable: list(&self.stable)?,
            unique_complete: self.unique_complete,
            iterations: self.iterations,
            capped: self.capped,
        })
    }
}

/// Where `F(S) = G(F(S))` fails, over every subset of a small framework.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GofFDiagnostic {
    pub subsets_checked: usize,
    /// Subsets `S` with `F(S) ≠ G(F(S))`.
    pub failures: Vec<ArgSet>,
    /// The subset of `failures` that are fixed points of `F`.
    pub fixed_point_failures: Vec<ArgSet>,
    /// Subsets with `F(S) ≠ G(G(S))`; expected to stay empty.
    pub g_squared_failures: Vec<ArgSet>,
}

/// Checks the identity `F(S) = G(F(S))` on every subset of `fw`, recording
/// failures overall and at fixed points of `F`. The identity `F = G∘G` is
/// checked alongside for contrast.
pub fn g_of_f_diagnostic(fw: &Framework, cap: usize) -> Result<GofFDiagnostic, SemanticsError> {
    let n = fw.len();
    if n > cap.min(24) {
        return Err(SemanticsError::CapExceeded { size: n, cap: cap.min(24) });
    }
    let mut diag = GofFDiagnostic::default();
    for mask in 0u64..(1u64 << n) {
        let set = ArgSet::from_indices(n, (0..n).filter(|i| mask & (1 << i) != 0));
        let f = f_step(fw, &set);
        let gf = g_step(fw, &f);
        diag.subsets_checked += 1;
        if f != gf {
            if f == set {
                diag.fixed_point_failures.push(set.clone());
            }
            diag.failures.push(set.clone());
        }
        if f != g_step(fw, &g_step(fw, &set)) {
            diag.g_squared_failures.push(set);
        }
    }
    Ok(diag)
}
