//! Seeded instance generators and brute-force oracles for the test suites.
//!
//! The oracles deliberately avoid the library's reasoning code: frameworks
//! are evaluated straight from their edge lists over bitmasks, and
//! propositional questions are answered with truth tables.

use prefarg::formula::{Formula, FormulaSet};
use prefarg::framework::{Framework, Preference};
use prefarg::kb::{BeliefRef, StratifiedKb};
use prefarg::semantics::ArgSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const ATOMS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

pub fn random_formula(rng: &mut TestRng, atoms: &[&str], depth: u32) -> Formula {
    let leaf = |rng: &mut TestRng| Formula::atom(*atoms.choose(rng).expect("at least one atom"));
    if depth == 0 || rng.gen_bool(0.3) {
        let a = leaf(rng);
        return if rng.gen_bool(0.4) { Formula::not(a) } else { a };
    }
    let l = random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..6) {
        0 => Formula::not(l),
        1 => Formula::and(l, random_formula(rng, atoms, depth - 1)),
        2 => Formula::or(l, random_formula(rng, atoms, depth - 1)),
        3 | 4 => Formula::implies(l, random_formula(rng, atoms, depth - 1)),
        _ => Formula::iff(l, random_formula(rng, atoms, depth - 1)),
    }
}

/// A belief shaped like the ones in hand-written KBs: mostly literals and
/// implications between literals, sometimes something deeper.
fn random_belief(rng: &mut TestRng, atoms: &[&str]) -> Formula {
    let literal = |rng: &mut TestRng| {
        let a = Formula::atom(*atoms.choose(rng).expect("at least one atom"));
        if rng.gen_bool(0.5) {
            Formula::not(a)
        } else {
            a
        }
    };
    match rng.gen_range(0..10) {
        0..=3 => literal(rng),
        4..=7 => Formula::implies(literal(rng), literal(rng)),
        _ => random_formula(rng, atoms, 2),
    }
}

/// A random stratified KB over at most `max_atoms` atoms with at most
/// `max_beliefs` beliefs spread over at most `max_strata` strata. One in five
/// also gets a single-formula core.
pub fn random_kb(rng: &mut TestRng, max_atoms: usize, max_beliefs: usize, max_strata: usize) -> StratifiedKb {
    let atoms = &ATOMS[..rng.gen_range(1..=max_atoms.min(ATOMS.len()))];
    let num_strata = rng.gen_range(1..=max_strata);
    let target = rng.gen_range(0..=max_beliefs).max(rng.gen_range(0..=max_beliefs));
    loop {
        let mut core = FormulaSet::new();
        if rng.gen_bool(0.2) {
            core.insert(random_belief(rng, atoms));
        }
        let mut strata = vec![FormulaSet::new(); num_strata];
        let mut placed = 0;
        for _ in 0..target * 4 {
            if placed == target {
                break;
            }
            let f = random_belief(rng, atoms);
            if core.contains(&f) || strata.iter().any(|s| s.contains(&f)) {
                continue;
            }
            strata[rng.gen_range(0..num_strata)].insert(f);
            placed += 1;
        }
        if let Ok(kb) = StratifiedKb::new(core, strata) {
            return kb;
        }
    }
}

/// An abstract framework given by raw edges and raw preference pairs.
#[derive(Clone, Debug)]
pub struct RawFramework {
    pub n: usize,
    pub defeats: Vec<(usize, usize)>,
    /// `(better, worse)` pairs before closure.
    pub pref: Vec<(usize, usize)>,
}

impl RawFramework {
    pub fn build(&self) -> Framework {
        let names = (0..self.n).map(|i| format!("a{i}")).collect();
        let pref = if self.pref.is_empty() { Preference::None } else { Preference::explicit(self.n, &self.pref) };
        Framework::new(names, self.defeats.clone(), pref).expect("edges are in range")
    }

    /// Apx text for the same framework.
    pub fn to_apx(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            out.push_str(&format!("arg(a{i}).\n"));
        }
        for &(b, a) in &self.defeats {
            out.push_str(&format!("def(a{b},a{a}).\n"));
        }
        for &(x, y) in &self.pref {
            out.push_str(&format!("pref(a{x},a{y}).\n"));
        }
        out
    }
}

/// Random framework with `1..=max_n` arguments, a random defeat density
/// (self-loops included) and, half of the time, a random preorder.
pub fn random_framework(rng: &mut TestRng, max_n: usize) -> RawFramework {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.05..0.6);
    let mut defeats = Vec::new();
    for b in 0..n {
        for a in 0..n {
            let p = if a == b { density / 4.0 } else { density };
            if rng.gen_bool(p) {
                defeats.push((b, a));
            }
        }
    }
    let mut pref = Vec::new();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2 * n) {
            pref.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    RawFramework { n, defeats, pref }
}

/// Definitional evaluation of a [`RawFramework`] over bitmasks.
pub struct FrameworkOracle {
    pub n: usize,
    /// `attacks[b]`: mask of arguments `b` attacks.
    pub attacks: Vec<u32>,
    pub defeats: Vec<u32>,
}

impl FrameworkOracle {
    pub fn new(raw: &RawFramework) -> Self {
        let n = raw.n;
        assert!(n <= 16);
        // weak[a] bit b: a Pref b, closed by repeated relaxation
        let mut weak: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for &(a, b) in &raw.pref {
            weak[a] |= 1 << b;
        }
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut row = weak[a];
                for b in 0..n {
                    if weak[a] & (1 << b) != 0 {
                        row |= weak[b];
                    }
                }
                if row != weak[a] {
                    weak[a] = row;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let strictly = |a: usize, b: usize| weak[a] & (1 << b) != 0 && weak[b] & (1 << a) == 0;
        let mut attacks = vec![0u32; n];
        let mut defeats = vec![0u32; n];
        for &(b, a) in &raw.defeats {
            defeats[b] |= 1 << a;
            if !strictly(a, b) {
                attacks[b] |= 1 << a;
            }
        }
        FrameworkOracle { n, attacks, defeats }
    }

    pub fn subsets(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.n)
    }

    fn attacked(&self, s: u32) -> u32 {
        (0..self.n).filter(|i| s & (1 << i) != 0).fold(0, |acc, i| acc | self.attacks[i])
    }

    fn attackers(&self, a: usize) -> u32 {
        (0..self.n).filter(|&b| self.attacks[b] & (1 << a) != 0).fold(0, |acc, b| acc | 1 << b)
    }

    pub fn all(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn conflict_free(&self, s: u32) -> bool {
        self.attacked(s) & s == 0
    }

    pub fn strict_conflict_free(&self, s: u32) -> bool {
        (0..self.n).filter(|i| s & (1 << i) != 0).all(|i| self.defeats[i] & s == 0)
    }

    /// Arguments every attacker of which is attacked by `s`.
    pub fn f(&self, s: u32) -> u32 {
        let hit = self.attacked(s);
        (0..self.n).filter(|&a| self.attackers(a) & !hit == 0).fold(0, |acc, a| acc | 1 << a)
    }

    pub fn g(&self, s: u32) -> u32 {
        self.all() & !self.attacked(s)
    }

    pub fn class_cr(&self) -> u32 {
        let defeated = self.defeats.iter().fold(0, |acc, d| acc | d);
        self.all() & !defeated
    }

    pub fn class_cr_pref(&self) -> u32 {
        let attacked = self.attacks.iter().fold(0, |acc, d| acc | d);
        self.all() & !attacked
    }

    pub fn complete(&self) -> Vec<u32> {
        sorted(self.subsets().filter(|&s| self.conflict_free(s) && self.f(s) == s).collect())
    }

    pub fn stable(&self) -> Vec<u32> {
        sorted(self.subsets().filter(|&s| self.conflict_free(s) && self.g(s) == s).collect())
    }

    pub fn strict_complete(&self) -> Vec<u32> {
        sorted(self.subsets().filter(|&s| self.strict_conflict_free(s) && self.f(s) == s).collect())
    }

    pub fn strict_stable(&self) -> Vec<u32> {
        sorted(self.subsets().filter(|&s| self.strict_conflict_free(s) && self.g(s) == s).collect())
    }

    /// Intersection of all fixed points of `F`.
    pub fn least_fixed_point(&self) -> u32 {
        self.subsets().filter(|&s| self.f(s) == s).fold(self.all(), |acc, s| acc & s)
    }

    pub fn to_set(&self, s: u32) -> ArgSet {
        mask_to_set(self.n, s)
    }
}

pub fn mask_to_set(n: usize, s: u32) -> ArgSet {
    ArgSet::from_indices(n, (0..n).filter(|i| s & (1 << i) != 0))
}

/// Cardinality first, then lexicographic by member indices.
fn sorted(mut v: Vec<u32>) -> Vec<u32> {
    let members = |s: u32| (0..32).filter(|i| s & (1 << i) != 0).collect::<Vec<u32>>();
    v.sort_by(|&a, &b| a.count_ones().cmp(&b.count_ones()).then_with(|| members(a).cmp(&members(b))));
    v
}

/// Truth tables over at most six atoms, one bit per assignment.
pub struct TruthTables {
    atoms: Vec<String>,
}

impl TruthTables {
    pub fn new<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Self {
        let mut atoms: Vec<String> = formulas.into_iter().flat_map(|f| f.atoms()).map(str::to_string).collect();
        atoms.sort();
        atoms.dedup();
        assert!(atoms.len() <= 6, "truth tables limited to six atoms");
        TruthTables { atoms }
    }

    pub fn table(&self, f: &Formula) -> u64 {
        let rows = 1usize << self.atoms.len();
        let mut out = 0u64;
        for row in 0..rows {
            let value = |name: &str| {
                let i = self.atoms.iter().position(|a| a == name).expect("atom registered");
                row & (1 << i) != 0
            };
            if f.eval(&value) {
                out |= 1 << row;
            }
        }
        out
    }

    pub fn all_rows(&self) -> u64 {
        let rows = 1u32 << self.atoms.len();
        if rows == 64 {
            u64::MAX
        } else {
            (1u64 << rows) - 1
        }
    }
}

/// Brute-force propositional questions about one KB.
pub struct KbOracle<'kb> {
    pub kb: &'kb StratifiedKb,
    tables: TruthTables,
    core: u64,
    beliefs: Vec<u64>,
}

impl<'kb> KbOracle<'kb> {
    /// `extra` must include every conclusion that will be asked about.
    pub fn new(kb: &'kb StratifiedKb, extra: &[Formula]) -> Self {
        let tables = TruthTables::new(kb.core().iter().chain(kb.beliefs().map(|(_, f)| f)).chain(extra));
        let core = kb.core().iter().fold(tables.all_rows(), |acc, f| acc & tables.table(f));
        let beliefs = kb.beliefs().map(|(_, f)| tables.table(f)).collect();
        KbOracle { kb, tables, core, beliefs }
    }

    fn models(&self, mask: u32) -> u64 {
        (0..self.beliefs.len()).filter(|i| mask & (1 << i) != 0).fold(self.core, |acc, i| acc & self.beliefs[i])
    }

    pub fn consistent(&self, mask: u32) -> bool {
        self.models(mask) != 0
    }

    pub fn entails(&self, mask: u32, c: &Formula) -> bool {
        self.models(mask) & !self.tables.table(c) == 0
    }

    fn subsets(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.beliefs.len())
    }

    /// Every inclusion-minimal consistent subset entailing `c`, as masks.
    pub fn minimal_supports(&self, c: &Formula) -> Vec<u32> {
        let ok: Vec<u32> = self.subsets().filter(|&m| self.consistent(m) && self.entails(m, c)).collect();
        ok.iter().copied().filter(|&m| !ok.iter().any(|&o| o != m && o & m == o)).collect()
    }

    fn maximal_in(&self, s: u32, pool: u32) -> bool {
        self.consistent(s & pool)
            && (0..self.beliefs.len()).all(|i| {
                let bit = 1 << i;
                pool & bit == 0 || s & bit != 0 || !self.consistent((s & pool) | bit)
            })
    }

    /// Subsets satisfying the INCL condition at every stratum prefix.
    pub fn incl_subbases(&self) -> Vec<u32> {
        let refs = self.kb.belief_refs();
        let prefix = |j: usize| {
            refs.iter().enumerate().filter(|(_, r)| r.stratum <= j).fold(0u32, |acc, (i, _)| acc | 1 << i)
        };
        self.subsets()
            .filter(|&s| (1..=self.kb.num_strata()).all(|j| self.maximal_in(s & prefix(j), prefix(j))))
            .collect()
    }

    pub fn max_consistent(&self) -> Vec<u32> {
        let all = ((1u64 << self.beliefs.len()) - 1) as u32;
        self.subsets().filter(|&s| self.maximal_in(s, all)).collect()
    }

    pub fn refs(&self, mask: u32) -> Vec<BeliefRef> {
        let refs = self.kb.belief_refs();
        (0..refs.len()).filter(|i| mask & (1 << i) != 0).map(|i| refs[i]).collect()
    }

    pub fn equivalent(&self, f: &Formula, g: &Formula) -> bool {
        self.tables.table(f) == self.tables.table(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_on_a_two_cycle() {
        let raw = RawFramework { n: 2, defeats: vec![(0, 1), (1, 0)], pref: vec![] };
        let o = FrameworkOracle::new(&raw);
        assert_eq!(o.complete(), vec![0, 1, 2]);
        assert_eq!(o.stable(), vec![1, 2]);
        let pref = RawFramework { pref: vec![(0, 1)], ..raw };
        assert_eq!(FrameworkOracle::new(&pref).complete(), vec![1]);
    }

    #[test]
    fn generated_kbs_respect_bounds() {
        let mut rng = rng(7);
        for _ in 0..50 {
            let kb = random_kb(&mut rng, 6, 8, 4);
            assert!(kb.num_beliefs() <= 8 && kb.num_strata() <= 4);
        }
    }

    #[test]
    fn truth_tables() {
        let p = Formula::atom("p");
        let t = TruthTables::new([&p]);
        assert_eq!(t.table(&p), 0b10);
        assert_eq!(t.table(&Formula::not(p)), 0b01);
    }
}
