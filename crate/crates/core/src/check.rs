//! Self-check suite: re-verifies the semantic invariants on one framework
//! (and, for KB input, the argument-level invariants) by direct subset
//! enumeration.

use serde::Serialize;

use crate::argument::ArgumentUniverse;
use crate::coherence::{self, ClauseStatus};
use crate::formula::{entails, is_consistent, Formula};
use crate::framework::{rebuts, undercuts, DefeatKind, Framework, PreferenceKind};
use crate::semantics::{self, ArgSet, ConflictMode};

/// Largest framework the subset-enumerating checks will touch.
pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: Option<String>,
}

impl CheckResult {
    fn from_violations(name: &str, violations: Vec<String>) -> Self {
        let status = if violations.is_empty() { Status::Pass } else { Status::Fail };
        let detail = violations.into_iter().next();
        CheckResult { name: name.to_string(), status, detail }
    }

    fn skipped(name: &str, why: String) -> Self {
        CheckResult { name: name.to_string(), status: Status::Skipped, detail: Some(why) }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    fn push(&mut self, name: &str, violations: Vec<String>) {
        self.checks.push(CheckResult::from_violations(name, violations));
    }
}

fn show(fw: &Framework, set: &ArgSet) -> String {
    format!("{{{}}}", set.names(fw).join(", "))
}

fn subsets(n: usize) -> impl Iterator<Item = ArgSet> {
    (0u64..1 << n).map(move |m| ArgSet::from_indices(n, (0..n).filter(|i| m & (1 << i) != 0)))
}

/// Framework-level invariants. Subset-based checks are skipped above
/// `min(cap, BRUTE_FORCE_LIMIT)` arguments.
pub fn check_framework(fw: &Framework, cap: usize) -> CheckReport {
    let mut report = CheckReport::default();
    let n = fw.len();

    let mut v = Vec::new();
    for &(b, a) in fw.attacks() {
        if !fw.defeats_edge(b, a) {
            v.push(format!("{} -> {} attacks without defeating", fw.name(b), fw.name(a)));
        }
    }
    for &(b, a) in fw.defeats() {
        if fw.prefers(a, b) == fw.attacks_edge(b, a) {
            v.push(format!("edge {} -> {} misclassified under preference", fw.name(b), fw.name(a)));
        }
    }
    report.push("attack relation matches defeat minus preference", v);

    let mut v = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if fw.prefers(a, b) && fw.prefers(b, a) {
                v.push(format!("{} and {} strictly prefer each other", fw.name(a), fw.name(b)));
            }
            for c in 0..n {
                if fw.prefers(a, b) && fw.prefers(b, c) && !fw.prefers(a, c) {
                    v.push(format!("strict preference not transitive on {}, {}, {}", fw.name(a), fw.name(b), fw.name(c)));
                }
            }
        }
    }
    report.push("strict preference is asymmetric and transitive", v);

    let class = semantics::class_cr_pref(fw);
    let (grounded, _) = semantics::grounded(fw);
    let weak = ConflictMode::Weak;
    report.push(
        "C_R,Pref is conflict-free",
        if semantics::conflict_free(fw, &class, weak) { vec![] } else { vec![show(fw, &class)] },
    );
    report.push(
        "grounded extension is conflict-free",
        if semantics::conflict_free(fw, &grounded, weak) { vec![] } else { vec![show(fw, &grounded)] },
    );

    // Grounded = C_R,Pref ∪ F(C_R,Pref) ∪ F²(C_R,Pref) ∪ …
    let mut acc = class.clone();
    let mut step = class.clone();
    loop {
        step = semantics::f_step(fw, &step);
        let next = acc.union(&step);
        if next == acc {
            break;
        }
        acc = next;
    }
    report.push(
        "grounded extension decomposes over C_R,Pref",
        if acc == grounded { vec![] } else { vec![format!("{} vs {}", show(fw, &acc), show(fw, &grounded))] },
    );

    let limit = cap.min(BRUTE_FORCE_LIMIT);
    if n > limit {
        report.checks.push(CheckResult::skipped(
            "subset-enumeration invariants",
            format!("{n} arguments exceed the limit of {limit}"),
        ));
        return report;
    }

    let mut f_mono = Vec::new();
    let mut f_cf = Vec::new();
    let mut g_anti = Vec::new();
    let mut cf_g = Vec::new();
    let mut prop1 = Vec::new();
    let mut complete = Vec::new();
    let mut stable = Vec::new();
    let mut conflict_free = Vec::new();
    for s in subsets(n) {
        let f = semantics::f_step(fw, &s);
        let g = semantics::g_step(fw, &s);
        let cf = semantics::conflict_free(fw, &s, weak);
        for a in (0..n).filter(|&a| !s.contains(a)) {
            let mut bigger = s.clone();
            bigger.insert(a);
            if !f.is_subset(&semantics::f_step(fw, &bigger)) {
                f_mono.push(format!("{} + {}", show(fw, &s), fw.name(a)));
            }
            if !semantics::g_step(fw, &bigger).is_subset(&g) {
                g_anti.push(format!("{} + {}", show(fw, &s), fw.name(a)));
            }
        }
        if cf && !semantics::conflict_free(fw, &f, weak) {
            f_cf.push(show(fw, &s));
        }
        if cf != s.is_subset(&g) {
            cf_g.push(show(fw, &s));
        }
        let is_stable = cf && g == s;
        if is_stable != (cf && semantics::attacks_all_outsiders(fw, &s)) {
            prop1.push(show(fw, &s));
        }
        if cf {
            conflict_free.push(s.clone());
        }
        if cf && f == s {
            complete.push(s.clone());
        }
        if is_stable {
            stable.push(s);
        }
    }
    complete.sort();
    stable.sort();
    report.push("F is monotone", f_mono);
    report.push("F preserves conflict-freeness", f_cf);
    report.push("G is antimonotone", g_anti);
    report.push("conflict-free iff S is included in G(S)", cf_g);
    report.push("stable iff conflict-free and attacking every outsider", prop1);

    let mut v = Vec::new();
    match semantics::complete_extensions(fw, weak, cap) {
        Ok(found) if found != complete => v.push(format!("enumerated {} complete extensions, expected {}", found.len(), complete.len())),
        Ok(_) => {}
        Err(e) => v.push(e.to_string()),
    }
    match semantics::stable_extensions(fw, weak, cap) {
        Ok(found) if found != stable => v.push(format!("enumerated {} stable extensions, expected {}", found.len(), stable.len())),
        Ok(_) => {}
        Err(e) => v.push(e.to_string()),
    }
    report.push("extension search agrees with subset enumeration", v);

    let mut v = Vec::new();
    for s in &stable {
        if !complete.contains(s) {
            v.push(format!("{} is stable but not complete", show(fw, s)));
        }
        if let Some(t) = conflict_free.iter().find(|t| s.is_subset(t) && *t != s) {
            v.push(format!("{} is stable but {} is a larger conflict-free set", show(fw, s), show(fw, t)));
        }
    }
    report.push("stable extensions are complete and maximal conflict-free", v);

    let mut v = Vec::new();
    if complete.first() != Some(&grounded) {
        v.push(format!("least complete extension is not {}", show(fw, &grounded)));
    }
    for s in complete.iter().chain(&stable) {
        if !grounded.is_subset(s) {
            v.push(format!("{} misses part of the grounded extension", show(fw, s)));
        }
    }
    report.push("grounded extension is the least complete extension", v);

    let greatest = semantics::greatest_fixed_point(fw);
    let mut v = Vec::new();
    for s in subsets(n).filter(|s| semantics::f_step(fw, s) == *s) {
        let g = semantics::g_step(fw, &s);
        if semantics::f_step(fw, &g) != g {
            v.push(format!("G({}) is not a fixed point of F", show(fw, &s)));
        }
        if !(grounded.is_subset(&s) && s.is_subset(&greatest.set)) {
            v.push(format!("fixed point {} outside the grounded/G(grounded) bounds", show(fw, &s)));
        }
    }
    report.push("fixed points of F lie between grounded and G(grounded)", v);

    let unique = complete.len() == 1;
    let show_g = show(fw, &greatest.set);
    report.push(
        "G(grounded) conflict-free implies a unique complete extension",
        if greatest.unique_complete && !unique { vec![format!("{} complete extensions", complete.len())] } else { vec![] },
    );
    report.push(
        "a unique complete extension implies G(grounded) conflict-free",
        if unique && !greatest.unique_complete { vec![format!("G(grounded) = {show_g} is not conflict-free")] } else { vec![] },
    );

    report
}

/// Argument-level invariants of a KB universe plus the coherence cross-checks.
pub fn check_universe(universe: &ArgumentUniverse, cap: usize) -> CheckReport {
    let mut report = CheckReport::default();
    let kb = universe.kb();
    let args = universe.arguments();

    let mut v = Vec::new();
    for a in args {
        let support: Vec<&Formula> = kb.core().iter().chain(a.support_formulas(kb)).collect();
        if !is_consistent(support.iter().copied()) {
            v.push(format!("{}: support inconsistent", a.id));
        }
        if !entails(support.iter().copied(), &a.conclusion) {
            v.push(format!("{}: support does not entail conclusion", a.id));
        }
        for drop in &a.support {
            let rest = kb
                .core()
                .iter()
                .chain(a.support.iter().filter(|r| *r != drop).map(|&r| kb.belief(r).expect("ref resolves")));
            if entails(rest, &a.conclusion) {
                v.push(format!("{}: support not minimal", a.id));
            }
        }
        if kb.certainty_level(&a.support).ok() != Some(a.level) {
            v.push(format!("{}: wrong certainty level", a.id));
        }
    }
    report.push("every argument is consistent, entailing and minimal", v);

    for (kind, name) in [
        (DefeatKind::Undercut, "no member of C_Undercut,Pref undercuts another"),
        (DefeatKind::Rebut, "no member of C_Rebut,Pref rebuts another"),
    ] {
        let fw = Framework::from_universe(universe, kind, PreferenceKind::Certainty);
        let class = semantics::class_cr_pref(&fw);
        let mut v = Vec::new();
        for i in class.iter() {
            for j in class.iter() {
                let hit = match kind {
                    DefeatKind::Undercut => undercuts(kb, &args[i], &args[j]),
                    _ => rebuts(&args[i], &args[j]),
                };
                if hit {
                    v.push(format!("{} -> {}", args[i].id, args[j].id));
                }
            }
        }
        report.push(name, v);
    }

    let cu = semantics::class_cr(&Framework::from_universe(universe, DefeatKind::Undercut, PreferenceKind::None));
    let cr = semantics::class_cr(&Framework::from_universe(universe, DefeatKind::Rebut, PreferenceKind::None));
    let extra: Vec<String> = cu.iter().filter(|&i| !cr.contains(i)).map(|i| args[i].id.clone()).collect();
    report.push("C_Undercut is included in C_Rebut", extra);

    match coherence::check_correspondence(universe, cap) {
        Ok(corr) => {
            for clause in corr.clauses {
                let name = format!("correspondence ({}): {}", clause.clause, clause.statement);
                report.checks.push(match clause.status {
                    ClauseStatus::Pass => CheckResult::from_violations(&name, vec![]),
                    ClauseStatus::Fail => CheckResult::from_violations(&name, clause.counterexamples),
                    ClauseStatus::Skipped => CheckResult::skipped(&name, clause.counterexamples.join("; ")),
                });
            }
        }
        Err(e) => report.checks.push(CheckResult::skipped("coherence correspondence", e.to_string())),
    }
    report
}
