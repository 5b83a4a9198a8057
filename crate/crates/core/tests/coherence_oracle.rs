use prefarg::argument::build_universe;
use prefarg::coherence::{check_correspondence, incl_subbases, intersection_incl, max_consistent_subbases, ClauseStatus};
use prefarg::framework::{rebuts, undercuts, DefeatKind, Framework, PreferenceKind};
use prefarg::semantics::class_cr_pref;
use prefarg_testkit::{random_kb, rng, KbOracle};

const CAP: usize = 256;

#[test]
fn subbases_match_subset_oracle() {
    let mut rng = rng(51);
    for _ in 0..300 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let oracle = KbOracle::new(&kb, &[]);
        let mut incl: Vec<_> = oracle.incl_subbases().into_iter().map(|m| oracle.refs(m)).collect();
        incl.sort();
        let got: Vec<_> = incl_subbases(&kb).unwrap().into_iter().map(|s| s.members).collect();
        assert_eq!(got, incl, "{}", kb.render());
        let mut maxcons: Vec<_> = oracle.max_consistent().into_iter().map(|m| oracle.refs(m)).collect();
        maxcons.sort();
        let got_max: Vec<_> = max_consistent_subbases(&kb).unwrap().into_iter().map(|s| s.members).collect();
        assert_eq!(got_max, maxcons);
        assert!(got.iter().all(|s| got_max.contains(s)));
        let inter = intersection_incl(&kb).unwrap();
        assert!(inter.iter().all(|r| got.iter().all(|s| s.contains(r))));
    }
}

#[test]
fn preferred_classes_are_internally_coherent() {
    let mut rng = rng(52);
    for _ in 0..200 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let u = build_universe(&kb, None).unwrap();
        let args = u.arguments();
        let cu = class_cr_pref(&Framework::from_universe(&u, DefeatKind::Undercut, PreferenceKind::Certainty));
        for i in cu.iter() {
            for j in cu.iter() {
                assert!(!undercuts(&kb, &args[i], &args[j]), "{} undercuts {}", args[i].id, args[j].id);
            }
        }
        let cr = class_cr_pref(&Framework::from_universe(&u, DefeatKind::Rebut, PreferenceKind::Certainty));
        for i in cr.iter() {
            for j in cr.iter() {
                assert!(!rebuts(&args[i], &args[j]));
            }
        }
    }
}

#[test]
fn correspondence_holds_on_random_kbs() {
    let mut rng = rng(53);
    let mut evaluated = 0;
    for _ in 0..200 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let u = build_universe(&kb, None).unwrap();
        let report = check_correspondence(&u, CAP).unwrap();
        for clause in &report.clauses {
            assert_ne!(clause.status, ClauseStatus::Fail, "({}) {:?}\n{}", clause.clause, clause.counterexamples, kb.render());
        }
        if report.all_passed() {
            evaluated += 1;
        }
    }
    assert!(evaluated >= 190, "only {evaluated} fully evaluated");
}
