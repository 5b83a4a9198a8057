use prefarg::argument::build_universe;
use prefarg::framework::{rebuts, DefeatKind, Framework, PreferenceKind};
use prefarg::semantics::class_cr;
use prefarg_testkit::{random_framework, random_kb, rng, KbOracle};

#[test]
fn attack_is_defeat_minus_strict_preference() {
    let mut rng = rng(31);
    for _ in 0..500 {
        let raw = random_framework(&mut rng, 8);
        let fw = raw.build();
        for &(b, a) in fw.attacks() {
            assert!(fw.defeats_edge(b, a));
        }
        for &(b, a) in fw.defeats() {
            assert_eq!(fw.attacks_edge(b, a), !fw.prefers(a, b));
        }
        if raw.pref.is_empty() {
            assert_eq!(fw.attacks(), fw.defeats());
        }
        let n = fw.len();
        for a in 0..n {
            for b in 0..n {
                assert!(!(fw.prefers(a, b) && fw.prefers(b, a)));
                for c in 0..n {
                    if fw.prefers(a, b) && fw.prefers(b, c) {
                        assert!(fw.prefers(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn kb_defeat_relations_match_truth_tables() {
    let mut rng = rng(32);
    for _ in 0..100 {
        let kb = random_kb(&mut rng, 6, 6, 4);
        let u = build_universe(&kb, None).unwrap();
        let conclusions: Vec<_> = u.arguments().iter().map(|a| a.conclusion.clone()).collect();
        let oracle = KbOracle::new(&kb, &conclusions);
        let args = u.arguments();
        for kind in [DefeatKind::Rebut, DefeatKind::Undercut] {
            let fw = Framework::from_universe(&u, kind, PreferenceKind::None);
            for (i, a) in args.iter().enumerate() {
                for (j, b) in args.iter().enumerate() {
                    let neg = |g: &prefarg::formula::Formula| prefarg::formula::Formula::not(g.clone());
                    let expected = match kind {
                        DefeatKind::Rebut => oracle.equivalent(&a.conclusion, &neg(&b.conclusion)),
                        _ => b.support_formulas(&kb).any(|k| oracle.equivalent(&a.conclusion, &neg(k))),
                    };
                    assert_eq!(fw.defeats_edge(i, j), expected, "{} vs {}", a.describe(&kb), b.describe(&kb));
                }
                assert!(!rebuts(a, a));
            }
        }
    }
}

#[test]
fn undercut_class_is_inside_rebut_class() {
    let mut rng = rng(33);
    for _ in 0..200 {
        let kb = random_kb(&mut rng, 6, 6, 4);
        let u = build_universe(&kb, None).unwrap();
        let cu = class_cr(&Framework::from_universe(&u, DefeatKind::Undercut, PreferenceKind::None));
        let cr = class_cr(&Framework::from_universe(&u, DefeatKind::Rebut, PreferenceKind::None));
        assert!(cu.is_subset(&cr), "{}", kb.render());
    }
}

#[test]
fn preferred_arguments_defend_themselves() {
    let mut rng = rng(34);
    for _ in 0..100 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let u = build_universe(&kb, None).unwrap();
        let fw = Framework::from_universe(&u, DefeatKind::Undercut, PreferenceKind::Certainty);
        for &(b, a) in fw.defeats() {
            let stronger = u.arguments()[a].level < u.arguments()[b].level;
            assert_eq!(fw.attacks_edge(b, a), !stronger);
        }
    }
}
