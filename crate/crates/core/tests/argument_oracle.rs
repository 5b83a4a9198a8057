use prefarg::argument::{build_universe, candidate_conclusions, minimal_supports};
use prefarg::formula::{entails, is_consistent, parse_formula, Formula};
use prefarg::kb::{parse_kb, StratifiedKb};
use prefarg_testkit::{random_kb, rng, KbOracle};

const UNDERCUT_CHAIN: &str = "[stratum 1]\nx\n!r\n[stratum 2]\nx -> t\n[stratum 3]\nt -> r\n[stratum 4]\n!r -> p\n";

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn texts(kb: &StratifiedKb, supports: &[Vec<prefarg::kb::BeliefRef>]) -> Vec<Vec<String>> {
    supports.iter().map(|s| s.iter().map(|&r| kb.belief(r).unwrap().to_string()).collect()).collect()
}

#[test]
fn undercut_chain_supports() {
    let kb = parse_kb(UNDERCUT_CHAIN).unwrap();
    let got = texts(&kb, &minimal_supports(&kb, &f("!(t -> r)")).unwrap());
    assert_eq!(got, [["x", "!r", "x -> t"]]);
    let got = texts(&kb, &minimal_supports(&kb, &f("!x")).unwrap());
    assert_eq!(got, [["!r", "x -> t", "t -> r"]]);
    let got = texts(&kb, &minimal_supports(&kb, &f("p")).unwrap());
    assert_eq!(got, [["!r", "!r -> p"]]);
}

#[test]
fn minimal_supports_match_subset_oracle() {
    let mut rng = rng(21);
    for _ in 0..300 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let candidates = candidate_conclusions(&kb, None);
        let extra: Vec<Formula> = candidates.iter().cloned().collect();
        let oracle = KbOracle::new(&kb, &extra);
        for c in &candidates {
            let mut expected: Vec<_> = oracle.minimal_supports(c).into_iter().map(|m| oracle.refs(m)).collect();
            expected.sort();
            assert_eq!(minimal_supports(&kb, c).unwrap(), expected, "{c} in\n{}", kb.render());
        }
    }
}

#[test]
fn every_argument_satisfies_the_definition() {
    let mut rng = rng(22);
    for _ in 0..200 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let u = build_universe(&kb, None).unwrap();
        for a in u.arguments() {
            let premises: Vec<&Formula> = kb.core().iter().chain(a.support_formulas(&kb)).collect();
            assert!(is_consistent(premises.iter().copied()), "{}", a.describe(&kb));
            assert!(entails(premises.iter().copied(), &a.conclusion), "{}", a.describe(&kb));
            for drop in &a.support {
                let rest = kb.core().iter().chain(
                    a.support.iter().filter(|r| *r != drop).map(|&r| kb.belief(r).unwrap()),
                );
                assert!(!entails(rest, &a.conclusion), "{} is not minimal", a.describe(&kb));
            }
            assert_eq!(kb.certainty_level(&a.support).unwrap(), a.level);
        }
    }
}

#[test]
fn universe_ids_are_deterministic() {
    let mut rng = rng(23);
    for _ in 0..50 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let a = build_universe(&kb, Some(&f("p"))).unwrap();
        let b = build_universe(&kb, Some(&f("p"))).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let levels: Vec<usize> = a.arguments().iter().map(|x| x.level).collect();
        assert!(levels.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn certainty_level_is_max_under_union() {
    let mut rng = rng(24);
    for _ in 0..100 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let refs = kb.belief_refs();
        for i in 0..refs.len() {
            for j in 0..refs.len() {
                let (h1, h2) = (&refs[..=i], &refs[j..]);
                let union: Vec<_> = h1.iter().chain(h2).copied().collect();
                let l = kb.certainty_level(&union).unwrap();
                assert_eq!(l, kb.certainty_level(h1).unwrap().max(kb.certainty_level(h2).unwrap()));
            }
        }
    }
}

#[test]
fn kb_render_round_trips() {
    let mut rng = rng(25);
    for _ in 0..200 {
        let kb = random_kb(&mut rng, 6, 8, 4);
        let again = parse_kb(&kb.render()).unwrap();
        assert_eq!(again.render(), kb.render());
        assert_eq!(again.belief_refs(), kb.belief_refs());
        assert!(again.beliefs().zip(kb.beliefs()).all(|(a, b)| a == b));
    }
}
