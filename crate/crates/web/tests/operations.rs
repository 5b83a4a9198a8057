use prefarg_web::{accept_json, analyze_framework_json, analyze_kb_json};
use serde_json::Value;

const MUTUAL_DEFEAT: &str = "arg(A). arg(B). arg(C). arg(D). def(C,D). def(D,C).";
const CONFLICTING_STRATA: &str = "[stratum 1]\na\n!a\n[stratum 2]\na -> b\n[stratum 3]\n!b\n";
const UNDERCUT_CHAIN: &str = "[stratum 1]\nx\n!r\n[stratum 2]\nx -> t\n[stratum 3]\nt -> r\n[stratum 4]\n!r -> p\n";

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn framework_analysis() {
    let doc = parse(analyze_framework_json(MUTUAL_DEFEAT).unwrap());
    assert_eq!(doc["report"]["grounded"], serde_json::json!(["A", "B"]));
    assert_eq!(doc["report"]["stable"].as_array().unwrap().len(), 2);
    assert!(doc["svg"].as_str().unwrap().starts_with("<svg"));
    let err = analyze_framework_json("def(a,b).").unwrap_err();
    assert!(err.contains('a'), "{err}");
}

#[test]
fn kb_analysis() {
    let doc = parse(analyze_kb_json(CONFLICTING_STRATA, "undercut", "certainty").unwrap());
    assert_eq!(doc["arguments"].as_array().unwrap().len(), 8);
    assert_eq!(doc["arguments"][3], "A4: ({a, a -> b}, b) @2");
    assert_eq!(doc["report"]["class_r_pref"], serde_json::json!(["A5"]));
    let rebut = parse(analyze_kb_json(CONFLICTING_STRATA, "rebut", "certainty").unwrap());
    assert!(rebut["report"]["class_r_pref"].as_array().unwrap().contains(&Value::from("A4")));
    assert!(analyze_kb_json("[stratum 2]\np\n", "undercut", "none").is_err());
}

#[test]
fn acceptance_queries() {
    let doc = parse(accept_json(UNDERCUT_CHAIN, "p", "undercut", "certainty").unwrap());
    assert_eq!(doc["accepted"], true);
    assert_eq!(doc["arguments"][0]["argument"], "A10: ({!r, !r -> p}, p) @4");
    assert_eq!(doc["arguments"][0]["class_r_pref"], false);
    let doc = parse(accept_json(CONFLICTING_STRATA, "b", "undercut", "certainty").unwrap());
    assert_eq!(doc["accepted"], false);
    let doc = parse(accept_json(CONFLICTING_STRATA, "zz", "undercut", "none").unwrap());
    assert!(doc["arguments"].as_array().unwrap().is_empty());
}
