//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export takes the input text and returns a JSON string; the plain
//! Rust functions underneath are what the tests exercise.

use std::f64::consts::PI;
use std::fmt::Write as _;

use prefarg::argument::build_universe;
use prefarg::formula::{equivalent, parse_formula};
use prefarg::framework::{parse_abstract_framework, DefeatKind, Framework, PreferenceKind};
use prefarg::kb::parse_kb;
use prefarg::semantics::{self, ArgSet, ConflictMode};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Frameworks larger than this get grounded semantics only.
pub const WEB_CAP: usize = 16;

fn defeat_kind(name: &str) -> Result<DefeatKind, String> {
    match name {
        "rebut" => Ok(DefeatKind::Rebut),
        "undercut" => Ok(DefeatKind::Undercut),
        other => Err(format!("unknown defeat relation `{other}`")),
    }
}

fn preference_kind(name: &str) -> Result<PreferenceKind, String> {
    match name {
        "certainty" => Ok(PreferenceKind::Certainty),
        "none" => Ok(PreferenceKind::None),
        other => Err(format!("unknown preference `{other}`")),
    }
}

/// Arguments on a circle, solid arrows for attacks, dashed for defeats that
/// preference blocked. Grounded arguments are filled.
pub fn render_svg(fw: &Framework, grounded: &ArgSet) -> String {
    let n = fw.len();
    let size = 360.0;
    let centre = size / 2.0;
    let radius = if n <= 1 { 0.0 } else { size / 2.0 - 40.0 };
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let angle = 2.0 * PI * i as f64 / n.max(1) as f64 - PI / 2.0;
            (centre + radius * angle.cos(), centre + radius * angle.sin())
        })
        .collect();
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {size} {size}\" width=\"{size}\" height=\"{size}\">\n\
         <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n"
    );
    let node_r = 18.0;
    for &(from, to) in fw.defeats() {
        let dash = if fw.attacks_edge(from, to) { "" } else { " stroke-dasharray=\"5,4\"" };
        if from == to {
            let (x, y) = pos[from];
            let _ = writeln!(
                out,
                "<path d=\"M{:.1},{:.1} C{:.1},{:.1} {:.1},{:.1} {:.1},{:.1}\" fill=\"none\" stroke=\"black\"{dash} marker-end=\"url(#arrow)\"/>",
                x - 8.0, y - node_r + 2.0, x - 30.0, y - 55.0, x + 30.0, y - 55.0, x + 8.0, y - node_r + 2.0
            );
            continue;
        }
        let ((x1, y1), (x2, y2)) = (pos[from], pos[to]);
        let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1.0);
        let (ux, uy) = ((x2 - x1) / len, (y2 - y1) / len);
        // nudge mutual edges apart
        let (ox, oy) = if fw.defeats_edge(to, from) { (-uy * 4.0, ux * 4.0) } else { (0.0, 0.0) };
        let _ = writeln!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"{dash} marker-end=\"url(#arrow)\"/>",
            x1 + ux * node_r + ox,
            y1 + uy * node_r + oy,
            x2 - ux * node_r + ox,
            y2 - uy * node_r + oy
        );
    }
    for (i, (x, y)) in pos.iter().enumerate() {
        let fill = if grounded.contains(i) { "#9fd39f" } else { "white" };
        let _ = writeln!(
            out,
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{node_r}\" fill=\"{fill}\" stroke=\"black\"/>\
             <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            y + 4.0,
            xml_escape(fw.name(i))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn report_json(fw: &Framework) -> Value {
    let report = semantics::evaluate(fw, ConflictMode::Weak, WEB_CAP);
    json!({
        "report": report.named(fw),
        "svg": render_svg(fw, &report.grounded),
    })
}

/// Extensions and drawing for an abstract framework in `arg/def/pref` syntax.
pub fn analyze_framework_json(text: &str) -> Result<String, String> {
    let fw = parse_abstract_framework(text).map_err(|e| e.to_string())?;
    Ok(report_json(&fw).to_string())
}

/// Arguments, extensions and drawing for a stratified knowledge base.
pub fn analyze_kb_json(text: &str, defeat: &str, pref: &str) -> Result<String, String> {
    let kb = parse_kb(text).map_err(|e| e.to_string())?;
    let universe = build_universe(&kb, None).map_err(|e| e.to_string())?;
    let fw = Framework::from_universe(&universe, defeat_kind(defeat)?, preference_kind(pref)?);
    let mut doc = report_json(&fw);
    doc["arguments"] =
        Value::Array(universe.arguments().iter().map(|a| Value::String(a.describe(&kb))).collect());
    Ok(doc.to_string())
}

/// Acceptance of a query formula: accepted iff some argument for it is in the
/// grounded extension.
pub fn accept_json(text: &str, query: &str, defeat: &str, pref: &str) -> Result<String, String> {
    let kb = parse_kb(text).map_err(|e| e.to_string())?;
    let q = parse_formula(query).map_err(|e| format!("query: {e}"))?;
    let universe = build_universe(&kb, Some(&q)).map_err(|e| e.to_string())?;
    let fw = Framework::from_universe(&universe, defeat_kind(defeat)?, preference_kind(pref)?);
    let (grounded, _) = semantics::grounded(&fw);
    let class = semantics::class_cr_pref(&fw);
    let rows: Vec<Value> = universe
        .arguments()
        .iter()
        .enumerate()
        .filter(|(_, a)| equivalent(&a.conclusion, &q))
        .map(|(i, a)| json!({ "argument": a.describe(&kb), "class_r_pref": class.contains(i), "grounded": grounded.contains(i) }))
        .collect();
    let accepted = rows.iter().any(|r| r["grounded"] == true);
    Ok(json!({ "query": q.to_string(), "arguments": rows, "accepted": accepted }).to_string())
}

#[wasm_bindgen(js_name = analyzeFramework)]
pub fn analyze_framework(text: &str) -> Result<String, JsValue> {
    analyze_framework_json(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = analyzeKb)]
pub fn analyze_kb(text: &str, defeat: &str, pref: &str) -> Result<String, JsValue> {
    analyze_kb_json(text, defeat, pref).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn accept(text: &str, query: &str, defeat: &str, pref: &str) -> Result<String, JsValue> {
    accept_json(text, query, defeat, pref).map_err(|e| JsValue::from_str(&e))
}
