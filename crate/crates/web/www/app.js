// Built with: wasm-pack build crates/web --target web --out-dir www/pkg
import init, { analyzeFramework, analyzeKb, accept } from "./pkg/prefarg_web.js";

const $ = (id) => document.getElementById(id);

function sets(list) {
  return list.map((s) => "{" + s.join(", ") + "}").join("\n  ");
}

function summary(report) {
  const lines = [
    "C_R: {" + report.class_r.join(", ") + "}",
    "C_R,Pref: {" + report.class_r_pref.join(", ") + "}",
    "grounded: {" + report.grounded.join(", ") + "}",
  ];
  if (report.capped) {
    lines.push("complete/stable: too many arguments to enumerate");
  } else {
    lines.push("complete:\n  " + sets(report.complete));
    lines.push("stable:\n  " + (report.stable.length ? sets(report.stable) : "(none)"));
  }
  return lines.join("\n");
}

function show(out, graph, fn) {
  try {
    const doc = JSON.parse(fn());
    graph.innerHTML = doc.svg || "";
    out.className = "";
    out.textContent = (doc.arguments ? doc.arguments.join("\n") + "\n\n" : "") + summary(doc.report);
  } catch (e) {
    out.className = "error";
    out.textContent = String(e);
  }
}

await init();

$("af-run").onclick = () => show($("af-out"), $("af-graph"), () => analyzeFramework($("af-input").value));

$("kb-run").onclick = () =>
  show($("kb-out"), $("kb-graph"), () => analyzeKb($("kb-input").value, $("kb-defeat").value, $("kb-pref").value));

$("kb-accept").onclick = () => {
  try {
    const doc = JSON.parse(accept($("kb-input").value, $("kb-query").value, $("kb-defeat").value, $("kb-pref").value));
    const rows = doc.arguments.map((a) => `${a.argument}  grounded: ${a.grounded ? "yes" : "no"}`);
    $("kb-out").className = "";
    $("kb-out").textContent = [`query: ${doc.query}`, ...rows, doc.accepted ? "accepted" : "not accepted"].join("\n");
  } catch (e) {
    $("kb-out").className = "error";
    $("kb-out").textContent = String(e);
  }
};

$("af-run").click();
$("kb-run").click();
