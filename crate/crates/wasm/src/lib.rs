//! Browser bindings. Every export takes plain values and returns a JSON string;
//! the plain-Rust versions in this crate are what the bindings call.

use serde_json::{json, Value};
use syncgroups_core::catalogue;
use syncgroups_core::classify::{classify_group, Limits};
use syncgroups_core::graph::{chromatic_number, maximum_clique, Graph, DEFAULT_COLOUR_BUDGET};
use syncgroups_core::transform::{cerny_automaton, greedy_reset_word, shortest_reset_word, ShortestReset};
use syncgroups_core::BitSet;
use wasm_bindgen::prelude::*;

/// Largest Černý automaton the page will search exhaustively.
pub const MAX_CERNY: usize = 14;
/// Largest group degree the page will classify.
pub const MAX_DEGREE: usize = 30;
pub const MAX_GRAPH_ORDER: usize = 64;

fn render(v: Value) -> String {
    serde_json::to_string(&v).expect("values serialize")
}

/// Shortest reset word of the `n`-state Černý automaton, with the image set
/// after every prefix of the word.
pub fn cerny_analysis(n: usize) -> Result<String, String> {
    if !(2..=MAX_CERNY).contains(&n) {
        return Err(format!("n must be between 2 and {MAX_CERNY}"));
    }
    let a = cerny_automaton(n).map_err(|e| e.to_string())?;
    let word = match shortest_reset_word(&a, 1 << MAX_CERNY) {
        ShortestReset::Found { word } => word,
        other => return Err(format!("unexpected search outcome {other:?}")),
    };
    let mut current = BitSet::full(n);
    let mut trace = vec![current.to_vec()];
    for &i in &word.indices {
        let t = &a.letters()[i].1;
        current = BitSet::from_points(n, current.iter().map(|x| t.image(x)));
        trace.push(current.to_vec());
    }
    Ok(render(json!({
        "n": n,
        "letters": a.letters().iter().map(|(name, t)| json!({ "name": name, "images": t.images() })).collect::<Vec<_>>(),
        "word": word.letters.concat(),
        "length": word.length,
        "bound": (n - 1) * (n - 1),
        "greedy_length": greedy_reset_word(&a).map(|w| w.length),
        "trace": trace,
    })))
}

fn parse_params(params: &str) -> Result<Vec<usize>, String> {
    params
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("parameter {s:?} is not a nonnegative integer")))
        .collect()
}

/// Clique, chromatic and independence numbers of a named graph, with witnesses
/// and the edge list for drawing.
pub fn graph_invariants(family: &str, params: &str, complement: bool) -> Result<String, String> {
    let mut g = Graph::build(family, &parse_params(params)?).map_err(|e| e.to_string())?;
    if g.order() > MAX_GRAPH_ORDER {
        return Err(format!("graphs are limited to {MAX_GRAPH_ORDER} vertices here"));
    }
    if complement {
        g = g.complement();
    }
    let clique = maximum_clique(&g);
    let independent = maximum_clique(&g.complement());
    let chi = chromatic_number(&g, DEFAULT_COLOUR_BUDGET);
    Ok(render(json!({
        "order": g.order(),
        "edges": g.edges(),
        "clique_number": clique.len(),
        "maximum_clique": clique,
        "chromatic_number": chi.exact(),
        "chromatic_bounds": [chi.lower, chi.upper],
        "colouring": chi.colouring,
        "independence_number": independent.len(),
        "maximum_independent_set": independent,
    })))
}

/// Classification report for a catalogue group (NS(G) is skipped).
pub fn classify_named_group(name: &str) -> Result<String, String> {
    let g = catalogue::by_name(name).map_err(|e| e.to_string())?;
    if g.degree() > MAX_DEGREE {
        return Err(format!("degree {} exceeds the demo limit of {MAX_DEGREE}", g.degree()));
    }
    let limits = Limits { compute_ns: false, ..Limits::default() };
    let report = classify_group(&g, &limits);
    Ok(serde_json::to_string(&report).expect("reports serialize"))
}

/// Catalogue names and descriptions, for the page's drop-down.
pub fn catalogue_names() -> String {
    render(json!(catalogue::NAMES.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect::<Vec<_>>()))
}

#[wasm_bindgen(js_name = cernyAnalysis)]
pub fn cerny_analysis_js(n: usize) -> Result<String, JsValue> {
    cerny_analysis(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = graphInvariants)]
pub fn graph_invariants_js(family: &str, params: &str, complement: bool) -> Result<String, JsValue> {
    graph_invariants(family, params, complement).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = classifyGroup)]
pub fn classify_named_group_js(name: &str) -> Result<String, JsValue> {
    classify_named_group(name).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = catalogueNames)]
pub fn catalogue_names_js() -> String {
    catalogue_names()
}
