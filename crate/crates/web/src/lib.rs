//! Browser bindings. Every export takes plain strings and returns a JSON
//! document: either `{"ok": …}` or `{"error": "…"}`.

use coxeter_core::dynamics::root_parity;
use coxeter_core::form::{definiteness, gram, DefinitenessReport};
use coxeter_core::report::{classify_report, decompose_report, extend_report};
use coxeter_core::roots::{CoxeterSystem, RootSign, Word};
use coxeter_core::{parse_spec, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest number of orbit points returned on either side of `α`.
pub const MAX_STEPS: usize = 40;

fn wrap(r: Result<Value>) -> String {
    match r {
        Ok(v) => json!({ "ok": v }).to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Components, types and both signatures of a graph.
pub fn explore_json(spec: &str) -> Result<Value> {
    let g = parse_spec(spec)?;
    let c = classify_report(&g)?;
    let d = decompose_report(&g)?;
    let edges: Vec<Value> = g
        .edges()
        .map(|(i, j, m)| json!({"u": g.name(i), "v": g.name(j), "label": m.to_string()}))
        .collect();
    Ok(json!({
        "vertices": g.vertices(),
        "edges": edges,
        "classify": c.result,
        "decompose": d.result,
        "text": format!("{}\n{}", c.text(), d.text()),
    }))
}

/// Gram matrix (exact and approximate), definiteness and the non-degenerate
/// extension.
pub fn gram_json(spec: &str) -> Result<Value> {
    let g = parse_spec(spec)?;
    let b = gram(&g);
    let exact: Vec<Vec<String>> = b
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let approx: Vec<Vec<f64>> = b
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64()).collect())
        .collect();
    let det = b.determinant();
    let ext = extend_report(&g)?;
    Ok(json!({
        "vertices": g.vertices(),
        "exact": exact,
        "approx": approx,
        "level": det.level(),
        "determinant": {"exact": det.to_string(), "approx": det.to_f64()},
        "definiteness": DefinitenessReport::from(&definiteness(&b)),
        "extension": ext.result,
        "text": ext.text(),
    }))
}

/// Parity of `α` under `w` together with the orbit `w^m α` for
/// `|m| ≤ steps`, each point tagged with its sign.
pub fn orbit_json(spec: &str, word: &str, root: &str, steps: usize) -> Result<Value> {
    let g = parse_spec(spec)?;
    let sys = CoxeterSystem::new(&g);
    let w = Word::parse(word, &g)?;
    let alpha = sys.parse_root(root)?;
    let parity = root_parity(&sys, &w, &alpha, None)?;
    let steps = steps.min(MAX_STEPS);
    let forward = sys.element(&w)?.matrix;
    let backward = sys.element(&w.inverse())?.matrix;
    let mut points = Vec::new();
    for (dir, m) in [(1i64, &forward), (-1, &backward)] {
        let mut x = alpha.clone();
        for k in 0..=steps {
            if k > 0 || dir == 1 {
                let positive = sys.root_sign(&x)? == RootSign::Positive;
                let coords: Vec<f64> = x.coords().iter().map(|c| c.to_f64()).collect();
                points.push(json!({"m": dir * k as i64, "positive": positive, "coords": coords, "exact": x.to_string()}));
            }
            x = coxeter_core::roots::RootVector(m.mul_vec(&x.0));
        }
    }
    points.sort_by_key(|p| p["m"].as_i64());
    Ok(json!({
        "word": w.names(&g),
        "vertices": g.vertices(),
        "parity": parity,
        "orbit": points,
    }))
}

#[wasm_bindgen]
pub fn explore(spec: &str) -> String {
    wrap(explore_json(spec))
}

#[wasm_bindgen]
pub fn gram_matrix(spec: &str) -> String {
    wrap(gram_json(spec))
}

#[wasm_bindgen]
pub fn orbit(spec: &str, word: &str, root: &str, steps: usize) -> String {
    wrap(orbit_json(spec, word, root, steps))
}
