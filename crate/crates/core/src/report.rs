//! Serializable reports shared by the command-line and browser frontends.
//! Each builder returns a JSON payload plus a few human-readable lines.

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, Component, PartsPartition};
use crate::decompose::{compare_commensurable, compare_iso, remak_signature, virtual_signature};
use crate::dynamics::{
    essentiality, root_parity, Certificate, Essentiality, EssentialityParams, ParityVerdict,
};
use crate::error::Result;
use crate::form::{definiteness, gram, nondegenerate_extension, DefinitenessReport};
use crate::graph::CoxeterGraph;
use crate::iso::canonical_form;
use crate::oracle::FiniteGroupTable;
use crate::parse::to_text;
use crate::roots::{CoxeterSystem, RootVector, Word};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    /// Canonical form of the input graph(s).
    pub input: Vec<String>,
    pub result: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    fn new(command: &str, graphs: &[&CoxeterGraph]) -> Report {
        Report {
            command: command.to_string(),
            input: graphs
                .iter()
                .map(|g| canonical_form(g).to_string())
                .collect(),
            result: Value::Null,
            diagnostics: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = self.summary.join("\n");
        for d in &self.diagnostics {
            out.push_str(&format!("\nnote: {d}"));
        }
        out
    }
}

fn names(g: &CoxeterGraph, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.name(i).to_string()).collect()
}

fn scalar_text(s: &Scalar) -> String {
    if s.is_rational() {
        s.to_string()
    } else {
        format!("{s} ≈ {:.6}", s.to_f64())
    }
}

fn vector_text(x: &RootVector) -> String {
    if x.coords().iter().all(Scalar::is_rational) {
        x.to_string()
    } else {
        let approx: Vec<String> = x
            .coords()
            .iter()
            .map(|c| format!("{:.4}", c.to_f64()))
            .collect();
        format!("{x} ≈ ({})", approx.join(", "))
    }
}

fn component_json(g: &CoxeterGraph, c: &Component) -> Value {
    json!({
        "vertices": names(g, &c.vertices),
        "class": c.class,
        "type": c.descriptor(g).to_string(),
    })
}

fn parts_json(g: &CoxeterGraph, p: &PartsPartition) -> Value {
    json!({
        "z1": names(g, &p.z1),
        "z2": names(g, &p.z2),
        "z3": names(g, &p.z3),
        "a": p.a,
        "b": p.b,
        "l": p.l,
        "components": p.components.iter().map(|c| component_json(g, c)).collect::<Vec<_>>(),
    })
}

pub fn classify_report(g: &CoxeterGraph) -> Result<Report> {
    let mut r = Report::new("classify", &[g]);
    let c = classify(g)?;
    let def = definiteness(&gram(g));
    r.result = json!({
        "components": c.components.iter().map(|c| component_json(g, c)).collect::<Vec<_>>(),
        "parts": parts_json(g, &c.parts),
        "definiteness": DefinitenessReport::from(&def),
    });
    for comp in &c.components {
        r.summary.push(format!(
            "{{{}}}: {} ({})",
            names(g, &comp.vertices).join(", "),
            comp.descriptor(g),
            serde_json::to_value(comp.class)
                .expect("enum")
                .as_str()
                .unwrap_or_default()
        ));
    }
    r.summary.push(format!("form: {}", def.kind()));
    Ok(r)
}

pub fn decompose_report(g: &CoxeterGraph) -> Result<Report> {
    let mut r = Report::new("decompose", &[g]);
    let parts = classify(g)?.parts;
    let remak = remak_signature(g)?;
    let virt = virtual_signature(g)?;
    let show = |v: &[String]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.join(" × ")
        }
    };
    let infinite: Vec<String> = remak.infinite.iter().map(ToString::to_string).collect();
    let finite: Vec<String> = remak
        .finite
        .iter()
        .map(|f| {
            let c = f.canonical();
            if c == *f {
                f.to_string()
            } else {
                format!("{f} (≅ {c})")
            }
        })
        .collect();
    let indefinite: Vec<String> = virt.indefinite.iter().map(ToString::to_string).collect();
    r.result = json!({
        "parts": parts_json(g, &parts),
        "remak": {
            "infinite": infinite,
            "finite": remak.finite,
            "b": remak.b(),
            "q": remak.q(),
            "m": remak.m,
        },
        "virtual": {
            "indefinite": indefinite,
            "d": virt.d,
            "m": virt.m,
        },
    });
    r.summary.push(format!(
        "parts: a = {}, b = {}, l = {}",
        parts.a, parts.b, parts.l
    ));
    r.summary
        .push(format!("infinite factors: {}", show(&infinite)));
    r.summary.push(format!("finite factors: {}", show(&finite)));
    r.summary.push(format!(
        "remak: m = {} (b = {}, q = {})",
        remak.m,
        remak.b(),
        remak.q()
    ));
    r.summary.push(format!(
        "virtual: indefinite = {}, d = {}, m = {}",
        show(&indefinite),
        virt.d,
        virt.m
    ));
    Ok(r)
}

fn resolve_word(sys: &CoxeterSystem, text: Option<&str>) -> Result<Word> {
    match text {
        Some(t) => Word::parse(t, sys.graph()),
        None => sys.coxeter_element(None),
    }
}

pub fn essential_report(
    g: &CoxeterGraph,
    word: Option<&str>,
    params: &EssentialityParams,
) -> Result<Report> {
    let mut r = Report::new("essential", &[g]);
    let sys = CoxeterSystem::new(g);
    let w = resolve_word(&sys, word)?;
    if word.is_none() {
        r.diagnostics
            .push("no word given; using the Coxeter element in vertex order".into());
    }
    r.diagnostics.push(format!(
        "depth = {}, bound = {}, conjugation radius = {}",
        params.depth,
        params
            .bound
            .map_or("default".to_string(), |b| b.to_string()),
        params.conj_search_radius
    ));
    let verdict = essentiality(&sys, &w, params)?;
    let detail = match &verdict {
        Essentiality::Essential(Certificate::FiniteFixedSpaceTrivial) => {
            json!({"certificate": "finite_fixed_space_trivial"})
        }
        Essentiality::Essential(Certificate::OddRootsGenerate { roots }) => json!({
            "certificate": "odd_roots_generate",
            "roots": roots.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        }),
        Essentiality::NotEssential { u, x } => json!({
            "u": u.names(g),
            "x": names(g, x),
        }),
        Essentiality::Unknown { reason } => json!({"reason": reason}),
    };
    r.result = json!({
        "word": w.names(g),
        "verdict": verdict.kind(),
        "detail": detail,
    });
    r.summary.push(format!("w = {}", w.display(g)));
    r.summary.push(match &verdict {
        Essentiality::Essential(Certificate::FiniteFixedSpaceTrivial) => {
            "essential: w fixes no nonzero vector".to_string()
        }
        Essentiality::Essential(Certificate::OddRootsGenerate { roots }) => {
            let shown: Vec<String> = roots.iter().take(4).map(vector_text).collect();
            let more = if roots.len() > 4 { ", ..." } else { "" };
            format!(
                "essential: reflections in {} odd roots generate W ({}{more})",
                roots.len(),
                shown.join(", ")
            )
        }
        Essentiality::NotEssential { u, x } => format!(
            "not essential: conjugating by u = {} puts w in the parabolic on {{{}}}",
            u.display(g),
            names(g, x).join(", ")
        ),
        Essentiality::Unknown { reason } => format!("unknown: {reason}"),
    });
    Ok(r)
}

pub fn roots_report(g: &CoxeterGraph, word: &str) -> Result<Report> {
    let mut r = Report::new("roots", &[g]);
    let sys = CoxeterSystem::new(g);
    let w = Word::parse(word, g)?;
    let inv = sys.inversion_set(&w)?;
    let reduced = sys.reduce(&w)?;
    r.result = json!({
        "word": w.names(g),
        "reduced": reduced.names(g),
        "length": inv.len(),
        "inversion_set": inv.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
    });
    r.summary.push(format!("w = {}", w.display(g)));
    r.summary.push(format!("reduced: {}", reduced.display(g)));
    r.summary.push(format!("length: {}", inv.len()));
    for x in &inv {
        r.summary.push(format!("  {}", vector_text(x)));
    }
    Ok(r)
}

pub fn parity_report(
    g: &CoxeterGraph,
    word: &str,
    root: &str,
    bound: Option<usize>,
) -> Result<Report> {
    let mut r = Report::new("parity", &[g]);
    let sys = CoxeterSystem::new(g);
    let w = Word::parse(word, g)?;
    let alpha = sys.parse_root(root)?;
    let res = root_parity(&sys, &w, &alpha, bound)?;
    r.result = json!({
        "word": w.names(g),
        "root": alpha.to_json(),
        "parity": res,
    });
    r.summary
        .push(format!("w = {}, α = {}", w.display(g), vector_text(&alpha)));
    r.summary.push(parity_text(&res.verdict));
    if !res.separation_indices.is_empty() {
        r.summary.push(format!(
            "separations at m = {}",
            res.separation_indices.iter().join(", ")
        ));
    }
    Ok(r)
}

fn parity_text(v: &ParityVerdict) -> String {
    match v {
        ParityVerdict::Periodic { period } => format!("periodic: w^{period} fixes the root"),
        ParityVerdict::Even { separations } => format!("even: {separations} separation(s)"),
        ParityVerdict::Odd { separations } => format!("odd: {separations} separation(s)"),
        ParityVerdict::Unknown { bound } => format!("unknown: undecided up to power {bound}"),
    }
}

pub fn extend_report(g: &CoxeterGraph) -> Result<Report> {
    let mut r = Report::new("extend", &[g]);
    let ext = nondegenerate_extension(g)?;
    let eg = &ext.extended;
    let twins: Vec<Value> = ext
        .twins
        .iter()
        .map(|&(s, t)| json!({"vertex": g.name(s), "twin": eg.name(t)}))
        .collect();
    r.result = json!({
        "extended": to_text(eg),
        "x0": names(g, &ext.x0),
        "x1": names(g, &ext.x1),
        "twins": twins,
        "det_x0": ext.det_x0.to_json(),
        "det_extended": ext.det_extended.to_json(),
        "identity_holds": ext.identity_holds(),
    });
    r.summary
        .push(format!("X0 = {{{}}}", names(g, &ext.x0).join(", ")));
    r.summary
        .push(format!("X1 = {{{}}}", names(g, &ext.x1).join(", ")));
    for &(s, t) in &ext.twins {
        r.summary
            .push(format!("twin {} -∞- {}", g.name(s), eg.name(t)));
    }
    r.summary
        .push(format!("det B_X0 = {}", scalar_text(&ext.det_x0)));
    r.summary
        .push(format!("det B_ext = {}", scalar_text(&ext.det_extended)));
    r.summary.push(format!(
        "det B_ext = (-1)^|X1| det B_X0: {}",
        if ext.identity_holds() {
            "holds"
        } else {
            "FAILS"
        }
    ));
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareMode {
    Iso,
    Comm,
}

pub fn compare_report(g1: &CoxeterGraph, g2: &CoxeterGraph, mode: CompareMode) -> Result<Report> {
    let mut r = Report::new("compare", &[g1, g2]);
    let (mode_name, verdict) = match mode {
        CompareMode::Iso => (
            "iso",
            serde_json::to_value(compare_iso(g1, g2)?).expect("enum"),
        ),
        CompareMode::Comm => (
            "comm",
            serde_json::to_value(compare_commensurable(g1, g2)?).expect("enum"),
        ),
    };
    r.result = json!({"mode": mode_name, "verdict": verdict});
    r.summary.push(format!(
        "{mode_name}: {}",
        verdict.as_str().unwrap_or_default()
    ));
    Ok(r)
}

pub fn oracle_report(g: &CoxeterGraph, max_order: usize, decompositions: bool) -> Result<Report> {
    let mut r = Report::new("oracle", &[g]);
    let t = FiniteGroupTable::enumerate(g, max_order)?;
    let center = t.center();
    let theta = t.theta();
    let mut result = json!({
        "order": t.order(),
        "positive_roots": t.positive_root_count(),
        "w0": t.word(t.w0()).names(g),
        "w0_length": t.length(t.w0()),
        "theta": theta.iter().map(|&i| g.name(i).to_string()).collect::<Vec<_>>(),
        "center_order": center.len(),
    });
    r.summary.push(format!(
        "|W| = {}, |Φ⁺| = {}",
        t.order(),
        t.positive_root_count()
    ));
    r.summary
        .push(format!("w0 = {}", t.word(t.w0()).display(g)));
    r.summary.push(format!("|Z(W)| = {}", center.len()));
    if decompositions {
        let found = t.direct_decompositions()?;
        let list: Vec<Value> = found
            .iter()
            .map(|(a, b)| {
                json!({
                    "orders": [a.len(), b.len()],
                    "center_factor": *a == center || *b == center,
                })
            })
            .collect();
        result["decompositions"] = Value::Array(list);
        r.summary
            .push(format!("direct decompositions: {}", found.len()));
        for (a, b) in &found {
            let mark = if *a == center || *b == center {
                " (one factor is Z(W))"
            } else {
                ""
            };
            r.summary.push(format!("  {} × {}{mark}", a.len(), b.len()));
        }
    }
    r.result = result;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_spec;

    #[test]
    fn decompose_i26() {
        let r = decompose_report(&parse_spec("I2(6)").unwrap()).unwrap();
        assert_eq!(r.result["remak"]["m"], 2);
        assert_eq!(r.result["remak"]["finite"][0]["kind"], "c2");
        assert!(r.text().contains("finite factors: C2 × W(I2(3)) (≅ W(A2))"));
    }

    #[test]
    fn essential_default_word() {
        let r = essential_report(
            &parse_spec("~A1").unwrap(),
            Some("s t"),
            &EssentialityParams::default(),
        )
        .unwrap();
        assert_eq!(r.result["verdict"], "essential");
        assert_eq!(r.result["word"], json!(["s0", "s1"]));
    }

    #[test]
    fn compare_comm() {
        let g1 = parse_spec("~A2").unwrap();
        let g2 = parse_spec("~A1 x ~A1").unwrap();
        let r = compare_report(&g1, &g2, CompareMode::Comm).unwrap();
        assert_eq!(r.result["verdict"], "commensurable");
        assert_eq!(r.input.len(), 2);
    }
}
