//! Labeled-graph isomorphism and canonical forms for small Coxeter graphs.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::graph::{CoxeterGraph, Label};

fn invariant(g: &CoxeterGraph, v: usize) -> Vec<u32> {
    let mut labels: Vec<u32> = g.neighbors(v).map(|w| g.label(v, w).key()).collect();
    labels.sort_unstable();
    labels
}

/// A label-preserving bijection `map` with `b.label(map[i], map[j]) == a.label(i, j)`.
pub fn find_isomorphism(a: &CoxeterGraph, b: &CoxeterGraph) -> Option<Vec<usize>> {
    let n = a.rank();
    if n != b.rank() {
        return None;
    }
    let inv_a: Vec<_> = (0..n).map(|v| invariant(a, v)).collect();
    let inv_b: Vec<_> = (0..n).map(|v| invariant(b, v)).collect();
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    // visit a's vertices so each new one is adjacent to an earlier one when possible
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| a.is_edge(u, v)).count();
                (links, inv_a[v].len(), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        order: &[usize],
        a: &CoxeterGraph,
        b: &CoxeterGraph,
        inv_a: &[Vec<u32>],
        inv_b: &[Vec<u32>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..b.rank() {
            if used[w] || inv_a[v] != inv_b[w] {
                continue;
            }
            let consistent = order[..k]
                .iter()
                .all(|&u| a.label(u, v) == b.label(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(k + 1, order, a, b, inv_a, inv_b, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    extend(0, &order, a, b, &inv_a, &inv_b, &mut map, &mut used).then_some(map)
}

pub fn are_isomorphic(a: &CoxeterGraph, b: &CoxeterGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Canonical representative of a labeled graph up to isomorphism. Vertex
/// names are forgotten.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    /// Strict upper triangle in canonical vertex order, row-major.
    labels: Vec<Label>,
}

impl CanonicalForm {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn to_graph(&self) -> CoxeterGraph {
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.labels[k].is_edge() {
                    edges.push((i, j, self.labels[k]));
                }
                k += 1;
            }
        }
        CoxeterGraph::from_edges(self.n, &edges)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph({}", self.n)?;
        let mut k = 0;
        let mut first = true;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let m = self.labels[k];
                k += 1;
                if m.is_edge() {
                    write!(
                        f,
                        "{}{}-{}:{}",
                        if first { "; " } else { ", " },
                        i + 1,
                        j + 1,
                        m
                    )?;
                    first = false;
                }
            }
        }
        write!(f, ")")
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Colour refinement; colours are ranks of isomorphism-invariant signatures.
fn refined_colors(g: &CoxeterGraph) -> Vec<usize> {
    let n = g.rank();
    let rank_of = |sigs: Vec<Vec<u64>>| -> Vec<usize> {
        let distinct: BTreeMap<Vec<u64>, usize> = sigs.iter().cloned().map(|s| (s, 0)).collect();
        let ranks: BTreeMap<Vec<u64>, usize> = distinct
            .into_keys()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        sigs.iter().map(|s| ranks[s]).collect()
    };
    let mut colors = rank_of(
        (0..n)
            .map(|v| invariant(g, v).into_iter().map(u64::from).collect())
            .collect(),
    );
    loop {
        let sigs = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = g
                    .neighbors(v)
                    .map(|w| (u64::from(g.label(v, w).key()) << 20) | colors[w] as u64)
                    .collect();
                nb.sort_unstable();
                let mut sig = vec![colors[v] as u64];
                sig.extend(nb);
                sig
            })
            .collect();
        let next = rank_of(sigs);
        let classes = |c: &[usize]| c.iter().copied().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

pub fn canonical_form(g: &CoxeterGraph) -> CanonicalForm {
    let n = g.rank();
    let colors = refined_colors(g);
    let mut best: Option<Vec<u32>> = None;
    let mut best_order: Vec<usize> = Vec::new();
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::new();
    search(
        g,
        &colors,
        &mut order,
        &mut code,
        &mut best,
        &mut best_order,
    );
    let mut labels = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            labels.push(g.label(best_order[i], best_order[j]));
        }
    }
    CanonicalForm { n, labels }
}

fn key(g: &CoxeterGraph, colors: &[usize], order: &[usize], v: usize) -> Vec<u32> {
    let mut k = vec![colors[v] as u32];
    k.extend(order.iter().map(|&u| g.label(u, v).key()));
    k
}

fn search(
    g: &CoxeterGraph,
    colors: &[usize],
    order: &mut Vec<usize>,
    code: &mut Vec<u32>,
    best: &mut Option<Vec<u32>>,
    best_order: &mut Vec<usize>,
) {
    let n = g.rank();
    if let Some(b) = best {
        if code[..] > b[..code.len()] {
            return;
        }
    }
    if order.len() == n {
        if best.as_ref().is_none_or(|b| code[..] < b[..]) {
            *best = Some(code.clone());
            *best_order = order.clone();
        }
        return;
    }
    let remaining: Vec<usize> = (0..n).filter(|v| !order.contains(v)).collect();
    let keys: Vec<Vec<u32>> = remaining
        .iter()
        .map(|&v| key(g, colors, order, v))
        .collect();
    let min = keys.iter().min().expect("remaining is non-empty").clone();
    let mut tried: Vec<usize> = Vec::new();
    for (&v, k) in remaining.iter().zip(&keys) {
        if *k != min {
            continue;
        }
        // swapping twins is an automorphism, so their subtrees agree
        let twin = tried
            .iter()
            .any(|&u| (0..n).all(|x| x == u || x == v || g.label(u, x) == g.label(v, x)));
        if twin {
            continue;
        }
        tried.push(v);
        let len = code.len();
        code.extend_from_slice(k);
        order.push(v);
        search(g, colors, order, code, best, best_order);
        order.pop();
        code.truncate(len);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_spec;

    #[test]
    fn isomorphic_relabelings() {
        let g = parse_spec("vertices: a b c d; edge: a b 3; edge: b c 4; edge: c d 5").unwrap();
        let h = g.permuted(&[2, 0, 3, 1]);
        let map = find_isomorphism(&g, &h).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(g.label(i, j), h.label(map[i], map[j]));
            }
        }
        assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn non_isomorphic_graphs() {
        let a = parse_spec("(3,3,7)").unwrap();
        let b = parse_spec("(3,3,8)").unwrap();
        assert!(!are_isomorphic(&a, &b));
        assert_ne!(canonical_form(&a), canonical_form(&b));
        let p = parse_spec("A4").unwrap();
        let star = parse_spec("vertices: a b c d; edge: a b 3; edge: a c 3; edge: a d 3").unwrap();
        assert!(!are_isomorphic(&p, &star));
    }

    #[test]
    fn symmetric_graphs_are_cheap() {
        let n = 9;
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j, Label::Finite(3))))
            .collect();
        let k9 = CoxeterGraph::from_edges(n, &edges);
        let c = canonical_form(&k9);
        assert_eq!(c.to_graph().edges().count(), 36);
    }

    #[test]
    fn canonical_form_round_trips() {
        let g = parse_spec("(3,4,inf)").unwrap();
        let c = canonical_form(&g);
        assert!(are_isomorphic(&c.to_graph(), &g));
        assert_eq!(canonical_form(&c.to_graph()), c);
        assert_eq!(c.to_string(), "graph(3; 1-2:3, 1-3:4, 2-3:inf)");
    }
}
