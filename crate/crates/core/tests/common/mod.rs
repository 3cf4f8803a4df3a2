#![allow(dead_code)]

use coxeter_core::roots::{CoxeterSystem, RootVector, Word};
use coxeter_core::{parse_spec, CoxeterGraph, Label};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random graph on `s1..sn` with labels drawn uniformly from `labels`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, labels: &[Label]) -> CoxeterGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, *labels.choose(rng).unwrap()));
        }
    }
    CoxeterGraph::from_edges(n, &edges)
}

pub fn labels_up_to(max: u32, infinite: bool) -> Vec<Label> {
    let mut v: Vec<Label> = (2..=max).map(Label::Finite).collect();
    if infinite {
        v.push(Label::Infinite);
    }
    v
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| rng.gen_range(0..rank)).collect())
}

/// A root `w α_s` for a random short word `w`.
pub fn random_root<R: Rng>(rng: &mut R, sys: &CoxeterSystem, max_len: usize) -> RootVector {
    let w = random_word(rng, sys.rank(), max_len);
    let s = rng.gen_range(0..sys.rank());
    let r = sys.apply_word(&w, &sys.simple_root(s)).unwrap();
    if rng.gen_bool(0.5) {
        r
    } else {
        r.neg()
    }
}

/// Product corpus used by the signature checks.
pub const CORPUS: &[&str] = &[
    "A1",
    "A2",
    "A3",
    "B3",
    "B4",
    "D4",
    "H3",
    "F4",
    "E6",
    "I2(5)",
    "I2(6)",
    "I2(10)",
    "~A1",
    "~A2",
    "~B3",
    "~G2",
    "~C2",
    "(3,3,7)",
    "(3,3,8)",
    "(2,3,7)",
    "(3,inf,4)",
];

pub fn random_product<R: Rng>(
    rng: &mut R,
    max_factors: usize,
) -> (Vec<&'static str>, CoxeterGraph) {
    let k = rng.gen_range(1..=max_factors);
    let names: Vec<&str> = (0..k).map(|_| *CORPUS.choose(rng).unwrap()).collect();
    let g = parse_spec(&names.join(" x ")).unwrap();
    (names, g)
}

/// Relabels vertices by a random permutation.
pub fn shuffled<R: Rng>(rng: &mut R, g: &CoxeterGraph) -> CoxeterGraph {
    let mut order: Vec<usize> = (0..g.rank()).collect();
    order.shuffle(rng);
    g.permuted(&order)
}
