//! Coxeter graphs and their elementary combinatorics.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{CoxeterError, Result};

/// A Coxeter matrix entry `m_st`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// An edge of the Coxeter graph: `m_st >= 3` or `∞`.
    pub fn is_edge(self) -> bool {
        !matches!(self, Label::Finite(m) if m <= 2)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1 && m > 1)
    }

    /// Total order key (`∞` after every finite label).
    pub(crate) fn key(self) -> u32 {
        match self {
            Label::Finite(m) => m,
            Label::Infinite => u32::MAX,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// A Coxeter graph: the vertex set `S` and the symmetric Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    labels: Vec<Label>,
}

impl CoxeterGraph {
    /// Graph with the given vertices and no edges.
    pub fn new<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Result<CoxeterGraph> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(CoxeterError::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        let mut labels = vec![Label::Finite(2); n * n];
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        Ok(CoxeterGraph { vertices, labels })
    }

    /// Graph on `s1 … sn` with the given edges (0-based indices).
    pub fn from_edges(n: usize, edges: &[(usize, usize, Label)]) -> CoxeterGraph {
        let names = (1..=n).map(|i| format!("s{i}"));
        let mut g = CoxeterGraph::new(names).expect("generated names are unique");
        for &(i, j, m) in edges {
            g.set_label(i, j, m).expect("valid generated edge");
        }
        g
    }

    pub fn set_label(&mut self, i: usize, j: usize, label: Label) -> Result<()> {
        let n = self.rank();
        if i >= n || j >= n {
            return Err(CoxeterError::UnknownVertex(format!("#{}", i.max(j) + 1)));
        }
        let invalid = || CoxeterError::InvalidLabel {
            u: self.vertices[i].clone(),
            v: self.vertices[j].clone(),
            label: label.to_string(),
        };
        if i == j {
            return Err(invalid());
        }
        if let Label::Finite(m) = label {
            if m < 2 {
                return Err(invalid());
            }
        }
        self.labels[i * n + j] = label;
        self.labels[j * n + i] = label;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank() + j]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.label(i, j).is_edge()
    }

    /// Pairs `i < j` whose label is not 2.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| {
            (i + 1..n).filter_map(move |j| {
                let m = self.label(i, j);
                m.is_edge().then_some((i, j, m))
            })
        })
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| self.is_edge(i, j))
    }

    pub fn has_infinite_label(&self) -> bool {
        self.edges().any(|(_, _, m)| m == Label::Infinite)
    }

    /// `L`: lcm of the finite labels `>= 3` (2 when there are none).
    pub fn level(&self) -> u32 {
        self.edges()
            .filter_map(|(_, _, m)| match m {
                Label::Finite(m) => Some(m),
                Label::Infinite => None,
            })
            .fold(2u32, |acc, m| if acc == 2 { m } else { acc.lcm(&m) })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_by(|m| m.is_edge())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Partition of `S` by the graph `Ω` whose edges are the finite odd labels.
    pub fn odd_components(&self) -> OddPartition {
        OddPartition {
            blocks: self.components_by(Label::is_odd),
        }
    }

    fn components_by(&self, joined: impl Fn(Label) -> bool) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut comp = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            comp[start] = id;
            let mut head = 0;
            while head < block.len() {
                let v = block[head];
                head += 1;
                for w in 0..n {
                    if w != v && comp[w] == usize::MAX && joined(self.label(v, w)) {
                        comp[w] = id;
                        block.push(w);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    /// Full subgraph on the given vertex indices (kept in the given order).
    pub fn induced(&self, subset: &[usize]) -> Result<CoxeterGraph> {
        let n = self.rank();
        if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
            return Err(CoxeterError::UnknownVertex(format!("#{}", bad + 1)));
        }
        let mut g = CoxeterGraph::new(subset.iter().map(|&i| self.vertices[i].clone()))?;
        for (a, &i) in subset.iter().enumerate() {
            for (b, &j) in subset.iter().enumerate().skip(a + 1) {
                g.set_label(a, b, self.label(i, j))?;
            }
        }
        Ok(g)
    }

    /// Full subgraph on named vertices.
    pub fn induced_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<CoxeterGraph> {
        let idx = names
            .iter()
            .map(|s| {
                self.index_of(s.as_ref())
                    .ok_or_else(|| CoxeterError::UnknownVertex(s.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.induced(&idx)
    }

    /// Disjoint union; vertex names are prefixed with `"{k}:"` per factor
    /// when there is more than one factor.
    pub fn disjoint_union(factors: &[CoxeterGraph]) -> CoxeterGraph {
        if factors.len() == 1 {
            return factors[0].clone();
        }
        let names = factors
            .iter()
            .enumerate()
            .flat_map(|(k, f)| f.vertices.iter().map(move |v| format!("{}:{}", k + 1, v)));
        let mut g = CoxeterGraph::new(names).expect("prefixed names are unique");
        let mut offset = 0;
        for f in factors {
            for (i, j, m) in f.edges() {
                g.set_label(offset + i, offset + j, m)
                    .expect("label copied from a valid graph");
            }
            offset += f.rank();
        }
        g
    }

    /// Same graph with vertices permuted: vertex `i` of the result is vertex
    /// `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> CoxeterGraph {
        self.induced(order).expect("permutation of own vertices")
    }
}

/// Blocks of the odd-label graph `Ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl OddPartition {
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&v))
            .expect("partition covers every vertex")
    }
}
