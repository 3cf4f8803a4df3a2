//! The canonical representation, roots, words and lengths.
//!
//! Words are products read left to right, `[a, b, c] = s_a s_b s_c`, and act
//! on vectors with the rightmost letter first.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::classify::{classify, TypeClass};
use crate::error::{CoxeterError, Result};
use crate::field::CycloField;
use crate::form::{field_of, gram_in, GramMatrix};
use crate::graph::CoxeterGraph;
use crate::matrix::{dot, Matrix};
use crate::scalar::{Scalar, ScalarJson};

/// A vector of `V` in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<Scalar>);

impl RootVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn to_json(&self) -> Vec<ScalarJson> {
        self.0.iter().map(Scalar::to_json).collect()
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootSign {
    Positive,
    Negative,
}

/// A sequence of generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn pow(&self, p: usize) -> Word {
        Word(self.0.repeat(p))
    }

    /// Parses whitespace- or comma-separated letters: vertex names, 1-based
    /// positions, or the positional aliases `s t u v`.
    pub fn parse(text: &str, g: &CoxeterGraph) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',' || c == '*') {
            if tok.is_empty() {
                continue;
            }
            let idx = if let Some(i) = g.index_of(tok) {
                i
            } else if let Ok(k) = tok.parse::<usize>() {
                if k == 0 || k > g.rank() {
                    return Err(CoxeterError::UnknownVertex(tok.to_string()));
                }
                k - 1
            } else if let Some(k) = ["s", "t", "u", "v"].iter().position(|a| *a == tok) {
                if k >= g.rank() {
                    return Err(CoxeterError::UnknownVertex(tok.to_string()));
                }
                k
            } else {
                return Err(CoxeterError::UnknownVertex(tok.to_string()));
            };
            letters.push(idx);
        }
        Ok(Word(letters))
    }

    pub fn names(&self, g: &CoxeterGraph) -> Vec<String> {
        self.0.iter().map(|&i| g.name(i).to_string()).collect()
    }

    pub fn display(&self, g: &CoxeterGraph) -> String {
        if self.is_empty() {
            "1".to_string()
        } else {
            self.names(g).join(" ")
        }
    }

    /// Set of generators appearing in the word.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// An element of `W` as a matrix acting on simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub word: Option<Word>,
}

/// Positive roots found by breadth-first closure.
#[derive(Debug, Clone)]
pub struct RootEnumeration {
    pub roots: Vec<RootVector>,
    /// BFS level of each root (simple roots have depth 1).
    pub depths: Vec<usize>,
    pub complete: bool,
}

/// `w₀` and the diagram automorphism `θ(s) = w₀ s w₀`.
#[derive(Debug, Clone)]
pub struct LongestElement {
    pub word: Word,
    pub theta: Vec<usize>,
}

/// A Coxeter system with its canonical representation.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    graph: CoxeterGraph,
    field: Arc<CycloField>,
    gram: GramMatrix,
    /// `twice[s][t] = 2⟨α_s, α_t⟩`
    twice: Vec<Vec<Scalar>>,
}

impl CoxeterSystem {
    pub fn new(graph: &CoxeterGraph) -> CoxeterSystem {
        CoxeterSystem::with_field(graph, &field_of(graph))
    }

    pub fn with_field(graph: &CoxeterGraph, field: &Arc<CycloField>) -> CoxeterSystem {
        let gram = gram_in(graph, field);
        let twice = (0..graph.rank())
            .map(|s| gram.row(s).iter().map(|x| x * 2).collect())
            .collect();
        CoxeterSystem {
            graph: graph.clone(),
            field: field.clone(),
            gram,
            twice,
        }
    }

    pub fn graph(&self) -> &CoxeterGraph {
        &self.graph
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero_in(&self.field)
    }

    pub fn simple_root(&self, s: usize) -> RootVector {
        let mut v = vec![self.zero(); self.rank()];
        v[s] = Scalar::from_int_in(&self.field, 1);
        RootVector(v)
    }

    pub fn check_dim(&self, x: &RootVector) -> Result<()> {
        if x.dim() != self.rank() {
            return Err(CoxeterError::ContextMismatch {
                expected: self.rank(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|&&s| s >= self.rank()) {
            Some(&s) => Err(CoxeterError::UnknownVertex(format!("#{}", s + 1))),
            None => Ok(()),
        }
    }

    pub fn pairing(&self, x: &RootVector, y: &RootVector) -> Scalar {
        dot(&x.0, &self.gram.mul_vec(&y.0))
    }

    /// `s(x) = x - 2⟨x, α_s⟩ α_s`; only coordinate `s` changes.
    pub fn reflect(&self, s: usize, x: &RootVector) -> RootVector {
        let mut out = x.clone();
        let c = dot(&self.twice[s], &x.0);
        if !c.is_zero() {
            out.0[s] = &out.0[s] - &c;
        }
        out
    }

    pub fn apply_word(&self, w: &Word, x: &RootVector) -> Result<RootVector> {
        self.check_dim(x)?;
        self.check_word(w)?;
        Ok(w.0
            .iter()
            .rev()
            .fold(x.clone(), |acc, &s| self.reflect(s, &acc)))
    }

    pub fn root_sign(&self, x: &RootVector) -> Result<RootSign> {
        let mut pos = false;
        let mut neg = false;
        for c in &x.0 {
            match c.signum() {
                1 => pos = true,
                -1 => neg = true,
                _ => {}
            }
        }
        match (pos, neg) {
            (true, false) => Ok(RootSign::Positive),
            (false, true) => Ok(RootSign::Negative),
            _ => Err(CoxeterError::MixedSignRoot),
        }
    }

    fn is_negative(&self, x: &RootVector) -> bool {
        // roots are never mixed, so the first non-zero coordinate decides
        x.0.iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.signum() < 0)
    }

    pub fn generator_matrix(&self, s: usize) -> Matrix {
        let n = self.rank();
        let mut m = Matrix::identity(&self.field, n);
        for t in 0..n {
            let v = if t == s {
                Scalar::from_int_in(&self.field, -1)
            } else {
                -&self.twice[s][t]
            };
            m.set(s, t, v);
        }
        m
    }

    pub fn element(&self, w: &Word) -> Result<GroupElement> {
        self.check_word(w)?;
        let mut m = Matrix::identity(&self.field, self.rank());
        for &s in &w.0 {
            m = self.right_multiply(&m, s);
        }
        Ok(GroupElement {
            matrix: m,
            word: Some(w.clone()),
        })
    }

    /// `M · S_s` computed column-wise.
    fn right_multiply(&self, m: &Matrix, s: usize) -> Matrix {
        let n = self.rank();
        let mut out = m.clone();
        let col_s = m.column(s);
        for t in 0..n {
            if t == s {
                for i in 0..n {
                    out.set(i, s, -&col_s[i]);
                }
            } else if !self.twice[s][t].is_zero() {
                for i in 0..n {
                    if !col_s[i].is_zero() {
                        let v = m.get(i, t) - &(&col_s[i] * &self.twice[s][t]);
                        out.set(i, t, v);
                    }
                }
            }
        }
        out
    }

    /// Positive roots sent to negative roots by `w`.
    pub fn inversion_set(&self, w: &Word) -> Result<Vec<RootVector>> {
        self.check_word(w)?;
        let mut inv: Vec<RootVector> = Vec::new();
        for &s in &w.0 {
            let alpha = self.simple_root(s);
            let had = inv.iter().position(|b| *b == alpha);
            if let Some(p) = had {
                inv.remove(p);
            }
            inv = inv.iter().map(|b| self.reflect(s, b)).collect();
            if had.is_none() {
                inv.push(alpha);
            }
        }
        Ok(inv)
    }

    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.inversion_set(w)?.len())
    }

    /// A reduced word for the same element: each incoming letter either
    /// extends the reduced prefix or cancels one of its letters.
    pub fn reduce(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        let mut out: Vec<usize> = Vec::new();
        for &s in &w.0 {
            let mut v = self.simple_root(s);
            let mut deleted = false;
            for j in (0..out.len()).rev() {
                let next = self.reflect(out[j], &v);
                if self.is_negative(&next) {
                    out.remove(j);
                    deleted = true;
                    break;
                }
                v = next;
            }
            if !deleted {
                out.push(s);
            }
        }
        Ok(Word(out))
    }

    /// `r_β(x) = x - 2⟨x, β⟩ β`, as a matrix.
    pub fn reflection(&self, beta: &RootVector) -> Result<GroupElement> {
        self.check_dim(beta)?;
        let norm = self.pairing(beta, beta);
        if !norm.is_one() {
            return Err(CoxeterError::NotUnitRoot(norm.to_string()));
        }
        let n = self.rank();
        let b_beta = self.gram.mul_vec(&beta.0);
        let mut m = Matrix::identity(&self.field, n);
        for i in 0..n {
            if beta.0[i].is_zero() {
                continue;
            }
            let two_bi = &beta.0[i] * 2;
            for j in 0..n {
                if !b_beta[j].is_zero() {
                    let v = m.get(i, j) - &(&two_bi * &b_beta[j]);
                    m.set(i, j, v);
                }
            }
        }
        Ok(GroupElement {
            matrix: m,
            word: None,
        })
    }

    pub fn positive_roots(&self, depth_cap: usize) -> RootEnumeration {
        let n = self.rank();
        let mut roots: Vec<RootVector> = (0..n).map(|s| self.simple_root(s)).collect();
        let mut depths = vec![1; n];
        let mut index: HashMap<RootVector, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let mut queue: VecDeque<usize> = (0..n).collect();
        let mut complete = true;
        while let Some(i) = queue.pop_front() {
            let d = depths[i];
            for s in 0..n {
                if roots[i] == self.simple_root(s) {
                    continue;
                }
                let r = self.reflect(s, &roots[i]);
                if index.contains_key(&r) {
                    continue;
                }
                if d >= depth_cap {
                    complete = false;
                    continue;
                }
                index.insert(r.clone(), roots.len());
                roots.push(r);
                depths.push(d + 1);
                queue.push_back(roots.len() - 1);
            }
        }
        RootEnumeration {
            roots,
            depths,
            complete,
        }
    }

    /// `s_n … s_2 s_1` for the ordering `(s_1, …, s_n)` (default: vertex order).
    pub fn coxeter_element(&self, ordering: Option<&[usize]>) -> Result<Word> {
        let n = self.rank();
        let order: Vec<usize> = match ordering {
            None => (0..n).collect(),
            Some(o) => {
                let mut sorted = o.to_vec();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() {
                    return Err(CoxeterError::InvalidOrdering);
                }
                o.to_vec()
            }
        };
        Ok(Word(order.into_iter().rev().collect()))
    }

    pub fn is_spherical(&self) -> Result<bool> {
        Ok(classify(&self.graph)?
            .components
            .iter()
            .all(|c| c.class == TypeClass::Spherical))
    }

    /// Greedy `w₀`: append the smallest generator that increases the length
    /// until none does.
    pub fn longest_element(&self) -> Result<LongestElement> {
        if !self.is_spherical()? {
            return Err(CoxeterError::NotSpherical);
        }
        let n = self.rank();
        let mut m = Matrix::identity(&self.field, n);
        let mut word = Vec::new();
        loop {
            // column s of M is w(α_s); appending s is longer iff it is positive
            let next = (0..n).find(|&s| !self.is_negative(&RootVector(m.column(s))));
            match next {
                Some(s) => {
                    word.push(s);
                    m = self.right_multiply(&m, s);
                }
                None => break,
            }
        }
        let mut theta = vec![usize::MAX; n];
        for s in 0..n {
            let image = RootVector(m.column(s)).neg();
            let t = (0..n)
                .find(|&t| image == self.simple_root(t))
                .ok_or_else(|| CoxeterError::Internal("w0 does not permute -Π".into()))?;
            theta[s] = t;
        }
        if !(&m * &m).is_identity() || (0..n).any(|s| theta[theta[s]] != s) {
            return Err(CoxeterError::Internal("w0 is not an involution".into()));
        }
        Ok(LongestElement {
            word: Word(word),
            theta,
        })
    }

    /// Basis of the fixed space `ker(M - I)`.
    pub fn fixed_space(&self, el: &GroupElement) -> Vec<Vec<Scalar>> {
        let id = Matrix::identity(&self.field, self.rank());
        el.matrix.sub(&id).kernel()
    }

    /// Parses a root given as comma-separated coordinates; each coordinate
    /// is a rational or a `θ`-polynomial `c0 + c1·θ + …` written as
    /// `poly:c0 c1 …`.
    pub fn parse_root(&self, text: &str) -> Result<RootVector> {
        let coords = text
            .split(',')
            .map(|tok| parse_coordinate(tok.trim(), &self.field))
            .collect::<Result<Vec<_>>>()?;
        let v = RootVector(coords);
        self.check_dim(&v)?;
        Ok(v)
    }
}

fn parse_coordinate(tok: &str, field: &Arc<CycloField>) -> Result<Scalar> {
    if let Some(poly) = tok.strip_prefix("poly:") {
        let coeffs = poly
            .split_whitespace()
            .map(crate::scalar::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        return Ok(Scalar::from_theta_poly(field, &coeffs));
    }
    let q = crate::scalar::parse_rational(tok)?;
    Ok(Scalar::from_ratio_in(field, &q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_spec;

    fn sys(s: &str) -> CoxeterSystem {
        CoxeterSystem::new(&parse_spec(s).unwrap())
    }

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    #[test]
    fn apply_word_examples() {
        let a2 = sys("A2");
        let a = a2.simple_root(0);
        assert_eq!(a2.apply_word(&Word::identity(), &a).unwrap(), a);
        assert_eq!(a2.apply_word(&Word(vec![0]), &a).unwrap(), a.neg());
        let a1t = sys("~A1");
        let img = a1t.apply_word(&Word(vec![1]), &a1t.simple_root(0)).unwrap();
        assert_eq!(img, RootVector(vec![q(1), q(2)]));
        let bad = RootVector(vec![q(1)]);
        assert!(matches!(
            a1t.apply_word(&Word(vec![0]), &bad),
            Err(CoxeterError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn signs() {
        let a1t = sys("~A1");
        assert_eq!(
            a1t.root_sign(&a1t.simple_root(0)).unwrap(),
            RootSign::Positive
        );
        assert_eq!(
            a1t.root_sign(&a1t.simple_root(0).neg()).unwrap(),
            RootSign::Negative
        );
        let st = a1t
            .apply_word(&Word(vec![0, 1]), &a1t.simple_root(0))
            .unwrap();
        assert_eq!(st, RootVector(vec![q(3), q(2)]));
        assert_eq!(a1t.root_sign(&st).unwrap(), RootSign::Positive);
        assert!(a1t.root_sign(&RootVector(vec![q(1), q(-1)])).is_err());
    }

    #[test]
    fn lengths_and_reduction() {
        let a2 = sys("A2");
        assert_eq!(a2.length(&Word::identity()).unwrap(), 0);
        assert_eq!(a2.length(&Word(vec![0, 1, 0])).unwrap(), 3);
        assert_eq!(a2.length(&Word(vec![0, 0])).unwrap(), 0);
        assert_eq!(a2.reduce(&Word(vec![0, 0])).unwrap(), Word::identity());
        assert_eq!(
            a2.reduce(&Word(vec![0, 1, 0, 1, 0, 1])).unwrap(),
            Word::identity()
        );
        let b2 = sys("B2");
        let w = Word(vec![0, 1, 0, 1]);
        assert_eq!(b2.reduce(&w).unwrap(), w);
        assert_eq!(b2.length(&w).unwrap(), 4);
    }

    #[test]
    fn reflections() {
        let a2 = sys("A2");
        let r = a2.reflection(&a2.simple_root(0)).unwrap();
        assert_eq!(r.matrix, a2.generator_matrix(0));
        let beta = a2.reflect(0, &a2.simple_root(1));
        let rb = a2.reflection(&beta).unwrap();
        assert!((&rb.matrix * &rb.matrix).is_identity());
        assert_eq!(rb.matrix, a2.element(&Word(vec![0, 1, 0])).unwrap().matrix);
        assert!(a2.reflection(&RootVector(vec![q(1), q(1),])).is_ok());
        assert!(a2.reflection(&RootVector(vec![q(2), q(0)])).is_err());
    }

    #[test]
    fn root_counts() {
        let a2 = sys("A2").positive_roots(10);
        assert_eq!(a2.roots.len(), 3);
        assert!(a2.complete);
        let e7 = sys("E7").positive_roots(64);
        assert_eq!(e7.roots.len(), 63);
        assert!(e7.complete);
        let a1t = sys("~A1").positive_roots(5);
        assert!(!a1t.complete);
        assert_eq!(a1t.roots.len(), 10);
    }

    #[test]
    fn coxeter_elements() {
        let a2 = sys("A2");
        assert_eq!(a2.coxeter_element(None).unwrap(), Word(vec![1, 0]));
        assert_eq!(sys("A1").coxeter_element(None).unwrap(), Word(vec![0]));
        assert!(a2.coxeter_element(Some(&[0, 0])).is_err());
    }

    #[test]
    fn longest_elements() {
        let a2 = sys("A2").longest_element().unwrap();
        assert_eq!(a2.word.len(), 3);
        assert_eq!(a2.theta, vec![1, 0]);
        let b3 = sys("B3").longest_element().unwrap();
        assert_eq!(b3.word.len(), 9);
        assert_eq!(b3.theta, vec![0, 1, 2]);
        let h3 = sys("H3").longest_element().unwrap();
        assert_eq!(h3.word.len(), 15);
        assert_eq!(h3.theta, vec![0, 1, 2]);
        assert!(matches!(
            sys("~A1").longest_element(),
            Err(CoxeterError::NotSpherical)
        ));
    }

    #[test]
    fn fixed_spaces() {
        let a2 = sys("A2");
        let id = a2.element(&Word::identity()).unwrap();
        assert_eq!(a2.fixed_space(&id).len(), 2);
        let a1 = sys("A1");
        assert!(a1
            .fixed_space(&a1.element(&Word(vec![0])).unwrap())
            .is_empty());
        let c = a2.element(&a2.coxeter_element(None).unwrap()).unwrap();
        assert!(a2.fixed_space(&c).is_empty());
    }

    #[test]
    fn word_parsing() {
        let g = parse_spec("~A1").unwrap();
        assert_eq!(Word::parse("s t", &g).unwrap(), Word(vec![0, 1]));
        assert_eq!(Word::parse("s0 s1 s0", &g).unwrap(), Word(vec![0, 1, 0]));
        assert_eq!(Word::parse("2,1", &g).unwrap(), Word(vec![1, 0]));
        assert!(Word::parse("u", &g).is_err());
        assert!(Word::parse("s7", &g).is_err());
    }

    #[test]
    fn root_parsing() {
        let h3 = sys("H3");
        let r = h3.parse_root("1, 1/2, poly:0 1").unwrap();
        assert_eq!(r.0[1], Scalar::rational(1, 2));
        assert_eq!(r.0[2], Scalar::theta(h3.field()));
        assert!(h3.parse_root("1,2").is_err());
    }
}
