//! The canonical bilinear form: Gram matrices, definiteness and the
//! non-degenerate extension of a Coxeter graph.

use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{CoxeterError, Result};
use crate::field::CycloField;
use crate::graph::{CoxeterGraph, Label};
use crate::matrix::{dot, Matrix};
use crate::scalar::Scalar;

/// Gram matrix of the canonical form in the basis of simple roots.
pub type GramMatrix = Matrix;

/// Field `Q(2cos(π/L))` for the graph's level `L`.
pub fn field_of(g: &CoxeterGraph) -> Arc<CycloField> {
    CycloField::get(g.level())
}

/// `-cos(π/m)` in the given field (whose level must be a multiple of `m`).
pub fn form_entry(field: &Arc<CycloField>, m: Label) -> Scalar {
    match m {
        Label::Infinite => Scalar::from_int_in(field, -1),
        Label::Finite(1) => Scalar::from_int_in(field, 1),
        Label::Finite(2) => Scalar::zero_in(field),
        Label::Finite(m) => {
            let level = field.level();
            assert!(
                level.is_multiple_of(m),
                "label {m} does not divide level {level}"
            );
            let half = Scalar::rational(-1, 2);
            &Scalar::two_cos(field, (level / m) as usize) * &half
        }
    }
}

pub fn gram(g: &CoxeterGraph) -> GramMatrix {
    gram_in(g, &field_of(g))
}

/// Gram matrix with entries in a chosen field containing every entry.
pub fn gram_in(g: &CoxeterGraph, field: &Arc<CycloField>) -> GramMatrix {
    let n = g.rank();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| form_entry(field, g.label(i, j))).collect())
        .collect();
    if n == 0 {
        return Matrix::zeros(field, 0, 0);
    }
    Matrix::from_rows(rows)
}

pub fn determinant(b: &GramMatrix) -> Scalar {
    b.determinant()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    /// Positive semidefinite with a non-trivial radical.
    Semidefinite {
        radical: Vec<Vec<Scalar>>,
    },
    /// `witnessᵀ B witness = value < 0`.
    Indefinite {
        witness: Vec<Scalar>,
        value: Scalar,
    },
}

impl Definiteness {
    pub fn kind(&self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive_definite",
            Definiteness::Semidefinite { .. } => "semidefinite",
            Definiteness::Indefinite { .. } => "indefinite",
        }
    }
}

pub fn quadratic_form(b: &Matrix, x: &[Scalar]) -> Scalar {
    dot(x, &b.mul_vec(x))
}

/// Exact symmetric elimination with symmetric pivoting.
pub fn definiteness(b: &GramMatrix) -> Definiteness {
    let n = b.rows();
    let field = b.field();
    let mut s = b.to_rows();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots: Vec<usize> = Vec::new();
    loop {
        if remaining.is_empty() {
            return Definiteness::PositiveDefinite;
        }
        let diag_sign = |s: &Vec<Vec<Scalar>>, i: usize| s[i][i].signum();
        if let Some(&i) = remaining.iter().find(|&&i| diag_sign(&s, i) < 0) {
            let mut y = vec![Scalar::zero_in(&field); n];
            y[i] = Scalar::from_int_in(&field, 1);
            return indefinite(b, &pivots, y);
        }
        if let Some(pos) = remaining.iter().position(|&i| diag_sign(&s, i) > 0) {
            let p = remaining.remove(pos);
            let inv = s[p][p].inverse().expect("positive pivot");
            for &r in &remaining {
                if s[r][p].is_zero() {
                    continue;
                }
                let f = &s[r][p] * &inv;
                for &c in &remaining {
                    if !s[p][c].is_zero() {
                        let v = &s[r][c] - &(&f * &s[p][c]);
                        s[r][c] = v;
                    }
                }
            }
            pivots.push(p);
            continue;
        }
        // every remaining diagonal entry vanishes
        let off = remaining
            .iter()
            .tuple_combinations()
            .find(|&(&r, &c)| !s[r][c].is_zero());
        if let Some((&r, &c)) = off {
            let mut y = vec![Scalar::zero_in(&field); n];
            y[r] = Scalar::from_int_in(&field, 1);
            y[c] = Scalar::from_int_in(&field, -(s[r][c].signum() as i64));
            return indefinite(b, &pivots, y);
        }
        return Definiteness::Semidefinite {
            radical: b.kernel(),
        };
    }
}

/// Completes `y` (supported off the pivots) so that its value under `b`
/// equals the Schur-complement value, which is negative.
fn indefinite(b: &Matrix, pivots: &[usize], mut y: Vec<Scalar>) -> Definiteness {
    if !pivots.is_empty() {
        let rest: Vec<usize> = (0..b.rows()).filter(|i| !pivots.contains(i)).collect();
        let bpp = b.principal(pivots);
        let rhs: Vec<Scalar> = pivots
            .iter()
            .map(|&p| {
                dot(
                    &rest
                        .iter()
                        .map(|&r| b.get(p, r).clone())
                        .collect::<Vec<_>>(),
                    &rest.iter().map(|&r| y[r].clone()).collect::<Vec<_>>(),
                )
            })
            .collect();
        let z = bpp.solve(&rhs).expect("pivot block is positive definite");
        for (k, &p) in pivots.iter().enumerate() {
            y[p] = -&z[k];
        }
    }
    let value = quadratic_form(b, &y);
    assert!(value.signum() < 0, "indefinite witness must be negative");
    Definiteness::Indefinite { witness: y, value }
}

/// A graph containing the input as a full subgraph, with non-degenerate
/// canonical form.
#[derive(Debug, Clone)]
pub struct Extension {
    pub extended: CoxeterGraph,
    /// Vertex `i` of the input is vertex `base_embedding[i]` of `extended`.
    pub base_embedding: Vec<usize>,
    pub x0: Vec<usize>,
    pub x1: Vec<usize>,
    /// `(s, s̃)`: vertex of `X1` and its new twin in `extended`.
    pub twins: Vec<(usize, usize)>,
    pub det_x0: Scalar,
    pub det_extended: Scalar,
}

impl Extension {
    /// Checks `det B_Γ̃ = (-1)^{|X1|} det B_{X0} ≠ 0`.
    pub fn identity_holds(&self) -> bool {
        let sign = if self.x1.len() % 2 == 1 { -1 } else { 1 };
        !self.det_extended.is_zero() && self.det_extended == &self.det_x0 * sign
    }
}

/// Subset of maximum size with non-zero Gram determinant, first in
/// lexicographic order among those.
pub fn max_nondegenerate_subset(b: &GramMatrix) -> (Vec<usize>, Scalar) {
    let n = b.rows();
    for k in (1..=n).rev() {
        for subset in (0..n).combinations(k) {
            let d = b.principal(&subset).determinant();
            if !d.is_zero() {
                return (subset, d);
            }
        }
    }
    (Vec::new(), Scalar::from_int_in(&b.field(), 1))
}

pub fn nondegenerate_extension(g: &CoxeterGraph) -> Result<Extension> {
    if g.is_empty() {
        return Err(CoxeterError::EmptyGraph);
    }
    let field = field_of(g);
    let b = gram_in(g, &field);
    let (x0, det_x0) = max_nondegenerate_subset(&b);
    extension_with(g, &x0, det_x0)
}

/// Extension for a caller-chosen `X0` (which must have non-zero determinant
/// and maximum size).
pub fn extension_with(g: &CoxeterGraph, x0: &[usize], det_x0: Scalar) -> Result<Extension> {
    let n = g.rank();
    let x1: Vec<usize> = (0..n).filter(|i| !x0.contains(i)).collect();
    let mut names: Vec<String> = g.vertices().to_vec();
    let mut twins = Vec::new();
    for (k, &s) in x1.iter().enumerate() {
        let mut name = format!("{}'", g.name(s));
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name);
        twins.push((s, n + k));
    }
    let mut ext = CoxeterGraph::new(names)?;
    for (i, j, m) in g.edges() {
        ext.set_label(i, j, m)?;
    }
    for &(s, t) in &twins {
        ext.set_label(s, t, Label::Infinite)?;
    }
    let det_extended = gram_in(&ext, &field_of(g)).determinant();
    if det_extended.is_zero() {
        return Err(CoxeterError::Internal(
            "extended form is degenerate; X0 was not of maximum size".into(),
        ));
    }
    Ok(Extension {
        extended: ext,
        base_embedding: (0..n).collect(),
        x0: x0.to_vec(),
        x1,
        twins,
        det_x0,
        det_extended,
    })
}

/// JSON view of a definiteness verdict.
#[derive(Debug, Clone, Serialize)]
pub struct DefinitenessReport {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<Vec<crate::scalar::ScalarJson>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<crate::scalar::ScalarJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<crate::scalar::ScalarJson>,
}

impl From<&Definiteness> for DefinitenessReport {
    fn from(d: &Definiteness) -> Self {
        let vec = |v: &[Scalar]| v.iter().map(Scalar::to_json).collect();
        match d {
            Definiteness::PositiveDefinite => DefinitenessReport {
                verdict: d.kind(),
                radical: None,
                witness: None,
                value: None,
            },
            Definiteness::Semidefinite { radical } => DefinitenessReport {
                verdict: d.kind(),
                radical: Some(radical.iter().map(|v| vec(v)).collect()),
                witness: None,
                value: None,
            },
            Definiteness::Indefinite { witness, value } => DefinitenessReport {
                verdict: d.kind(),
                radical: None,
                witness: Some(vec(witness)),
                value: Some(value.to_json()),
            },
        }
    }
}
