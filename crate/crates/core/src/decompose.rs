//! Direct-product invariants: standard decomposition, Remak signature,
//! affine dimension and the virtual (commensurability) signature.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::catalog::{CatalogName, Family};
use crate::classify::{classify, ComponentDescriptor, PartsPartition, TypeClass};
use crate::error::{CoxeterError, Result};
use crate::graph::CoxeterGraph;
use crate::roots::CoxeterSystem;

pub fn standard_decomposition(g: &CoxeterGraph) -> Result<PartsPartition> {
    Ok(classify(g)?.parts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientKind {
    /// `W(I2(p))/Z ≅ W(I2(p/2))`; the parameter is `p/2`.
    DihedralHalf(u32),
    /// `W(B_n)/Z ≅ W(D_n)`.
    DnType(u32),
    Alt5,
    So72,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorDescriptor {
    C2,
    Coxeter(CatalogName),
    Quotient(QuotientKind),
}

impl FactorDescriptor {
    /// One representative per isomorphism class of group: quotients that
    /// are Coxeter groups become their catalog names and `W(A1)` becomes `C2`.
    pub fn canonical(self) -> FactorDescriptor {
        let coxeter = |f, p| {
            FactorDescriptor::Coxeter(CatalogName::new(f, p).expect("valid quotient type"))
                .canonical()
        };
        match self {
            FactorDescriptor::Quotient(QuotientKind::DihedralHalf(q)) => coxeter(Family::I2, q),
            FactorDescriptor::Quotient(QuotientKind::DnType(n)) => coxeter(Family::D, n),
            FactorDescriptor::Coxeter(c) if c == CatalogName::new(Family::A, 1).expect("A1") => {
                FactorDescriptor::C2
            }
            other => other,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            FactorDescriptor::C2 => "c2",
            FactorDescriptor::Coxeter(_) => "coxeter",
            FactorDescriptor::Quotient(_) => "quotient",
        }
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorDescriptor::C2 => write!(f, "C2"),
            FactorDescriptor::Coxeter(c) => write!(f, "W({c})"),
            FactorDescriptor::Quotient(QuotientKind::DihedralHalf(q)) => write!(f, "W(I2({q}))"),
            FactorDescriptor::Quotient(QuotientKind::DnType(n)) => write!(f, "W(D{n})"),
            FactorDescriptor::Quotient(QuotientKind::Alt5) => write!(f, "Alt5"),
            FactorDescriptor::Quotient(QuotientKind::So72) => write!(f, "SO7(2)"),
        }
    }
}

impl Serialize for FactorDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FactorDescriptor", 2)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("name", &self.to_string())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiniteRemak {
    Indecomposable,
    Decomposable {
        center: FactorDescriptor,
        quotient: FactorDescriptor,
    },
}

/// Decomposability of an irreducible finite Coxeter group, by table.
pub fn finite_irreducible_remak(t: CatalogName) -> Result<FiniteRemak> {
    if !t.is_spherical() {
        return Err(CoxeterError::NotSpherical);
    }
    let split = |q| {
        Ok(FiniteRemak::Decomposable {
            center: FactorDescriptor::C2,
            quotient: FactorDescriptor::Quotient(q),
        })
    };
    match (t.family(), t.param()) {
        (Family::G, 2) => split(QuotientKind::DihedralHalf(3)),
        (Family::I2, p) if p % 4 == 2 => split(QuotientKind::DihedralHalf(p / 2)),
        (Family::B, n) if n >= 3 && n % 2 == 1 => split(QuotientKind::DnType(n)),
        (Family::H, 3) => split(QuotientKind::Alt5),
        (Family::E, 7) => split(QuotientKind::So72),
        _ => Ok(FiniteRemak::Indecomposable),
    }
}

/// Runtime form of the decomposability criterion for a connected spherical
/// graph with more than one vertex: `w₀` is central (`θ = Id`) and the sign
/// character of some odd-label block takes the value `-1` on `w₀`.
pub fn decomposability_predicate(g: &CoxeterGraph) -> Result<bool> {
    if !g.is_connected() {
        return Err(CoxeterError::NotConnected);
    }
    if g.rank() <= 1 {
        return Ok(false);
    }
    let sys = CoxeterSystem::new(g);
    let w0 = sys.longest_element()?;
    let central = w0.theta.iter().enumerate().all(|(s, &t)| s == t);
    if !central {
        return Ok(false);
    }
    let blocks = g.odd_components();
    let mut counts = vec![0usize; blocks.blocks.len()];
    for &s in w0.word.letters() {
        counts[blocks.block_of(s)] += 1;
    }
    Ok(counts.iter().any(|c| c % 2 == 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemakSignature {
    pub infinite: Vec<ComponentDescriptor>,
    pub finite: Vec<FactorDescriptor>,
    pub m: usize,
}

impl RemakSignature {
    pub fn b(&self) -> usize {
        self.infinite.len()
    }

    pub fn q(&self) -> usize {
        self.finite.len()
    }

    /// Finite factors up to group isomorphism, sorted.
    pub fn canonical_finite(&self) -> Vec<FactorDescriptor> {
        let mut v: Vec<_> = self.finite.iter().map(|f| f.canonical()).collect();
        v.sort();
        v
    }
}

pub fn remak_signature(g: &CoxeterGraph) -> Result<RemakSignature> {
    let parts = standard_decomposition(g)?;
    let mut infinite = Vec::new();
    let mut finite = Vec::new();
    for c in &parts.components {
        if c.class != TypeClass::Spherical {
            infinite.push(c.descriptor(g));
            continue;
        }
        let name = c.name.ok_or_else(|| {
            CoxeterError::Internal("spherical component missing from the catalog".into())
        })?;
        if c.vertices.len() == 1 {
            finite.push(FactorDescriptor::C2);
            continue;
        }
        let verdict = finite_irreducible_remak(name)?;
        let predicate = decomposability_predicate(&g.induced(&c.vertices)?)?;
        if predicate != matches!(verdict, FiniteRemak::Decomposable { .. }) {
            return Err(CoxeterError::Internal(format!(
                "decomposability table and w0 criterion disagree on {name}"
            )));
        }
        match verdict {
            FiniteRemak::Indecomposable => finite.push(FactorDescriptor::Coxeter(name)),
            FiniteRemak::Decomposable { center, quotient } => {
                finite.push(center);
                finite.push(quotient);
            }
        }
    }
    infinite.sort();
    finite.sort();
    let m = infinite.len() + finite.len();
    Ok(RemakSignature {
        infinite,
        finite,
        m,
    })
}

/// `d`: sum over affine components of (number of vertices - 1).
pub fn affine_dimension(g: &CoxeterGraph) -> Result<usize> {
    let parts = standard_decomposition(g)?;
    Ok(parts
        .components
        .iter()
        .filter(|c| c.class == TypeClass::Affine)
        .map(|c| c.vertices.len() - 1)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VirtualSignature {
    pub indefinite: Vec<ComponentDescriptor>,
    pub d: usize,
    pub m: usize,
}

pub fn virtual_signature(g: &CoxeterGraph) -> Result<VirtualSignature> {
    let parts = standard_decomposition(g)?;
    let mut indefinite: Vec<_> = parts
        .components
        .iter()
        .filter(|c| c.class == TypeClass::Indefinite)
        .map(|c| c.descriptor(g))
        .collect();
    indefinite.sort();
    let d = parts
        .components
        .iter()
        .filter(|c| c.class == TypeClass::Affine)
        .map(|c| c.vertices.len() - 1)
        .sum();
    let m = indefinite.len() + d;
    Ok(VirtualSignature { indefinite, d, m })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommVerdict {
    Commensurable,
    NotCommensurable,
    Unknown,
}

/// Removes common elements of two sorted multisets, returning the leftovers.
fn multiset_difference<T: Ord + Clone>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    let (mut i, mut j) = (0, 0);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                left.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                right.push(b[j].clone());
                j += 1;
            }
        }
    }
    left.extend_from_slice(&a[i..]);
    right.extend_from_slice(&b[j..]);
    (left, right)
}

fn has_infinite_label(d: &ComponentDescriptor) -> bool {
    match d {
        ComponentDescriptor::Catalog(c) => c.graph().has_infinite_label(),
        ComponentDescriptor::Graph(g) => g.to_graph().has_infinite_label(),
    }
}

pub fn compare_iso(g1: &CoxeterGraph, g2: &CoxeterGraph) -> Result<IsoVerdict> {
    let r1 = remak_signature(g1)?;
    let r2 = remak_signature(g2)?;
    if r1.b() != r2.b() || r1.canonical_finite() != r2.canonical_finite() {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let (left, right) = multiset_difference(&r1.infinite, &r2.infinite);
    if left.is_empty() {
        return Ok(IsoVerdict::Isomorphic);
    }
    if left.iter().chain(&right).all(|d| !has_infinite_label(d)) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    Ok(IsoVerdict::Unknown)
}

pub fn compare_commensurable(g1: &CoxeterGraph, g2: &CoxeterGraph) -> Result<CommVerdict> {
    let v1 = virtual_signature(g1)?;
    let v2 = virtual_signature(g2)?;
    if v1.indefinite.len() != v2.indefinite.len() || v1.d != v2.d {
        return Ok(CommVerdict::NotCommensurable);
    }
    if v1.indefinite == v2.indefinite {
        return Ok(CommVerdict::Commensurable);
    }
    Ok(CommVerdict::Unknown)
}
