//! Component-wise classification into spherical, affine and indefinite parts.

use serde::Serialize;

use crate::catalog::{identify, CatalogName};
use crate::error::{CoxeterError, Result};
use crate::form::{definiteness, gram, Definiteness};
use crate::graph::CoxeterGraph;
use crate::iso::{canonical_form, CanonicalForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeClass {
    Indefinite,
    Affine,
    Spherical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Vertex indices into the parent graph, sorted.
    pub vertices: Vec<usize>,
    pub name: Option<CatalogName>,
    pub class: TypeClass,
}

impl Component {
    /// Catalog name when known, otherwise the canonical labeled-graph form.
    pub fn descriptor(&self, parent: &CoxeterGraph) -> ComponentDescriptor {
        match self.name {
            Some(name) => ComponentDescriptor::Catalog(name),
            None => ComponentDescriptor::Graph(canonical_form(
                &parent
                    .induced(&self.vertices)
                    .expect("component vertices are valid"),
            )),
        }
    }
}

/// Isomorphism-invariant description of a connected component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum ComponentDescriptor {
    Catalog(CatalogName),
    Graph(CanonicalForm),
}

impl std::fmt::Display for ComponentDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentDescriptor::Catalog(c) => write!(f, "{c}"),
            ComponentDescriptor::Graph(g) => write!(f, "{g}"),
        }
    }
}

/// `S = Z1 ⊔ Z2 ⊔ Z3` (indefinite, affine and spherical parts) with
/// components ordered indefinite, affine, spherical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartsPartition {
    pub z1: Vec<usize>,
    pub z2: Vec<usize>,
    pub z3: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub l: usize,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Components in order of their smallest vertex.
    pub components: Vec<Component>,
    pub parts: PartsPartition,
}

pub fn classify_component(g: &CoxeterGraph, vertices: &[usize]) -> Result<Component> {
    let sub = g.induced(vertices)?;
    let name = identify(&sub);
    let class = match name {
        Some(c) if c.is_spherical() => TypeClass::Spherical,
        Some(_) => TypeClass::Affine,
        None => TypeClass::Indefinite,
    };
    let verdict = definiteness(&gram(&sub));
    let consistent = match (&verdict, class) {
        (Definiteness::PositiveDefinite, TypeClass::Spherical) => true,
        (Definiteness::Semidefinite { radical }, TypeClass::Affine) => radical.len() == 1,
        (Definiteness::Indefinite { .. }, TypeClass::Indefinite) => true,
        _ => false,
    };
    if !consistent {
        return Err(CoxeterError::Internal(format!(
            "catalog says {class:?} but the form is {}",
            verdict.kind()
        )));
    }
    Ok(Component {
        vertices: vertices.to_vec(),
        name,
        class,
    })
}

pub fn classify(g: &CoxeterGraph) -> Result<Classification> {
    let components = g
        .connected_components()
        .iter()
        .map(|c| classify_component(g, c))
        .collect::<Result<Vec<_>>>()?;
    let parts = parts_of(&components);
    Ok(Classification { components, parts })
}

fn parts_of(components: &[Component]) -> PartsPartition {
    let mut ordered = components.to_vec();
    ordered.sort_by_key(|c| (c.class, c.vertices[0]));
    let collect = |class| -> Vec<usize> {
        let mut v: Vec<usize> = ordered
            .iter()
            .filter(|c| c.class == class)
            .flat_map(|c| c.vertices.iter().copied())
            .collect();
        v.sort_unstable();
        v
    };
    let a = ordered
        .iter()
        .filter(|c| c.class == TypeClass::Indefinite)
        .count();
    let b = a + ordered
        .iter()
        .filter(|c| c.class == TypeClass::Affine)
        .count();
    PartsPartition {
        z1: collect(TypeClass::Indefinite),
        z2: collect(TypeClass::Affine),
        z3: collect(TypeClass::Spherical),
        a,
        b,
        l: ordered.len(),
        components: ordered,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_spec;

    fn parts(s: &str) -> PartsPartition {
        classify(&parse_spec(s).unwrap()).unwrap().parts
    }

    #[test]
    fn single_components() {
        let h3 = parts("H3");
        assert_eq!((h3.a, h3.b, h3.l), (0, 0, 1));
        assert_eq!(h3.z3.len(), 3);
        let a1t = parts("~A1");
        assert_eq!((a1t.a, a1t.b, a1t.l), (0, 1, 1));
        assert_eq!(a1t.z2, vec![0, 1]);
    }

    #[test]
    fn mixed_product() {
        let p = parts("(3,3,7) x ~A2 x B3");
        assert_eq!((p.a, p.b, p.l), (1, 2, 3));
        assert_eq!((p.z1.len(), p.z2.len(), p.z3.len()), (3, 3, 3));
        assert_eq!(p.components[0].class, TypeClass::Indefinite);
        assert_eq!(p.components[0].name, None);
    }

    #[test]
    fn order_is_indefinite_affine_spherical() {
        let p = parts("H3 x ~A2 x (3,3,7) x B3");
        let classes: Vec<_> = p.components.iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            vec![
                TypeClass::Indefinite,
                TypeClass::Affine,
                TypeClass::Spherical,
                TypeClass::Spherical
            ]
        );
        assert_eq!((p.a, p.b, p.l), (1, 2, 4));
    }

    #[test]
    fn hyperbolic_square() {
        // ~A3 with one label raised is no longer affine
        let p = parts("vertices: a b c d; edge: a b 3; edge: b c 3; edge: c d 3; edge: d a 4");
        assert_eq!(p.a, 1);
    }
}
