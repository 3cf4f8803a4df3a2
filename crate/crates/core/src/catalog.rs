//! The spherical and affine catalogs of connected Coxeter graphs.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoxeterError, Result};
use crate::graph::{CoxeterGraph, Label};
use crate::iso::find_isomorphism;
use crate::parse::parse_explicit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    G,
    H,
    I2,
    AffineA,
    AffineB,
    AffineC,
    AffineD,
    AffineE,
    AffineF,
    AffineG,
}

impl Family {
    pub fn is_affine(self) -> bool {
        self >= Family::AffineA
    }

    fn letter(self) -> char {
        match self {
            Family::A | Family::AffineA => 'A',
            Family::B | Family::AffineB => 'B',
            Family::AffineC => 'C',
            Family::D | Family::AffineD => 'D',
            Family::E | Family::AffineE => 'E',
            Family::F | Family::AffineF => 'F',
            Family::G | Family::AffineG => 'G',
            Family::H => 'H',
            Family::I2 => 'I',
        }
    }
}

/// A member of the spherical or affine catalog, with aliases normalized
/// (`I2(3) = A2`, `I2(4) = B2`, `I2(6) = G2`, `D3 = A3`, `C_n = B_n`,
/// `~C2 = ~B2`). The parameter is the rank `n` (for affine families the
/// graph has `n + 1` vertices) or the dihedral label `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalogName {
    family: Family,
    param: u32,
}

impl CatalogName {
    pub fn new(family: Family, param: u32) -> Result<CatalogName> {
        use Family::*;
        let ok = |family, param| Ok(CatalogName { family, param });
        let bad = || {
            let name = CatalogName { family, param };
            Err(CoxeterError::UnknownCatalog(name.to_string()))
        };
        match (family, param) {
            (A, n) if n >= 1 => ok(A, n),
            (B, 1) => ok(A, 1),
            (B, n) if n >= 2 => ok(B, n),
            (D, 3) => ok(A, 3),
            (D, n) if n >= 4 => ok(D, n),
            (E, 6..=8) => ok(E, param),
            (F, 4) => ok(F, 4),
            (G, 2) => ok(G, 2),
            (H, 3 | 4) => ok(H, param),
            (I2, 3) => ok(A, 2),
            (I2, 4) => ok(B, 2),
            (I2, 6) => ok(G, 2),
            (I2, p) if p >= 5 => ok(I2, p),
            (AffineA, n) if n >= 1 => ok(AffineA, n),
            (AffineB, n) if n >= 2 => ok(AffineB, n),
            (AffineC, 2) => ok(AffineB, 2),
            (AffineC, n) if n >= 3 => ok(AffineC, n),
            (AffineD, n) if n >= 4 => ok(AffineD, n),
            (AffineE, 6..=8) => ok(AffineE, param),
            (AffineF, 4) => ok(AffineF, 4),
            (AffineG, 2) => ok(AffineG, 2),
            _ => bad(),
        }
    }

    /// `I2(p)` normalized (`p >= 3`).
    pub fn dihedral(p: u32) -> Result<CatalogName> {
        CatalogName::new(Family::I2, p)
    }

    /// Parses `A3`, `~D5`, `I2(7)`, `C4` (= `B4`), ...
    pub fn parse(text: &str) -> Result<CatalogName> {
        let unknown = || CoxeterError::UnknownCatalog(text.to_string());
        let s = text.trim();
        let (affine, rest) = match s.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, s),
        };
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(unknown)?;
        let tail = chars.as_str();
        if letter == 'I' && !affine {
            let p = tail
                .strip_prefix("2(")
                .and_then(|t| t.strip_suffix(')'))
                .and_then(|t| t.trim().parse::<u32>().ok())
                .ok_or_else(unknown)?;
            return CatalogName::dihedral(p).map_err(|_| unknown());
        }
        let n: u32 = tail.parse().map_err(|_| unknown())?;
        let family = match (letter, affine) {
            ('A', false) => Family::A,
            ('B' | 'C', false) => Family::B,
            ('D', false) => Family::D,
            ('E', false) => Family::E,
            ('F', false) => Family::F,
            ('G', false) => Family::G,
            ('H', false) => Family::H,
            ('A', true) => Family::AffineA,
            ('B', true) => Family::AffineB,
            ('C', true) => Family::AffineC,
            ('D', true) => Family::AffineD,
            ('E', true) => Family::AffineE,
            ('F', true) => Family::AffineF,
            ('G', true) => Family::AffineG,
            _ => return Err(unknown()),
        };
        CatalogName::new(family, n).map_err(|_| unknown())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> u32 {
        self.param
    }

    pub fn is_affine(&self) -> bool {
        self.family.is_affine()
    }

    pub fn is_spherical(&self) -> bool {
        !self.is_affine()
    }

    /// Number of vertices of the graph.
    pub fn vertex_count(&self) -> usize {
        match self.family {
            Family::I2 => 2,
            f if f.is_affine() => self.param as usize + 1,
            _ => self.param as usize,
        }
    }

    /// The catalog graph on `s1 … sn` (spherical) or `s0 … sn` (affine).
    pub fn graph(&self) -> CoxeterGraph {
        use Family::*;
        let n = self.param as usize;
        let three = Label::Finite(3);
        let four = Label::Finite(4);
        let path = |len: usize| -> Vec<(usize, usize, Label)> {
            (0..len.saturating_sub(1))
                .map(|i| (i, i + 1, three))
                .collect()
        };
        match self.family {
            A => CoxeterGraph::from_edges(n, &path(n)),
            B => {
                let mut e = path(n);
                e[n - 2].2 = four;
                CoxeterGraph::from_edges(n, &e)
            }
            D => {
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, three));
                CoxeterGraph::from_edges(n, &e)
            }
            I2 => CoxeterGraph::from_edges(2, &[(0, 1, Label::Finite(self.param))]),
            AffineA if n == 1 => affine(2, &[(0, 1, Label::Infinite)]),
            AffineA => {
                let mut e = path(n + 1);
                e.push((n, 0, three));
                affine(n + 1, &e)
            }
            AffineB if n == 2 => affine(3, &[(0, 1, four), (1, 2, four)]),
            AffineB => {
                // B_n on s1..sn plus s0 attached to s2
                let mut e: Vec<_> = path(n)
                    .into_iter()
                    .map(|(i, j, m)| (i + 1, j + 1, m))
                    .collect();
                e[n - 2].2 = four;
                e.push((0, 2, three));
                affine(n + 1, &e)
            }
            AffineC => {
                let mut e = path(n + 1);
                e[0].2 = four;
                e[n - 1].2 = four;
                affine(n + 1, &e)
            }
            AffineD => {
                let mut e: Vec<_> = path(n - 1)
                    .into_iter()
                    .map(|(i, j, m)| (i + 1, j + 1, m))
                    .collect();
                e.push((n - 2, n, three));
                e.push((0, 2, three));
                affine(n + 1, &e)
            }
            E | F | G | H | AffineE | AffineF | AffineG => exceptional()[&self.to_string()].clone(),
        }
    }

    /// Every catalog member whose graph has exactly `v` vertices; dihedral
    /// labels are limited to `p <= max_p`.
    pub fn with_vertex_count(v: usize, max_p: u32) -> Vec<CatalogName> {
        use Family::*;
        let v32 = v as u32;
        let mut out = Vec::new();
        let mut push = |f: Family, p: u32| {
            if let Ok(c) = CatalogName::new(f, p) {
                if c.vertex_count() == v && !out.contains(&c) {
                    out.push(c);
                }
            }
        };
        if v == 0 {
            return Vec::new();
        }
        for f in [A, B, D, E, F, G, H] {
            push(f, v32);
        }
        if v == 2 {
            for p in 5..=max_p {
                push(I2, p);
            }
        }
        for f in [
            AffineA, AffineB, AffineC, AffineD, AffineE, AffineF, AffineG,
        ] {
            if v32 >= 2 {
                push(f, v32 - 1);
            }
        }
        out
    }

    /// All spherical members with at most `max_vertices` vertices and
    /// dihedral labels up to `max_p`.
    pub fn spherical_catalog(max_vertices: usize, max_p: u32) -> Vec<CatalogName> {
        (1..=max_vertices)
            .flat_map(|v| CatalogName::with_vertex_count(v, max_p))
            .filter(CatalogName::is_spherical)
            .collect()
    }

    pub fn affine_catalog(max_vertices: usize) -> Vec<CatalogName> {
        (1..=max_vertices)
            .flat_map(|v| CatalogName::with_vertex_count(v, 0))
            .filter(CatalogName::is_affine)
            .collect()
    }
}

fn affine(v: usize, edges: &[(usize, usize, Label)]) -> CoxeterGraph {
    let mut g = CoxeterGraph::new((0..v).map(|i| format!("s{i}"))).expect("unique names");
    for &(i, j, m) in edges {
        g.set_label(i, j, m).expect("valid catalog edge");
    }
    g
}

fn exceptional() -> &'static HashMap<String, CoxeterGraph> {
    static TABLE: OnceLock<HashMap<String, CoxeterGraph>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let text = include_str!("../data/catalog.txt");
        let mut table = HashMap::new();
        let mut name: Option<String> = None;
        let mut body = String::new();
        let mut flush = |name: &Option<String>, body: &mut String| {
            if let Some(n) = name {
                let g = parse_explicit(body).expect("catalog data parses");
                table.insert(n.clone(), g);
            }
            body.clear();
        };
        for line in text.lines() {
            let t = line.trim();
            if let Some(h) = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                flush(&name, &mut body);
                name = Some(h.to_string());
            } else if name.is_some() {
                body.push_str(line);
                body.push('\n');
            }
        }
        flush(&name, &mut body);
        table
    })
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::I2 {
            return write!(f, "I2({})", self.param);
        }
        let tilde = if self.is_affine() { "~" } else { "" };
        write!(f, "{}{}{}", tilde, self.family.letter(), self.param)
    }
}

impl FromStr for CatalogName {
    type Err = CoxeterError;
    fn from_str(s: &str) -> Result<CatalogName> {
        CatalogName::parse(s)
    }
}

impl Serialize for CatalogName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CatalogName {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CatalogName, D::Error> {
        let s = String::deserialize(d)?;
        CatalogName::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Catalog name of a connected graph, if it is spherical or affine.
pub fn identify(g: &CoxeterGraph) -> Option<CatalogName> {
    if g.is_empty() || !g.is_connected() {
        return None;
    }
    if g.rank() == 2 {
        return match g.label(0, 1) {
            Label::Infinite => CatalogName::new(Family::AffineA, 1).ok(),
            Label::Finite(p) => CatalogName::dihedral(p).ok(),
        };
    }
    CatalogName::with_vertex_count(g.rank(), 0)
        .into_iter()
        .find(|c| find_isomorphism(g, &c.graph()).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> CatalogName {
        CatalogName::parse(s).unwrap()
    }

    #[test]
    fn aliases_normalize() {
        assert_eq!(name("I2(3)"), name("A2"));
        assert_eq!(name("I2(4)"), name("B2"));
        assert_eq!(name("I2(6)"), name("G2"));
        assert_eq!(name("D3"), name("A3"));
        assert_eq!(name("C5"), name("B5"));
        assert_eq!(name("~C2"), name("~B2"));
        assert_eq!(name("I2(6)").to_string(), "G2");
        assert!(CatalogName::parse("E9").is_err());
        assert!(CatalogName::parse("~A0").is_err());
        assert!(CatalogName::parse("I2(2)").is_err());
    }

    #[test]
    fn every_catalog_graph_identifies_as_itself() {
        let mut all = CatalogName::spherical_catalog(9, 12);
        all.extend(CatalogName::affine_catalog(9));
        assert!(all.len() > 40);
        for c in all {
            let g = c.graph();
            assert_eq!(g.rank(), c.vertex_count(), "{c}");
            assert!(g.is_connected(), "{c}");
            assert_eq!(identify(&g), Some(c), "{c}");
        }
    }

    #[test]
    fn catalog_members_are_pairwise_distinct() {
        let mut all = CatalogName::spherical_catalog(9, 12);
        all.extend(CatalogName::affine_catalog(9));
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(
                    find_isomorphism(&a.graph(), &b.graph()).is_none(),
                    "{a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn identify_examples() {
        let tri = CoxeterGraph::from_edges(
            3,
            &[
                (0, 1, Label::Finite(3)),
                (1, 2, Label::Finite(3)),
                (0, 2, Label::Finite(3)),
            ],
        );
        assert_eq!(identify(&tri), Some(name("~A2")));
        let p = CoxeterGraph::from_edges(
            5,
            &(0..4)
                .map(|i| (i, i + 1, Label::Finite(3)))
                .collect::<Vec<_>>(),
        );
        assert_eq!(identify(&p), Some(name("A5")));
        let odd = CoxeterGraph::from_edges(
            3,
            &[
                (0, 1, Label::Finite(3)),
                (1, 2, Label::Finite(3)),
                (0, 2, Label::Finite(7)),
            ],
        );
        assert_eq!(identify(&odd), None);
    }

    #[test]
    fn exceptional_numbering() {
        let h3 = name("H3").graph();
        assert_eq!(h3.label(0, 1), Label::Finite(5));
        let f4 = name("F4").graph();
        assert_eq!(f4.label(1, 2), Label::Finite(4));
        let e6 = name("E6").graph();
        assert_eq!(e6.neighbors(3).count(), 3);
        assert_eq!(name("~E8").vertex_count(), 9);
    }
}
