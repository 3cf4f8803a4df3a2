//! Input formats for Coxeter graphs.
//!
//! Three syntaxes are accepted:
//!
//! * explicit listing, one statement per line or `;`-separated, `#` comments:
//!   `vertices: a b c` and `edge: a b 4` (`inf` for an infinite label);
//! * catalog shorthand and products: `H3`, `~A2`, `I2(7)`, `(3,3,7)` (a
//!   triangle with `m12, m23, m31`), joined with `x`: `H3 x ~A2 x I2(7)`;
//! * the JSON mirror `{"vertices": [...], "edges": [{"u": .., "v": .., "m": 4 | "inf"}]}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogName;
use crate::error::{CoxeterError, Result};
use crate::graph::{CoxeterGraph, Label};

/// Parses any of the supported formats.
pub fn parse_spec(text: &str) -> Result<CoxeterGraph> {
    let trimmed = text.trim_start();
    let g = if trimmed.starts_with('{') {
        parse_json(text)?
    } else if is_explicit(text) {
        parse_explicit(text)?
    } else {
        parse_expression(text)?
    };
    if g.is_empty() {
        return Err(CoxeterError::EmptyGraph);
    }
    Ok(g)
}

fn is_explicit(text: &str) -> bool {
    text.lines().any(|line| {
        let line = line.split('#').next().unwrap_or("");
        line.contains("vertices:") || line.contains("edge:")
    })
}

pub fn parse_label(token: &str) -> Option<Label> {
    match token {
        "inf" | "∞" | "infinity" => Some(Label::Infinite),
        _ => token.parse::<u32>().ok().map(Label::Finite),
    }
}

/// Explicit `vertices:` / `edge:` listing.
pub fn parse_explicit(text: &str) -> Result<CoxeterGraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, String, String, Label)> = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut stmt_offset = offset;
        for stmt in content.split(';') {
            let lead = stmt.len() - stmt.trim_start().len();
            let pos = stmt_offset + lead;
            stmt_offset += stmt.len() + 1;
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (keyword, rest) = stmt
                .split_once(':')
                .ok_or_else(|| CoxeterError::parse(pos, "expected 'vertices:' or 'edge:'"))?;
            match keyword.trim() {
                "vertices" => vertices.extend(rest.split_whitespace().map(str::to_string)),
                "edge" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    if toks.len() != 3 {
                        return Err(CoxeterError::parse(
                            pos,
                            "edge needs two vertices and a label",
                        ));
                    }
                    let label = parse_label(toks[2]).ok_or_else(|| {
                        CoxeterError::parse(pos, format!("bad label '{}'", toks[2]))
                    })?;
                    edges.push((pos, toks[0].to_string(), toks[1].to_string(), label));
                }
                other => {
                    return Err(CoxeterError::parse(
                        pos,
                        format!("unknown statement '{other}'"),
                    ));
                }
            }
        }
        offset += line.len();
    }
    build(vertices, edges.into_iter().map(|(_, u, v, m)| (u, v, m)))
}

fn build(
    vertices: Vec<String>,
    edges: impl IntoIterator<Item = (String, String, Label)>,
) -> Result<CoxeterGraph> {
    let mut g = CoxeterGraph::new(vertices)?;
    let mut seen: HashMap<(usize, usize), Label> = HashMap::new();
    for (u, v, m) in edges {
        let i = g
            .index_of(&u)
            .ok_or_else(|| CoxeterError::UnknownVertex(u.clone()))?;
        let j = g
            .index_of(&v)
            .ok_or_else(|| CoxeterError::UnknownVertex(v.clone()))?;
        if i == j {
            return Err(CoxeterError::InvalidLabel {
                u,
                v,
                label: m.to_string(),
            });
        }
        let key = (i.min(j), i.max(j));
        if let Some(&old) = seen.get(&key) {
            if old != m {
                return Err(CoxeterError::ConflictingEdge { u, v });
            }
        }
        seen.insert(key, m);
        g.set_label(i, j, m)?;
    }
    Ok(g)
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<JsonEdge>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    u: String,
    v: String,
    m: JsonLabel,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Finite(u32),
    Named(String),
}

pub fn parse_json(text: &str) -> Result<CoxeterGraph> {
    let raw: JsonGraph = serde_json::from_str(text).map_err(|e| {
        let pos = text
            .lines()
            .take(e.line().saturating_sub(1))
            .map(|l| l.len() + 1)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        CoxeterError::parse(pos, e.to_string())
    })?;
    let mut edges = Vec::new();
    for e in raw.edges {
        let m = match e.m {
            JsonLabel::Finite(m) => Label::Finite(m),
            JsonLabel::Named(s) => parse_label(&s).ok_or_else(|| CoxeterError::InvalidLabel {
                u: e.u.clone(),
                v: e.v.clone(),
                label: s.clone(),
            })?,
        };
        edges.push((e.u, e.v, m));
    }
    build(raw.vertices, edges)
}

pub fn to_json(g: &CoxeterGraph) -> serde_json::Value {
    let raw = JsonGraph {
        vertices: g.vertices().to_vec(),
        edges: g
            .edges()
            .map(|(i, j, m)| JsonEdge {
                u: g.name(i).to_string(),
                v: g.name(j).to_string(),
                m: match m {
                    Label::Finite(m) => JsonLabel::Finite(m),
                    Label::Infinite => JsonLabel::Named("inf".into()),
                },
            })
            .collect(),
    };
    serde_json::to_value(raw).expect("graph serializes")
}

/// Explicit text listing accepted by [`parse_explicit`].
pub fn to_text(g: &CoxeterGraph) -> String {
    let mut out = format!("vertices: {}\n", g.vertices().join(" "));
    for (i, j, m) in g.edges() {
        out.push_str(&format!("edge: {} {} {}\n", g.name(i), g.name(j), m));
    }
    out
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(CoxeterError::parse(self.pos, format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| CoxeterError::parse(start, "expected a number"))
    }

    fn label(&mut self) -> Result<Label> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '∞') {
            self.bump();
        }
        parse_label(&self.text[start..self.pos])
            .ok_or_else(|| CoxeterError::parse(start, "expected a label"))
    }
}

/// Product of catalog shorthands and triangles.
pub fn parse_expression(text: &str) -> Result<CoxeterGraph> {
    let mut cur = Cursor { text, pos: 0 };
    let mut factors = Vec::new();
    loop {
        cur.skip_ws();
        factors.push(factor(&mut cur)?);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('x' | '×' | '*') => {
                cur.bump();
            }
            Some(c) => {
                return Err(CoxeterError::parse(cur.pos, format!("unexpected '{c}'")));
            }
        }
    }
    Ok(CoxeterGraph::disjoint_union(&factors))
}

fn factor(cur: &mut Cursor) -> Result<CoxeterGraph> {
    let start = cur.pos;
    if cur.eat('(') {
        let a = cur.label()?;
        cur.skip_ws();
        cur.expect(',')?;
        let b = cur.label()?;
        cur.skip_ws();
        cur.expect(',')?;
        let c = cur.label()?;
        cur.skip_ws();
        cur.expect(')')?;
        for m in [a, b, c] {
            if m < Label::Finite(2) {
                return Err(CoxeterError::InvalidLabel {
                    u: "s1".into(),
                    v: "s2".into(),
                    label: m.to_string(),
                });
            }
        }
        return Ok(CoxeterGraph::from_edges(
            3,
            &[(0, 1, a), (1, 2, b), (2, 0, c)],
        ));
    }
    let affine = cur.eat('~');
    let fam_pos = cur.pos;
    let family = cur
        .bump()
        .filter(char::is_ascii_uppercase)
        .ok_or_else(|| CoxeterError::parse(fam_pos, "expected a catalog name"))?;
    let param_pos = cur.pos;
    let rank = cur.number()?;
    if family == 'I' && !affine {
        if rank != 2 {
            return Err(CoxeterError::parse(
                param_pos,
                "dihedral graphs are written I2(p)",
            ));
        }
        cur.expect('(')?;
        let m = cur.label()?;
        cur.skip_ws();
        cur.expect(')')?;
        return match m {
            Label::Infinite => Ok(CatalogName::parse("~A1")?.graph()),
            Label::Finite(p) if p >= 3 => Ok(CatalogName::dihedral(p)?.graph()),
            Label::Finite(p) => Err(CoxeterError::UnknownCatalog(format!("I2({p})"))),
        };
    }
    let name = &cur.text[start..cur.pos];
    Ok(CatalogName::parse(name)?.graph())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let g = parse_spec("A1").unwrap();
        assert_eq!(g.rank(), 1);
        assert_eq!(g.edges().count(), 0);
    }

    #[test]
    fn explicit_infinite_edge() {
        let g = parse_spec("vertices: a b; edge: a b inf").unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(g.label(0, 1), Label::Infinite);
    }

    #[test]
    fn product_with_h3() {
        let g = parse_spec("H3 x A1").unwrap();
        assert_eq!(g.rank(), 4);
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(g.label(0, 1), Label::Finite(5));
        assert_eq!(g.label(1, 2), Label::Finite(3));
        assert_eq!(g.name(0), "1:s1");
    }

    #[test]
    fn explicit_with_comments_and_newlines() {
        let text = "# a square\nvertices: a b c d\nedge: a b 3 # first\nedge: b c 4\nedge: c d 3\n";
        let g = parse_spec(text).unwrap();
        assert_eq!(g.label(1, 2), Label::Finite(4));
        assert_eq!(g.label(0, 3), Label::Finite(2));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_spec("Q7"),
            Err(CoxeterError::UnknownCatalog(_))
        ));
        assert!(matches!(
            parse_spec("vertices: a b; edge: a b 1"),
            Err(CoxeterError::InvalidLabel { .. })
        ));
        assert!(matches!(
            parse_spec("vertices: a b; edge: a b 3; edge: b a 4"),
            Err(CoxeterError::ConflictingEdge { .. })
        ));
        assert!(matches!(
            parse_spec("vertices: a; edge: a z 3"),
            Err(CoxeterError::UnknownVertex(_))
        ));
        assert!(matches!(
            parse_spec("A3 x"),
            Err(CoxeterError::Parse { .. })
        ));
        assert!(matches!(
            parse_spec("A3 y B2"),
            Err(CoxeterError::Parse { position: 3, .. })
        ));
        assert!(matches!(
            parse_spec("vertices:"),
            Err(CoxeterError::EmptyGraph)
        ));
        assert!(matches!(
            parse_spec("vertices: a b\nfoo"),
            Err(CoxeterError::Parse { position: 14, .. })
        ));
    }

    #[test]
    fn triangles_and_dihedral() {
        let g = parse_spec("(3,3,7)").unwrap();
        assert_eq!(g.label(0, 2), Label::Finite(7));
        let g = parse_spec("I2(inf)").unwrap();
        assert_eq!(g.label(0, 1), Label::Infinite);
        let g = parse_spec("I2(7) x (3, inf, 4)").unwrap();
        assert_eq!(g.rank(), 5);
        assert_eq!(g.label(3, 4), Label::Infinite);
    }

    #[test]
    fn json_round_trip() {
        let g = parse_spec("~B3 x I2(5) x (3,3,inf)").unwrap();
        let text = to_json(&g).to_string();
        assert_eq!(parse_spec(&text).unwrap(), g);
        assert_eq!(parse_spec(&to_text(&g)).unwrap(), g);
        let raw = r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","m":"inf"}]}"#;
        assert_eq!(parse_spec(raw).unwrap().label(0, 1), Label::Infinite);
    }
}
