//! Root orbits under an element: parity of roots and essentiality.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::classify::{classify, TypeClass};
use crate::error::{CoxeterError, Result};
use crate::matrix::{dot, Matrix};
use crate::roots::{CoxeterSystem, RootVector, Word};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ParityVerdict {
    Periodic { period: usize },
    Even { separations: usize },
    Odd { separations: usize },
    Unknown { bound: usize },
}

impl ParityVerdict {
    pub fn is_determinate(&self) -> bool {
        !matches!(self, ParityVerdict::Unknown { .. })
    }

    pub fn category(&self) -> &'static str {
        match self {
            ParityVerdict::Periodic { .. } => "periodic",
            ParityVerdict::Even { .. } => "even",
            ParityVerdict::Odd { .. } => "odd",
            ParityVerdict::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityResult {
    #[serde(flatten)]
    pub verdict: ParityVerdict,
    /// Indices `m` with `w^m α` and `w^{m+1} α` of opposite signs.
    pub separation_indices: Vec<i64>,
}

pub fn default_bound(length: usize) -> usize {
    16 * length.max(1)
}

fn sign(x: &RootVector) -> i32 {
    x.0.iter()
        .map(Scalar::signum)
        .find(|&s| s != 0)
        .unwrap_or(0)
}

/// Parity of `α` under `w`, scanning `w^m α` for `|m| <= bound`.
///
/// Even/odd verdicts require the signs to be constant over the last
/// `ℓ(w)` iterates at both ends of the window; otherwise the result is
/// `Unknown`.
pub fn root_parity(
    sys: &CoxeterSystem,
    w: &Word,
    alpha: &RootVector,
    bound: Option<usize>,
) -> Result<ParityResult> {
    sys.check_dim(alpha)?;
    let len = sys.length(w)?;
    let bound = bound.unwrap_or_else(|| default_bound(len)).max(1);
    let fwd = sys.element(w)?.matrix;
    let bwd = sys.element(&w.inverse())?.matrix;
    let mut forward = vec![alpha.clone()];
    for m in 1..=bound {
        let next = RootVector(fwd.mul_vec(&forward[m - 1].0));
        if next == *alpha {
            return Ok(ParityResult {
                verdict: ParityVerdict::Periodic { period: m },
                separation_indices: Vec::new(),
            });
        }
        forward.push(next);
    }
    let mut backward = vec![alpha.clone()];
    for m in 1..=bound {
        backward.push(RootVector(bwd.mul_vec(&backward[m - 1].0)));
    }
    // signs[k] is the sign of w^{k - bound} α
    let signs: Vec<i32> = backward
        .iter()
        .rev()
        .chain(forward.iter().skip(1))
        .map(sign)
        .collect();
    if signs.contains(&0) {
        return Err(CoxeterError::Internal("zero vector in a root orbit".into()));
    }
    let separation_indices: Vec<i64> = signs
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] != p[1])
        .map(|(k, _)| k as i64 - bound as i64)
        .collect();
    let tail = len.max(1).min(bound);
    let stable = |slice: &[i32]| slice.windows(2).all(|p| p[0] == p[1]);
    let n = signs.len();
    if !stable(&signs[..=tail]) || !stable(&signs[n - 1 - tail..]) {
        return Ok(ParityResult {
            verdict: ParityVerdict::Unknown { bound },
            separation_indices,
        });
    }
    let separations = separation_indices.len();
    let verdict = if separations.is_multiple_of(2) {
        ParityVerdict::Even { separations }
    } else {
        ParityVerdict::Odd { separations }
    };
    Ok(ParityResult {
        verdict,
        separation_indices,
    })
}

#[derive(Debug, Clone)]
pub struct OddRoots {
    pub roots: Vec<RootVector>,
    /// Enumerated roots whose parity stayed undetermined.
    pub unknown: usize,
    pub enumerated: usize,
}

/// `w`-odd roots among the positive roots of depth at most `depth`.
pub fn odd_roots(
    sys: &CoxeterSystem,
    w: &Word,
    depth: usize,
    bound: Option<usize>,
) -> Result<OddRoots> {
    let all = sys.positive_roots(depth);
    let mut roots = Vec::new();
    let mut unknown = 0;
    for r in &all.roots {
        match root_parity(sys, w, r, bound)?.verdict {
            ParityVerdict::Odd { .. } => roots.push(r.clone()),
            ParityVerdict::Unknown { .. } => unknown += 1,
            _ => {}
        }
    }
    Ok(OddRoots {
        roots,
        unknown,
        enumerated: all.roots.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EssentialityParams {
    pub depth: usize,
    pub bound: Option<usize>,
    pub conj_search_radius: usize,
}

impl Default for EssentialityParams {
    fn default() -> Self {
        EssentialityParams {
            depth: 12,
            bound: None,
            conj_search_radius: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    FiniteFixedSpaceTrivial,
    OddRootsGenerate { roots: Vec<RootVector> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Essentiality {
    Essential(Certificate),
    /// `u⁻¹ w u` lies in the proper standard parabolic subgroup `W_X`.
    NotEssential {
        u: Word,
        x: Vec<usize>,
    },
    Unknown {
        reason: String,
    },
}

impl Essentiality {
    pub fn kind(&self) -> &'static str {
        match self {
            Essentiality::Essential(_) => "essential",
            Essentiality::NotEssential { .. } => "not_essential",
            Essentiality::Unknown { .. } => "unknown",
        }
    }
}

pub fn essentiality(
    sys: &CoxeterSystem,
    w: &Word,
    params: &EssentialityParams,
) -> Result<Essentiality> {
    let g = sys.graph();
    if g.is_empty() {
        return Err(CoxeterError::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(CoxeterError::NotConnected);
    }
    let n = sys.rank();
    let reduced = sys.reduce(w)?;
    let support = reduced.support();
    if support.len() < n {
        return Ok(Essentiality::NotEssential {
            u: Word::identity(),
            x: support,
        });
    }
    let class = classify(g)?.components[0].class;
    if class == TypeClass::Spherical {
        return Ok(spherical_essentiality(sys, &reduced));
    }
    let odd = odd_roots(sys, &reduced, params.depth, params.bound)?;
    if !odd.roots.is_empty() && reflections_reach_simple_roots(sys, &odd.roots, params.depth) {
        return Ok(Essentiality::Essential(Certificate::OddRootsGenerate {
            roots: odd.roots,
        }));
    }
    if let Some((u, x)) = conjugation_search(sys, &reduced, params.conj_search_radius)? {
        return Ok(Essentiality::NotEssential { u, x });
    }
    Ok(Essentiality::Unknown {
        reason: format!(
            "{} odd roots among {} enumerated (depth {}, {} undetermined) do not visibly generate W; \
             no proper parabolic conjugate within radius {}",
            odd.roots.len(),
            odd.enumerated,
            params.depth,
            odd.unknown,
            params.conj_search_radius
        ),
    })
}

/// In a finite group `w` is essential iff it fixes no non-zero vector.
/// Otherwise a fixed vector moved into the closed fundamental chamber gives
/// the parabolic subgroup.
fn spherical_essentiality(sys: &CoxeterSystem, w: &Word) -> Essentiality {
    let el = sys.element(w).expect("word checked");
    let fixed = sys.fixed_space(&el);
    let Some(y) = fixed.into_iter().next() else {
        return Essentiality::Essential(Certificate::FiniteFixedSpaceTrivial);
    };
    let mut y = RootVector(y);
    let mut moves: Vec<usize> = Vec::new();
    loop {
        let by = sys.gram().mul_vec(&y.0);
        match (0..sys.rank()).find(|&s| by[s].signum() < 0) {
            Some(s) => {
                y = sys.reflect(s, &y);
                moves.push(s);
            }
            None => {
                let x = (0..sys.rank()).filter(|&s| by[s].is_zero()).collect();
                // y' = v y with v = s_k … s_1, so u = v⁻¹ = s_1 … s_k
                return Essentiality::NotEssential { u: Word(moves), x };
            }
        }
    }
}

/// Closes `roots` under the reflections they define (keeping positive
/// representatives of depth at most `depth`) and reports whether every
/// simple root is reached.
pub fn reflections_reach_simple_roots(
    sys: &CoxeterSystem,
    roots: &[RootVector],
    depth: usize,
) -> bool {
    let window: HashSet<RootVector> = sys.positive_roots(depth).roots.into_iter().collect();
    let mut found: Vec<RootVector> = Vec::new();
    let mut seen: HashSet<RootVector> = HashSet::new();
    for r in roots {
        if seen.insert(r.clone()) {
            found.push(r.clone());
        }
    }
    let simple: Vec<RootVector> = (0..sys.rank()).map(|s| sys.simple_root(s)).collect();
    let done = |seen: &HashSet<RootVector>| simple.iter().all(|a| seen.contains(a));
    let bprod: Vec<Vec<Scalar>> = found.iter().map(|r| sys.gram().mul_vec(&r.0)).collect();
    let mut pairings = bprod;
    let mut i = 0;
    while i < found.len() {
        if done(&seen) {
            return true;
        }
        for j in 0..found.len() {
            if i == j {
                continue;
            }
            // r_{β_i}(β_j) = β_j - 2⟨β_j, β_i⟩ β_i
            let c = dot(&found[j].0, &pairings[i]);
            if c.is_zero() {
                continue;
            }
            let c2 = &c * 2;
            let img: Vec<Scalar> = found[j]
                .0
                .iter()
                .zip(&found[i].0)
                .map(|(x, y)| x - &(&c2 * y))
                .collect();
            let mut img = RootVector(img);
            if sign(&img) < 0 {
                img = img.neg();
            }
            if window.contains(&img) && seen.insert(img.clone()) {
                pairings.push(sys.gram().mul_vec(&img.0));
                found.push(img);
            }
        }
        i += 1;
    }
    done(&seen)
}

/// Breadth-first search over conjugates `s x s` that do not increase
/// length, looking for one with proper support.
fn conjugation_search(
    sys: &CoxeterSystem,
    w: &Word,
    radius: usize,
) -> Result<Option<(Word, Vec<usize>)>> {
    let n = sys.rank();
    let mut seen: HashMap<Matrix, ()> = HashMap::new();
    let mut queue: VecDeque<(Word, Word, usize)> = VecDeque::new();
    seen.insert(sys.element(w)?.matrix, ());
    queue.push_back((w.clone(), Word::identity(), 0));
    while let Some((x, u, d)) = queue.pop_front() {
        if d >= radius {
            continue;
        }
        for s in 0..n {
            let conj = sys.reduce(&Word([vec![s], x.0.clone(), vec![s]].concat()))?;
            if conj.len() > x.len() {
                continue;
            }
            let m = sys.element(&conj)?.matrix;
            if seen.insert(m, ()).is_some() {
                continue;
            }
            // conj = s x s = (u s)⁻¹ w (u s)
            let u2 = Word([u.0.clone(), vec![s]].concat());
            let support = conj.support();
            if support.len() < n {
                return Ok(Some((u2, support)));
            }
            queue.push_back((conj, u2, d + 1));
        }
    }
    Ok(None)
}

/// Checks that `r_{β_m} ⋯ r_{β_1}` fixes no non-zero vector, for a basis
/// of roots under a non-degenerate form.
pub fn reflection_basis_product_check(sys: &CoxeterSystem, roots: &[RootVector]) -> Result<bool> {
    let n = sys.rank();
    for r in roots {
        sys.check_dim(r)?;
    }
    if roots.len() != n {
        return Err(CoxeterError::NotABasis);
    }
    let coords = Matrix::from_rows(roots.iter().map(|r| r.0.clone()).collect());
    if coords.determinant().is_zero() {
        return Err(CoxeterError::NotABasis);
    }
    if sys.gram().determinant().is_zero() {
        return Err(CoxeterError::DegenerateForm);
    }
    let mut product = Matrix::identity(sys.field(), n);
    for r in roots {
        product = &sys.reflection(r)?.matrix * &product;
    }
    let id = Matrix::identity(sys.field(), n);
    Ok(product.sub(&id).kernel().is_empty())
}
