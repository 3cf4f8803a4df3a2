//! Brute-force engine for finite Coxeter groups. Elements are stored as
//! permutations of the full root list, which makes them exact and hashable.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{CoxeterError, Result};
use crate::graph::CoxeterGraph;
use crate::roots::{CoxeterSystem, RootVector, Word};

pub const DEFAULT_CAP: usize = 3_000_000;
pub const DECOMPOSITION_LIMIT: usize = 10_000;
pub const ISO_LIMIT: usize = 2_000;

/// A subgroup as a sorted list of element indices.
pub type Subgroup = Vec<u32>;

#[derive(Debug, Clone)]
pub struct FiniteGroupTable {
    rank: usize,
    /// Positive roots first, then their negatives in the same order.
    roots: Vec<RootVector>,
    simple: Vec<u32>,
    perms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    parent: Vec<(u32, u32)>,
    lengths: Vec<u32>,
    generators: Vec<u32>,
    w0: u32,
}

impl FiniteGroupTable {
    /// BFS closure of the generators by length; words are extended on the
    /// right in generator order, so each element carries its shortlex-first
    /// reduced word.
    pub fn enumerate(g: &CoxeterGraph, cap: usize) -> Result<FiniteGroupTable> {
        let sys = CoxeterSystem::new(g);
        if !sys.is_spherical()? {
            return Err(CoxeterError::NotSpherical);
        }
        let n = sys.rank();
        let positive = sys.positive_roots(usize::MAX).roots;
        let np = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(RootVector::neg));
        let root_index: HashMap<&RootVector, u32> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r, i as u32))
            .collect();
        let simple: Vec<u32> = (0..n).map(|s| root_index[&sys.simple_root(s)]).collect();
        let gen_perms: Vec<Vec<u32>> = (0..n)
            .map(|s| {
                roots
                    .iter()
                    .map(|r| {
                        root_index.get(&sys.reflect(s, r)).copied().ok_or_else(|| {
                            CoxeterError::Internal("root list not closed under reflections".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let identity: Vec<u32> = (0..roots.len() as u32).collect();
        let mut t = FiniteGroupTable {
            rank: n,
            roots,
            simple,
            perms: vec![identity.clone()],
            index: HashMap::new(),
            parent: vec![(u32::MAX, u32::MAX)],
            lengths: vec![0],
            generators: Vec::new(),
            w0: 0,
        };
        t.index.insert(t.key_of(&identity), 0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(w) = queue.pop_front() {
            for (s, sp) in gen_perms.iter().enumerate() {
                let p: Vec<u32> = sp
                    .iter()
                    .map(|&i| t.perms[w as usize][i as usize])
                    .collect();
                let key = t.key_of(&p);
                if t.index.contains_key(&key) {
                    continue;
                }
                if t.perms.len() >= cap {
                    return Err(CoxeterError::CapExceeded(format!(
                        "group order exceeds {cap}"
                    )));
                }
                let id = t.perms.len() as u32;
                t.index.insert(key, id);
                t.perms.push(p);
                t.parent.push((w, s as u32));
                t.lengths.push(t.lengths[w as usize] + 1);
                queue.push_back(id);
            }
        }
        // the identity's children are the generators, discovered in order
        t.generators = (1..=n as u32).collect();
        let max = *t.lengths.iter().max().expect("nonempty");
        let top: Vec<usize> = (0..t.order()).filter(|&i| t.lengths[i] == max).collect();
        if top.len() != 1 || max as usize != np {
            return Err(CoxeterError::Internal(
                "longest element is not unique".into(),
            ));
        }
        t.w0 = top[0] as u32;
        Ok(t)
    }

    fn key_of(&self, perm: &[u32]) -> Vec<u32> {
        self.simple.iter().map(|&i| perm[i as usize]).collect()
    }

    fn find_word(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .fold(0, |acc, &s| self.mul(acc, self.generators[s]))
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn w0(&self) -> u32 {
        self.w0
    }

    pub fn positive_root_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn length(&self, a: u32) -> usize {
        self.lengths[a as usize] as usize
    }

    pub fn permutation(&self, a: u32) -> &[u32] {
        &self.perms[a as usize]
    }

    pub fn word(&self, a: u32) -> Word {
        let mut letters = Vec::new();
        let mut cur = a;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            letters.push(s as usize);
            cur = p;
        }
        letters.reverse();
        Word(letters)
    }

    pub fn element_of(&self, w: &Word) -> Result<u32> {
        if let Some(&s) = w.letters().iter().find(|&&s| s >= self.rank) {
            return Err(CoxeterError::UnknownVertex(s.to_string()));
        }
        Ok(self.find_word(w))
    }

    /// `a·b`, acting on roots as `b` first.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = &self.perms[a as usize];
        let pb = &self.perms[b as usize];
        let key: Vec<u32> = self
            .simple
            .iter()
            .map(|&i| pa[pb[i as usize] as usize])
            .collect();
        self.index[&key]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let p = &self.perms[a as usize];
        let mut inv = vec![0u32; p.len()];
        for (i, &j) in p.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        self.index[&self.key_of(&inv)]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// The diagram permutation `s ↦ w₀ s w₀`.
    pub fn theta(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|&s| {
                let c = self.mul(self.mul(self.w0, s), self.w0);
                self.generators
                    .iter()
                    .position(|&t| t == c)
                    .expect("w0 normalizes S")
            })
            .collect()
    }

    pub fn commutes(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn center(&self) -> Subgroup {
        (0..self.order() as u32)
            .filter(|&g| self.generators.iter().all(|&s| self.commutes(g, s)))
            .collect()
    }

    pub fn centralizer(&self, xs: &[u32]) -> Subgroup {
        (0..self.order() as u32)
            .filter(|&g| xs.iter().all(|&x| self.commutes(g, x)))
            .collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, h: &[u32]) -> bool {
        let set: HashSet<u32> = h.iter().copied().collect();
        set.contains(&0)
            && h.iter()
                .all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() as u32 {
            if class_of[g as usize] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[g as usize] = id;
            let mut class = vec![g];
            let mut i = 0;
            // generators are involutions, so s x s is conjugation by s
            while i < class.len() {
                let x = class[i];
                for &s in &self.generators {
                    let y = self.mul(self.mul(s, x), s);
                    if class_of[y as usize] == usize::MAX {
                        class_of[y as usize] = id;
                        class.push(y);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Greedy generating set for a subgroup: keep an element only if it is
    /// not already generated by the earlier ones.
    fn small_generators(&self, elements: &[u32]) -> (Vec<u32>, Subgroup) {
        let mut gens = Vec::new();
        let mut current: Subgroup = vec![0];
        for &x in elements {
            if current.binary_search(&x).is_err() {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        (gens, current)
    }

    /// All normal subgroups, ordered by size then elements. Every normal
    /// subgroup is a join of normal closures of single classes.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<(Vec<u32>, Subgroup)> = vec![(Vec::new(), vec![0])];
        let mut seen: HashSet<Subgroup> = HashSet::from([vec![0]]);
        for class in self.conjugacy_classes() {
            let n = self.small_generators(&class);
            if seen.insert(n.1.clone()) {
                found.push(n);
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let mut gens = found[i].0.clone();
                gens.extend_from_slice(&found[j].0);
                let joined = self.generate(&gens);
                if seen.insert(joined.clone()) {
                    found.push(self.small_generators(&joined));
                }
            }
            i += 1;
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|(_, h)| h).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Unordered pairs `(A, B)` of nontrivial normal subgroups with
    /// `G = A × B`; `A` is the smaller factor (ties broken by elements).
    pub fn direct_decompositions(&self) -> Result<Vec<(Subgroup, Subgroup)>> {
        if self.order() > DECOMPOSITION_LIMIT {
            return Err(CoxeterError::CapExceeded(format!(
                "exhaustive decomposition search is limited to order {DECOMPOSITION_LIMIT}"
            )));
        }
        let normals = self.normal_subgroups();
        let mut out = Vec::new();
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i..] {
                if a.len() <= 1 || b.len() <= 1 || a.len() * b.len() != self.order() {
                    continue;
                }
                let trivial_meet = a.iter().filter(|x| b.binary_search(x).is_ok()).count() == 1;
                if trivial_meet && a.iter().all(|&x| b.iter().all(|&y| self.commutes(x, y))) {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        Ok(out)
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order() as u32)
            .map(|a| self.element_order(a))
            .collect();
        v.sort_unstable();
        v
    }

    /// Table dump: one element per line, `word: permutation`.
    pub fn dump(&self, g: &CoxeterGraph) -> String {
        let mut out = String::new();
        for a in 0..self.order() as u32 {
            let perm: Vec<String> = self.perms[a as usize].iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "{}: {}\n",
                self.word(a).display(g),
                perm.join(" ")
            ));
        }
        out
    }
}

/// Isomorphism test by backtracking over images of the Coxeter generators of
/// `t1`, pruned by element orders of pairwise products.
pub fn iso_small(t1: &FiniteGroupTable, t2: &FiniteGroupTable) -> Result<bool> {
    if t1.order() > ISO_LIMIT || t2.order() > ISO_LIMIT {
        return Err(CoxeterError::CapExceeded(format!(
            "isomorphism search is limited to order {ISO_LIMIT}"
        )));
    }
    if t1.order() != t2.order() || t1.order_profile() != t2.order_profile() {
        return Ok(false);
    }
    let gens = t1.generators();
    let products: Vec<Vec<usize>> = gens
        .iter()
        .map(|&a| {
            gens.iter()
                .map(|&b| t1.element_order(t1.mul(a, b)))
                .collect()
        })
        .collect();
    let involutions: Vec<u32> = (1..t2.order() as u32)
        .filter(|&x| t2.element_order(x) == 2)
        .collect();
    let mut images = Vec::new();
    Ok(extend(t1, t2, &products, &involutions, &mut images))
}

fn extend(
    t1: &FiniteGroupTable,
    t2: &FiniteGroupTable,
    products: &[Vec<usize>],
    candidates: &[u32],
    images: &mut Vec<u32>,
) -> bool {
    let k = images.len();
    if k == t1.generators().len() {
        return is_isomorphism(t1, t2, images);
    }
    for &c in candidates {
        let ok = images
            .iter()
            .enumerate()
            .all(|(j, &img)| t2.element_order(t2.mul(img, c)) == products[j][k]);
        if ok {
            images.push(c);
            if extend(t1, t2, products, candidates, images) {
                return true;
            }
            images.pop();
        }
    }
    false
}

fn is_isomorphism(t1: &FiniteGroupTable, t2: &FiniteGroupTable, images: &[u32]) -> bool {
    let mut phi = vec![u32::MAX; t1.order()];
    phi[0] = 0;
    // BFS order guarantees the parent is assigned before the child
    for a in 1..t1.order() {
        let (p, s) = t1.parent[a];
        phi[a] = t2.mul(phi[p as usize], images[s as usize]);
    }
    let mut hit = vec![false; t2.order()];
    for &x in &phi {
        if std::mem::replace(&mut hit[x as usize], true) {
            return false;
        }
    }
    (0..t1.order() as u32).all(|a| {
        t1.generators()
            .iter()
            .zip(images)
            .all(|(&s, &img)| phi[t1.mul(a, s) as usize] == t2.mul(phi[a as usize], img))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_spec;

    fn table(s: &str) -> FiniteGroupTable {
        FiniteGroupTable::enumerate(&parse_spec(s).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(table("A2").order(), 6);
        assert_eq!(table("B3").order(), 48);
        assert_eq!(table("H3").order(), 120);
        assert_eq!(table("A1 x A2").order(), 12);
    }

    #[test]
    fn rejects_infinite_and_caps() {
        assert!(matches!(
            FiniteGroupTable::enumerate(&parse_spec("~A1").unwrap(), 100),
            Err(CoxeterError::NotSpherical)
        ));
        assert!(matches!(
            FiniteGroupTable::enumerate(&parse_spec("B3").unwrap(), 20),
            Err(CoxeterError::CapExceeded(_))
        ));
    }

    #[test]
    fn longest_element_and_center() {
        let b3 = table("B3");
        assert_eq!(b3.length(b3.w0()), 9);
        assert_eq!(b3.mul(b3.w0(), b3.w0()), 0);
        assert_eq!(b3.center(), {
            let mut v = vec![0, b3.w0()];
            v.sort_unstable();
            v
        });
        assert_eq!(table("A3").center(), vec![0]);
        assert_eq!(table("A3").theta(), vec![2, 1, 0]);
    }

    #[test]
    fn words_round_trip() {
        let h3 = table("H3");
        for a in 0..h3.order() as u32 {
            let w = h3.word(a);
            assert_eq!(w.len(), h3.length(a));
            assert_eq!(h3.element_of(&w).unwrap(), a);
        }
    }

    #[test]
    fn decompositions() {
        assert!(table("I2(5)").direct_decompositions().unwrap().is_empty());
        let i26 = table("I2(6)");
        let center = i26.center();
        let d = i26.direct_decompositions().unwrap();
        assert!(!d.is_empty());
        assert!(d.iter().all(|(a, b)| *a == center || *b == center));
        assert!(table("A3").direct_decompositions().unwrap().is_empty());
    }

    #[test]
    fn small_isomorphism() {
        assert!(iso_small(&table("I2(6)"), &table("A1 x A2")).unwrap());
        assert!(iso_small(&table("I2(5)"), &table("I2(5)")).unwrap());
        assert!(!iso_small(&table("A2"), &table("I2(5)")).unwrap());
        assert!(!iso_small(&table("A3"), &table("A1 x A1 x A2")).unwrap());
    }
}
