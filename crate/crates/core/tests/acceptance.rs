//! Acceptance criteria. Each check prints one PASS/FAIL line; the test fails
//! if any check fails or exceeds its time limit.

mod common;

use std::collections::{HashMap, VecDeque};
use std::time::{Duration, Instant};

use coxeter_core::catalog::CatalogName;
use coxeter_core::decompose::{
    compare_commensurable, compare_iso, decomposability_predicate, finite_irreducible_remak,
    remak_signature, virtual_signature, CommVerdict, FiniteRemak, IsoVerdict,
};
use coxeter_core::dynamics::{
    essentiality, reflection_basis_product_check, root_parity, Essentiality, EssentialityParams,
    ParityVerdict,
};
use coxeter_core::form::{definiteness, gram, nondegenerate_extension, Definiteness};
use coxeter_core::oracle::{iso_small, FiniteGroupTable, DEFAULT_CAP};
use coxeter_core::roots::{CoxeterSystem, RootSign, RootVector, Word};
use coxeter_core::{identify, parse_spec, CoxeterGraph, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn graph(s: &str) -> CoxeterGraph {
    parse_spec(s).unwrap()
}

fn table(s: &str) -> FiniteGroupTable {
    FiniteGroupTable::enumerate(&graph(s), DEFAULT_CAP).unwrap()
}

fn c1_catalog() -> Check {
    let spherical = CatalogName::spherical_catalog(9, 12);
    let affine = CatalogName::affine_catalog(10);
    for c in &spherical {
        let g = c.graph();
        ensure(
            definiteness(&gram(&g)) == Definiteness::PositiveDefinite,
            || format!("{c} not positive definite"),
        )?;
        ensure(identify(&g) == Some(*c), || {
            format!("identify({c}) = {:?}", identify(&g))
        })?;
    }
    for c in &affine {
        let g = c.graph();
        match definiteness(&gram(&g)) {
            Definiteness::Semidefinite { radical } => ensure(radical.len() == 1, || {
                format!("{c}: radical of dimension {}", radical.len())
            })?,
            other => return Err(format!("{c}: {}", other.kind())),
        }
        ensure(identify(&g) == Some(*c), || {
            format!("identify({c}) = {:?}", identify(&g))
        })?;
    }
    Ok(format!(
        "{} spherical, {} affine",
        spherical.len(),
        affine.len()
    ))
}

fn c2_extension() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let labels = common::labels_up_to(8, true);
    for i in 0..200 {
        let n = rng.gen_range(1..=6);
        let g = common::random_graph(&mut rng, n, &labels);
        let ext = nondegenerate_extension(&g).map_err(|e| format!("graph {i}: {e}"))?;
        // the identity is recomputed here from the Gram matrices directly
        let x0_det = gram(&g).principal(&ext.x0).determinant();
        let ext_det = gram(&ext.extended).determinant();
        let sign = if ext.x1.len() % 2 == 1 { -1 } else { 1 };
        ensure(!ext_det.is_zero(), || {
            format!("graph {i}: extension degenerate")
        })?;
        ensure(ext_det == &x0_det * sign, || {
            format!("graph {i}: {ext_det} vs {x0_det}")
        })?;
        ensure(
            ext.extended.induced(&(0..n).collect::<Vec<_>>()).unwrap() == g,
            || format!("graph {i}: input is not a full subgraph"),
        )?;
    }
    Ok("200 random graphs".into())
}

/// Word lengths by breadth-first search over group elements as matrices.
fn bfs_lengths(sys: &CoxeterSystem, radius: usize) -> HashMap<Matrix, usize> {
    let gens: Vec<Matrix> = (0..sys.rank()).map(|s| sys.generator_matrix(s)).collect();
    let id = Matrix::identity(sys.field(), sys.rank());
    let mut dist = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        let d = dist[&m];
        if d == radius {
            continue;
        }
        for g in &gens {
            let next = &m * g;
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

fn c3_length_law() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let systems: Vec<(CoxeterSystem, HashMap<Matrix, usize>)> = ["A3", "B3", "H3", "~A2"]
        .iter()
        .map(|s| {
            let sys = CoxeterSystem::new(&graph(s));
            let lengths = bfs_lengths(&sys, 20);
            (sys, lengths)
        })
        .collect();
    for i in 0..500 {
        let (sys, lengths) = &systems[i % systems.len()];
        let w = common::random_word(&mut rng, sys.rank(), 20);
        let inv = sys.inversion_set(&w).unwrap();
        let m = sys.element(&w).unwrap().matrix;
        let expected = lengths[&m];
        ensure(inv.len() == expected, || {
            format!("word {:?}: |Φ_w| = {} but ℓ = {expected}", w.0, inv.len())
        })?;
    }
    Ok("500 words".into())
}

fn c4_decomposition_table() -> Check {
    let groups = [
        "A1", "A2", "A3", "B2", "B3", "B4", "D4", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(9)",
        "I2(10)", "I2(11)", "I2(12)", "H3", "F4",
    ];
    let mut expected = vec!["I2(6)", "I2(10)", "B3", "H3"];
    expected.sort_unstable();
    let mut found = Vec::new();
    for s in groups {
        let t = table(s);
        let decs = t.direct_decompositions().map_err(|e| format!("{s}: {e}"))?;
        let center = t.center();
        ensure(
            decs.iter().all(|(a, b)| *a == center || *b == center),
            || format!("{s}: a decomposition avoids the center"),
        )?;
        let table_says = matches!(
            finite_irreducible_remak(CatalogName::parse(s).unwrap()).unwrap(),
            FiniteRemak::Decomposable { .. }
        );
        ensure(table_says == !decs.is_empty(), || {
            format!("{s}: table {table_says}, search {}", decs.len())
        })?;
        if !decs.is_empty() {
            found.push(s);
        }
    }
    found.sort_unstable();
    ensure(found == expected, || format!("decomposable: {found:?}"))?;
    Ok(format!("decomposable exactly {found:?}"))
}

fn c5_large_groups() -> Check {
    let e7 = CoxeterSystem::new(&graph("E7"));
    let roots = e7.positive_roots(usize::MAX);
    ensure(roots.complete && roots.roots.len() == 63, || {
        format!("|Φ⁺(E7)| = {}", roots.roots.len())
    })?;
    ensure(
        matches!(
            finite_irreducible_remak(CatalogName::parse("E7").unwrap()).unwrap(),
            FiniteRemak::Decomposable { .. }
        ),
        || "table says E7 is indecomposable".into(),
    )?;
    ensure(decomposability_predicate(&graph("E7")).unwrap(), || {
        "w0 criterion fails for E7".into()
    })?;
    let mut orders = Vec::new();
    for (s, want) in [("E7", 2), ("E6", 1), ("H4", 2), ("E8", 2)] {
        let theta = CoxeterSystem::new(&graph(s))
            .longest_element()
            .unwrap()
            .theta;
        let center = if theta.iter().enumerate().all(|(i, &t)| i == t) {
            2
        } else {
            1
        };
        ensure(center == want, || format!("|Z({s})| = {center}"))?;
        orders.push(format!("|Z({s})|={center}"));
    }
    Ok(format!("|Φ⁺(E7)|=63, {}", orders.join(" ")))
}

fn is_dihedral_of_order_12(t: &FiniteGroupTable, h: &[u32]) -> bool {
    let involutions: Vec<u32> = h
        .iter()
        .copied()
        .filter(|&x| t.element_order(x) == 2)
        .collect();
    involutions.iter().any(|&a| {
        involutions
            .iter()
            .any(|&b| t.element_order(t.mul(a, b)) == 6 && t.generate(&[a, b]).len() == h.len())
    })
}

fn c6_spot_identities() -> Check {
    let f4 = CoxeterSystem::new(&graph("F4"));
    let c = Word(vec![0, 1, 2, 3]);
    let w0 = f4.longest_element().unwrap().word;
    ensure(
        f4.element(&c.pow(6)).unwrap().matrix == f4.element(&w0).unwrap().matrix,
        || "(s1s2s3s4)^6 ≠ w0 in F4".into(),
    )?;

    let e6 = table("E6");
    ensure(e6.order() == 51840, || format!("|W(E6)| = {}", e6.order()))?;
    let gens = e6.generators();
    let cent = e6.centralizer(&gens[0..4]);
    let mut want = vec![e6.identity(), gens[5]];
    want.sort_unstable();
    ensure(cent == want, || {
        format!("E6 centralizer has {} elements", cent.len())
    })?;

    let h4 = table("H4");
    ensure(h4.order() == 14400, || format!("|W(H4)| = {}", h4.order()))?;
    let gens = h4.generators();
    let cent = h4.centralizer(&gens[2..4]);
    ensure(cent.len() == 12, || {
        format!("H4 centralizer has order {}", cent.len())
    })?;
    ensure(is_dihedral_of_order_12(&h4, &cent), || {
        "H4 centralizer is not dihedral".into()
    })?;
    Ok("F4 power, E6 and H4 centralizers".into())
}

/// Counts separations of `α` by consecutive powers over `[-window, window)`
/// with explicit matrix powers, or `None` when the orbit returns to `α`.
fn separations_by_powers(
    sys: &CoxeterSystem,
    w: &Word,
    alpha: &RootVector,
    window: usize,
) -> Option<usize> {
    let m = sys.element(w).unwrap().matrix;
    let minv = sys.element(&w.inverse()).unwrap().matrix;
    let sign = |x: &RootVector| sys.root_sign(x).unwrap();
    let mut fwd = vec![alpha.clone()];
    let mut back = vec![alpha.clone()];
    for _ in 0..window {
        let next = RootVector(m.mul_vec(&fwd.last().unwrap().0));
        if next == *alpha {
            return None;
        }
        fwd.push(next);
        back.push(RootVector(minv.mul_vec(&back.last().unwrap().0)));
    }
    let orbit: Vec<RootSign> = back
        .iter()
        .rev()
        .chain(fwd.iter().skip(1))
        .map(sign)
        .collect();
    Some(orbit.windows(2).filter(|p| p[0] != p[1]).count())
}

fn c7_parity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let systems: Vec<CoxeterSystem> = ["A3", "B3", "~A1", "~A2"]
        .iter()
        .map(|s| CoxeterSystem::new(&graph(s)))
        .collect();
    let mut cases = 0;
    let mut attempts = 0;
    while cases < 100 {
        attempts += 1;
        ensure(attempts < 2000, || {
            format!("only {cases} determinate cases")
        })?;
        let sys = &systems[attempts % systems.len()];
        let w = common::random_word(&mut rng, sys.rank(), 6);
        let alpha = common::random_root(&mut rng, sys, 4);
        let res = root_parity(sys, &w, &alpha, None).unwrap();
        if !res.verdict.is_determinate() {
            continue;
        }
        cases += 1;
        let oracle = separations_by_powers(sys, &w, &alpha, 120);
        let consistent = match (&res.verdict, oracle) {
            (ParityVerdict::Periodic { .. }, None) => true,
            (ParityVerdict::Even { separations }, Some(k)) => *separations == k && k % 2 == 0,
            (ParityVerdict::Odd { separations }, Some(k)) => *separations == k && k % 2 == 1,
            _ => false,
        };
        ensure(consistent, || {
            format!(
                "w = {:?}, α = {alpha}: {:?} vs {oracle:?}",
                w.0, res.verdict
            )
        })?;
        let p = rng.gen_range(2..=5);
        let powered = root_parity(sys, &w.pow(p), &alpha, None).unwrap();
        ensure(powered.verdict.category() == res.verdict.category(), || {
            format!(
                "w = {:?}, p = {p}: {:?} vs {:?}",
                w.0, res.verdict, powered.verdict
            )
        })?;
    }
    Ok(format!("100 determinate cases ({attempts} drawn)"))
}

fn c8_coxeter_elements() -> Check {
    let mut names: Vec<CatalogName> = CatalogName::spherical_catalog(8, 12);
    names.extend(CatalogName::affine_catalog(8));
    names.extend(
        ["~A1", "~A2", "~A3"]
            .iter()
            .map(|s| CatalogName::parse(s).unwrap()),
    );
    let params = EssentialityParams::default();
    for c in &names {
        let sys = CoxeterSystem::new(&c.graph());
        let w = sys.coxeter_element(None).unwrap();
        let verdict = essentiality(&sys, &w, &params).map_err(|e| format!("{c}: {e}"))?;
        ensure(matches!(verdict, Essentiality::Essential(_)), || {
            format!("{c}: {}", verdict.kind())
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let labels = common::labels_up_to(6, true);
    let mut bases = 0;
    while bases < 100 {
        let n = rng.gen_range(1..=4);
        let g = common::random_graph(&mut rng, n, &labels);
        let ext = nondegenerate_extension(&g).unwrap();
        let sys = CoxeterSystem::new(&ext.extended);
        let roots: Vec<RootVector> = (0..sys.rank())
            .map(|_| common::random_root(&mut rng, &sys, 3))
            .collect();
        match reflection_basis_product_check(&sys, &roots) {
            Ok(true) => bases += 1,
            Ok(false) => {
                return Err(format!(
                    "product of reflections has a fixed vector on {}",
                    ext.extended.rank()
                ))
            }
            Err(_) => continue,
        }
    }
    Ok(format!("{} Coxeter elements, 100 root bases", names.len()))
}

fn c9_signatures() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let (names, g) = common::random_product(&mut rng, 4);
        let remak = remak_signature(&g).unwrap();
        let virt = virtual_signature(&g).unwrap();
        ensure(remak.m == remak.b() + remak.q(), || {
            format!("{names:?}: remak m")
        })?;
        let parts = coxeter_core::classify::classify(&g).unwrap().parts;
        let d: usize = parts
            .components
            .iter()
            .filter(|c| c.class == coxeter_core::classify::TypeClass::Affine)
            .map(|c| c.vertices.len() - 1)
            .sum();
        ensure(virt.d == d && virt.m == parts.a + d, || {
            format!("{names:?}: virtual m")
        })?;
        ensure(remak.b() == parts.b, || format!("{names:?}: b"))?;
        let h = common::shuffled(&mut rng, &g);
        ensure(remak_signature(&h).unwrap() == remak, || {
            format!("{names:?}: remak not relabeling-invariant")
        })?;
        ensure(virtual_signature(&h).unwrap() == virt, || {
            format!("{names:?}: virtual not relabeling-invariant")
        })?;
        let mut rev = names.clone();
        rev.reverse();
        let r = parse_spec(&rev.join(" x ")).unwrap();
        ensure(remak_signature(&r).unwrap() == remak, || {
            format!("{names:?}: remak depends on factor order")
        })?;
    }
    let g = graph("(3,3,7) x ~A2 x B3 x H3");
    let remak = remak_signature(&g).unwrap();
    let virt = virtual_signature(&g).unwrap();
    ensure((remak.m, virt.m, virt.d) == (6, 3, 2), || {
        format!(
            "worked example: m_remak = {}, m_virtual = {}, d = {}",
            remak.m, virt.m, virt.d
        )
    })?;
    Ok("100 products; worked example m=6, m_virtual=3, d=2".into())
}

fn c10_comparisons() -> Check {
    ensure(
        compare_iso(&graph("I2(6)"), &graph("A1 x A2")).unwrap() == IsoVerdict::Isomorphic,
        || "I2(6) vs A1 x A2".into(),
    )?;
    ensure(
        iso_small(&table("I2(6)"), &table("A1 x A2")).unwrap(),
        || "oracle disagrees on I2(6)".into(),
    )?;
    ensure(
        compare_commensurable(&graph("~A2"), &graph("~A1 x ~A1")).unwrap()
            == CommVerdict::Commensurable,
        || "~A2 vs ~A1 x ~A1".into(),
    )?;
    ensure(
        compare_commensurable(&graph("~A2"), &graph("~A1")).unwrap()
            == CommVerdict::NotCommensurable,
        || "~A2 vs ~A1".into(),
    )?;
    Ok("3 comparisons".into())
}

#[test]
fn acceptance() {
    let checks: [Criterion; 10] = [
        ("catalog classification", Duration::from_secs(5), c1_catalog),
        (
            "non-degenerate extension identity",
            Duration::from_secs(60),
            c2_extension,
        ),
        ("length law", Duration::from_secs(30), c3_length_law),
        (
            "decomposability table vs brute force",
            Duration::from_secs(600),
            c4_decomposition_table,
        ),
        (
            "E7/E6/H4/E8 partial checks",
            Duration::from_secs(60),
            c5_large_groups,
        ),
        (
            "F4/E6/H4 spot identities",
            Duration::from_secs(300),
            c6_spot_identities,
        ),
        (
            "parity and power invariance",
            Duration::from_secs(60),
            c7_parity,
        ),
        (
            "Coxeter element essentiality",
            Duration::from_secs(120),
            c8_coxeter_elements,
        ),
        (
            "signature arithmetic",
            Duration::from_secs(30),
            c9_signatures,
        ),
        (
            "comparison corpus",
            Duration::from_secs(10),
            c10_comparisons,
        ),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > *limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS [{}] {name}: {msg} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL [{}] {name}: {msg} ({elapsed:.2?})", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
