//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are always printed.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{brute_fiber_min, corpus, q, Corpus};
use ugb_core::driver::{compute_ugb, compute_ugb_with_orders, universal_order_set};
use ugb_core::groebner::{convert_basis, normal_form_table, MonomialOrder, Polynomial};
use ugb_core::ideals::{from_points, lattice_minimize, lattice_test_set, PointConfiguration};
use ugb_core::oracle::{
    brute_initial_staircases, brute_state_vertices, buchberger, matroid_edge_check, relation_rank,
    GeneratorSet, DEFAULT_MAX_GROUND, DEFAULT_PAIR_BUDGET,
};
use ugb_core::staircase::{u_set, v_set, Staircase};
use ugb_core::zonotope::{
    all_chambers, positive_chambers, primitive_differences, sign_vector, DEFAULT_CHAMBER_GUARD,
};
use ugb_core::{ConstModulus, Fp, Rational, ReducedGroebnerBasis};

type Check = Result<(), String>;
type Criterion<'a> = (&'a str, Duration, Box<dyn FnMut() -> Check + 'a>);

fn qp(s: &str) -> Polynomial<Rational> {
    Polynomial::parse(s, 2).unwrap()
}

fn texts(ps: impl IntoIterator<Item = Polynomial<Rational>>) -> BTreeSet<String> {
    ps.into_iter().map(|p| p.to_string()).collect()
}

fn example_end_to_end() -> Check {
    let ord: MonomialOrder = "lex:x2>x1".parse().unwrap();
    let g = ReducedGroebnerBasis::from_polynomials(
        &[qp("x1^3 - 3*x1^2 + 3*x1 - 1"), qp("x2 - x1 + 1")],
        ord,
    )
    .map_err(|e| e.to_string())?;
    let r = compute_ugb(&g).map_err(|e| e.to_string())?;
    let lambda: BTreeSet<Staircase> = r.initial_staircases.iter().cloned().collect();
    let want: BTreeSet<Staircase> = ["{00,10,20}", "{00,01,02}"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    if lambda != want {
        return Err(format!("staircases {lambda:?}"));
    }
    let verts: BTreeSet<Vec<i64>> = r.state_vertices.iter().cloned().collect();
    if verts != BTreeSet::from([vec![3, 0], vec![0, 3]]) {
        return Err(format!("vertices {verts:?}"));
    }
    let ugb = texts(r.universal_polynomials());
    let want = texts(
        [
            "x1^3 - 3*x1^2 + 3*x1 - 1",
            "x2 - x1 + 1",
            "x1 - x2 - 1",
            "x2^3",
        ]
        .map(qp),
    );
    if ugb != want || r.universal_basis.len() != 4 {
        return Err(format!("universal basis {ugb:?}"));
    }
    Ok(())
}

fn example_zonotope() -> Check {
    let dirs = primitive_differences(3, 2);
    let got: BTreeSet<Vec<i64>> = dirs.generators().iter().cloned().collect();
    let want: BTreeSet<Vec<i64>> = [[1, 0], [0, 1], [1, -1], [1, -2], [2, -1]]
        .iter()
        .map(|v| v.to_vec())
        .collect();
    if got != want {
        return Err(format!("directions {got:?}"));
    }
    let verts: BTreeSet<Vec<i64>> = all_chambers(3, 2, DEFAULT_CHAMBER_GUARD)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|c| c.vertex)
        .collect();
    let half = [[-5, 5], [-5, 3], [-3, -1], [-1, -3], [3, -5]];
    let want: BTreeSet<Vec<i64>> = half
        .iter()
        .flat_map(|v| [v.to_vec(), vec![-v[0], -v[1]]])
        .collect();
    if verts != want {
        return Err(format!("vertices {verts:?}"));
    }
    let pos = positive_chambers(3, 2, DEFAULT_CHAMBER_GUARD).map_err(|e| e.to_string())?;
    let signs = |w: &[Rational]| sign_vector(w, &dirs).unwrap();
    let got: BTreeSet<_> = pos.iter().map(|c| signs(&c.witness_rational())).collect();
    let want: BTreeSet<_> = [[3, 1], [3, 2], [2, 3], [1, 3]]
        .iter()
        .map(|w| signs(&[q(w[0]), q(w[1])]))
        .collect();
    if pos.len() != 4 || got != want {
        return Err(format!(
            "{} positive chambers, sign classes differ",
            pos.len()
        ));
    }
    Ok(())
}

fn point_system() -> Check {
    let c = PointConfiguration::new(vec![vec![q(0), q(0)], vec![q(1), q(1)], vec![q(2), q(4)]])
        .unwrap();
    let g = from_points(&c, &MonomialOrder::default_graded(2)).map_err(|e| e.to_string())?;
    let r = compute_ugb(&g).map_err(|e| e.to_string())?;
    let want = texts(
        [
            "x1^2 - x2",
            "x2^2 - 7*x2 + 6*x1",
            "x1*x2 - 3*x2 + 2*x1",
            "x1^3 - 3*x1^2 + 2*x1",
            "x2^3 - 5*x2^2 + 4*x2",
            "x1 + 1/6*x2^2 - 7/6*x2",
            "x2 - x1^2",
        ]
        .map(qp),
    );
    let got = texts(r.universal_polynomials());
    if r.universal_basis.len() != 7 || got != want {
        return Err(format!("universal basis {got:?}"));
    }
    Ok(())
}

fn oracle_equivalence(c: &Corpus, rng: &mut StdRng) -> Check {
    let mut orders = BTreeMap::new();
    for g in c.bases() {
        let ws = orders
            .entry(g.n())
            .or_insert_with(|| universal_order_set(g.n(), 2, DEFAULT_CHAMBER_GUARD).unwrap());
        let r = compute_ugb_with_orders(g, ws).map_err(|e| e.to_string())?;
        for h in r.reduced_bases.values() {
            let gens = GeneratorSet::new(g.elements(), h.order().clone()).unwrap();
            let b = buchberger(&gens, DEFAULT_PAIR_BUDGET).map_err(|e| e.to_string())?;
            if !b.same_basis(h) {
                return Err(format!(
                    "under {}: conversion {h}, Buchberger {b}",
                    h.order()
                ));
            }
        }
        let table = normal_form_table(g).map_err(|e| e.to_string())?;
        let found = brute_initial_staircases(&table, 1000, rng).map_err(|e| e.to_string())?;
        if let Some(s) = found.iter().find(|s| !r.reduced_bases.contains_key(s)) {
            return Err(format!(
                "random weight found {s} outside the staircase list of {g}"
            ));
        }
    }
    Ok(())
}

fn hull_equivalence(c: &Corpus) -> Check {
    for g in c.bases() {
        let r = compute_ugb(g).map_err(|e| e.to_string())?;
        let mut mine = r.state_vertices.clone();
        mine.sort();
        let brute = brute_state_vertices(&normal_form_table(g).unwrap());
        if brute != mine {
            return Err(format!("{g}: hull {brute:?}, driver {mine:?}"));
        }
    }
    Ok(())
}

fn rank_identity(c: &Corpus) -> Check {
    for g in c.bases() {
        let (rank, want) = relation_rank(&normal_form_table(g).unwrap());
        if rank != want {
            return Err(format!("{g}: rank {rank}, expected {want}"));
        }
    }
    Ok(())
}

fn matroid_edges(c: &Corpus) -> Check {
    let mut checked = 0;
    for g in c
        .bases()
        .filter(|g| v_set(g.n(), 2).len() <= DEFAULT_MAX_GROUND)
    {
        if !matroid_edge_check(&normal_form_table(g).unwrap(), DEFAULT_MAX_GROUND)
            .map_err(|e| e.to_string())?
        {
            return Err(format!("{g}: an edge is not an exchange"));
        }
        checked += 1;
    }
    if checked == 0 {
        return Err("no small ideals in the corpus".into());
    }
    Ok(())
}

fn lattice_optimality(c: &Corpus, rng: &mut StdRng) -> Check {
    for (l, g) in &c.lattices {
        let r = compute_ugb(g).map_err(|e| e.to_string())?;
        let t = lattice_test_set(&r.universal_polynomials()).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let x = vec![rng.gen_range(0..=12i64), rng.gen_range(0..=12i64)];
            let w = vec![rng.gen_range(1..=20i64), rng.gen_range(1..=20i64)];
            let best = lattice_minimize(&t, &x, &[q(w[0]), q(w[1])]);
            let delta = [best[0] - x[0], best[1] - x[1]];
            if best.iter().any(|&v| v < 0) || !l.contains(&delta) {
                return Err(format!("{best:?} is not in the fiber of {x:?}"));
            }
            let value = w[0] * best[0] + w[1] * best[1];
            let want = brute_fiber_min(l, &x, &w);
            if value != want {
                return Err(format!(
                    "x={x:?} w={w:?}: test set reaches {value}, optimum {want}"
                ));
            }
        }
    }
    Ok(())
}

type Big = Fp<ConstModulus<2147483647>>;

fn cost_scaling(rng: &mut StdRng) -> Check {
    let mut ratios = Vec::new();
    for n in [10usize, 20, 40] {
        let mut seen = BTreeSet::new();
        while seen.len() < n {
            seen.insert(vec![
                rng.gen_range(0..1u64 << 30),
                rng.gen_range(0..1u64 << 30),
            ]);
        }
        let pts: Vec<Vec<Big>> = seen
            .into_iter()
            .map(|p| p.into_iter().map(Big::new).collect())
            .collect();
        let g = from_points(
            &PointConfiguration::new(pts).unwrap(),
            &MonomialOrder::default_graded(2),
        )
        .map_err(|e| e.to_string())?;
        let table = normal_form_table(&g).map_err(|e| e.to_string())?;
        let mut ops = 0u64;
        for w in [[1, 1009], [1009, 1]] {
            ops += convert_basis(&table, &[q(w[0]), q(w[1])])
                .map_err(|e| e.to_string())?
                .ops;
        }
        let scale = (n * n * u_set(n, 2).len()) as f64;
        ratios.push(ops as f64 / 2.0 / scale);
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::MAX, 0f64), |(a, b), &r| (a.min(r), b.max(r)));
    if hi > 4.0 * lo || lo == 0.0 {
        return Err(format!("ops/(n^2 |U|) = {ratios:?}"));
    }
    println!("    ops/(n^2 |U|) at n = 10, 20, 40: {ratios:.3?}");
    Ok(())
}

fn main() {
    let mut rng = StdRng::seed_from_u64(20240601);
    let built = Instant::now();
    let c = corpus(&mut rng, 100, 20);
    println!(
        "corpus: {} point ideals, {} lattice ideals ({:.1?})",
        c.points.len(),
        c.lattices.len(),
        built.elapsed()
    );
    let c = &c;

    let secs = Duration::from_secs;
    let mut criteria: Vec<Criterion> = vec![
        (
            "example basis end to end",
            secs(1),
            Box::new(example_end_to_end),
        ),
        ("zonotope example", secs(1), Box::new(example_zonotope)),
        ("three point system", secs(1), Box::new(point_system)),
    ];
    let mut rng_a = StdRng::seed_from_u64(1);
    let mut rng_b = StdRng::seed_from_u64(2);
    let mut rng_c = StdRng::seed_from_u64(3);
    criteria.push((
        "oracle equivalence",
        secs(300),
        Box::new(move || oracle_equivalence(c, &mut rng_a)),
    ));
    criteria.push((
        "brute-force state polyhedron",
        secs(60),
        Box::new(move || hull_equivalence(c)),
    ));
    criteria.push((
        "relation rank identity",
        secs(60),
        Box::new(move || rank_identity(c)),
    ));
    criteria.push((
        "matroid edges are exchanges",
        secs(120),
        Box::new(move || matroid_edges(c)),
    ));
    criteria.push((
        "lattice test-set optimality",
        secs(60),
        Box::new(move || lattice_optimality(c, &mut rng_b)),
    ));
    criteria.push((
        "conversion cost scaling",
        secs(120),
        Box::new(move || cost_scaling(&mut rng_c)),
    ));

    let mut failed = 0;
    for (name, limit, run) in criteria.iter_mut() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(()) if took <= *limit => println!("PASS {name} ({took:.2?})"),
            Ok(()) => {
                failed += 1;
                println!("FAIL {name}: took {took:.2?}, limit {limit:?}");
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
