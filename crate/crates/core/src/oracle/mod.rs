//! Independent, desk-scale checks: division and Buchberger's algorithm,
//! rank tests on normal-form tables, exhaustive enumeration of basic sets,
//! positive hulls and matroid-polytope edges by exact linear programming,
//! and maximal minors of the table.

mod buchberger;
pub mod lp;
mod verify;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::groebner::{check_generic, convert_basis, CoeffTable};
use crate::linalg::{determinant, rank};
use crate::staircase::{in_v_set, Exponent, Staircase};

pub use buchberger::{buchberger, divide, GeneratorSet, DEFAULT_PAIR_BUDGET};
pub use verify::{verify_ugb, CheckReport, VerifyConfig};

pub const DEFAULT_MAX_GROUND: usize = 8;
pub const DEFAULT_MINOR_GUARD: usize = 100_000;

fn column_indices<F: Field>(a: &CoeffTable<F>, mu: &[Exponent]) -> Result<Vec<usize>> {
    let idx = mu
        .iter()
        .map(|u| {
            a.column_index(u)
                .ok_or_else(|| Error::BadSubset(format!("{u} is not a column")))
        })
        .collect::<Result<Vec<_>>>()?;
    if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() {
        return Err(Error::BadSubset("repeated column".into()));
    }
    Ok(idx)
}

fn submatrix<F: Field>(a: &CoeffTable<F>, cols: &[usize]) -> Vec<Vec<F>> {
    (0..a.n())
        .map(|r| cols.iter().map(|&c| a.entry(r, c).clone()).collect())
        .collect()
}

/// Whether the monomials of `mu` are independent modulo the ideal.
pub fn is_basic<F: Field>(a: &CoeffTable<F>, mu: &[Exponent]) -> Result<bool> {
    if mu.len() != a.n() {
        return Err(Error::BadSubset(format!(
            "{} columns, expected {}",
            mu.len(),
            a.n()
        )));
    }
    let idx = column_indices(a, mu)?;
    Ok(rank(submatrix(a, &idx)) == a.n())
}

/// Every basic `n`-subset of `V_n^d`, as sorted exponent lists.
pub fn basic_subsets<F: Field>(a: &CoeffTable<F>) -> Vec<Vec<Exponent>> {
    let n = a.n();
    let ground: Vec<usize> = (0..a.columns().len())
        .filter(|&c| in_v_set(&a.columns()[c], n))
        .collect();
    ground
        .into_iter()
        .combinations(n)
        .filter(|cols| rank(submatrix(a, cols)) == n)
        .map(|cols| cols.iter().map(|&c| a.columns()[c].clone()).collect())
        .collect()
}

/// A uniformly drawn integer weight in `[1, 10^6]^d`, redrawn until generic.
pub fn random_generic_weight<R: Rng>(rng: &mut R, n: usize, d: usize) -> Vec<Rational> {
    loop {
        let w: Vec<Rational> = (0..d)
            .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(1..=1_000_000i64))))
            .collect();
        if check_generic(&w, n).is_ok() {
            return w;
        }
    }
}

/// Staircases met by `samples` random generic weights.
pub fn brute_initial_staircases<F: Field, R: Rng>(
    a: &CoeffTable<F>,
    samples: usize,
    rng: &mut R,
) -> Result<BTreeSet<Staircase>> {
    let mut out = BTreeSet::new();
    for _ in 0..samples {
        let w = random_generic_weight(rng, a.n(), a.dim());
        out.insert(convert_basis(a, &w)?.staircase);
    }
    Ok(out)
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter()
        .map(|&x| Rational::from_integer(x.into()))
        .collect()
}

/// Vertices of `conv(points) + ℝ₊^d`, sorted. A point is dropped exactly
/// when it lies in `conv(others) + ℝ₊^d`.
pub fn positive_hull_vertices(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let all: BTreeSet<Vec<i64>> = points.iter().cloned().collect();
    // a point above another one lies in its orthant and never matters
    let pts: Vec<Vec<i64>> = all
        .iter()
        .filter(|p| {
            !all.iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();
    let Some(d) = pts.first().map(|p| p.len()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (k, p) in pts.iter().enumerate() {
        let others: Vec<&Vec<i64>> = pts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, q)| q)
            .collect();
        if others.is_empty() {
            out.push(p.clone());
            continue;
        }
        // Σ λ_q q + s = p, Σ λ_q = 1, λ, s >= 0
        let nv = others.len() + d;
        let mut a = Vec::with_capacity(d + 1);
        for i in 0..d {
            let mut row: Vec<Rational> = others
                .iter()
                .map(|q| Rational::from_integer(q[i].into()))
                .collect();
            row.extend((0..d).map(|j| Rational::from_integer(i64::from(i == j).into())));
            a.push(row);
        }
        let mut ones = vec![Rational::from_integer(1.into()); others.len()];
        ones.extend((0..d).map(|_| Rational::from_integer(0.into())));
        a.push(ones);
        debug_assert!(a.iter().all(|r| r.len() == nv));
        let mut b = to_q(p);
        b.push(Rational::from_integer(1.into()));
        if !lp::feasible(&a, &b) {
            out.push(p.clone());
        }
    }
    out
}

/// Whether every edge of the matroid polytope of basic `n`-subsets of
/// `V_n^d` is a difference `e_u - e_v`.
///
/// A pair of incidence vectors spans an edge exactly when their midpoint
/// has no convex representation using any third vertex.
pub fn matroid_edge_check<F: Field>(a: &CoeffTable<F>, max_ground: usize) -> Result<bool> {
    let n = a.n();
    let ground: Vec<Exponent> = a
        .columns()
        .iter()
        .filter(|c| in_v_set(c, n))
        .cloned()
        .collect();
    if ground.len() > max_ground {
        return Err(Error::TooLarge {
            what: "matroid ground set",
            limit: max_ground,
        });
    }
    let bases = basic_subsets(a);
    let pts: Vec<Vec<i64>> = bases
        .iter()
        .map(|b| ground.iter().map(|g| i64::from(b.contains(g))).collect())
        .collect();
    let mut by_sum: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for (i, j) in (0..pts.len()).tuple_combinations() {
        *by_sum.entry(pair_sum(&pts[i], &pts[j])).or_default() += 1;
    }
    for (i, j) in (0..pts.len()).tuple_combinations() {
        let diff: Vec<i64> = pts[i].iter().zip(&pts[j]).map(|(p, q)| p - q).collect();
        if diff.iter().filter(|&&v| v != 0).count() == 2 {
            continue;
        }
        // another pair with the same midpoint rules out an edge
        if by_sum[&pair_sum(&pts[i], &pts[j])] > 1 {
            continue;
        }
        if is_edge(&pts, i, j) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pair_sum(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(p, q)| p + q).collect()
}

/// Index pairs of `pts` spanning edges of their convex hull.
pub fn matroid_edges(pts: &[Vec<i64>]) -> Vec<(usize, usize)> {
    let m = pts.len();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            if is_edge(pts, i, j) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn is_edge(pts: &[Vec<i64>], i: usize, j: usize) -> bool {
    let m = pts.len();
    let d = pts[i].len();
    // Σ λ_x x = (p_i + p_j)/2, Σ λ = 1; maximize weight off {i, j}
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|k| {
            pts.iter()
                .map(|p| Rational::from_integer(p[k].into()))
                .collect()
        })
        .collect();
    a.push(vec![Rational::from_integer(1.into()); m]);
    let mut b: Vec<Rational> = (0..d)
        .map(|k| Rational::new((pts[i][k] + pts[j][k]).into(), 2.into()))
        .collect();
    b.push(Rational::from_integer(1.into()));
    let c: Vec<Rational> = (0..m)
        .map(|k| Rational::from_integer(i64::from(k != i && k != j).into()))
        .collect();
    matches!(lp::maximize(&a, &b, &c), lp::LpOutcome::Optimal { value, .. } if value == Rational::from_integer(0.into()))
}

/// Nonzero maximal minors `det(A_μ)` over all `n`-subsets `μ` of the
/// columns, keyed by the sorted subset. Absent keys are zero.
pub fn plucker_dual<F: Field>(
    a: &CoeffTable<F>,
    guard: usize,
) -> Result<BTreeMap<Vec<Exponent>, F>> {
    let n = a.n();
    let m = a.columns().len();
    let mut count: u128 = 1;
    for k in 0..n.min(m) {
        count = count * (m - k) as u128 / (k + 1) as u128;
        if count > guard as u128 {
            return Err(Error::TooLarge {
                what: "maximal minor count",
                limit: guard,
            });
        }
    }
    let mut out = BTreeMap::new();
    for cols in (0..m).combinations(n) {
        let det = determinant(submatrix(a, &cols));
        if !det.is_zero() {
            out.insert(cols.iter().map(|&c| a.columns()[c].clone()).collect(), det);
        }
    }
    Ok(out)
}

/// Rank of the relations `x^u - [x^u]` for `u ∈ U \ λ`, written over the
/// monomials of `U`, and the expected value `|U| - n`.
pub fn relation_rank<F: Field>(a: &CoeffTable<F>) -> (usize, usize) {
    let cols = a.columns();
    let rows: Vec<Vec<F>> = cols
        .iter()
        .enumerate()
        .filter(|(_, u)| !a.rows().contains(u))
        .map(|(ci, _)| {
            let mut row = vec![F::zero(); cols.len()];
            row[ci] = F::one();
            for (r, v) in a.rows().iter().enumerate() {
                let k = a.column_index(v).expect("rows are columns");
                row[k] = row[k].clone() - a.entry(r, ci).clone();
            }
            row
        })
        .collect();
    (rank(rows), cols.len() - a.n())
}

/// Positive-hull vertices of the sums of all basic `n`-subsets of `V_n^d`.
pub fn brute_state_vertices<F: Field>(a: &CoeffTable<F>) -> Vec<Vec<i64>> {
    let sums: Vec<Vec<i64>> = basic_subsets(a)
        .iter()
        .map(|b| {
            let mut s = vec![0i64; a.dim()];
            for v in b {
                for (x, &c) in s.iter_mut().zip(v.coords()) {
                    *x += c as i64;
                }
            }
            s
        })
        .collect();
    positive_hull_vertices(&sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rational_vector, ConstModulus, Fp};
    use crate::groebner::{normal_form_table, MonomialOrder, Polynomial, ReducedGroebnerBasis};
    use crate::ideals::{from_points, monomial_ideal, PointConfiguration};
    use rand::SeedableRng;

    fn ex(s: &str) -> Exponent {
        s.parse().unwrap()
    }

    fn example_table() -> CoeffTable<Rational> {
        let ord: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let ps: Vec<Polynomial<Rational>> = ["x1^3 - 3*x1^2 + 3*x1 - 1", "x2 - x1 + 1"]
            .iter()
            .map(|s| Polynomial::parse(s, 2).unwrap())
            .collect();
        normal_form_table(&ReducedGroebnerBasis::from_polynomials(&ps, ord).unwrap()).unwrap()
    }

    #[test]
    fn basic_sets() {
        let a = example_table();
        assert!(is_basic(&a, &[ex("00"), ex("01"), ex("02")]).unwrap());
        assert!(!is_basic(&a, &[ex("00"), ex("10"), ex("01")]).unwrap());
        assert!(is_basic(&a, &[ex("00"), ex("10")]).is_err());
        assert!(is_basic(&a, &[ex("00"), ex("00"), ex("10")]).is_err());
        assert!(is_basic(&a, &[ex("00"), ex("10"), ex("55")]).is_err());

        let lam: Staircase = "{00,10,20}".parse().unwrap();
        let m = normal_form_table(&monomial_ideal::<Rational>(&lam)).unwrap();
        let subsets = basic_subsets(&m);
        assert_eq!(subsets, vec![lam.elements().to_vec()]);
    }

    #[test]
    fn sampled_staircases() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let a = example_table();
        let s = brute_initial_staircases(&a, 300, &mut rng).unwrap();
        let want: BTreeSet<Staircase> = ["{00,10,20}", "{00,01,02}"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(s, want);

        let c = PointConfiguration::new(vec![
            rational_vector(&[0, 0]),
            rational_vector(&[1, 2]),
            rational_vector(&[3, 7]),
        ])
        .unwrap();
        let g = from_points(&c, &MonomialOrder::default_graded(2)).unwrap();
        let s = brute_initial_staircases(&normal_form_table(&g).unwrap(), 300, &mut rng).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn hulls() {
        assert_eq!(
            positive_hull_vertices(&[vec![3, 0], vec![0, 3]]),
            vec![vec![0, 3], vec![3, 0]]
        );
        assert_eq!(
            positive_hull_vertices(&[vec![3, 0], vec![1, 1], vec![0, 3]]),
            vec![vec![0, 3], vec![1, 1], vec![3, 0]]
        );
        assert_eq!(
            positive_hull_vertices(&[vec![0, 0], vec![1, 0], vec![5, 7], vec![0, 2]]),
            vec![vec![0, 0]]
        );
        // (2,2) lies on the segment, not a vertex
        assert_eq!(
            positive_hull_vertices(&[vec![4, 0], vec![2, 2], vec![0, 4]]),
            vec![vec![0, 4], vec![4, 0]]
        );
        assert_eq!(
            positive_hull_vertices(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
    }

    #[test]
    fn edges_of_matroid_polytopes() {
        let c = PointConfiguration::new(vec![rational_vector(&[0, 0]), rational_vector(&[1, 3])])
            .unwrap();
        let g = from_points(&c, &MonomialOrder::default_graded(2)).unwrap();
        assert!(matroid_edge_check(&normal_form_table(&g).unwrap(), DEFAULT_MAX_GROUND).unwrap());
        let m =
            normal_form_table(&monomial_ideal::<Rational>(&"{00,10}".parse().unwrap())).unwrap();
        assert!(matroid_edge_check(&m, DEFAULT_MAX_GROUND).unwrap());
        assert!(matroid_edge_check(&example_table(), DEFAULT_MAX_GROUND).unwrap());
        assert!(matches!(
            matroid_edge_check(&example_table(), 3),
            Err(Error::TooLarge { .. })
        ));
        // square: diagonals are not edges
        let sq = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        assert_eq!(matroid_edges(&sq), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn plucker() {
        let lam: Staircase = "{00,10,20}".parse().unwrap();
        let m = normal_form_table(&monomial_ideal::<Rational>(&lam)).unwrap();
        let p = plucker_dual(&m, DEFAULT_MINOR_GUARD).unwrap();
        assert_eq!(
            p.keys().cloned().collect::<Vec<_>>(),
            vec![lam.elements().to_vec()]
        );

        let a = example_table();
        let p = plucker_dual(&a, DEFAULT_MINOR_GUARD).unwrap();
        assert!(!p.contains_key(&vec![ex("00"), ex("10"), ex("01")]));
        assert!(p.contains_key(&vec![ex("00"), ex("01"), ex("02")]));
        for cols in a.columns().iter().cloned().combinations(3) {
            assert_eq!(p.contains_key(&cols), is_basic(&a, &cols).unwrap());
        }
        assert!(matches!(plucker_dual(&a, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn relation_rank_identity() {
        let a = example_table();
        let (r, want) = relation_rank(&a);
        assert_eq!(r, want);
        assert_eq!(want, 7);
        type F7 = Fp<ConstModulus<7>>;
        let c = PointConfiguration::<F7>::new(vec![
            vec![F7::new(1), F7::new(2)],
            vec![F7::new(3), F7::new(3)],
        ])
        .unwrap();
        let g = from_points(&c, &MonomialOrder::default_graded(2)).unwrap();
        let (r, want) = relation_rank(&normal_form_table(&g).unwrap());
        assert_eq!(r, want);
    }

    #[test]
    fn verify_example_result() {
        let ord: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let ps: Vec<Polynomial<Rational>> = ["x1^3 - 3*x1^2 + 3*x1 - 1", "x2 - x1 + 1"]
            .iter()
            .map(|s| Polynomial::parse(s, 2).unwrap())
            .collect();
        let g = ReducedGroebnerBasis::from_polynomials(&ps, ord).unwrap();
        let mut r = crate::driver::compute_ugb(&g).unwrap();
        let reports = verify_ugb(&r, &VerifyConfig::default());
        for c in &reports {
            assert!(c.passed(), "{}: {:?}", c.name, c.failure);
        }
        // drop a staircase: several checks must notice
        let s = r.initial_staircases.remove(0);
        r.state_vertices.remove(0);
        r.reduced_bases.remove(&s);
        let failed = verify_ugb(&r, &VerifyConfig::default())
            .iter()
            .filter(|c| !c.passed())
            .count();
        assert!(failed >= 2);
    }

    #[test]
    fn state_vertices_by_brute_force() {
        let a = example_table();
        assert_eq!(brute_state_vertices(&a), vec![vec![0, 3], vec![3, 0]]);
    }
}
