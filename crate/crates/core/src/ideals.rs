//! Reduced bases of monomial ideals, vanishing ideals of points and lattice
//! ideals, plus lattice test sets and augmentation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{Field, FieldTag, Rational};
use crate::groebner::{MonomialOrder, Polynomial, ReducedGroebnerBasis};
use crate::linalg::{integer_det_adjugate, solve};
use crate::staircase::{min_gaps, v_set, Exponent, Staircase};

/// `I_λ`, generated by the minimal gaps, tagged with the default graded order.
pub fn monomial_ideal<F: Field>(lambda: &Staircase) -> ReducedGroebnerBasis<F> {
    ReducedGroebnerBasis::monomial(lambda.clone(), MonomialOrder::default_graded(lambda.dim()))
}

/// `n` distinct points of `F^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<F> {
    points: Vec<Vec<F>>,
}

impl<F: Field> PointConfiguration<F> {
    pub fn new(points: Vec<Vec<F>>) -> Result<Self> {
        let d = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::Parse("no points".into()))?;
        if d == 0 {
            return Err(Error::Parse("points of dimension 0".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        if let FieldTag::PrimeField(p) = F::tag() {
            let cap = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
            if points.len() as u128 > cap {
                return Err(Error::DuplicatePoints(format!(
                    "{} points in a space of {cap}",
                    points.len()
                )));
            }
        }
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                let text: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                return Err(Error::DuplicatePoints(format!("({})", text.join(","))));
            }
        }
        Ok(PointConfiguration { points })
    }

    /// One point per line, comma-separated scalars; blank lines and `#`
    /// comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let points = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(',')
                    .map(|t| F::parse_scalar(t.trim()))
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[Vec<F>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// `(c_1^v, ..., c_n^v)`.
    pub fn evaluation_column(&self, v: &Exponent) -> Vec<F> {
        self.points
            .iter()
            .map(|c| Polynomial::monomial(v.clone(), F::one()).eval(c))
            .collect()
    }
}

/// Reduced basis of the vanishing ideal of `c` under `ord`.
///
/// `V_n^d` is scanned in increasing order and `v` is kept when its evaluation
/// column is independent of those kept so far; the kept set is the initial
/// staircase. Each tail solves `C^λ a = (c_i^u)_i`.
pub fn from_points<F: Field>(
    c: &PointConfiguration<F>,
    ord: &MonomialOrder,
) -> Result<ReducedGroebnerBasis<F>> {
    let n = c.len();
    let d = c.dim();
    if ord.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: ord.dim(),
        });
    }
    let mut cand = v_set(n, d);
    ord.sort(&mut cand);
    // echelon rows keyed by pivot position
    let mut echelon: Vec<(usize, Vec<F>)> = Vec::new();
    let mut chosen = Vec::new();
    for v in cand {
        let mut col = c.evaluation_column(&v);
        for (p, row) in &echelon {
            if col[*p].is_zero() {
                continue;
            }
            let f = col[*p].clone();
            for (x, y) in col.iter_mut().zip(row) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        if let Some(p) = col.iter().position(|x| !x.is_zero()) {
            let inv = col[p].inverse().expect("nonzero");
            let row = col.into_iter().map(|x| x * inv.clone()).collect();
            echelon.push((p, row));
            chosen.push(v);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::RankCollapse);
    }
    let lambda = Staircase::new(chosen)?;
    let cl: Vec<Vec<F>> = (0..n)
        .map(|i| {
            lambda
                .iter()
                .map(|v| Polynomial::monomial(v.clone(), F::one()).eval(&c.points[i]))
                .collect()
        })
        .collect();
    let mut tails = BTreeMap::new();
    for u in min_gaps(&lambda) {
        let rhs = c.evaluation_column(&u);
        let a = solve(cl.clone(), rhs).ok_or(Error::RankCollapse)?;
        let t = Polynomial::from_terms(lambda.iter().cloned().zip(a));
        tails.insert(u, t);
    }
    ReducedGroebnerBasis::new(lambda, tails, ord.clone())
}

/// A full-rank lattice `L ⊆ ℤ^d` given by the columns of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    columns: Vec<Vec<i64>>,
    det_abs: BigInt,
    /// `adj(B)` with the sign of `det B` folded in, so that
    /// `z = adj·v / |det|` solves `B z = v`.
    adj: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(columns: Vec<Vec<i64>>) -> Result<Self> {
        let d = columns.len();
        if d == 0 {
            return Err(Error::SingularBasis);
        }
        if let Some(c) = columns.iter().find(|c| c.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: c.len(),
            });
        }
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|i| columns.iter().map(|c| c[i]).collect())
            .collect();
        let (det, mut adj) = integer_det_adjugate(&rows);
        if det.is_zero() {
            return Err(Error::SingularBasis);
        }
        if det.is_negative() {
            adj.iter_mut().flatten().for_each(|x| *x = -x.clone());
        }
        Ok(LatticeBasis {
            columns,
            det_abs: det.abs(),
            adj,
        })
    }

    /// `d` lines of `d` integers, each line a column of `B`.
    pub fn parse(text: &str) -> Result<Self> {
        let cols = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cols)
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// `|det B|`, the index of `L`, which is the ideal length.
    pub fn index(&self) -> usize {
        usize::try_from(&self.det_abs).expect("index fits in usize")
    }

    pub fn det_abs(&self) -> &BigInt {
        &self.det_abs
    }

    /// `adj·v mod |det|`: equal keys exactly for vectors congruent mod `L`.
    pub fn class_key(&self, v: &[i64]) -> Vec<BigInt> {
        self.adj
            .iter()
            .map(|row| {
                let s: BigInt = row.iter().zip(v).map(|(a, &x)| a * BigInt::from(x)).sum();
                s.mod_floor(&self.det_abs)
            })
            .collect()
    }

    /// Whether `B z = v` has an integer solution.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.class_key(v).iter().all(|x| x.is_zero())
    }

    /// The integer solution of `B z = v`, if any.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        let mut z = Vec::with_capacity(v.len());
        for row in &self.adj {
            let s: BigInt = row.iter().zip(v).map(|(a, &x)| a * BigInt::from(x)).sum();
            let (q, r) = s.div_mod_floor(&self.det_abs);
            if !r.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(z)
    }
}

/// Binomial reduced basis of `I_L` under `ord`.
///
/// `V_n^d` is scanned in increasing order keeping the first representative
/// of each class mod `L`; the tail of a minimal gap `u` is `x^{u_λ}` for the
/// kept representative `u_λ ≡ u`.
pub fn from_lattice<F: Field>(
    l: &LatticeBasis,
    ord: &MonomialOrder,
) -> Result<ReducedGroebnerBasis<F>> {
    let d = l.dim();
    if ord.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: ord.dim(),
        });
    }
    let n = l.index();
    let mut cand = v_set(n, d);
    ord.sort(&mut cand);
    let mut reps: HashMap<Vec<BigInt>, Exponent> = HashMap::new();
    let mut chosen = Vec::new();
    for v in cand {
        let key = l.class_key(&v.as_i64());
        if let std::collections::hash_map::Entry::Vacant(e) = reps.entry(key) {
            e.insert(v.clone());
            chosen.push(v);
            if chosen.len() == n {
                break;
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::ClassDeficit {
            expected: n,
            found: chosen.len(),
        });
    }
    let lambda = Staircase::new(chosen)?;
    let mut tails = BTreeMap::new();
    for u in min_gaps(&lambda) {
        let rep = reps
            .get(&l.class_key(&u.as_i64()))
            .ok_or(Error::ClassDeficit {
                expected: n,
                found: reps.len(),
            })?;
        tails.insert(u, Polynomial::monomial(rep.clone(), F::one()));
    }
    ReducedGroebnerBasis::new(lambda, tails, ord.clone())
}

/// Moves `u - v` read off binomials `x^u - x^v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TestSet {
    pub moves: BTreeSet<Vec<i64>>,
}

pub fn lattice_test_set<F: Field>(ugb: &[Polynomial<F>]) -> Result<TestSet> {
    let mut moves = BTreeSet::new();
    for p in ugb {
        let terms: Vec<(&Exponent, &F)> = p.terms().collect();
        let shape_ok = terms.len() == 2 && {
            let (a, b) = (terms[0].1, terms[1].1);
            (a.is_one() && (-b.clone()).is_one()) || (b.is_one() && (-a.clone()).is_one())
        };
        if !shape_ok {
            return Err(Error::NotBinomial(p.to_string()));
        }
        let (plus, minus) = if terms[0].1.is_one() {
            (terms[0].0, terms[1].0)
        } else {
            (terms[1].0, terms[0].0)
        };
        moves.insert(plus.diff(minus));
    }
    Ok(TestSet { moves })
}

fn wdot(w: &[Rational], x: &[i64]) -> Rational {
    w.iter()
        .zip(x)
        .map(|(a, &b)| a * Rational::from_integer(b.into()))
        .sum()
}

/// Augments `x` along improving moves `±t` until none applies. A move
/// improves when it lowers `w·x`, or keeps it and is lex-positive
/// (`x1 > ... > xd`), so tied weights still reach an optimum.
pub fn lattice_minimize(t: &TestSet, x: &[i64], w: &[Rational]) -> Vec<i64> {
    let mut moves: Vec<Vec<i64>> = t
        .moves
        .iter()
        .flat_map(|m| [m.clone(), m.iter().map(|c| -c).collect()])
        .collect();
    moves.sort();
    moves.dedup();
    moves.retain(|m| {
        let v = wdot(w, m);
        v > Rational::zero() || (v.is_zero() && m.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
    });
    let mut x = x.to_vec();
    'walk: loop {
        for m in &moves {
            let y: Vec<i64> = x.iter().zip(m).map(|(a, b)| a - b).collect();
            if y.iter().all(|&c| c >= 0) {
                x = y;
                continue 'walk;
            }
        }
        return x;
    }
}

/// `Σ_v a_v x^v` with `a_v = det(C^λ with column v replaced by c^u) / det(C^λ)`.
pub fn point_tail_by_determinants<F: Field>(
    c: &PointConfiguration<F>,
    lambda: &Staircase,
    u: &Exponent,
) -> Result<Polynomial<F>> {
    let cols: Vec<Vec<F>> = lambda.iter().map(|v| c.evaluation_column(v)).collect();
    let n = cols.len();
    let to_rows = |cs: &[Vec<F>]| -> Vec<Vec<F>> {
        (0..n)
            .map(|i| cs.iter().map(|col| col[i].clone()).collect())
            .collect()
    };
    let base = crate::linalg::determinant(to_rows(&cols));
    let inv = base.inverse().ok_or(Error::RankCollapse)?;
    let cu = c.evaluation_column(u);
    let mut out = Polynomial::zero();
    for (k, v) in lambda.iter().enumerate() {
        let mut cs = cols.clone();
        cs[k] = cu.clone();
        let dk = crate::linalg::determinant(to_rows(&cs));
        out.add_term(v.clone(), dk * inv.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ratio, rational_vector, ConstModulus, Fp};

    fn qp(s: &str, d: usize) -> Polynomial<Rational> {
        Polynomial::parse(s, d).unwrap()
    }

    fn pts(v: &[&[i64]]) -> PointConfiguration<Rational> {
        PointConfiguration::new(v.iter().map(|p| rational_vector(p)).collect()).unwrap()
    }

    #[test]
    fn monomial_ideals() {
        let g = monomial_ideal::<Rational>(&"{00,10,20}".parse().unwrap());
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert_eq!(e, [qp("x1^3", 2), qp("x2", 2)].into_iter().collect());
        let g = monomial_ideal::<Rational>(&"{000}".parse().unwrap());
        assert_eq!(g.len(), 3);
        let g = monomial_ideal::<Rational>(&"{00,10,01}".parse().unwrap());
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert_eq!(
            e,
            [qp("x1^2", 2), qp("x1*x2", 2), qp("x2^2", 2)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn three_points() {
        let c = pts(&[&[0, 0], &[1, 1], &[2, 4]]);
        let lex: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let g = from_points(&c, &lex).unwrap();
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert!(e.contains(&qp("x2 - x1^2", 2)));
        assert!(e.contains(&qp("x1^3 - 3*x1^2 + 2*x1", 2)));
        for p in g.elements() {
            for q in c.points() {
                assert!(p.eval(q).is_zero());
            }
        }
    }

    #[test]
    fn single_point_and_univariate() {
        let c = pts(&[&[3, -2]]);
        let g = from_points(&c, &MonomialOrder::default_graded(2)).unwrap();
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert_eq!(e, [qp("x1 - 3", 2), qp("x2 + 2", 2)].into_iter().collect());
        let c = pts(&[&[0], &[1], &[2]]);
        let g = from_points(&c, &MonomialOrder::default_graded(1)).unwrap();
        assert_eq!(g.elements(), vec![qp("x1^3 - 3*x1^2 + 2*x1", 1)]);
    }

    #[test]
    fn cramer_agrees_with_solve() {
        let c = pts(&[&[0, 0], &[1, 3], &[-2, 5], &[4, 1]]);
        let g = from_points(&c, &MonomialOrder::default_graded(2)).unwrap();
        for (u, t) in g.tails() {
            assert_eq!(
                &point_tail_by_determinants(&c, g.staircase(), u).unwrap(),
                t
            );
        }
    }

    #[test]
    fn duplicate_points_rejected() {
        let r = PointConfiguration::new(vec![rational_vector(&[1, 2]), rational_vector(&[1, 2])]);
        assert!(matches!(r, Err(Error::DuplicatePoints(_))));
        type F2 = Fp<ConstModulus<2>>;
        let many: Vec<Vec<F2>> = (0..5).map(|i| vec![F2::new(i)]).collect();
        assert!(matches!(
            PointConfiguration::new(many),
            Err(Error::DuplicatePoints(_))
        ));
    }

    #[test]
    fn point_parsing() {
        let c = PointConfiguration::<Rational>::parse("0,0\n1/2, -3\n").unwrap();
        assert_eq!(c.points()[1], vec![ratio(1, 2), ratio(-3, 1)]);
    }

    #[test]
    fn lattices() {
        let lex: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let l = LatticeBasis::new(vec![vec![3, 0], vec![0, 1]]).unwrap();
        assert_eq!(l.index(), 3);
        let g = from_lattice::<Rational>(&l, &lex).unwrap();
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert_eq!(
            e,
            [qp("x2 - 1", 2), qp("x1^3 - 1", 2)].into_iter().collect()
        );

        let l = LatticeBasis::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let g = from_lattice::<Rational>(&l, &MonomialOrder::default_graded(3)).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.elements().contains(&qp("x3 - 1", 3)));

        assert_eq!(
            LatticeBasis::new(vec![vec![1, 2], vec![2, 4]]).unwrap_err(),
            Error::SingularBasis
        );
    }

    #[test]
    fn skew_lattice_by_brute_force() {
        // columns (1,1), (-1,2): L = {(x,y) : x ≡ y mod 3}
        let l = LatticeBasis::new(vec![vec![1, 1], vec![-1, 2]]).unwrap();
        assert_eq!(l.index(), 3);
        let member = |x: i64, y: i64| {
            (-20..=20).any(|a: i64| (-20..=20).any(|b: i64| a - b == x && a + 2 * b == y))
        };
        for x in -6..=6 {
            for y in -6..=6 {
                assert_eq!(l.contains(&[x, y]), member(x, y), "({x},{y})");
            }
        }
        let g = from_lattice::<Rational>(&l, &MonomialOrder::default_graded(2)).unwrap();
        assert_eq!(g.staircase().to_string(), "{(0,0),(1,0),(0,1)}");
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        let want = [qp("x1^2 - x2", 2), qp("x1*x2 - 1", 2), qp("x2^2 - x1", 2)];
        assert_eq!(e, want.into_iter().collect());
        let lex: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let g = from_lattice::<Rational>(&l, &lex).unwrap();
        let e: BTreeSet<_> = g.elements().into_iter().collect();
        assert_eq!(
            e,
            [qp("x1^3 - 1", 2), qp("x2 - x1^2", 2)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn test_sets() {
        let t = lattice_test_set(&[qp("x2 - 1", 2), qp("x1^3 - 1", 2)]).unwrap();
        assert_eq!(t.moves, [vec![0, 1], vec![3, 0]].into_iter().collect());
        let t = lattice_test_set(&[qp("x1 - 1", 1)]).unwrap();
        assert_eq!(t.moves, [vec![1]].into_iter().collect());
        let t = lattice_test_set(&[qp("x1^2 - x2", 2)]).unwrap();
        assert_eq!(t.moves, [vec![2, -1]].into_iter().collect());
        assert!(matches!(
            lattice_test_set(&[qp("2*x1 - 1", 2)]),
            Err(Error::NotBinomial(_))
        ));
        assert!(matches!(
            lattice_test_set(&[qp("x1 - x2 + 1", 2)]),
            Err(Error::NotBinomial(_))
        ));
    }

    #[test]
    fn minimize() {
        let t = TestSet {
            moves: [vec![0, 1], vec![3, 0]].into_iter().collect(),
        };
        assert_eq!(
            lattice_minimize(&t, &[5, 2], &rational_vector(&[1, 1])),
            vec![2, 0]
        );
        assert_eq!(
            lattice_minimize(&t, &[2, 0], &rational_vector(&[1, 1])),
            vec![2, 0]
        );
        let t = TestSet {
            moves: [vec![1]].into_iter().collect(),
        };
        assert_eq!(lattice_minimize(&t, &[7], &rational_vector(&[1])), vec![0]);
    }
}
