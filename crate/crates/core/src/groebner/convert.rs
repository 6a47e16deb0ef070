use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use super::basis::ReducedGroebnerBasis;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::table::CoeffTable;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational_vector, primitive_integer_vector, Field, Rational};
use crate::staircase::{in_v_set, is_staircase, min_gaps, Exponent, Staircase};

/// Output of one basis conversion.
#[derive(Clone)]
pub struct Conversion<F> {
    pub staircase: Staircase,
    pub basis: ReducedGroebnerBasis<F>,
    pub table: CoeffTable<F>,
    /// Scalar multiply-adds spent on elimination.
    pub ops: u64,
}

impl<F: Field> std::fmt::Debug for Conversion<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Conversion[{} | {:?} | ops={}]",
            self.staircase, self.basis, self.ops
        )
    }
}

fn dot(w: &[BigInt], u: &Exponent) -> BigInt {
    w.iter()
        .zip(u.coords())
        .map(|(a, &b)| a * BigInt::from(b))
        .sum()
}

/// Fails if two distinct points of `V_n^d` tie under `w`.
pub fn check_generic(w: &[Rational], n: usize) -> Result<()> {
    let d = w.len();
    let wi = primitive_integer_vector(w);
    let mut vals: Vec<(BigInt, Exponent)> = crate::staircase::v_set(n, d)
        .into_iter()
        .map(|v| (dot(&wi, &v), v))
        .collect();
    vals.sort();
    for p in vals.windows(2) {
        if p[0].0 == p[1].0 {
            return Err(Error::NonGenericWeight(format!(
                "{} ties {} and {}",
                format_rational_vector(w),
                p[0].1,
                p[1].1
            )));
        }
    }
    Ok(())
}

/// Finds the initial staircase of the ideal under `w` by greedy column
/// selection with Gaussian elimination on the fly.
///
/// Columns are visited in increasing `w`-value, ties broken by
/// `x1 > x2 > ... > xd`. The `i`-th pick is the first unused column of
/// `V_n^d` with a nonzero entry in some row `>= i`; the largest such row
/// becomes pivot row `i`.
pub fn convert_basis<F: Field>(a: &CoeffTable<F>, w: &[Rational]) -> Result<Conversion<F>> {
    let d = a.dim();
    let n = a.n();
    if w.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: w.len(),
        });
    }
    if w.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonGenericWeight(format!(
            "{} is not strictly positive",
            format_rational_vector(w)
        )));
    }
    check_generic(w, n)?;
    let ord = MonomialOrder::weighted(w);
    let mut visit: Vec<usize> = (0..a.columns.len()).collect();
    visit.sort_by(|&x, &y| ord.compare(&a.columns[x], &a.columns[y]));
    let candidates: Vec<usize> = visit
        .into_iter()
        .filter(|&c| in_v_set(&a.columns[c], n))
        .collect();

    let mut m = a.entries.clone();
    let ncols = a.columns.len();
    let mut ops = 0u64;
    let mut picked: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; ncols];
    for i in 0..n {
        let mut found = None;
        for &c in &candidates {
            if used[c] {
                continue;
            }
            if let Some(k) = (i..n).rev().find(|&k| !m[k][c].is_zero()) {
                found = Some((c, k));
                break;
            }
        }
        let Some((c, k)) = found else {
            return Err(Error::RankDeficient(i));
        };
        used[c] = true;
        picked.push(c);
        m.swap(i, k);
        let inv = m[i][c].inverse().expect("nonzero pivot");
        if !inv.is_one() {
            for x in m[i].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                    ops += 1;
                }
            }
        }
        let pivot_row = m[i].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == i || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                    ops += 1;
                }
            }
        }
    }

    let mu_elems: Vec<Exponent> = picked.iter().map(|&c| a.columns[c].clone()).collect();
    if !is_staircase(&mu_elems) {
        return Err(Error::Internal(format!(
            "greedy selection under {} is not downward closed",
            format_rational_vector(w)
        )));
    }
    // rows back into canonical order so the result does not depend on pivoting
    let mut rows: Vec<(Exponent, Vec<F>)> = mu_elems.iter().cloned().zip(m).collect();
    rows.sort_by(|x, y| x.0.cmp(&y.0));
    let (row_labels, entries): (Vec<Exponent>, Vec<Vec<F>>) = rows.into_iter().unzip();
    let table = CoeffTable {
        rows: row_labels,
        columns: a.columns.clone(),
        entries,
    };
    let staircase = Staircase::new(mu_elems)?;

    let mut tails = BTreeMap::new();
    for u in min_gaps(&staircase) {
        let t = table
            .normal_form(&u)
            .ok_or_else(|| Error::Internal(format!("minimal gap {u} outside the table")))?;
        tails.insert(u, t);
    }
    let basis = ReducedGroebnerBasis::new_unchecked(staircase.clone(), tails, ord);
    debug_assert!(super::basis::validate_reduced_gb(&basis, n).is_ok());
    Ok(Conversion {
        staircase,
        basis,
        table,
        ops,
    })
}

/// Compares by `w` then by the fallback `x1 > ... > xd`.
pub fn weight_compare(w: &[Rational], u: &Exponent, v: &Exponent) -> Ordering {
    MonomialOrder::weighted(w).compare(u, v)
}

/// `x^u - [x^u]` for a column of `table`.
pub fn element_of<F: Field>(table: &CoeffTable<F>, u: &Exponent) -> Option<Polynomial<F>> {
    let t = table.normal_form(u)?;
    Some(Polynomial::monomial(u.clone(), F::one()).sub(&t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{ratio, rational_vector};
    use crate::groebner::table::normal_form_table;

    fn qp(s: &str) -> Polynomial<Rational> {
        Polynomial::parse(s, 2).unwrap()
    }

    fn example() -> ReducedGroebnerBasis<Rational> {
        let ord: MonomialOrder = "lex:x2>x1".parse().unwrap();
        ReducedGroebnerBasis::from_polynomials(
            &[qp("x1^3 - 3*x1^2 + 3*x1 - 1"), qp("x2 - x1 + 1")],
            ord,
        )
        .unwrap()
    }

    #[test]
    fn example_conversion() {
        let g = example();
        let a = normal_form_table(&g).unwrap();
        let c = convert_basis(&a, &rational_vector(&[3, 2])).unwrap();
        assert_eq!(c.staircase.to_string(), "{(0,0),(0,1),(0,2)}");
        let mut elems = c.basis.elements();
        elems.sort();
        let mut want = vec![qp("x1 - x2 - 1"), qp("x2^3")];
        want.sort();
        assert_eq!(elems, want);

        let c = convert_basis(&a, &rational_vector(&[1, 3])).unwrap();
        assert_eq!(c.staircase, *g.staircase());
        assert!(c.basis.same_basis(&g));
    }

    #[test]
    fn idempotent() {
        let a = normal_form_table(&example()).unwrap();
        for w in [[3, 2], [1, 3], [3, 1], [2, 3]] {
            let w = rational_vector(&w);
            let c1 = convert_basis(&a, &w).unwrap();
            let c2 = convert_basis(&c1.table, &w).unwrap();
            assert_eq!(c1.staircase, c2.staircase);
            assert!(c1.basis.same_basis(&c2.basis));
            assert_eq!(c1.table, c2.table);
        }
    }

    #[test]
    fn monomial_ideal_is_fixed() {
        let lam: Staircase = "{00,10,20,01}".parse().unwrap();
        let g = ReducedGroebnerBasis::<Rational>::monomial(
            lam.clone(),
            MonomialOrder::default_graded(2),
        );
        let a = normal_form_table(&g).unwrap();
        for w in [[1, 7], [7, 1], [3, 5], [5, 4]] {
            let c = convert_basis(&a, &rational_vector(&w)).unwrap();
            assert_eq!(c.staircase, lam);
            assert!(c.basis.tails().values().all(|t| t.is_zero()));
        }
    }

    #[test]
    fn rejects_bad_weights() {
        let a = normal_form_table(&example()).unwrap();
        assert!(matches!(
            convert_basis(&a, &rational_vector(&[1, 1])),
            Err(Error::NonGenericWeight(_))
        ));
        assert!(matches!(
            convert_basis(&a, &[ratio(1, 1), ratio(0, 1)]),
            Err(Error::NonGenericWeight(_))
        ));
        assert!(matches!(
            convert_basis(&a, &rational_vector(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
