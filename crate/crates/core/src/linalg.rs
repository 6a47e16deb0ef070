//! Dense exact linear algebra over a [`Field`].
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{Field, Rational};

/// Rank by Gaussian elimination. Consumes the matrix.
pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        for i in (r + 1)..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for k in c..cols {
                let t = f.clone() * m[r][k].clone();
                m[i][k] = m[i][k].clone() - t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det = det * m[c][c].clone();
        let inv = m[c][c].inverse().expect("nonzero pivot");
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() * inv.clone();
            for k in c..n {
                let t = f.clone() * m[c][k].clone();
                m[i][k] = m[i][k].clone() - t;
            }
        }
    }
    det
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(p, c);
        b.swap(p, c);
        let inv = a[c][c].inverse()?;
        for k in c..n {
            a[c][k] = a[c][k].clone() * inv.clone();
        }
        b[c] = b[c].clone() * inv;
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..n {
                let t = f.clone() * a[c][k].clone();
                a[i][k] = a[i][k].clone() - t;
            }
            let t = f * b[c].clone();
            b[i] = b[i].clone() - t;
        }
    }
    Some(b)
}

/// Rank of a list of integer vectors.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    rank(m)
}

/// Determinant and adjugate of an integer matrix, `adj(M) = det(M)·M⁻¹`.
/// A singular matrix yields a zero determinant and a zero adjugate.
pub fn integer_det_adjugate(m: &[Vec<i64>]) -> (BigInt, Vec<Vec<BigInt>>) {
    let n = m.len();
    let qm: Vec<Vec<Rational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let det = determinant(qm.clone());
    if det.is_zero() {
        return (BigInt::zero(), vec![vec![BigInt::zero(); n]; n]);
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let col = solve(qm.clone(), e).expect("nonsingular");
        for i in 0..n {
            let v = &col[i] * &det;
            debug_assert!(v.is_integer());
            adj[i][j] = v.to_integer();
        }
    }
    (det.to_integer(), adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| ratio(x, 1)).collect()
    }

    #[test]
    fn rank_and_det() {
        let m = vec![q(&[1, 0, 0]), q(&[0, 1, 0]), q(&[-1, 1, 0])];
        assert_eq!(rank(m.clone()), 2);
        assert_eq!(determinant(m), ratio(0, 1));
        let m = vec![q(&[2, 1]), q(&[1, 3])];
        assert_eq!(determinant(m), ratio(5, 1));
    }

    #[test]
    fn solving() {
        let a = vec![q(&[1, 1]), q(&[1, -1])];
        let x = solve(a, q(&[3, 1])).unwrap();
        assert_eq!(x, q(&[2, 1]));
        assert!(solve(vec![q(&[1, 1]), q(&[2, 2])], q(&[1, 1])).is_none());
    }

    #[test]
    fn adjugate_matches_inverse() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, -1], vec![1, 2]],
            vec![vec![3, 0], vec![0, 1]],
            vec![vec![2, 1, 0], vec![0, 3, 1], vec![1, 0, 4]],
            vec![vec![0, 2], vec![3, 1]],
        ];
        for m in cases {
            let n = m.len();
            let (det, adj) = integer_det_adjugate(&m);
            // M · adj(M) = det · I
            for i in 0..n {
                for j in 0..n {
                    let s: BigInt = (0..n).map(|k| BigInt::from(m[i][k]) * &adj[k][j]).sum();
                    let e = if i == j { det.clone() } else { BigInt::zero() };
                    assert_eq!(s, e, "{m:?}");
                }
            }
            let qm: Vec<Vec<Rational>> = m.iter().map(|r| q(r)).collect();
            assert_eq!(Rational::from_integer(det), determinant(qm));
        }
    }
}
