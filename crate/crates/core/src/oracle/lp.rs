//! A dense two-phase simplex over the rationals with Bland's rule. Meant for
//! tiny certification problems only.

use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Constraint rows; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj` over the columns `< allowed`. `false` if unbounded.
    fn optimize(&mut self, obj: &[Rational], allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut r = obj[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_zero() {
                        r -= &obj[self.basis[i]] * &row[j];
                    }
                }
                if r.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn value(&self, obj: &[Rational]) -> Rational {
        let rhs = self.rhs();
        self.rows
            .iter()
            .zip(&self.basis)
            .map(|(row, &b)| &obj[b] * &row[rhs])
            .sum()
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let nv = c.len();
    let mut rows = Vec::with_capacity(m);
    for (i, (ar, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Rational> = ar
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        row.push(if flip { -bi } else { bi.clone() });
        rows.push(row);
    }
    if m == 0 {
        return if c.iter().any(|x| x.is_positive()) {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Optimal {
                value: Rational::zero(),
                x: vec![Rational::zero(); nv],
            }
        };
    }
    let mut t = Tableau {
        rows,
        basis: (nv..nv + m).collect(),
    };
    let phase1: Vec<Rational> = (0..nv + m)
        .map(|j| {
            if j < nv {
                Rational::zero()
            } else {
                -Rational::one()
            }
        })
        .collect();
    t.optimize(&phase1, nv + m);
    if t.value(&phase1).is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nv {
            match (0..nv).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut obj = c.to_vec();
    obj.extend((0..m).map(|_| Rational::zero()));
    if t.rows.is_empty() {
        return if c.iter().any(|x| x.is_positive()) {
            LpOutcome::Unbounded
        } else {
            LpOutcome::Optimal {
                value: Rational::zero(),
                x: vec![Rational::zero(); nv],
            }
        };
    }
    if !t.optimize(&obj, nv) {
        return LpOutcome::Unbounded;
    }
    let rhs = t.rhs();
    let mut x = vec![Rational::zero(); nv];
    for (row, &bi) in t.rows.iter().zip(&t.basis) {
        if bi < nv {
            x[bi] = row[rhs].clone();
        }
    }
    LpOutcome::Optimal {
        value: t.value(&obj),
        x,
    }
}

/// Whether `A x = b`, `x >= 0` has a solution.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let nv = a.first().map(|r| r.len()).unwrap_or(0);
    !matches!(
        maximize(a, b, &vec![Rational::zero(); nv]),
        LpOutcome::Infeasible
    )
}
