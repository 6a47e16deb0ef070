use std::fmt;

use super::basis::ReducedGroebnerBasis;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::staircase::{u_set, Exponent};

/// The `n × |U|` matrix `a_{v,u}` with `x^u ≡ Σ_v a_{v,u} x^v`.
///
/// Rows and columns are kept in canonical exponent order.
#[derive(Clone, PartialEq, Eq)]
pub struct CoeffTable<F> {
    pub(crate) rows: Vec<Exponent>,
    pub(crate) columns: Vec<Exponent>,
    /// Row-major, `entries[r][c]`.
    pub(crate) entries: Vec<Vec<F>>,
}

impl<F: Field> CoeffTable<F> {
    /// Builds from explicit data; rows and columns are sorted internally.
    pub fn from_parts(
        rows: Vec<Exponent>,
        columns: Vec<Exponent>,
        entries: Vec<Vec<F>>,
    ) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != columns.len()) {
            return Err(Error::Internal(
                "table shape does not match its labels".into(),
            ));
        }
        let mut rperm: Vec<usize> = (0..rows.len()).collect();
        rperm.sort_by(|&a, &b| rows[a].cmp(&rows[b]));
        let mut cperm: Vec<usize> = (0..columns.len()).collect();
        cperm.sort_by(|&a, &b| columns[a].cmp(&columns[b]));
        let entries = rperm
            .iter()
            .map(|&r| cperm.iter().map(|&c| entries[r][c].clone()).collect())
            .collect();
        Ok(CoeffTable {
            rows: rperm.iter().map(|&r| rows[r].clone()).collect(),
            columns: cperm.iter().map(|&c| columns[c].clone()).collect(),
            entries,
        })
    }

    pub fn rows(&self) -> &[Exponent] {
        &self.rows
    }

    pub fn columns(&self) -> &[Exponent] {
        &self.columns
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.columns.first().map(|c| c.dim()).unwrap_or(0)
    }

    pub fn column_index(&self, u: &Exponent) -> Option<usize> {
        self.columns.binary_search(u).ok()
    }

    pub fn entry(&self, row: usize, col: usize) -> &F {
        &self.entries[row][col]
    }

    /// Column `A^u` as a vector over the rows.
    pub fn column(&self, u: &Exponent) -> Option<Vec<F>> {
        let c = self.column_index(u)?;
        Some(self.entries.iter().map(|r| r[c].clone()).collect())
    }

    /// `[x^u]` as a polynomial supported on the row basis.
    pub fn normal_form(&self, u: &Exponent) -> Option<Polynomial<F>> {
        let c = self.column_index(u)?;
        Some(Polynomial::from_terms(
            self.rows
                .iter()
                .zip(&self.entries)
                .map(|(v, r)| (v.clone(), r[c].clone())),
        ))
    }
}

impl<F: Field> fmt::Display for CoeffTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        writeln!(f, "      {}", cols.join(" "))?;
        for (v, r) in self.rows.iter().zip(&self.entries) {
            let vals: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{v} {}", vals.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for CoeffTable<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal forms of every `x^u`, `u ∈ U_n^d`, modulo a reduced basis.
///
/// Columns are filled in increasing order under the basis' own order. A
/// column outside `λ ∪ min(λ̄)` is `u = s + e_i` with `s` already done and
/// outside `λ`; then `[x^u] = Σ_t a_{t,s} [x^{t + e_i}]`, and every
/// `t + e_i` precedes `u`.
pub fn normal_form_table<F: Field>(g: &ReducedGroebnerBasis<F>) -> Result<CoeffTable<F>> {
    let lambda = g.staircase();
    let n = lambda.len();
    let d = lambda.dim();
    let columns = u_set(n, d);
    let mut order_idx: Vec<usize> = (0..columns.len()).collect();
    order_idx.sort_by(|&a, &b| g.order().compare(&columns[a], &columns[b]));

    let index = |u: &Exponent| columns.binary_search(u).ok();
    let mut cols: Vec<Option<Vec<F>>> = vec![None; columns.len()];
    for &ci in &order_idx {
        let u = &columns[ci];
        let col = if let Some(p) = lambda.position(u) {
            let mut c = vec![F::zero(); n];
            c[p] = F::one();
            c
        } else if let Some(t) = g.tail(u) {
            let mut c = vec![F::zero(); n];
            for (v, a) in t.terms() {
                let p = lambda.position(v).ok_or_else(|| {
                    Error::MissingPredecessor(format!("tail monomial {v} of {u}"))
                })?;
                c[p] = a.clone();
            }
            c
        } else {
            let (i, s) = (0..d)
                .filter_map(|i| u.minus_unit(i).map(|s| (i, s)))
                .find(|(_, s)| !lambda.contains(s))
                .ok_or_else(|| Error::MissingPredecessor(format!("{u} has no gap predecessor")))?;
            let sc = index(&s)
                .and_then(|k| cols[k].as_ref())
                .ok_or_else(|| Error::MissingPredecessor(format!("{s} before {u}")))?;
            let mut c = vec![F::zero(); n];
            for (p, a) in sc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let te = lambda.elements()[p].plus_unit(i);
                let tc = index(&te)
                    .and_then(|k| cols[k].as_ref())
                    .ok_or_else(|| Error::MissingPredecessor(format!("{te} before {u}")))?;
                for (x, y) in c.iter_mut().zip(tc) {
                    if !y.is_zero() {
                        *x = x.clone() + a.clone() * y.clone();
                    }
                }
            }
            c
        };
        cols[ci] = Some(col);
    }
    let cols: Vec<Vec<F>> = cols
        .into_iter()
        .map(|c| c.expect("every column filled"))
        .collect();
    let entries = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    Ok(CoeffTable {
        rows: lambda.elements().to_vec(),
        columns,
        entries,
    })
}
