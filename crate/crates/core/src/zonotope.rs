//! The Hilbert zonotope: primitive differences of `V_n^d` and the chambers of
//! their central hyperplane arrangement.
//!
//! Chambers are found by slicing each orthant with the simplex
//! `{w : s_i w_i >= 0, Σ s_i w_i = 1}` and inserting the hyperplanes
//! `w · v = 0` one at a time. A cell is kept as the list of its vertices,
//! each tagged with the constraints tight at it, so that splitting a cell only
//! needs the cell's edges (pairs of vertices whose common tight constraints
//! have rank `d - 2` inside the simplex).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{primitive_integer_vector, Rational};
use crate::linalg::integer_rank;
use crate::staircase::v_set;

pub const DEFAULT_CHAMBER_GUARD: usize = 1_000_000;

/// One representative per antipodal pair of primitive differences of `V_n^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    pub n: usize,
    pub d: usize,
    generators: Vec<Vec<i64>>,
}

impl DirectionSet {
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A full-dimensional chamber with an exact interior witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Primitive integer vector interior to the chamber.
    pub witness: Vec<BigInt>,
    /// The zonotope vertex minimizing the witness.
    pub vertex: Vec<i64>,
    /// `sign(witness · g)` per generator, in generator order.
    pub signs: Vec<Sign>,
}

impl Chamber {
    pub fn witness_rational(&self) -> Vec<Rational> {
        self.witness
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }

    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|s| match s {
                Sign::Plus => '+',
                Sign::Minus => '-',
            })
            .collect()
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w={} h={} signs={}",
            crate::staircase::format_int_vector(&self.witness),
            crate::staircase::format_int_vector(&self.vertex),
            self.sign_string()
        )
    }
}

/// Sign normalization: first nonzero entry positive.
fn normalize_sign(v: &mut [i64]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0) {
        if first < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// The primitive elements of `V_n^d - V_n^d`, one per antipodal pair.
///
/// `v` is dropped when it is zero or `v = k·u` for an integer `k >= 2` and
/// some `u ∈ V_n^d - V_n^d`. For `n = 1` the unit vectors are returned.
pub fn primitive_differences(n: usize, d: usize) -> DirectionSet {
    let mut generators: Vec<Vec<i64>> = if n <= 1 {
        (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        let v = v_set(n, d);
        let diffs: HashSet<Vec<i64>> = v
            .iter()
            .flat_map(|a| v.iter().map(move |b| a.diff(b)))
            .collect();
        let mut keep = BTreeSet::new();
        for x in &diffs {
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            let max = x.iter().map(|c| c.abs()).max().unwrap_or(0);
            let is_multiple = (2..=max).any(|k| {
                x.iter().all(|c| c % k == 0)
                    && diffs.contains(&x.iter().map(|c| c / k).collect::<Vec<_>>())
            });
            if is_multiple {
                continue;
            }
            let mut y = x.clone();
            normalize_sign(&mut y);
            keep.insert(y);
        }
        keep.into_iter().collect()
    };
    generators.sort_by(|a, b| l1(a).cmp(&l1(b)).then_with(|| b.cmp(a)));
    DirectionSet { n, d, generators }
}

fn dot_q(w: &[Rational], v: &[i64]) -> Rational {
    w.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (a, &b)| acc + a * BigInt::from(b))
}

/// The unique minimizer of `w` over `Σ_{v ∈ ±D} [0,1]·v`: the sum of the
/// elements `v` of the full antipodal set with `w · v < 0`.
pub fn zonotope_vertex(w: &[Rational], dirs: &DirectionSet) -> Result<Vec<i64>> {
    if w.len() != dirs.d {
        return Err(Error::DimensionMismatch {
            expected: dirs.d,
            found: w.len(),
        });
    }
    let mut h = vec![0i64; dirs.d];
    for g in &dirs.generators {
        let s = dot_q(w, g);
        if s.is_zero() {
            return Err(Error::NonGenericWeight(format!(
                "w · {} = 0",
                crate::staircase::format_int_vector(g)
            )));
        }
        let neg = s.is_negative();
        for (acc, &c) in h.iter_mut().zip(g) {
            *acc += if neg { c } else { -c };
        }
    }
    Ok(h)
}

pub fn sign_vector(w: &[Rational], dirs: &DirectionSet) -> Result<Vec<Sign>> {
    dirs.generators
        .iter()
        .map(|g| {
            let s = dot_q(w, g);
            if s.is_zero() {
                Err(Error::NonGenericWeight(format!(
                    "w · {} = 0",
                    crate::staircase::format_int_vector(g)
                )))
            } else if s.is_positive() {
                Ok(Sign::Plus)
            } else {
                Ok(Sign::Minus)
            }
        })
        .collect()
}

#[derive(Clone)]
struct CellVertex {
    point: Vec<Rational>,
    /// Sorted indices into the constraint list.
    tight: Vec<usize>,
}

#[derive(Clone)]
struct Cell {
    verts: Vec<CellVertex>,
    signs: Vec<Option<Sign>>,
}

/// Incremental arrangement of hyperplanes inside one orthant's simplex.
struct SimplexArrangement<'a> {
    d: usize,
    /// Constraint normals: `e_0 .. e_{d-1}` for the facets, then generators.
    normals: Vec<Vec<i64>>,
    orthant: Vec<i64>,
    dirs: &'a DirectionSet,
    cells: Vec<Cell>,
}

impl<'a> SimplexArrangement<'a> {
    fn new(dirs: &'a DirectionSet, orthant: Vec<i64>) -> Self {
        let d = dirs.d;
        let mut normals: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                let mut e = vec![0; d];
                e[i] = 1;
                e
            })
            .collect();
        normals.extend(dirs.generators.iter().cloned());
        let verts = (0..d)
            .map(|i| {
                let mut p = vec![Rational::zero(); d];
                p[i] = Rational::from_integer(orthant[i].into());
                CellVertex {
                    point: p,
                    tight: (0..d).filter(|&j| j != i).collect(),
                }
            })
            .collect();
        let cell = Cell {
            verts,
            signs: vec![None; dirs.len()],
        };
        SimplexArrangement {
            d,
            normals,
            orthant,
            dirs,
            cells: vec![cell],
        }
    }

    /// Two vertices span an edge when their common tight constraints, together
    /// with the simplex's affine hull, have rank `d - 1`.
    fn is_edge(&self, a: &CellVertex, b: &CellVertex) -> bool {
        let mut rows: Vec<Vec<i64>> = a
            .tight
            .iter()
            .filter(|t| b.tight.binary_search(t).is_ok())
            .map(|&t| self.normals[t].clone())
            .collect();
        if rows.len() + 1 < self.d - 1 {
            return false;
        }
        rows.push(self.orthant.clone());
        integer_rank(&rows) == self.d - 1
    }

    fn insert(&mut self, j: usize, guard: usize) -> Result<()> {
        let g = &self.dirs.generators[j];
        let h = self.d + j;
        let cells = std::mem::take(&mut self.cells);
        let mut out = Vec::with_capacity(cells.len() + 1);
        for mut cell in cells {
            let vals: Vec<Rational> = cell.verts.iter().map(|v| dot_q(&v.point, g)).collect();
            let pos = vals.iter().any(|x| x.is_positive());
            let neg = vals.iter().any(|x| x.is_negative());
            if !(pos && neg) {
                for (v, x) in cell.verts.iter_mut().zip(&vals) {
                    if x.is_zero() {
                        add_tight(&mut v.tight, h);
                    }
                }
                cell.signs[j] = Some(if pos { Sign::Plus } else { Sign::Minus });
                out.push(cell);
                continue;
            }
            let mut plus = Vec::new();
            let mut minus = Vec::new();
            for (v, x) in cell.verts.iter().zip(&vals) {
                if x.is_zero() {
                    let mut v = v.clone();
                    add_tight(&mut v.tight, h);
                    plus.push(v.clone());
                    minus.push(v);
                } else if x.is_positive() {
                    plus.push(v.clone());
                } else {
                    minus.push(v.clone());
                }
            }
            for (a, xa) in cell.verts.iter().zip(&vals) {
                if !xa.is_positive() {
                    continue;
                }
                for (b, xb) in cell.verts.iter().zip(&vals) {
                    if !xb.is_negative() || !self.is_edge(a, b) {
                        continue;
                    }
                    let t = xa / (xa - xb);
                    let point: Vec<Rational> = a
                        .point
                        .iter()
                        .zip(&b.point)
                        .map(|(p, q)| p + (q - p) * &t)
                        .collect();
                    let mut tight: Vec<usize> = a
                        .tight
                        .iter()
                        .filter(|c| b.tight.binary_search(c).is_ok())
                        .copied()
                        .collect();
                    add_tight(&mut tight, h);
                    let v = CellVertex { point, tight };
                    plus.push(v.clone());
                    minus.push(v);
                }
            }
            let mut signs_plus = cell.signs.clone();
            signs_plus[j] = Some(Sign::Plus);
            cell.signs[j] = Some(Sign::Minus);
            out.push(Cell {
                verts: plus,
                signs: signs_plus,
            });
            out.push(Cell {
                verts: minus,
                signs: cell.signs,
            });
            if out.len() > guard {
                return Err(Error::TooLarge {
                    what: "chamber count",
                    limit: guard,
                });
            }
        }
        self.cells = out;
        Ok(())
    }

    fn chambers(mut self, guard: usize) -> Result<Vec<Chamber>> {
        for j in 0..self.dirs.len() {
            self.insert(j, guard)?;
        }
        let dirs = self.dirs;
        self.cells
            .into_iter()
            .map(|cell| {
                let k = Rational::from_integer(BigInt::from(cell.verts.len()));
                let mut bary = vec![Rational::zero(); dirs.d];
                for v in &cell.verts {
                    for (acc, x) in bary.iter_mut().zip(&v.point) {
                        *acc += x;
                    }
                }
                let bary: Vec<Rational> = bary.into_iter().map(|x| x / &k).collect();
                let witness = primitive_integer_vector(&bary);
                let wq: Vec<Rational> = witness
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                let signs = sign_vector(&wq, dirs)?;
                let expected: Vec<Sign> = cell
                    .signs
                    .iter()
                    .map(|s| s.expect("all inserted"))
                    .collect();
                if signs != expected {
                    return Err(Error::Internal("barycenter left its cell".into()));
                }
                let vertex = zonotope_vertex(&wq, dirs)?;
                Ok(Chamber {
                    witness,
                    vertex,
                    signs,
                })
            })
            .collect()
    }
}

fn add_tight(tight: &mut Vec<usize>, h: usize) {
    if let Err(pos) = tight.binary_search(&h) {
        tight.insert(pos, h);
    }
}

/// Chambers of the arrangement of `D_n^d` meeting the open positive orthant,
/// each with a strictly positive witness.
pub fn positive_chambers(n: usize, d: usize, guard: usize) -> Result<Vec<Chamber>> {
    let dirs = primitive_differences(n, d);
    positive_chambers_of(&dirs, guard)
}

pub fn positive_chambers_of(dirs: &DirectionSet, guard: usize) -> Result<Vec<Chamber>> {
    let mut out = SimplexArrangement::new(dirs, vec![1; dirs.d]).chambers(guard)?;
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(out)
}

/// Every chamber of the arrangement of `D_n^d`.
pub fn all_chambers(n: usize, d: usize, guard: usize) -> Result<Vec<Chamber>> {
    let dirs = primitive_differences(n, d);
    let mut out = Vec::new();
    // orthants with s_0 = +; the others are their antipodes
    for mask in 0..(1usize << (d - 1)) {
        let orthant: Vec<i64> = (0..d)
            .map(|i| {
                if i > 0 && mask >> (i - 1) & 1 == 1 {
                    -1
                } else {
                    1
                }
            })
            .collect();
        let half = SimplexArrangement::new(&dirs, orthant).chambers(guard)?;
        for c in half {
            let anti_w: Vec<BigInt> = c.witness.iter().map(|x| -x).collect();
            let wq: Vec<Rational> = anti_w
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let vertex = zonotope_vertex(&wq, &dirs)?;
            let signs = c.signs.iter().map(|s| s.flip()).collect();
            out.push(c);
            out.push(Chamber {
                witness: anti_w,
                vertex,
                signs,
            });
            if out.len() > guard {
                return Err(Error::TooLarge {
                    what: "chamber count",
                    limit: guard,
                });
            }
        }
    }
    out.sort_by(|a, b| a.signs.cmp(&b.signs));
    Ok(out)
}
