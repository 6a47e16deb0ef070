//! The full pipeline: witnesses of the positive chambers, one basis
//! conversion per witness, and assembly of the initial staircases, the
//! state polyhedron and the universal Gröbner basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational};
use crate::groebner::{
    convert_basis, normal_form_table, validate_reduced_gb, CoeffTable, MonomialOrder, Polynomial,
    ReducedGroebnerBasis,
};
use crate::staircase::{format_int_vector, parse_int_vector, staircase_sum, Exponent, Staircase};
use crate::zonotope::{positive_chambers, DEFAULT_CHAMBER_GUARD};

/// An element of `U(I)` with the head it has in its originating basis.
#[derive(Clone, PartialEq, Eq)]
pub struct UgbElement<F> {
    pub head: Exponent,
    pub poly: Polynomial<F>,
}

impl<F: Field> UgbElement<F> {
    pub fn display(&self) -> String {
        self.poly.display_with_head(&self.head)
    }
}

#[derive(Clone)]
pub struct UgbResult<F> {
    pub n: usize,
    pub d: usize,
    /// `Λ(I)`, sorted by staircase sum.
    pub initial_staircases: Vec<Staircase>,
    /// `Σλ` for each entry of `initial_staircases`, same order.
    pub state_vertices: Vec<Vec<i64>>,
    pub reduced_bases: BTreeMap<Staircase, ReducedGroebnerBasis<F>>,
    /// `U(I)`, deduplicated, sorted by head then polynomial.
    pub universal_basis: Vec<UgbElement<F>>,
    /// Each positive witness and the staircase it selects.
    pub witness_assignment: Vec<(Vec<BigInt>, Staircase)>,
}

/// `S(I) = conv(vertices) + ℝ₊^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatePolyhedron {
    pub vertices: Vec<Vec<i64>>,
    /// Generators of the recession cone: the unit vectors.
    pub recession: Vec<Vec<i64>>,
}

/// The witness list `W_n^d` of the positive chambers, as primitive integer
/// vectors, sorted.
pub fn universal_order_set(n: usize, d: usize, guard: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut ws: Vec<Vec<BigInt>> = positive_chambers(n, d, guard)?
        .into_iter()
        .map(|c| c.witness)
        .collect();
    ws.sort();
    Ok(ws)
}

pub fn compute_ugb<F: Field>(g: &ReducedGroebnerBasis<F>) -> Result<UgbResult<F>> {
    let ws = universal_order_set(g.n(), g.dim(), DEFAULT_CHAMBER_GUARD)?;
    compute_ugb_with_orders(g, &ws)
}

/// As [`compute_ugb`] with a precomputed (e.g. cached) witness list.
pub fn compute_ugb_with_orders<F: Field>(
    g: &ReducedGroebnerBasis<F>,
    witnesses: &[Vec<BigInt>],
) -> Result<UgbResult<F>> {
    validate_reduced_gb(g, g.n()).map_err(Error::InvalidBasis)?;
    let table = normal_form_table(g)?;
    ugb_from_table(&table, witnesses)
}

pub fn ugb_from_table<F: Field>(
    table: &CoeffTable<F>,
    witnesses: &[Vec<BigInt>],
) -> Result<UgbResult<F>> {
    let n = table.n();
    let d = table.dim();
    let mut ws = witnesses.to_vec();
    ws.sort();
    ws.dedup();
    let conversions = ws
        .par_iter()
        .map(|w| {
            let wq: Vec<Rational> = w
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            convert_basis(table, &wq).map_err(|e| match e {
                Error::NonGenericWeight(m) => {
                    Error::Internal(format!("chamber witness not generic: {m}"))
                }
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut reduced_bases: BTreeMap<Staircase, ReducedGroebnerBasis<F>> = BTreeMap::new();
    let mut witness_assignment = Vec::with_capacity(ws.len());
    for (w, c) in ws.into_iter().zip(conversions) {
        match reduced_bases.get(&c.staircase) {
            Some(prev) if !prev.same_basis(&c.basis) => {
                return Err(Error::Internal(format!(
                    "two bases for staircase {}",
                    c.staircase
                )));
            }
            Some(_) => {}
            None => {
                reduced_bases.insert(c.staircase.clone(), c.basis);
            }
        }
        witness_assignment.push((w, c.staircase));
    }
    let mut initial_staircases: Vec<Staircase> = reduced_bases.keys().cloned().collect();
    initial_staircases.sort_by(|a, b| staircase_sum(a).cmp(&staircase_sum(b)).then(a.cmp(b)));
    let state_vertices = initial_staircases.iter().map(staircase_sum).collect();

    let mut seen: BTreeSet<Polynomial<F>> = BTreeSet::new();
    let mut elems: Vec<UgbElement<F>> = Vec::new();
    for g in reduced_bases.values() {
        for head in g.tails().keys() {
            let poly = g.element(head).expect("head present");
            elems.push(UgbElement {
                head: head.clone(),
                poly,
            });
        }
    }
    elems.sort_by(|a, b| a.head.cmp(&b.head).then_with(|| a.poly.cmp(&b.poly)));
    elems.retain(|e| seen.insert(e.poly.clone()));

    Ok(UgbResult {
        n,
        d,
        initial_staircases,
        state_vertices,
        reduced_bases,
        universal_basis: elems,
        witness_assignment,
    })
}

impl<F: Field> std::fmt::Debug for UgbResult<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn state_polyhedron<F>(result: &UgbResult<F>) -> StatePolyhedron {
    let mut vertices = result.state_vertices.clone();
    vertices.sort();
    let recession = (0..result.d)
        .map(|i| (0..result.d).map(|j| i64::from(i == j)).collect())
        .collect();
    StatePolyhedron {
        vertices,
        recession,
    }
}

impl<F: Field> UgbResult<F> {
    pub fn universal_polynomials(&self) -> Vec<Polynomial<F>> {
        self.universal_basis
            .iter()
            .map(|e| e.poly.clone())
            .collect()
    }

    pub fn to_report(&self) -> UgbReport {
        UgbReport {
            n: self.n,
            d: self.d,
            field: F::tag().to_string(),
            lambda: self
                .initial_staircases
                .iter()
                .map(|s| s.to_string())
                .collect(),
            state_vertices: self.state_vertices.clone(),
            reduced_bases: self
                .initial_staircases
                .iter()
                .map(|s| {
                    let g = &self.reduced_bases[s];
                    BasisReport {
                        staircase: s.to_string(),
                        order: g.order().to_string(),
                        elements: g.to_lines(),
                    }
                })
                .collect(),
            ugb: self.universal_basis.iter().map(|e| e.display()).collect(),
            witnesses: self
                .witness_assignment
                .iter()
                .map(|(w, s)| WitnessReport {
                    weight: format_int_vector(w),
                    staircase: s.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_report()).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n={} d={} field={}\n", self.n, self.d, F::tag());
        out.push_str(&format!(
            "initial staircases: {}\n",
            self.initial_staircases.len()
        ));
        for (s, v) in self.initial_staircases.iter().zip(&self.state_vertices) {
            out.push_str(&format!("  {}  sum {}\n", s, format_int_vector(v)));
        }
        out.push_str(&format!(
            "universal Groebner basis: {}\n",
            self.universal_basis.len()
        ));
        for e in &self.universal_basis {
            out.push_str(&format!("  {}\n", e.display()));
        }
        out
    }

    /// Rebuilds a result from its serialized form; bases are re-validated.
    pub fn from_report(r: &UgbReport) -> Result<Self> {
        let tag = F::tag().to_string();
        if r.field != tag {
            return Err(Error::Parse(format!(
                "report is over {}, expected {tag}",
                r.field
            )));
        }
        let mut reduced_bases = BTreeMap::new();
        for b in &r.reduced_bases {
            let order = MonomialOrder::parse(&b.order, Some(r.d))?;
            let polys = b
                .elements
                .iter()
                .map(|e| Polynomial::parse(e, r.d))
                .collect::<Result<Vec<_>>>()?;
            let g = ReducedGroebnerBasis::from_polynomials(&polys, order)?;
            let s: Staircase = b.staircase.parse()?;
            if g.staircase() != &s {
                return Err(Error::Parse(format!(
                    "basis listed under {s} has staircase {}",
                    g.staircase()
                )));
            }
            reduced_bases.insert(s, g);
        }
        let initial_staircases = r
            .lambda
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Staircase>>>()?;
        let mut universal_basis = Vec::new();
        for text in &r.ugb {
            let poly = Polynomial::parse(text, r.d)?;
            // the head is whatever leads in some listed basis
            let head = reduced_bases
                .values()
                .flat_map(|g: &ReducedGroebnerBasis<F>| {
                    g.tails()
                        .keys()
                        .filter(|h| g.element(h).as_ref() == Some(&poly))
                })
                .next()
                .cloned()
                .ok_or_else(|| Error::Parse(format!("`{text}` is in no listed basis")))?;
            universal_basis.push(UgbElement { head, poly });
        }
        let witness_assignment = r
            .witnesses
            .iter()
            .map(|w| {
                let v: Vec<BigInt> = parse_int_vector(&w.weight)?
                    .into_iter()
                    .map(BigInt::from)
                    .collect();
                Ok((v, w.staircase.parse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(UgbResult {
            n: r.n,
            d: r.d,
            initial_staircases,
            state_vertices: r.state_vertices.clone(),
            reduced_bases,
            universal_basis,
            witness_assignment,
        })
    }
}

/// Serialized form of a [`UgbResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UgbReport {
    pub n: usize,
    pub d: usize,
    pub field: String,
    pub lambda: Vec<String>,
    pub state_vertices: Vec<Vec<i64>>,
    pub reduced_bases: Vec<BasisReport>,
    pub ugb: Vec<String>,
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub staircase: String,
    pub order: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub weight: String,
    pub staircase: String,
}

pub fn cache_path(dir: &Path, n: usize, d: usize) -> PathBuf {
    dir.join(format!("orders_{n}_{d}.txt"))
}

/// Header `(n,d)`, then one vector per line.
pub fn write_order_cache(path: &Path, n: usize, d: usize, ws: &[Vec<BigInt>]) -> Result<()> {
    let mut text = format!("({n},{d})\n");
    for w in ws {
        text.push_str(&format_int_vector(w));
        text.push('\n');
    }
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| Error::Parse(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_order_cache(path: &Path, n: usize, d: usize) -> Result<Vec<Vec<BigInt>>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty order cache".into()))?;
    if header != format!("({n},{d})") {
        return Err(Error::Parse(format!(
            "order cache is for {header}, expected ({n},{d})"
        )));
    }
    lines
        .map(|l| {
            let v: Vec<BigInt> = l
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad cache line `{l}`")))
                })
                .collect::<Result<_>>()?;
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            Ok(v)
        })
        .collect()
}

/// Reads `W_n^d` from `dir` if cached there, otherwise computes and stores it.
pub fn cached_order_set(
    dir: Option<&Path>,
    n: usize,
    d: usize,
    guard: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let Some(dir) = dir else {
        return universal_order_set(n, d, guard);
    };
    let path = cache_path(dir, n, d);
    if path.exists() {
        return read_order_cache(&path, n, d);
    }
    let ws = universal_order_set(n, d, guard)?;
    write_order_cache(&path, n, d, &ws)?;
    Ok(ws)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn example_pipeline() {
        let r = compute_ugb(&example()).unwrap();
        let lam: Vec<String> = r.initial_staircases.iter().map(|s| s.to_string()).collect();
        assert_eq!(lam, vec!["{(0,0),(0,1),(0,2)}", "{(0,0),(1,0),(2,0)}"]);
        assert_eq!(r.state_vertices, vec![vec![0, 3], vec![3, 0]]);
        let got: BTreeSet<Polynomial<Rational>> = r.universal_polynomials().into_iter().collect();
        let want: BTreeSet<Polynomial<Rational>> = [
            "x1^3 - 3*x1^2 + 3*x1 - 1",
            "x2 - x1 + 1",
            "x1 - x2 - 1",
            "x2^3",
        ]
        .iter()
        .map(|s| qp(s))
        .collect();
        assert_eq!(got, want);
        assert_eq!(r.witness_assignment.len(), 4);
        let sp = state_polyhedron(&r);
        assert_eq!(sp.vertices, vec![vec![0, 3], vec![3, 0]]);
        assert_eq!(sp.recession, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn report_round_trip() {
        let r = compute_ugb(&example()).unwrap();
        let rep = r.to_report();
        let json = serde_json::to_string(&rep).unwrap();
        let back: UgbReport = serde_json::from_str(&json).unwrap();
        let r2 = UgbResult::<Rational>::from_report(&back).unwrap();
        assert_eq!(r2.to_report(), rep);
    }

    #[test]
    fn order_sets() {
        let ws = universal_order_set(3, 2, 1000).unwrap();
        assert_eq!(ws.len(), 4);
        assert_eq!(universal_order_set(1, 3, 1000).unwrap().len(), 1);
        let ws2 = universal_order_set(2, 2, 1000).unwrap();
        assert_eq!(ws2.len(), 2);
        assert!(ws2.iter().any(|w| w[0] > w[1]) && ws2.iter().any(|w| w[0] < w[1]));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("ugb-cache-test-{}", std::process::id()));
        let first = cached_order_set(Some(&dir), 3, 2, 1000).unwrap();
        assert!(cache_path(&dir, 3, 2).exists());
        let second = cached_order_set(Some(&dir), 3, 2, 1000).unwrap();
        assert_eq!(first, second);
        assert!(read_order_cache(&cache_path(&dir, 3, 2), 4, 2).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
