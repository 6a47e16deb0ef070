use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{primitive_integer_vector, Rational};
use crate::staircase::{format_int_vector, Exponent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lex,
    GrLex,
    GrevLex,
    Weights,
}

/// A monomial order given by a tower of weight rows compared
/// lexicographically, followed by a lexicographic fallback on a variable
/// priority list.
///
/// Rows are rescaled to primitive integer vectors on construction; positive
/// rescaling does not change the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: Kind,
    rows: Vec<Vec<BigInt>>,
    small_rows: Option<Vec<Vec<i64>>>,
    /// Variable indices, most significant first.
    tiebreak: Vec<usize>,
}

impl MonomialOrder {
    fn build(kind: Kind, rows: Vec<Vec<BigInt>>, tiebreak: Vec<usize>) -> Self {
        let small_rows = rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            // keep dot products of u32 exponents inside i128 comfortably
            .filter(|rs| rs.iter().flatten().all(|x| x.unsigned_abs() < 1 << 62));
        MonomialOrder {
            kind,
            rows,
            small_rows,
            tiebreak,
        }
    }

    fn check_tiebreak(tiebreak: &[usize]) -> Result<()> {
        let mut seen = vec![false; tiebreak.len()];
        for &i in tiebreak {
            if i >= tiebreak.len() || seen[i] {
                return Err(Error::Parse(format!(
                    "tiebreak {tiebreak:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(())
    }

    /// Lexicographic order with `x_{priority[0]}` largest.
    pub fn lex(priority: Vec<usize>) -> Result<Self> {
        Self::check_tiebreak(&priority)?;
        Ok(Self::build(Kind::Lex, Vec::new(), priority))
    }

    /// Degree first, then lexicographic.
    pub fn grlex(priority: Vec<usize>) -> Result<Self> {
        Self::check_tiebreak(&priority)?;
        let d = priority.len();
        Ok(Self::build(
            Kind::GrLex,
            vec![vec![BigInt::from(1); d]],
            priority,
        ))
    }

    /// Degree first, then the negated unit rows of the least significant
    /// variables in reverse priority.
    pub fn grevlex(priority: Vec<usize>) -> Result<Self> {
        Self::check_tiebreak(&priority)?;
        let d = priority.len();
        let mut rows = vec![vec![BigInt::from(1); d]];
        for &i in priority.iter().rev() {
            let mut r = vec![BigInt::zero(); d];
            r[i] = BigInt::from(-1);
            rows.push(r);
        }
        Ok(Self::build(Kind::GrevLex, rows, priority))
    }

    /// Weight tower with a lexicographic fallback.
    pub fn weights(rows: &[Vec<Rational>], priority: Vec<usize>) -> Result<Self> {
        Self::check_tiebreak(&priority)?;
        let d = priority.len();
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: r.len(),
            });
        }
        let rows = rows.iter().map(|r| primitive_integer_vector(r)).collect();
        Ok(Self::build(Kind::Weights, rows, priority))
    }

    /// A single positive weight vector refined by `x1 > x2 > ... > xd`.
    pub fn weighted(w: &[Rational]) -> Self {
        Self::weights(&[w.to_vec()], (0..w.len()).collect()).expect("identity tiebreak")
    }

    pub fn default_graded(d: usize) -> Self {
        Self::grlex((0..d).collect()).expect("identity tiebreak")
    }

    pub fn dim(&self) -> usize {
        self.tiebreak.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn tiebreak(&self) -> &[usize] {
        &self.tiebreak
    }

    pub fn compare(&self, u: &Exponent, v: &Exponent) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        let (a, b) = (u.coords(), v.coords());
        if let Some(rows) = &self.small_rows {
            for r in rows {
                let du: i128 = r.iter().zip(a).map(|(&w, &x)| w as i128 * x as i128).sum();
                let dv: i128 = r.iter().zip(b).map(|(&w, &x)| w as i128 * x as i128).sum();
                match du.cmp(&dv) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
        } else {
            for r in &self.rows {
                let du: BigInt = r.iter().zip(a).map(|(w, &x)| w * BigInt::from(x)).sum();
                let dv: BigInt = r.iter().zip(b).map(|(w, &x)| w * BigInt::from(x)).sum();
                match du.cmp(&dv) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
        }
        for &i in &self.tiebreak {
            match a[i].cmp(&b[i]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Sorts ascending under this order.
    pub fn sort(&self, v: &mut [Exponent]) {
        v.sort_by(|a, b| self.compare(a, b));
    }
}

/// Compares `u` and `v` under `ord`.
pub fn order_compare(ord: &MonomialOrder, u: &Exponent, v: &Exponent) -> Ordering {
    ord.compare(u, v)
}

fn fmt_priority(p: &[usize]) -> String {
    p.iter()
        .map(|i| format!("x{}", i + 1))
        .collect::<Vec<_>>()
        .join(">")
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = fmt_priority(&self.tiebreak);
        match self.kind {
            Kind::Lex => write!(f, "lex:{p}"),
            Kind::GrLex => write!(f, "grlex:{p}"),
            Kind::GrevLex => write!(f, "grevlex:{p}"),
            Kind::Weights => {
                let rows: Vec<String> = self.rows.iter().map(|r| format_int_vector(r)).collect();
                write!(f, "weights:[{}];tiebreak:{p}", rows.join(","))
            }
        }
    }
}

fn parse_priority(s: &str, d: Option<usize>) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("malformed variable priority `{s}`"));
    let mut out = Vec::new();
    for t in s.split('>') {
        let idx: usize = t
            .trim()
            .strip_prefix('x')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        if idx == 0 {
            return Err(bad());
        }
        out.push(idx - 1);
    }
    if let Some(d) = d {
        // unnamed variables follow in index order
        for i in 0..d {
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    Ok(out)
}

impl MonomialOrder {
    /// Parses `lex:x2>x1`, `grlex:..`, `grevlex:..` or
    /// `weights:[(3,2)];tiebreak:x1>x2`. Priorities may omit trailing
    /// variables when `d` is given.
    pub fn parse(s: &str, d: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("malformed order `{s}`")))?;
        match name {
            "lex" => Self::lex(parse_priority(rest, d)?),
            "grlex" | "deglex" => Self::grlex(parse_priority(rest, d)?),
            "grevlex" | "degrevlex" => Self::grevlex(parse_priority(rest, d)?),
            "weights" => {
                let (rows_txt, tb) = match rest.split_once(';') {
                    Some((r, t)) => {
                        let t = t
                            .trim()
                            .strip_prefix("tiebreak:")
                            .ok_or_else(|| Error::Parse(format!("malformed order `{s}`")))?;
                        (r, Some(t))
                    }
                    None => (rest, None),
                };
                let inner = rows_txt
                    .trim()
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| Error::Parse(format!("malformed weight rows `{rows_txt}`")))?;
                let mut rows = Vec::new();
                for chunk in inner.split(')') {
                    let chunk = chunk.trim().trim_start_matches(',').trim();
                    if chunk.is_empty() {
                        continue;
                    }
                    let body = chunk
                        .strip_prefix('(')
                        .ok_or_else(|| Error::Parse(format!("malformed weight row `{chunk}`")))?;
                    let row = body
                        .split(',')
                        .map(|t| crate::exactnum::scalar_parse::<Rational>(t.trim()))
                        .collect::<Result<Vec<_>>>()?;
                    rows.push(row);
                }
                let dim = d.or_else(|| rows.first().map(|r| r.len())).unwrap_or(0);
                let priority = match tb {
                    Some(t) => parse_priority(t, Some(dim))?,
                    None => (0..dim).collect(),
                };
                Self::weights(&rows, priority)
            }
            _ => Err(Error::Parse(format!("unknown order `{name}`"))),
        }
    }
}

impl FromStr for MonomialOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}
