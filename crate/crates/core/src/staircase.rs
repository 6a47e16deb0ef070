//! Exponent vectors, staircases and the supports `V_n^d` and `U_n^d`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of a monomial `x^v`.
///
/// Ordered canonically: by total degree, then by the coordinates read from
/// the last variable to the first. For `d = 2` the degree-two vectors come
/// out as `(2,0) < (1,1) < (0,2)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(coords: Vec<u32>) -> Self {
        Exponent(coords)
    }

    pub fn zero(d: usize) -> Self {
        Exponent(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        Exponent(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v[i] += 1;
        Exponent(v)
    }

    /// `self - e_i`, if it stays nonnegative.
    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i] -= 1;
        Some(Exponent(v))
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if `other` divides `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Signed difference `self - other`.
    pub fn diff(&self, other: &Exponent) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// `∏ (v_i + 1)`, the size of the box below `self`.
    pub fn box_size(&self) -> u64 {
        self.0.iter().map(|&c| c as u64 + 1).product()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `(3,0)` or, for single-digit coordinates, the compact `30`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed exponent vector `{s}`"));
        if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let coords = inner
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Exponent(coords));
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(Exponent(s.bytes().map(|b| (b - b'0') as u32).collect()))
    }
}

impl From<Exponent> for String {
    fn from(e: Exponent) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for Exponent {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parses a signed integer vector `(a,b,...)`.
pub fn parse_int_vector(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("malformed integer vector `{s}`")))
        })
        .collect()
}

pub fn format_int_vector<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A finite downward-closed set of exponent vectors, sorted canonically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Staircase {
    elems: Vec<Exponent>,
}

impl Staircase {
    pub fn new(elems: impl IntoIterator<Item = Exponent>) -> Result<Self> {
        let set: BTreeSet<Exponent> = elems.into_iter().collect();
        if set.is_empty() {
            return Err(Error::NotAStaircase("empty set".into()));
        }
        let d = set.iter().next().map(|e| e.dim()).unwrap_or(0);
        if let Some(bad) = set.iter().find(|e| e.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        if !is_staircase(&set) {
            return Err(Error::NotAStaircase(format_set(set.iter())));
        }
        Ok(Staircase {
            elems: set.into_iter().collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elems[0].dim()
    }

    pub fn elements(&self) -> &[Exponent] {
        &self.elems
    }

    pub fn contains(&self, v: &Exponent) -> bool {
        self.elems.binary_search(v).is_ok()
    }

    pub fn position(&self, v: &Exponent) -> Option<usize> {
        self.elems.binary_search(v).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Exponent> {
        self.elems.iter()
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_set(self.elems.iter()))
    }
}

impl fmt::Debug for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Staircase {
    type Err = Error;

    /// `{(0,0),(1,0)}` or compact `{00,10}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("malformed staircase `{s}`")))?;
        let mut elems = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let (tok, tail) = if rest.starts_with('(') {
                let end = rest
                    .find(')')
                    .ok_or_else(|| Error::Parse(format!("malformed staircase `{s}`")))?;
                (&rest[..=end], &rest[end + 1..])
            } else {
                match rest.find(',') {
                    Some(k) => (&rest[..k], &rest[k..]),
                    None => (rest, ""),
                }
            };
            elems.push(tok.parse::<Exponent>()?);
            rest = tail.trim_start().trim_start_matches(',').trim_start();
        }
        Staircase::new(elems)
    }
}

pub fn format_set<'a>(it: impl Iterator<Item = &'a Exponent>) -> String {
    let parts: Vec<String> = it.map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `V_n^d = {v : ∏(v_i + 1) <= n}`, the union of all n-staircases.
pub fn v_set(n: usize, d: usize) -> Vec<Exponent> {
    fn rec(d: usize, prefix: &mut Vec<u32>, budget: u64, out: &mut Vec<Exponent>) {
        if prefix.len() == d {
            out.push(Exponent(prefix.clone()));
            return;
        }
        let mut c = 0u32;
        while (c as u64 + 1) <= budget {
            prefix.push(c);
            rec(d, prefix, budget / (c as u64 + 1), out);
            prefix.pop();
            c += 1;
        }
    }
    let mut out = Vec::new();
    if n >= 1 && d >= 1 {
        rec(d, &mut Vec::with_capacity(d), n as u64, &mut out);
    }
    out.sort();
    out
}

pub fn in_v_set(v: &Exponent, n: usize) -> bool {
    v.coords()
        .iter()
        .try_fold(1u64, |acc, &c| {
            let p = acc.checked_mul(c as u64 + 1)?;
            (p <= n as u64).then_some(p)
        })
        .is_some()
}

/// `U_n^d = {u + e_i : u ∈ V_n^d, 0 <= i <= d}` with `e_0 = 0`.
pub fn u_set(n: usize, d: usize) -> Vec<Exponent> {
    let mut set = BTreeSet::new();
    for v in v_set(n, d) {
        for i in 0..d {
            set.insert(v.plus_unit(i));
        }
        set.insert(v);
    }
    set.into_iter().collect()
}

/// Whether `s` is downward closed. It suffices that every `v - e_i` is present.
pub fn is_staircase<'a, S>(s: &'a S) -> bool
where
    S: ?Sized,
    &'a S: IntoIterator<Item = &'a Exponent>,
{
    let set: HashSet<&Exponent> = s.into_iter().collect();
    set.iter().all(|v| {
        (0..v.dim()).all(|i| match v.minus_unit(i) {
            Some(w) => set.contains(&w),
            None => true,
        })
    })
}

/// `min(λ̄)`: the minimal exponents outside `λ`, scanned over `U_n^d`.
pub fn min_gaps(lambda: &Staircase) -> Vec<Exponent> {
    let n = lambda.len();
    let d = lambda.dim();
    u_set(n, d)
        .into_iter()
        .filter(|u| is_min_gap(u, lambda))
        .collect()
}

pub(crate) fn is_min_gap(u: &Exponent, lambda: &Staircase) -> bool {
    !lambda.contains(u)
        && (0..u.dim()).all(|i| match u.minus_unit(i) {
            Some(w) => lambda.contains(&w),
            None => true,
        })
}

/// Coordinatewise sum of the elements.
pub fn staircase_sum(lambda: &Staircase) -> Vec<i64> {
    let mut s = vec![0i64; lambda.dim()];
    for v in lambda.iter() {
        for (acc, &c) in s.iter_mut().zip(v.coords()) {
            *acc += c as i64;
        }
    }
    s
}

pub const DEFAULT_STAIRCASE_GUARD: usize = 1_000_000;

/// All n-element staircases in `ℕ^d`, sorted.
///
/// Grows staircases one addable corner at a time; every staircase of size
/// `k + 1` arises from one of size `k` by adding a minimal gap.
pub fn enumerate_staircases(n: usize, d: usize, guard: usize) -> Result<Vec<Staircase>> {
    if n == 0 || d == 0 {
        return Ok(Vec::new());
    }
    let mut level: BTreeSet<Vec<Exponent>> = BTreeSet::new();
    level.insert(vec![Exponent::zero(d)]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for s in &level {
            let present: HashSet<&Exponent> = s.iter().collect();
            let mut candidates: BTreeSet<Exponent> = BTreeSet::new();
            for v in s {
                for i in 0..d {
                    let u = v.plus_unit(i);
                    if present.contains(&u) {
                        continue;
                    }
                    let closed = (0..d).all(|j| match u.minus_unit(j) {
                        Some(w) => present.contains(&w),
                        None => true,
                    });
                    if closed {
                        candidates.insert(u);
                    }
                }
            }
            for u in candidates {
                let mut t = s.clone();
                let pos = t.binary_search(&u).unwrap_err();
                t.insert(pos, u);
                next.insert(t);
                if next.len() > guard {
                    return Err(Error::TooLarge {
                        what: "staircase count",
                        limit: guard,
                    });
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(|elems| Staircase { elems }).collect())
}
