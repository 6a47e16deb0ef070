use std::collections::BTreeMap;
use std::fmt;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::staircase::Exponent;

/// Sparse polynomial: exponent to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<F> {
    terms: BTreeMap<Exponent, F>,
}

impl<F: Field> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(e: Exponent, c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn constant(d: usize, c: F) -> Self {
        Self::monomial(Exponent::zero(d), c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, F)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &F)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &Exponent) -> F {
        self.terms.get(e).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (e.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// `c · x^e · self`.
    pub fn mul_term(&self, e: &Exponent, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.add(e), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Leading exponent and coefficient under `ord`.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Exponent, &F)> {
        self.terms.iter().max_by(|a, b| ord.compare(a.0, b.0))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, ord: &MonomialOrder) -> Self {
        match self.leading(ord) {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero")),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, point: &[F]) -> F {
        poly_eval(self, point)
    }

    /// Parses `c*x1^a*x2^b + ...` over variables `x1..xd`.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        parse_polynomial(text, d)
    }

    /// Renders with `head` first, the rest in descending canonical order.
    pub fn display_with_head(&self, head: &Exponent) -> String {
        let mut order: Vec<(&Exponent, &F)> = Vec::with_capacity(self.len());
        if let Some(c) = self.terms.get(head) {
            order.push((head, c));
        }
        order.extend(self.terms.iter().rev().filter(|(e, _)| *e != head));
        render_terms(order)
    }
}

/// `Σ c · ∏ p_i^{e_i}` with `0^0 = 1`.
pub fn poly_eval<F: Field>(f: &Polynomial<F>, point: &[F]) -> F {
    let mut acc = F::zero();
    for (e, c) in f.terms() {
        let mut t = c.clone();
        for (x, &k) in point.iter().zip(e.coords()) {
            for _ in 0..k {
                t = t * x.clone();
            }
        }
        acc = acc + t;
    }
    acc
}

fn render_monomial(e: &Exponent) -> String {
    e.coords()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{k}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_terms<'a, F: Field>(terms: impl IntoIterator<Item = (&'a Exponent, &'a F)>) -> String {
    let mut out = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(e);
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Terms in descending canonical (graded) order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms.iter().rev()))
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_polynomial<F: Field>(text: &str, d: usize) -> Result<Polynomial<F>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Parse(format!("malformed polynomial `{text}`: {why}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    // split at top-level signs; a sign directly after '^' or '*' is not a separator
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (k, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && k > 0 && !cur.is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if k > 0 && terms.is_empty() && neg {
                return Err(bad("double sign"));
            }
            neg ^= ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad("dangling sign"));
    }
    terms.push((neg, cur));

    let mut p = Polynomial::zero();
    for (neg, body) in terms {
        let mut coeff = F::one();
        let mut exps = vec![0u32; d];
        for factor in body.split('*') {
            if factor.is_empty() {
                return Err(bad("empty factor"));
            }
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, pow) = match var.split_once('^') {
                    Some((i, k)) => (i, k.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (var, 1),
                };
                let i: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                if i == 0 || i > d {
                    return Err(bad(&format!("variable x{i} outside x1..x{d}")));
                }
                exps[i - 1] += pow;
            } else {
                coeff = coeff * F::parse_scalar(factor)?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        p.add_term(Exponent::new(exps), coeff);
    }
    Ok(p)
}
