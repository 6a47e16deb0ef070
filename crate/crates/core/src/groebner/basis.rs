use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::order::MonomialOrder;
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::staircase::{format_set, is_staircase, min_gaps, Exponent, Staircase};

/// First defect found by [`validate_reduced_gb`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotAStaircase(String),
    WrongLength {
        expected: usize,
        found: usize,
    },
    HeadSetMismatch {
        missing: Vec<Exponent>,
        extra: Vec<Exponent>,
    },
    TailOutsideStaircase {
        head: Exponent,
        monomial: Exponent,
    },
    HeadNotInitial {
        head: Exponent,
        monomial: Exponent,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Violation::NotAStaircase(s) => write!(f, "{s} is not a staircase"),
            Violation::WrongLength { expected, found } => {
                write!(f, "staircase has {found} elements, expected {expected}")
            }
            Violation::HeadSetMismatch { missing, extra } => write!(
                f,
                "head set differs from the minimal gaps: missing {}, extra {}",
                format_set(missing.iter()),
                format_set(extra.iter())
            ),
            Violation::TailOutsideStaircase { head, monomial } => {
                write!(
                    f,
                    "tail of head {head} uses {monomial}, outside the staircase"
                )
            }
            Violation::HeadNotInitial { head, monomial } => {
                write!(
                    f,
                    "tail monomial {monomial} is not smaller than head {head}"
                )
            }
        }
    }
}

/// `G_λ = {x^u - [x^u]_λ : u ∈ min(λ̄)}` under an order.
#[derive(Clone, PartialEq, Eq)]
pub struct ReducedGroebnerBasis<F> {
    staircase: Staircase,
    /// `u ↦ [x^u]_λ` for every minimal gap `u`.
    tails: BTreeMap<Exponent, Polynomial<F>>,
    order: MonomialOrder,
}

impl<F: Field> ReducedGroebnerBasis<F> {
    /// Builds and validates.
    pub fn new(
        staircase: Staircase,
        tails: BTreeMap<Exponent, Polynomial<F>>,
        order: MonomialOrder,
    ) -> Result<Self> {
        let g = Self::new_unchecked(staircase, tails, order);
        validate_reduced_gb(&g, g.staircase.len()).map_err(Error::InvalidBasis)?;
        Ok(g)
    }

    pub(crate) fn new_unchecked(
        staircase: Staircase,
        tails: BTreeMap<Exponent, Polynomial<F>>,
        order: MonomialOrder,
    ) -> Self {
        ReducedGroebnerBasis {
            staircase,
            tails,
            order,
        }
    }

    /// `{x^u : u ∈ min(λ̄)}`.
    pub fn monomial(staircase: Staircase, order: MonomialOrder) -> Self {
        let tails = min_gaps(&staircase)
            .into_iter()
            .map(|u| (u, Polynomial::zero()))
            .collect();
        ReducedGroebnerBasis {
            staircase,
            tails,
            order,
        }
    }

    /// Reads a reduced basis off its elements: heads come from `order`, the
    /// staircase is everything no head divides.
    pub fn from_polynomials(polys: &[Polynomial<F>], order: MonomialOrder) -> Result<Self> {
        let d = order.dim();
        let mut tails = BTreeMap::new();
        for p in polys {
            if p.support().any(|e| e.dim() != d) {
                let bad = p.support().find(|e| e.dim() != d).unwrap();
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: bad.dim(),
                });
            }
            let Some((head, _)) = p.leading(&order) else {
                continue;
            };
            let head = head.clone();
            let m = p.monic(&order);
            let tail = Polynomial::monomial(head.clone(), F::one()).sub(&m);
            if tails.insert(head.clone(), tail).is_some() {
                return Err(Error::Parse(format!("two elements with head {head}")));
            }
        }
        let heads: Vec<Exponent> = tails.keys().cloned().collect();
        // every variable needs a pure power among the heads
        let mut bound = vec![0u32; d];
        for (i, b) in bound.iter_mut().enumerate() {
            *b = heads
                .iter()
                .filter(|h| {
                    h.coords()
                        .iter()
                        .enumerate()
                        .all(|(j, &c)| j == i || c == 0)
                })
                .map(|h| h.coords()[i])
                .min()
                .filter(|&k| k > 0)
                .ok_or(Error::NotZeroDimensional)?;
        }
        let mut elems = Vec::new();
        let mut cur = vec![0u32; d];
        loop {
            let e = Exponent::new(cur.clone());
            if !heads.iter().any(|h| h.divides(&e)) {
                elems.push(e);
            }
            let mut k = 0;
            while k < d {
                cur[k] += 1;
                if cur[k] < bound[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
        let staircase = Staircase::new(elems)?;
        Self::new(staircase, tails, order)
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn tails(&self) -> &BTreeMap<Exponent, Polynomial<F>> {
        &self.tails
    }

    pub fn tail(&self, head: &Exponent) -> Option<&Polynomial<F>> {
        self.tails.get(head)
    }

    pub fn heads(&self) -> impl Iterator<Item = &Exponent> {
        self.tails.keys()
    }

    /// Ideal length `|λ|`.
    pub fn n(&self) -> usize {
        self.staircase.len()
    }

    pub fn dim(&self) -> usize {
        self.staircase.dim()
    }

    pub fn len(&self) -> usize {
        self.tails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tails.is_empty()
    }

    pub fn element(&self, head: &Exponent) -> Option<Polynomial<F>> {
        self.tails
            .get(head)
            .map(|t| Polynomial::monomial(head.clone(), F::one()).sub(t))
    }

    /// Elements `x^u - [x^u]_λ`, by head in canonical order.
    pub fn elements(&self) -> Vec<Polynomial<F>> {
        self.tails
            .iter()
            .map(|(u, t)| Polynomial::monomial(u.clone(), F::one()).sub(t))
            .collect()
    }

    /// Same staircase and same elements; the orders may differ.
    pub fn same_basis(&self, other: &Self) -> bool {
        self.staircase == other.staircase && self.tails == other.tails
    }

    /// Same staircase and elements; the order is replaced.
    pub fn with_order(self, order: MonomialOrder) -> Self {
        ReducedGroebnerBasis { order, ..self }
    }

    /// One line per element, head first.
    pub fn to_lines(&self) -> Vec<String> {
        self.tails
            .keys()
            .map(|u| self.element(u).unwrap().display_with_head(u))
            .collect()
    }
}

impl<F: Field> fmt::Display for ReducedGroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_lines().join(", "))
    }
}

impl<F: Field> fmt::Debug for ReducedGroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G[{} | {}]", self.staircase, self)
    }
}

/// Checks the reduced-basis shape against the expected length `n`.
pub fn validate_reduced_gb<F: Field>(
    g: &ReducedGroebnerBasis<F>,
    n: usize,
) -> Result<(), Violation> {
    let lambda = &g.staircase;
    let d = g.order.dim();
    if lambda.dim() != d {
        return Err(Violation::DimensionMismatch {
            expected: d,
            found: lambda.dim(),
        });
    }
    if !is_staircase(lambda.elements()) {
        return Err(Violation::NotAStaircase(lambda.to_string()));
    }
    if lambda.len() != n {
        return Err(Violation::WrongLength {
            expected: n,
            found: lambda.len(),
        });
    }
    for (u, t) in &g.tails {
        if u.dim() != d {
            return Err(Violation::DimensionMismatch {
                expected: d,
                found: u.dim(),
            });
        }
        if let Some(bad) = t.support().find(|e| e.dim() != d) {
            return Err(Violation::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
    }
    let gaps: BTreeSet<Exponent> = min_gaps(lambda).into_iter().collect();
    let heads: BTreeSet<Exponent> = g.tails.keys().cloned().collect();
    if gaps != heads {
        return Err(Violation::HeadSetMismatch {
            missing: gaps.difference(&heads).cloned().collect(),
            extra: heads.difference(&gaps).cloned().collect(),
        });
    }
    for (u, t) in &g.tails {
        if let Some(m) = t.support().find(|m| !lambda.contains(m)) {
            return Err(Violation::TailOutsideStaircase {
                head: u.clone(),
                monomial: m.clone(),
            });
        }
        if let Some(m) = t.support().find(|m| g.order.compare(m, u).is_ge()) {
            return Err(Violation::HeadNotInitial {
                head: u.clone(),
                monomial: m.clone(),
            });
        }
    }
    Ok(())
}
