use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::groebner::{MonomialOrder, Polynomial, ReducedGroebnerBasis};
use crate::staircase::Exponent;

pub const DEFAULT_PAIR_BUDGET: usize = 10_000;

/// Generators of an ideal together with the order to compute under.
#[derive(Clone)]
pub struct GeneratorSet<F> {
    gens: Vec<Polynomial<F>>,
    order: MonomialOrder,
}

impl<F: Field> std::fmt::Debug for GeneratorSet<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?} under {}", self.gens, self.order)
    }
}

impl<F: Field> GeneratorSet<F> {
    pub fn new(gens: Vec<Polynomial<F>>, order: MonomialOrder) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Parse("empty generator set".into()));
        }
        if gens.iter().any(|g| g.is_zero()) {
            return Err(Error::Parse("zero generator".into()));
        }
        Ok(GeneratorSet { gens, order })
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

/// Multivariate division: `f = Σ q_i g_i + r`, no term of `r` divisible by
/// a head of `gs`. The first dividing element in list order is used.
pub fn divide<F: Field>(
    f: &Polynomial<F>,
    gs: &[Polynomial<F>],
    ord: &MonomialOrder,
) -> (Polynomial<F>, Vec<Polynomial<F>>) {
    let heads: Vec<(Exponent, F)> = gs
        .iter()
        .map(|g| {
            let (e, c) = g.leading(ord).expect("nonzero divisor");
            (e.clone(), c.clone())
        })
        .collect();
    let mut q = vec![Polynomial::zero(); gs.len()];
    let mut r = Polynomial::zero();
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading(ord).map(|(e, c)| (e.clone(), c.clone())) {
        match heads.iter().position(|(h, _)| h.divides(&lm)) {
            Some(i) => {
                let m = lm.checked_sub(&heads[i].0).expect("divides");
                let c = lc / heads[i].1.clone();
                q[i].add_term(m.clone(), c.clone());
                p = p.sub(&gs[i].mul_term(&m, &c));
            }
            None => {
                r.add_term(lm.clone(), lc.clone());
                p = p.sub(&Polynomial::monomial(lm, lc));
            }
        }
    }
    (r, q)
}

fn s_polynomial<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    ord: &MonomialOrder,
) -> Polynomial<F> {
    let (hf, cf) = f.leading(ord).expect("nonzero");
    let (hg, cg) = g.leading(ord).expect("nonzero");
    let l = hf.lcm(hg);
    let a = f.mul_term(&l.checked_sub(hf).unwrap(), &cf.inverse().unwrap());
    let b = g.mul_term(&l.checked_sub(hg).unwrap(), &cg.inverse().unwrap());
    a.sub(&b)
}

/// Classical Buchberger with the coprime-heads criterion, then minimization
/// and full reduction. At most `budget` S-pairs are processed.
pub fn buchberger<F: Field>(
    gens: &GeneratorSet<F>,
    budget: usize,
) -> Result<ReducedGroebnerBasis<F>> {
    let ord = &gens.order;
    let mut g: Vec<Polynomial<F>> = gens.gens.iter().map(|p| p.monic(ord)).collect();
    let mut pairs: VecDeque<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut processed = 0usize;
    while let Some((i, j)) = pairs.pop_front() {
        processed += 1;
        if processed > budget {
            return Err(Error::Timeout(budget));
        }
        let (hi, hj) = (g[i].leading(ord).unwrap().0, g[j].leading(ord).unwrap().0);
        if hi.coprime(hj) {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j], ord);
        let (r, _) = divide(&s, &g, ord);
        if !r.is_zero() {
            g.push(r.monic(ord));
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal basis: drop elements whose head is divisible by another head
    let heads: Vec<Exponent> = g
        .iter()
        .map(|p| p.leading(ord).unwrap().0.clone())
        .collect();
    let keep: Vec<usize> = (0..g.len())
        .filter(|&i| {
            !(0..g.len())
                .any(|j| j != i && heads[j].divides(&heads[i]) && (heads[j] != heads[i] || j < i))
        })
        .collect();
    let minimal: Vec<Polynomial<F>> = keep.iter().map(|&i| g[i].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, q)| q.clone())
            .collect();
        let (head, _) = p.leading(ord).unwrap();
        let lead = Polynomial::monomial(head.clone(), F::one());
        let tail = p.sub(&lead);
        let (r, _) = if others.is_empty() {
            (tail, vec![])
        } else {
            divide(&tail, &others, ord)
        };
        reduced.push(lead.add(&r));
    }
    ReducedGroebnerBasis::from_polynomials(&reduced, ord.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn qp(s: &str) -> Polynomial<Rational> {
        Polynomial::parse(s, 2).unwrap()
    }

    #[test]
    fn division() {
        let lex: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let g = vec![qp("x2 - x1 + 1"), qp("x1^3 - 3*x1^2 + 3*x1 - 1")];
        let f = qp("x2^3");
        let (r, q) = divide(&f, &g, &lex);
        assert!(r.is_zero());
        let mut sum = Polynomial::zero();
        for (qi, gi) in q.iter().zip(&g) {
            for (e, c) in qi.terms() {
                sum = sum.add(&gi.mul_term(e, c));
            }
        }
        assert_eq!(sum, f);
        let (r, _) = divide(&qp("x1"), &[qp("x2")], &lex);
        assert_eq!(r, qp("x1"));
        let p = qp("x1^2*x2 - 4*x2 + 1");
        let (r, _) = divide(&p, std::slice::from_ref(&p), &lex);
        assert!(r.is_zero());
    }

    #[test]
    fn example_basis_is_fixed() {
        let lex: MonomialOrder = "lex:x2>x1".parse().unwrap();
        let gens = GeneratorSet::new(
            vec![qp("x1^3 - 3*x1^2 + 3*x1 - 1"), qp("x2 - x1 + 1")],
            lex.clone(),
        )
        .unwrap();
        let g = buchberger(&gens, DEFAULT_PAIR_BUDGET).unwrap();
        let want = ReducedGroebnerBasis::from_polynomials(gens.gens(), lex).unwrap();
        assert!(g.same_basis(&want));
    }

    #[test]
    fn univariate_and_errors() {
        let o = MonomialOrder::default_graded(1);
        let gens = GeneratorSet::new(vec![Polynomial::<Rational>::parse("x1 - 1", 1).unwrap()], o)
            .unwrap();
        let g = buchberger(&gens, 10).unwrap();
        assert_eq!(g.elements(), vec![Polynomial::parse("x1 - 1", 1).unwrap()]);
        let o = MonomialOrder::default_graded(2);
        let gens = GeneratorSet::new(vec![qp("x1^2 - x2")], o.clone()).unwrap();
        assert_eq!(
            buchberger(&gens, 10).unwrap_err(),
            Error::NotZeroDimensional
        );
        let gens = GeneratorSet::new(
            vec![qp("x1^3 - x2"), qp("x2^2 - x1*x2 + 1"), qp("x1*x2^3 - 2")],
            o,
        )
        .unwrap();
        assert_eq!(buchberger(&gens, 1).unwrap_err(), Error::Timeout(1));
    }
}
