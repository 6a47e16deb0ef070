use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;

use super::{
    brute_initial_staircases, brute_state_vertices, buchberger, divide, GeneratorSet,
    DEFAULT_PAIR_BUDGET,
};
use crate::driver::UgbResult;
use crate::error::Result;
use crate::exactnum::{Field, Rational};
use crate::groebner::{convert_basis, normal_form_table, validate_reduced_gb};
use crate::staircase::{format_int_vector, staircase_sum, v_set, Staircase};

/// Outcome of one named check; `failure` holds the first counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Limits for [`verify_ugb`].
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub pair_budget: usize,
    /// Skip the exhaustive hull check above this many candidate subsets.
    pub max_subsets: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            samples: 200,
            seed: 1,
            pair_budget: DEFAULT_PAIR_BUDGET,
            max_subsets: 20_000,
        }
    }
}

fn wdot(w: &[BigInt], v: &[i64]) -> BigInt {
    w.iter().zip(v).map(|(a, &b)| a * BigInt::from(b)).sum()
}

fn check(name: &'static str, f: impl FnOnce() -> Result<Option<String>>) -> CheckReport {
    let failure = match f() {
        Ok(x) => x,
        Err(e) => Some(format!("error: {e}")),
    };
    CheckReport { name, failure }
}

/// Runs the oracle suite against a computed result.
pub fn verify_ugb<F: Field>(r: &UgbResult<F>, cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    out.push(check("bases are reduced", || {
        for (s, g) in &r.reduced_bases {
            if g.staircase() != s {
                return Ok(Some(format!(
                    "basis filed under {s} has staircase {}",
                    g.staircase()
                )));
            }
            if let Err(v) = validate_reduced_gb(g, r.n) {
                return Ok(Some(format!("{s}: {v}")));
            }
        }
        let listed: BTreeSet<&Staircase> = r.initial_staircases.iter().collect();
        let keys: BTreeSet<&Staircase> = r.reduced_bases.keys().collect();
        Ok((listed != keys).then(|| "staircase list and basis keys differ".to_string()))
    }));
    out.push(check("state vertices are staircase sums", || {
        for (s, v) in r.initial_staircases.iter().zip(&r.state_vertices) {
            if &staircase_sum(s) != v {
                return Ok(Some(format!("{s} listed with {}", format_int_vector(v))));
            }
        }
        Ok(
            (r.initial_staircases.len() != r.state_vertices.len())
                .then(|| "length mismatch".into()),
        )
    }));
    out.push(check("universal basis lies in every basis' ideal", || {
        for g in r.reduced_bases.values() {
            let gs = g.elements();
            for e in &r.universal_basis {
                let (rem, _) = divide(&e.poly, &gs, g.order());
                if !rem.is_zero() {
                    return Ok(Some(format!(
                        "{} leaves {rem} modulo {}",
                        e.display(),
                        g.staircase()
                    )));
                }
            }
        }
        let union: BTreeSet<_> = r
            .reduced_bases
            .values()
            .flat_map(|g| g.elements())
            .collect();
        let listed: BTreeSet<_> = r.universal_basis.iter().map(|e| e.poly.clone()).collect();
        Ok((union != listed).then(|| "universal basis differs from the union of the bases".into()))
    }));
    out.push(check("Buchberger reproduces each basis", || {
        for g in r.reduced_bases.values() {
            for h in r.reduced_bases.values() {
                let gens = GeneratorSet::new(h.elements(), g.order().clone())?;
                let b = buchberger(&gens, cfg.pair_budget)?;
                if !b.same_basis(g) {
                    return Ok(Some(format!(
                        "from {} under {}: got {b}, expected {g}",
                        h.staircase(),
                        g.order()
                    )));
                }
            }
        }
        Ok(None)
    }));
    let first = r.reduced_bases.values().next();
    out.push(check("witnesses select their staircases", || {
        let Some(g) = first else {
            return Ok(Some("no bases".into()));
        };
        let table = normal_form_table(g)?;
        for (w, s) in &r.witness_assignment {
            let wq: Vec<Rational> = w
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let c = convert_basis(&table, &wq)?;
            if &c.staircase != s {
                return Ok(Some(format!(
                    "{} selects {} not {s}",
                    format_int_vector(w),
                    c.staircase
                )));
            }
        }
        let used: BTreeSet<&Staircase> = r.witness_assignment.iter().map(|(_, s)| s).collect();
        Ok(r.initial_staircases
            .iter()
            .find(|s| !used.contains(s))
            .map(|s| format!("{s} is selected by no witness")))
    }));
    out.push(check("witness vertices are optimal", || {
        for (w, mu) in &r.witness_assignment {
            let best = wdot(w, &staircase_sum(mu));
            for l in &r.initial_staircases {
                if l != mu && wdot(w, &staircase_sum(l)) <= best {
                    return Ok(Some(format!(
                        "{} prefers {l} over {mu}",
                        format_int_vector(w)
                    )));
                }
            }
        }
        Ok(None)
    }));
    out.push(check("random weights find no new staircase", || {
        let Some(g) = first else {
            return Ok(Some("no bases".into()));
        };
        let table = normal_form_table(g)?;
        let mut rng = StdRng::seed_from_u64(cfg.seed);
        let found = brute_initial_staircases(&table, cfg.samples, &mut rng)?;
        let known: BTreeSet<&Staircase> = r.initial_staircases.iter().collect();
        Ok(found
            .iter()
            .find(|s| !known.contains(s))
            .map(|s| format!("{s} is missing")))
    }));
    out.push(check("state vertices match the brute-force hull", || {
        let Some(g) = first else {
            return Ok(Some("no bases".into()));
        };
        let ground = v_set(r.n, r.d).len();
        let subsets = (0..r.n).fold(1u128, |c, k| c * (ground - k) as u128 / (k + 1) as u128);
        if subsets > cfg.max_subsets as u128 {
            return Ok(None);
        }
        let table = normal_form_table(g)?;
        let brute = brute_state_vertices(&table);
        let mine: Vec<Vec<i64>> = r.state_vertices.iter().cloned().sorted().collect();
        Ok((brute != mine).then(|| format!("hull gives {brute:?}, result lists {mine:?}")))
    }));
    out
}
