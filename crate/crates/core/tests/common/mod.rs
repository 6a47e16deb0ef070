#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;

use ugb_core::groebner::MonomialOrder;
use ugb_core::ideals::{from_lattice, from_points, LatticeBasis, PointConfiguration};
use ugb_core::{QGroebnerBasis, Rational};

pub fn q(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// `n` distinct integer points of `[-9,9]^2`.
pub fn random_points(rng: &mut StdRng, n: usize) -> PointConfiguration<Rational> {
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert(vec![rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64)]);
    }
    // shuffle so the configuration order is not sorted
    let mut pts: Vec<Vec<i64>> = seen.into_iter().collect();
    for i in (1..pts.len()).rev() {
        pts.swap(i, rng.gen_range(0..=i));
    }
    PointConfiguration::new(
        pts.into_iter()
            .map(|p| p.into_iter().map(q).collect())
            .collect(),
    )
    .unwrap()
}

/// A planar lattice of index in `[2,6]`.
pub fn random_lattice(rng: &mut StdRng) -> LatticeBasis {
    loop {
        let cols: Vec<Vec<i64>> = (0..2)
            .map(|_| (0..2).map(|_| rng.gen_range(-4..=4i64)).collect())
            .collect();
        let det = (cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]).abs();
        if (2..=6).contains(&det) {
            return LatticeBasis::new(cols).unwrap();
        }
    }
}

pub fn graded() -> MonomialOrder {
    MonomialOrder::default_graded(2)
}

pub struct Corpus {
    pub points: Vec<(PointConfiguration<Rational>, QGroebnerBasis)>,
    pub lattices: Vec<(LatticeBasis, QGroebnerBasis)>,
}

impl Corpus {
    pub fn bases(&self) -> impl Iterator<Item = &QGroebnerBasis> {
        self.points
            .iter()
            .map(|(_, g)| g)
            .chain(self.lattices.iter().map(|(_, g)| g))
    }
}

/// Point configurations with `n` cycling through 3, 4, 5 and lattices of
/// index 2 to 6, all in two variables.
pub fn corpus(rng: &mut StdRng, n_points: usize, n_lattices: usize) -> Corpus {
    let ord = graded();
    let points = (0..n_points)
        .map(|k| {
            let c = random_points(rng, 3 + k % 3);
            let g = from_points(&c, &ord).unwrap();
            (c, g)
        })
        .collect();
    let lattices = (0..n_lattices)
        .map(|_| {
            let l = random_lattice(rng);
            let g = from_lattice::<Rational>(&l, &ord).unwrap();
            (l, g)
        })
        .collect();
    Corpus { points, lattices }
}

/// Minimum of `w·y` over `y >= 0` with `y - x` in the lattice, by
/// enumerating the box cut out by `w·y <= w·x`.
pub fn brute_fiber_min(l: &LatticeBasis, x: &[i64], w: &[i64]) -> i64 {
    let budget: i64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
    let mut best = budget;
    for y0 in 0..=budget / w[0] {
        for y1 in 0..=(budget - w[0] * y0) / w[1] {
            let v = w[0] * y0 + w[1] * y1;
            if v < best && l.contains(&[y0 - x[0], y1 - x[1]]) {
                best = v;
            }
        }
    }
    best
}
