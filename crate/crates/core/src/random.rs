//! Seeded random inputs for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::VectorConfiguration;
use crate::linalg::{self, Matrix, Rational};
use crate::poly::{self, Polynomial};
use crate::squarefree::{self, GeneratorSet};

/// Shape of random configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConfigShape {
    pub max_dim: usize,
    pub max_vectors: usize,
    pub max_entry: i64,
}

impl Default for ConfigShape {
    fn default() -> Self {
        ConfigShape {
            max_dim: 4,
            max_vectors: 8,
            max_entry: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A spanning configuration with a nonzero last vector. Zero vectors and
/// repeated vectors may occur elsewhere.
pub fn spanning_configuration<R: Rng>(rng: &mut R, shape: ConfigShape) -> VectorConfiguration {
    let n = rng.random_range(1..=shape.max_dim);
    let big_n = rng.random_range(n..=shape.max_vectors.max(n));
    loop {
        let vectors: Vec<Vec<i64>> = (0..big_n)
            .map(|_| {
                (0..n)
                    .map(|_| rng.random_range(-shape.max_entry..=shape.max_entry))
                    .collect()
            })
            .collect();
        let cfg = VectorConfiguration::from_integers(n, &vectors).expect("rectangular");
        if cfg.spans() && !cfg.is_zero_vector(big_n - 1) {
            return cfg;
        }
    }
}

/// `count` configurations drawn from one seeded stream.
pub fn corpus(seed: u64, count: usize, shape: ConfigShape) -> Vec<VectorConfiguration> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| spanning_configuration(&mut r, shape))
        .collect()
}

/// A uniformly random ordering of `0..n`.
pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A polynomial with one to `max_terms` terms of degree at most `max_degree`
/// and small nonzero integer coefficients. Terms may still cancel.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    nvars: usize,
    max_degree: usize,
    max_terms: usize,
) -> Polynomial {
    let terms = rng.random_range(1..=max_terms.max(1));
    let mut f = Polynomial::zero(nvars);
    for _ in 0..terms {
        let degree = rng.random_range(0..=max_degree);
        let mut e = vec![0u32; nvars];
        if nvars > 0 {
            for _ in 0..degree {
                e[rng.random_range(0..nvars)] += 1;
            }
        }
        let c = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
        f.add_term(e, linalg::int(c));
    }
    f
}

/// Draws random members of the vanishing ideal of a generator set in degrees
/// up to `max_degree`, as combinations of a kernel basis of evaluation.
#[derive(Clone, Debug)]
pub struct VanishingSampler {
    nvars: usize,
    kernel: Vec<(Vec<poly::Exponents>, Vec<Vec<Rational>>)>,
}

impl VanishingSampler {
    pub fn new(gens: &GeneratorSet, max_degree: usize) -> Self {
        let n = gens.len();
        let kernel = (0..=max_degree)
            .map(|d| {
                let monomials = poly::monomials_of_degree(n, d);
                let images: Vec<_> = monomials
                    .iter()
                    .map(|e| {
                        squarefree::evaluate(&Polynomial::monomial(e.clone(), linalg::int(1)), gens)
                    })
                    .collect();
                let mut keys: Vec<_> = images
                    .iter()
                    .flat_map(|x| x.terms().map(|(m, _)| *m))
                    .collect();
                keys.sort();
                keys.dedup();
                let mut m = Matrix::zeros(keys.len(), monomials.len());
                for (col, image) in images.iter().enumerate() {
                    for (mask, c) in image.terms() {
                        let row = keys.binary_search(mask).expect("collected key");
                        m.set(row, col, c.clone());
                    }
                }
                let basis = linalg::kernel_basis(&m);
                (monomials, basis)
            })
            .collect();
        VanishingSampler { nvars: n, kernel }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Polynomial {
        let mut f = Polynomial::zero(self.nvars);
        for (monomials, basis) in &self.kernel {
            for v in basis {
                let c: Rational = linalg::int(rng.random_range(-2..=2));
                for (e, x) in monomials.iter().zip(v) {
                    f.add_term(e.clone(), x * &c);
                }
            }
        }
        f
    }
}
