//! Brute-force references that share no code with the engines.

#![allow(dead_code, clippy::needless_range_loop)]

use curvalg::{Rational, VectorConfiguration};
use num_traits::Zero;

/// Rank by plain Gaussian elimination over the rationals.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let f = &rows[i][c] / &rows[r][c];
            for j in c..cols {
                let delta = &f * &rows[r][j];
                rows[i][j] -= delta;
            }
        }
        r += 1;
    }
    r
}

fn members(bits: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| bits >> i & 1 == 1).collect()
}

fn subset_rank(cfg: &VectorConfiguration, bits: u32) -> usize {
    let vs: Vec<Vec<Rational>> = members(bits, cfg.len())
        .into_iter()
        .map(|i| cfg.vector(i).to_vec())
        .collect();
    rank(&vs)
}

/// All circuits as bit masks: dependent sets whose every one-smaller subset
/// is independent.
pub fn circuits(cfg: &VectorConfiguration) -> Vec<u32> {
    let n = cfg.len();
    let independent: Vec<bool> = (0..1u32 << n)
        .map(|b| subset_rank(cfg, b) == b.count_ones() as usize)
        .collect();
    (1..1u32 << n)
        .filter(|&b| !independent[b as usize])
        .filter(|&b| {
            members(b, n)
                .iter()
                .all(|&i| independent[(b & !(1 << i)) as usize])
        })
        .collect()
}

/// Graded counts straight from the definition of external activity.
pub fn graded_counts(cfg: &VectorConfiguration) -> Vec<u64> {
    let n = cfg.len();
    let circuits = circuits(cfg);
    let mut counts = vec![0u64; n + 1];
    for s in 0..1u32 << n {
        if subset_rank(cfg, s) != s.count_ones() as usize {
            continue;
        }
        let active = (0..n)
            .filter(|&v| s >> v & 1 == 0)
            .filter(|&v| {
                let with = s | 1 << v;
                circuits
                    .iter()
                    .any(|&c| c & with == c && c >> v & 1 == 1 && c.trailing_zeros() as usize == v)
            })
            .count();
        counts[n - s.count_ones() as usize - active] += 1;
    }
    counts
}

pub fn config(dim: usize, vectors: &[&[i64]]) -> VectorConfiguration {
    let vs: Vec<Vec<i64>> = vectors.iter().map(|v| v.to_vec()).collect();
    VectorConfiguration::from_integers(dim, &vs).unwrap()
}
