//! The linear matroid of a vector configuration: independence, circuits,
//! external activity and the graded counts they induce.
//!
//! For an independent set `S`, a vector `v` outside `S` is externally active
//! when `S ∪ {v}` contains a circuit whose smallest element is `v`. The graded
//! count in degree `k` is the number of independent `S` with
//! `k = N - |S| - act(S)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{SubsetMask, VectorConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix, Rational};

/// Graded dimensions indexed by degree `0 ..= N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedCount(Vec<u64>);

impl GradedCount {
    pub fn new(counts: Vec<u64>) -> Self {
        GradedCount(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Count in degree `k`; zero beyond the stored range.
    pub fn degree(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Counts truncated or zero-padded to `len` degrees.
    pub fn resized(&self, len: usize) -> GradedCount {
        GradedCount((0..len).map(|k| self.degree(k)).collect())
    }
}

impl From<Vec<u64>> for GradedCount {
    fn from(v: Vec<u64>) -> Self {
        GradedCount(v)
    }
}

/// A minimal dependent subset with its linear dependence, scaled so the
/// coefficient of the smallest index is one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Circuit {
    pub support: SubsetMask,
    pub dependence: Vec<Rational>,
}

impl Circuit {
    /// Smallest element of the support.
    pub fn min(&self) -> usize {
        self.support.min().expect("circuits are nonempty")
    }
}

pub fn is_independent(cfg: &VectorConfiguration, s: SubsetMask) -> bool {
    cfg.subset_rank(s) == s.len()
}

/// All circuits, sorted lexicographically by support.
///
/// Every circuit `C` is the fundamental circuit of `C \ {max C}` and its
/// maximum, so it suffices to walk independent sets `S` in increasing index
/// order and test each later `v` in the span of `S` whose expression uses
/// every element of `S`.
pub fn circuits(cfg: &VectorConfiguration) -> Vec<Circuit> {
    let ints = cfg.integer_vectors();
    let mut found = Vec::new();
    collect_circuits(
        cfg,
        &ints,
        SubsetMask::EMPTY,
        0,
        &EchelonBasis::new(cfg.ambient_dim()),
        &mut found,
    );
    found.sort_by_key(|c: &Circuit| c.support);
    found
}

fn collect_circuits(
    cfg: &VectorConfiguration,
    ints: &[Vec<BigInt>],
    s: SubsetMask,
    start: usize,
    basis: &EchelonBasis,
    found: &mut Vec<Circuit>,
) {
    for v in start..ints.len() {
        if basis.contains(&ints[v]) {
            if let Some(dependence) = full_dependence(cfg, s.with(v)) {
                found.push(Circuit {
                    support: s.with(v),
                    dependence,
                });
            }
        } else {
            let mut next = basis.clone();
            next.insert(&ints[v]);
            collect_circuits(cfg, ints, s.with(v), v + 1, &next, found);
        }
    }
}

/// The dependence on `support` if it is unique up to scale and uses every
/// member; `None` otherwise.
fn full_dependence(cfg: &VectorConfiguration, support: SubsetMask) -> Option<Vec<Rational>> {
    let members: Vec<usize> = support.iter().collect();
    let mut m = Matrix::zeros(cfg.ambient_dim(), members.len());
    for (j, &i) in members.iter().enumerate() {
        for (r, x) in cfg.vector(i).iter().enumerate() {
            m.set(r, j, x.clone());
        }
    }
    let kernel = linalg::kernel_basis(&m);
    if kernel.len() != 1 || kernel[0].iter().any(Zero::is_zero) {
        return None;
    }
    Some(linalg::normalize_leading(&kernel[0]))
}

/// Circuits indexed by their minimal and maximal elements, for repeated
/// activity and robustness queries on one configuration.
#[derive(Clone, Debug)]
pub struct CircuitIndex {
    len: usize,
    circuits: Vec<Circuit>,
    by_min: Vec<Vec<usize>>,
    by_max: Vec<Vec<usize>>,
}

impl CircuitIndex {
    pub fn new(cfg: &VectorConfiguration) -> Self {
        CircuitIndex::from_circuits(cfg.len(), circuits(cfg))
    }

    pub fn from_circuits(len: usize, circuits: Vec<Circuit>) -> Self {
        let mut by_min = vec![Vec::new(); len];
        let mut by_max = vec![Vec::new(); len];
        for (idx, c) in circuits.iter().enumerate() {
            by_min[c.min()].push(idx);
            by_max[c.support.max().expect("nonempty")].push(idx);
        }
        CircuitIndex {
            len,
            circuits,
            by_min,
            by_max,
        }
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// The externally active vectors of `s`. The caller guarantees `s` is
    /// independent.
    pub fn active_set(&self, s: SubsetMask) -> SubsetMask {
        (0..self.len)
            .filter(|&v| !s.contains(v))
            .filter(|&v| {
                let allowed = s.with(v);
                self.by_min[v]
                    .iter()
                    .any(|&c| self.circuits[c].support.is_subset_of(allowed))
            })
            .collect()
    }

    /// True iff no circuit `C` with minimum `v` meets `s` in exactly `{v}`.
    pub fn is_robust(&self, s: SubsetMask) -> bool {
        self.circuits.iter().all(|c| !violates_robustness(c, s))
    }
}

fn violates_robustness(c: &Circuit, s: SubsetMask) -> bool {
    s.intersection(c.support) == SubsetMask::singleton(c.min())
}

fn require_independent(cfg: &VectorConfiguration, s: SubsetMask) -> Result<()> {
    if s.max().is_some_and(|m| m >= cfg.len()) {
        return Err(Error::Precondition(format!(
            "subset {s} is not contained in {{1..{}}}",
            cfg.len()
        )));
    }
    if !is_independent(cfg, s) {
        return Err(Error::DependentSubset(s.to_string()));
    }
    Ok(())
}

/// `act(S)` with respect to the configuration order. Rejects dependent `S`.
pub fn external_activity(cfg: &VectorConfiguration, s: SubsetMask) -> Result<usize> {
    require_independent(cfg, s)?;
    Ok(CircuitIndex::new(cfg).active_set(s).len())
}

/// Number of independent subsets, including the empty one.
pub fn independent_count(cfg: &VectorConfiguration) -> u64 {
    let ints = cfg.integer_vectors();
    let rank = cfg.rank();
    count_independent(&ints, 0, &EchelonBasis::new(cfg.ambient_dim()), rank, 0)
}

const PARALLEL_DEPTH: usize = 6;

fn count_independent(
    ints: &[Vec<BigInt>],
    start: usize,
    basis: &EchelonBasis,
    rank: usize,
    depth: usize,
) -> u64 {
    if basis.rank() == rank {
        return 1;
    }
    let extend = |v: usize| -> u64 {
        if basis.contains(&ints[v]) {
            return 0;
        }
        let mut next = basis.clone();
        next.insert(&ints[v]);
        count_independent(ints, v + 1, &next, rank, depth + 1)
    };
    let children: u64 = if depth < PARALLEL_DEPTH {
        use rayon::prelude::*;
        (start..ints.len()).into_par_iter().map(extend).sum()
    } else {
        (start..ints.len()).map(extend).sum()
    };
    1 + children
}

/// `counts[k] = #{S independent : N - |S| - act(S) = k}`.
///
/// Vectors are decided from last to first. When `v` is reached, the chosen
/// vectors are exactly the members of `S` larger than `v`, and `v` is
/// externally active iff it lies in their span (its fundamental circuit then
/// has `v` as minimum). Once the chosen vectors reach full rank, every
/// remaining vector is active.
pub fn graded_counts(cfg: &VectorConfiguration) -> GradedCount {
    let ints = cfg.integer_vectors();
    let walk = ActivityWalk {
        ints: &ints,
        rank: cfg.rank(),
        total: cfg.len(),
    };
    let mut counts = vec![0u64; cfg.len() + 1];
    walk.run(
        cfg.len(),
        &EchelonBasis::new(cfg.ambient_dim()),
        0,
        0,
        0,
        &mut counts,
    );
    GradedCount(counts)
}

struct ActivityWalk<'a> {
    ints: &'a [Vec<BigInt>],
    rank: usize,
    total: usize,
}

impl ActivityWalk<'_> {
    fn run(
        &self,
        remaining: usize,
        basis: &EchelonBasis,
        size: usize,
        active: usize,
        depth: usize,
        counts: &mut [u64],
    ) {
        if basis.rank() == self.rank {
            counts[self.total - size - active - remaining] += 1;
            return;
        }
        if remaining == 0 {
            counts[self.total - size - active] += 1;
            return;
        }
        let v = &self.ints[remaining - 1];
        if basis.contains(v) {
            self.run(remaining - 1, basis, size, active + 1, depth + 1, counts);
            return;
        }
        let mut with_v = basis.clone();
        with_v.insert(v);
        if depth < PARALLEL_DEPTH * 2 {
            let mut other = vec![0u64; counts.len()];
            rayon::join(
                || self.run(remaining - 1, &with_v, size + 1, active, depth + 1, counts),
                || self.run(remaining - 1, basis, size, active, depth + 1, &mut other),
            );
            for (c, o) in counts.iter_mut().zip(other) {
                *c += o;
            }
        } else {
            self.run(remaining - 1, &with_v, size + 1, active, depth + 1, counts);
            self.run(remaining - 1, basis, size, active, depth + 1, counts);
        }
    }
}

/// All robust subsets in lexicographic order.
///
/// Indices are decided in increasing order; a circuit is checked as soon as
/// its largest element is decided. Any surviving partial choice extends to a
/// robust set (add every remaining nonzero vector), so the search never
/// explores dead branches for long.
pub fn robust_subsets(cfg: &VectorConfiguration) -> Vec<SubsetMask> {
    let index = CircuitIndex::new(cfg);
    let mut out = Vec::new();
    robust_search(&index, 0, SubsetMask::EMPTY, &mut out);
    out.sort();
    out
}

fn robust_search(index: &CircuitIndex, next: usize, s: SubsetMask, out: &mut Vec<SubsetMask>) {
    if next == index.len {
        out.push(s);
        return;
    }
    for candidate in [s, s.with(next)] {
        let ok = index.by_max[next]
            .iter()
            .all(|&c| !violates_robustness(&index.circuits[c], candidate));
        if ok {
            robust_search(index, next + 1, candidate, out);
        }
    }
}

/// Sends an independent `S` to the robust set `V \ (S ∪ M)`, where `M` is the
/// set of externally active vectors of `S`.
pub fn nbc_bijection(cfg: &VectorConfiguration, s: SubsetMask) -> Result<SubsetMask> {
    require_independent(cfg, s)?;
    let active = CircuitIndex::new(cfg).active_set(s);
    Ok(s.union(active).complement(cfg.len()))
}

/// Coordinates on `E / <w>` obtained by completing `w` with the standard
/// basis vectors other than its first nonzero coordinate, then dropping the
/// `w` component.
#[derive(Clone, Debug)]
pub struct Contraction {
    direction: Vec<Rational>,
    pivot: usize,
}

impl Contraction {
    pub fn new(direction: &[Rational]) -> Result<Self> {
        let pivot = direction
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::Precondition("cannot contract a zero vector".into()))?;
        Ok(Contraction {
            direction: direction.to_vec(),
            pivot,
        })
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// Image of `x` in the `(n-1)`-dimensional quotient.
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        let c = &x[self.pivot] / &self.direction[self.pivot];
        (0..x.len())
            .filter(|&j| j != self.pivot)
            .map(|j| &x[j] - &c * &self.direction[j])
            .collect()
    }

    /// Pulls a functional on the quotient back to `E`; the result vanishes on
    /// the contracted direction.
    pub fn lift_functional(&self, mu: &[Rational]) -> Vec<Rational> {
        let n = self.direction.len();
        let mut lambda = vec![Rational::zero(); n];
        let others = (0..n).filter(|&j| j != self.pivot);
        let mut acc = Rational::zero();
        for (m, j) in mu.iter().zip(others) {
            lambda[j] = m.clone();
            acc += m * &self.direction[j];
        }
        lambda[self.pivot] = -acc / &self.direction[self.pivot];
        lambda
    }

    /// A basis `x'_1..x'_n` of `E*` with `x'_i(w) = 0` for `i < n` and
    /// `x'_n(w) = 1`, as rows of coefficients on the original dual basis.
    pub fn adapted_dual_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.direction.len();
        let w_p = &self.direction[self.pivot];
        let mut rows = Vec::with_capacity(n);
        for j in (0..n).filter(|&j| j != self.pivot) {
            let mut row = vec![Rational::zero(); n];
            row[j] = Rational::one();
            row[self.pivot] = -(&self.direction[j] / w_p);
            rows.push(row);
        }
        let mut last = vec![Rational::zero(); n];
        last[self.pivot] = w_p.recip();
        rows.push(last);
        rows
    }
}

/// Deletion `V' = V \ {v_N}` and contraction `V''`, the images of
/// `v_1..v_{N-1}` in `E / <v_N>`.
pub fn delete_contract(
    cfg: &VectorConfiguration,
) -> Result<(VectorConfiguration, VectorConfiguration)> {
    let Some(last) = cfg.len().checked_sub(1) else {
        return Err(Error::Precondition(
            "deletion/contraction needs a nonempty configuration".into(),
        ));
    };
    if cfg.is_zero_vector(last) {
        return Err(Error::Precondition(
            "deletion/contraction needs a nonzero last vector".into(),
        ));
    }
    let contraction = Contraction::new(cfg.vector(last))?;
    let deleted = cfg.vectors()[..last].to_vec();
    let contracted = deleted.iter().map(|v| contraction.project(v)).collect();
    Ok((
        VectorConfiguration::new(cfg.ambient_dim(), deleted)?,
        VectorConfiguration::new(cfg.ambient_dim() - 1, contracted)?,
    ))
}

/// Graded counts assembled from the deletion and contraction of the last
/// vector: `h_V(t) = t·h_{V'}(t) + h_{V''}(t)`, or `h_{V'}` when the last
/// vector is zero.
pub fn recursive_graded_counts(cfg: &VectorConfiguration) -> Result<GradedCount> {
    let Some(last) = cfg.len().checked_sub(1) else {
        return Err(Error::Precondition(
            "deletion/contraction needs a nonempty configuration".into(),
        ));
    };
    let deleted = VectorConfiguration::new(cfg.ambient_dim(), cfg.vectors()[..last].to_vec())?;
    let below = graded_counts(&deleted);
    if cfg.is_zero_vector(last) {
        return Ok(below.resized(cfg.len() + 1));
    }
    let (_, contracted) = delete_contract(cfg)?;
    let contracted = graded_counts(&contracted);
    Ok(GradedCount(
        (0..=cfg.len())
            .map(|k| contracted.degree(k) + k.checked_sub(1).map_or(0, |j| below.degree(j)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vector;

    fn cfg(dim: usize, vs: &[&[i64]]) -> VectorConfiguration {
        let vs: Vec<Vec<i64>> = vs.iter().map(|v| v.to_vec()).collect();
        VectorConfiguration::from_integers(dim, &vs).unwrap()
    }

    fn a2() -> VectorConfiguration {
        cfg(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn b2() -> VectorConfiguration {
        cfg(2, &[&[1, -1], &[0, 2], &[2, 0], &[1, 1]])
    }

    fn set(one_based: &[usize]) -> SubsetMask {
        one_based.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn independence_examples() {
        assert!(is_independent(&a2(), SubsetMask::EMPTY));
        let with_zero = cfg(2, &[&[1, 0], &[0, 0]]);
        assert!(!is_independent(&with_zero, set(&[2])));
        assert!(!is_independent(&a2(), set(&[1, 2, 3])));
        for pair in [[1, 2], [1, 3], [2, 3]] {
            assert!(is_independent(&a2(), set(&pair)));
        }
    }

    #[test]
    fn circuit_examples() {
        let cs = circuits(&a2());
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].support, set(&[1, 2, 3]));
        assert_eq!(cs[0].dependence, int_vector(&[1, 1, -1]));

        let with_zero = cfg(2, &[&[1, 0], &[0, 0], &[0, 1]]);
        assert!(circuits(&with_zero).iter().any(|c| c.support == set(&[2])));

        let cs = circuits(&b2());
        let supports: Vec<SubsetMask> = cs.iter().map(|c| c.support).collect();
        assert_eq!(
            supports,
            vec![
                set(&[1, 2, 3]),
                set(&[1, 2, 4]),
                set(&[1, 3, 4]),
                set(&[2, 3, 4])
            ]
        );
    }

    #[test]
    fn circuit_dependences_vanish() {
        for c in [
            a2(),
            b2(),
            cfg(3, &[&[1, 2, 0], &[2, 4, 0], &[0, 0, 1], &[1, 2, 1]]),
        ] {
            for circuit in circuits(&c) {
                let mut sum = vec![Rational::zero(); c.ambient_dim()];
                for (coef, i) in circuit.dependence.iter().zip(circuit.support.iter()) {
                    for (s, x) in sum.iter_mut().zip(c.vector(i)) {
                        *s += coef * x;
                    }
                }
                assert!(sum.iter().all(Zero::is_zero));
                assert!(circuit.dependence[0].is_one());
            }
        }
    }

    #[test]
    fn activity_examples() {
        assert_eq!(external_activity(&a2(), SubsetMask::EMPTY).unwrap(), 0);
        assert_eq!(external_activity(&a2(), set(&[2, 3])).unwrap(), 1);
        assert_eq!(external_activity(&b2(), set(&[3, 4])).unwrap(), 2);
        assert!(matches!(
            external_activity(&a2(), set(&[1, 2, 3])),
            Err(Error::DependentSubset(_))
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(independent_count(&cfg(1, &[&[3]])), 2);
        assert_eq!(independent_count(&a2()), 7);
        assert_eq!(independent_count(&b2()), 11);
        assert_eq!(graded_counts(&cfg(1, &[&[3]])).counts(), &[1, 1]);
        assert_eq!(graded_counts(&a2()).counts(), &[1, 2, 3, 1]);
        assert_eq!(graded_counts(&b2()).counts(), &[1, 2, 3, 4, 1]);
    }

    #[test]
    fn graded_counts_of_independent_vectors_are_binomial() {
        let id = VectorConfiguration::identity(4);
        assert_eq!(graded_counts(&id).counts(), &[1, 4, 6, 4, 1]);
    }

    #[test]
    fn zero_vector_kills_top_degree() {
        let c = cfg(2, &[&[1, 0], &[0, 0], &[0, 1]]);
        let g = graded_counts(&c);
        assert_eq!(g.degree(3), 0);
        assert_eq!(g.total(), independent_count(&c));
    }

    #[test]
    fn robust_examples() {
        let robust = robust_subsets(&a2());
        assert_eq!(robust.len(), 7);
        assert!(!robust.contains(&set(&[1])));

        assert_eq!(robust_subsets(&VectorConfiguration::identity(3)).len(), 8);
        assert_eq!(robust_subsets(&cfg(1, &[&[0]])), vec![SubsetMask::EMPTY]);
    }

    #[test]
    fn nbc_examples() {
        assert_eq!(
            nbc_bijection(&a2(), set(&[2, 3])).unwrap(),
            SubsetMask::EMPTY
        );
        assert_eq!(
            nbc_bijection(&a2(), SubsetMask::EMPTY).unwrap(),
            set(&[1, 2, 3])
        );
        let id = VectorConfiguration::identity(3);
        assert_eq!(nbc_bijection(&id, set(&[1, 3])).unwrap(), set(&[2]));
    }

    #[test]
    fn delete_contract_examples() {
        let (deleted, contracted) = delete_contract(&a2()).unwrap();
        assert_eq!(deleted, cfg(2, &[&[1, 0], &[0, 1]]));
        assert_eq!(contracted.ambient_dim(), 1);
        assert_eq!(contracted.vector(0), &int_vector(&[-1])[..]);
        assert_eq!(contracted.vector(1), &int_vector(&[1])[..]);

        let (_, contracted) = delete_contract(&cfg(2, &[&[2, 1], &[2, 1]])).unwrap();
        assert!(contracted.is_zero_vector(0));

        let (deleted, contracted) = delete_contract(&cfg(1, &[&[5]])).unwrap();
        assert!(deleted.is_empty());
        assert!(contracted.is_empty());
        assert_eq!(contracted.ambient_dim(), 0);

        assert!(delete_contract(&cfg(2, &[&[1, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn lifted_functionals_vanish_on_direction() {
        let w = int_vector(&[0, 2, -3]);
        let c = Contraction::new(&w).unwrap();
        let lambda = c.lift_functional(&int_vector(&[4, 7]));
        assert!(linalg::dot(&lambda, &w).is_zero());
        let x = int_vector(&[1, 5, 2]);
        assert_eq!(
            linalg::dot(&lambda, &x),
            linalg::dot(&int_vector(&[4, 7]), &c.project(&x))
        );
        let basis = c.adapted_dual_basis();
        for (i, row) in basis.iter().enumerate() {
            let value = linalg::dot(row, &w);
            assert_eq!(value.is_one(), i + 1 == basis.len());
            assert_eq!(value.is_zero(), i + 1 != basis.len());
        }
    }

    #[test]
    fn graded_counts_follow_deletion_contraction() {
        for c in [
            a2(),
            b2(),
            cfg(2, &[&[1, 0], &[0, 0]]),
            cfg(2, &[&[0, 1], &[1, 0]]),
        ] {
            assert_eq!(recursive_graded_counts(&c).unwrap(), graded_counts(&c));
        }
    }
}
