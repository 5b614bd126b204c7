//! Vector configurations and index subsets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix, Rational};

/// Largest configuration size supported by [`SubsetMask`].
pub const MAX_VECTORS: usize = 128;

/// A subset of `{0, .., N-1}` stored as a bit mask.
///
/// Ordering is lexicographic on the sorted index lists, so `{0} < {0,1} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetMask(u128);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u128) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1u128 << i)
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            SubsetMask(u128::MAX)
        } else {
            SubsetMask((1u128 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 128 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1u128 << i)
    }

    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1u128 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (!self.is_empty()).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        SubsetMask::full(n).difference(self)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// One-based member list, as used in documents and messages.
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(SubsetMask::EMPTY, SubsetMask::with)
    }
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        // The set holding the lowest differing element is smaller unless the
        // other set stops there (then the other one is a proper prefix).
        if self.0 & low != 0 {
            if other.0 & above == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & above == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// An ordered multiset of rational vectors `v_1 < .. < v_N` in `Q^n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorConfiguration {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
}

impl VectorConfiguration {
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        if vectors.len() > MAX_VECTORS {
            return Err(Error::ResourceLimit(format!(
                "{} vectors given, at most {MAX_VECTORS} are supported",
                vectors.len()
            )));
        }
        if let Some((i, v)) = vectors
            .iter()
            .enumerate()
            .find(|(_, v)| v.len() != ambient_dim)
        {
            return Err(Error::Precondition(format!(
                "vector {} has {} coordinates, expected {ambient_dim}",
                i + 1,
                v.len()
            )));
        }
        Ok(VectorConfiguration {
            ambient_dim,
            vectors,
        })
    }

    pub fn from_integers(ambient_dim: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        VectorConfiguration::new(
            ambient_dim,
            vectors.iter().map(|v| linalg::int_vector(v)).collect(),
        )
    }

    /// The standard basis of `Q^n`.
    pub fn identity(n: usize) -> Self {
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| linalg::int(i64::from(i == j))).collect())
            .collect();
        VectorConfiguration {
            ambient_dim: n,
            vectors,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of vectors `N`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn is_zero_vector(&self, i: usize) -> bool {
        self.vectors[i].iter().all(Zero::is_zero)
    }

    pub fn has_zero_vector(&self) -> bool {
        (0..self.len()).any(|i| self.is_zero_vector(i))
    }

    pub fn all(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Each vector scaled to a primitive integer vector. Scaling individual
    /// vectors leaves the matroid unchanged.
    pub fn integer_vectors(&self) -> Vec<Vec<BigInt>> {
        self.vectors
            .iter()
            .map(|v| linalg::primitive_integer(v))
            .collect()
    }

    /// The `n x N` matrix whose columns are the vectors.
    pub fn coordinate_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.ambient_dim, self.len());
        for (j, v) in self.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.subset_rank(self.all())
    }

    pub fn subset_rank(&self, s: SubsetMask) -> usize {
        let ints = self.integer_vectors();
        let mut basis = EchelonBasis::new(self.ambient_dim);
        for i in s.iter() {
            basis.insert(&ints[i]);
        }
        basis.rank()
    }

    pub fn spans(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    pub fn require_spanning(&self) -> Result<()> {
        let rank = self.rank();
        if rank == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::NotSpanning {
                rank,
                ambient_dim: self.ambient_dim,
            })
        }
    }

    /// The configuration with vectors reordered: position `i` of the result
    /// holds vector `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.len(), "permutation length mismatch");
        VectorConfiguration {
            ambient_dim: self.ambient_dim,
            vectors: order.iter().map(|&i| self.vectors[i].clone()).collect(),
        }
    }

    /// The configuration restricted to the vectors indexed by `s`, in order.
    pub fn restricted(&self, s: SubsetMask) -> Self {
        VectorConfiguration {
            ambient_dim: self.ambient_dim,
            vectors: s.iter().map(|i| self.vectors[i].clone()).collect(),
        }
    }
}

/// Enumerates all `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<SubsetMask> {
    fn go(start: usize, n: usize, k: usize, current: SubsetMask, out: &mut Vec<SubsetMask>) {
        if k == 0 {
            out.push(current);
            return;
        }
        for i in start..=n - k {
            go(i + 1, n, k - 1, current.with(i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, SubsetMask::EMPTY, &mut out);
    }
    out
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
