//! The square-free algebra `Φ_N = Q[φ_1..φ_N] / (φ_i²)` and the subalgebra
//! generated by `θ_i = Σ_j v_j[i] φ_j`.
//!
//! Elements are sparse maps from square-free monomials (index subsets) to
//! coefficients, bucketed by degree. Products of monomials sharing an index
//! vanish.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::config::{binomial, k_subsets, SubsetMask, VectorConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Rational};
use crate::matroid::{self, GradedCount};
use crate::poly::{self, Polynomial};

/// Default cap on the number of rows of any matrix the algebraic engines build.
pub const DEFAULT_MAX_ROWS: usize = 2_000_000;

/// Resource limits for the matrix-based engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rows: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rows: DEFAULT_MAX_ROWS,
        }
    }
}

impl Limits {
    pub fn with_max_rows(max_rows: usize) -> Self {
        Limits { max_rows }
    }

    pub(crate) fn check_rows(&self, rows: u128, what: &str) -> Result<()> {
        if rows > self.max_rows as u128 {
            return Err(Error::ResourceLimit(format!(
                "{what} needs {rows} rows, above the limit of {}",
                self.max_rows
            )));
        }
        Ok(())
    }
}

/// An element of `Φ_N`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SquareFreeElement {
    buckets: Vec<BTreeMap<SubsetMask, Rational>>,
}

impl SquareFreeElement {
    pub fn zero() -> Self {
        SquareFreeElement::default()
    }

    pub fn one() -> Self {
        SquareFreeElement::term(SubsetMask::EMPTY, Rational::one())
    }

    /// The generator `φ_i` (zero-based index).
    pub fn phi(i: usize) -> Self {
        SquareFreeElement::term(SubsetMask::singleton(i), Rational::one())
    }

    pub fn term(mask: SubsetMask, coefficient: Rational) -> Self {
        let mut e = SquareFreeElement::zero();
        e.add_term(mask, coefficient);
        e
    }

    pub fn add_term(&mut self, mask: SubsetMask, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let d = mask.len();
        if self.buckets.len() <= d {
            self.buckets.resize_with(d + 1, BTreeMap::new);
        }
        let bucket = &mut self.buckets[d];
        let entry = bucket.entry(mask).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            bucket.remove(&mask);
            while self.buckets.last().is_some_and(BTreeMap::is_empty) {
                self.buckets.pop();
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.buckets.iter().all(BTreeMap::is_empty)
    }

    pub fn coefficient(&self, mask: SubsetMask) -> Rational {
        self.buckets
            .get(mask.len())
            .and_then(|b| b.get(&mask))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms of degree `k`, in lexicographic order of the monomials.
    pub fn degree_part(&self, k: usize) -> impl Iterator<Item = (&SubsetMask, &Rational)> {
        self.buckets.get(k).into_iter().flat_map(|b| b.iter())
    }

    /// All nonzero terms, by degree then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&SubsetMask, &Rational)> {
        self.buckets.iter().flat_map(|b| b.iter())
    }

    pub fn len(&self) -> usize {
        self.buckets.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &SquareFreeElement) -> SquareFreeElement {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> SquareFreeElement {
        let mut out = SquareFreeElement::zero();
        for (m, c) in self.terms() {
            out.add_term(*m, c * factor);
        }
        out
    }

    pub fn multiply(&self, other: &SquareFreeElement) -> SquareFreeElement {
        multiply(self, other)
    }
}

impl fmt::Debug for SquareFreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SquareFreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                if m.is_empty() {
                    c.to_string()
                } else {
                    let phis: Vec<String> = m.one_based().iter().map(|i| format!("φ{i}")).collect();
                    format!("({c}){}", phis.join(""))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Commutative product with `φ_i² = 0`: overlapping monomials annihilate.
pub fn multiply(a: &SquareFreeElement, b: &SquareFreeElement) -> SquareFreeElement {
    let mut out = SquareFreeElement::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if ma.is_disjoint(*mb) {
                out.add_term(ma.union(*mb), ca * cb);
            }
        }
    }
    out
}

/// The degree-one generators `θ_1..θ_n` of the curvature subalgebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSet {
    thetas: Vec<SquareFreeElement>,
}

impl GeneratorSet {
    /// Generators from explicit elements. Used for changes of basis.
    pub fn from_elements(thetas: Vec<SquareFreeElement>) -> Self {
        GeneratorSet { thetas }
    }

    pub fn thetas(&self) -> &[SquareFreeElement] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// The generators `Σ_j m[i][j] θ_j` for a change-of-basis matrix given by
    /// rows.
    pub fn transformed(&self, rows: &[Vec<Rational>]) -> GeneratorSet {
        let thetas = rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.thetas)
                    .fold(SquareFreeElement::zero(), |acc, (c, t)| {
                        acc.add(&t.scale(c))
                    })
            })
            .collect();
        GeneratorSet { thetas }
    }
}

/// `θ_i = Σ_j (i-th coordinate of v_j) φ_j`.
pub fn generators_from(cfg: &VectorConfiguration) -> GeneratorSet {
    let thetas = (0..cfg.ambient_dim())
        .map(|i| {
            let mut theta = SquareFreeElement::zero();
            for (j, v) in cfg.vectors().iter().enumerate() {
                theta.add_term(SubsetMask::singleton(j), v[i].clone());
            }
            theta
        })
        .collect();
    GeneratorSet { thetas }
}

/// Substitutes `x_i ↦ θ_i` and expands in `Φ_N`.
pub fn evaluate(f: &Polynomial, gens: &GeneratorSet) -> SquareFreeElement {
    assert_eq!(
        f.nvars(),
        gens.len(),
        "polynomial variables must match generator count"
    );
    let mut powers: Vec<Vec<SquareFreeElement>> = vec![vec![SquareFreeElement::one()]; gens.len()];
    let mut out = SquareFreeElement::zero();
    for (exponents, coefficient) in f.terms() {
        let mut product = SquareFreeElement::one();
        for (i, &e) in exponents.iter().enumerate() {
            let e = e as usize;
            while powers[i].len() <= e {
                let next = multiply(powers[i].last().expect("seeded"), &gens.thetas[i]);
                powers[i].push(next);
            }
            product = multiply(&product, &powers[i][e]);
            if product.is_zero() {
                break;
            }
        }
        for (m, c) in product.terms() {
            out.add_term(*m, c * coefficient);
        }
    }
    out
}

/// The matrix `A_k`: rows are `k`-subsets `I` in lexicographic order, columns
/// are degree-`k` monomials `x_{j_1}..x_{j_k}` (`j_1 <= .. <= j_k`) in
/// lexicographic order, and entry `(I, J)` is the coefficient of `φ_I` in
/// `θ_{j_1}..θ_{j_k}`.
pub fn coefficient_matrix(cfg: &VectorConfiguration, k: usize, limits: Limits) -> Result<Matrix> {
    let n_vectors = cfg.len();
    if k > n_vectors {
        return Err(Error::Precondition(format!(
            "degree {k} exceeds the number of vectors {n_vectors}"
        )));
    }
    limits.check_rows(
        binomial(n_vectors, k),
        &format!("coefficient matrix in degree {k}"),
    )?;
    let rows = k_subsets(n_vectors, k);
    let row_of: HashMap<SubsetMask, usize> =
        rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let cols = poly::monomials_of_degree(cfg.ambient_dim(), k).len();
    let mut m = Matrix::zeros(rows.len(), cols);
    let gens = generators_from(cfg);

    // walk index sequences j_1 <= .. <= j_k, reusing prefix products
    let mut col = 0;
    let mut stack = vec![SquareFreeElement::one()];
    let mut seq: Vec<usize> = Vec::with_capacity(k);
    fill_columns(&gens, k, 0, &mut seq, &mut stack, &mut col, &row_of, &mut m);
    debug_assert_eq!(col, cols);
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn fill_columns(
    gens: &GeneratorSet,
    k: usize,
    start: usize,
    seq: &mut Vec<usize>,
    stack: &mut Vec<SquareFreeElement>,
    col: &mut usize,
    row_of: &HashMap<SubsetMask, usize>,
    m: &mut Matrix,
) {
    if seq.len() == k {
        let product = stack.last().expect("seeded");
        for (mask, c) in product.degree_part(k) {
            m.set(row_of[mask], *col, c.clone());
        }
        *col += 1;
        return;
    }
    for j in start..gens.len() {
        let next = multiply(stack.last().expect("seeded"), &gens.thetas[j]);
        stack.push(next);
        seq.push(j);
        fill_columns(gens, k, j, seq, stack, col, row_of, m);
        seq.pop();
        stack.pop();
    }
}

/// `dim C_V^k = rank A_k` for `k = 0..N`.
pub fn algebra_graded_dims(cfg: &VectorConfiguration, limits: Limits) -> Result<GradedCount> {
    let ranks: Result<Vec<u64>> = (0..=cfg.len())
        .into_par_iter()
        .map(|k| coefficient_matrix(cfg, k, limits).map(|m| linalg::rank(&m) as u64))
        .collect();
    Ok(GradedCount::new(ranks?))
}

/// Expansion of `m(S) = Π_{i∈S} v_i` in the symmetric algebra of `E`.
pub fn subset_monomial(cfg: &VectorConfiguration, s: SubsetMask) -> Polynomial {
    s.iter().fold(Polynomial::one(cfg.ambient_dim()), |acc, i| {
        acc.mul(&Polynomial::linear_form(cfg.vector(i)))
    })
}

/// Coordinates of each `m(S)` in the degree-`k` monomial basis of `Sym(E)`.
fn subset_monomial_rows(cfg: &VectorConfiguration, subsets: &[SubsetMask], k: usize) -> Matrix {
    let index = poly::monomial_index(cfg.ambient_dim(), k);
    let mut m = Matrix::zeros(subsets.len(), index.len());
    for (r, s) in subsets.iter().enumerate() {
        for (e, c) in subset_monomial(cfg, *s).terms() {
            m.set(r, index[e], c.clone());
        }
    }
    m
}

/// `dim S_V^k`, the span of the square-free products `m(S)` with `|S| = k`.
pub fn dual_graded_dims(cfg: &VectorConfiguration, limits: Limits) -> Result<GradedCount> {
    let ranks: Result<Vec<u64>> = (0..=cfg.len())
        .into_par_iter()
        .map(|k| {
            limits.check_rows(binomial(cfg.len(), k), &format!("dual span in degree {k}"))?;
            let subsets = k_subsets(cfg.len(), k);
            Ok(linalg::rank(&subset_monomial_rows(cfg, &subsets, k)) as u64)
        })
        .collect();
    Ok(GradedCount::new(ranks?))
}

/// Outcome of checking that the robust products form a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RobustBasisReport {
    pub robust_count: usize,
    pub span_rank: usize,
    pub independent_count: u64,
}

impl RobustBasisReport {
    pub fn passed(&self) -> bool {
        self.span_rank == self.robust_count && self.robust_count as u64 == self.independent_count
    }
}

/// Expands `m(S)` for every robust `S` and checks linear independence and the
/// count against the number of independent subsets.
pub fn robust_basis_report(cfg: &VectorConfiguration) -> RobustBasisReport {
    let robust = matroid::robust_subsets(cfg);
    let mut by_size: BTreeMap<usize, Vec<SubsetMask>> = BTreeMap::new();
    for s in &robust {
        by_size.entry(s.len()).or_default().push(*s);
    }
    // monomials of different degrees are independent, so ranks add up
    let span_rank = by_size
        .iter()
        .map(|(k, subsets)| linalg::rank(&subset_monomial_rows(cfg, subsets, *k)))
        .sum();
    RobustBasisReport {
        robust_count: robust.len(),
        span_rank,
        independent_count: matroid::independent_count(cfg),
    }
}

pub fn robust_basis_check(cfg: &VectorConfiguration) -> bool {
    robust_basis_report(cfg).passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, int_vector};
    use proptest::prelude::*;

    fn cfg(dim: usize, vs: &[&[i64]]) -> VectorConfiguration {
        let vs: Vec<Vec<i64>> = vs.iter().map(|v| v.to_vec()).collect();
        VectorConfiguration::from_integers(dim, &vs).unwrap()
    }

    fn a2() -> VectorConfiguration {
        cfg(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn phis(idx: &[usize]) -> SubsetMask {
        idx.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn multiplication_rules() {
        let p1 = SquareFreeElement::phi(0);
        let p2 = SquareFreeElement::phi(1);
        assert!(multiply(&p1, &p1).is_zero());
        assert_eq!(
            multiply(&p1, &p2),
            SquareFreeElement::term(phis(&[1, 2]), int(1))
        );
        assert_eq!(multiply(&p1, &p2), multiply(&p2, &p1));
        let s = p1.add(&p2);
        assert_eq!(
            multiply(&s, &s),
            SquareFreeElement::term(phis(&[1, 2]), int(2))
        );
    }

    #[test]
    fn generator_examples() {
        let g = generators_from(&a2());
        let t1 = SquareFreeElement::phi(0).add(&SquareFreeElement::phi(2));
        let t2 = SquareFreeElement::phi(1).add(&SquareFreeElement::phi(2));
        assert_eq!(g.thetas(), &[t1, t2]);

        let g = generators_from(&VectorConfiguration::identity(3));
        for (i, t) in g.thetas().iter().enumerate() {
            assert_eq!(t, &SquareFreeElement::phi(i));
        }

        let g = generators_from(&cfg(1, &[&[2]]));
        assert_eq!(g.thetas()[0], SquareFreeElement::term(phis(&[1]), int(2)));
    }

    #[test]
    fn evaluation_examples() {
        let g = generators_from(&a2());
        assert_eq!(evaluate(&Polynomial::one(2), &g), SquareFreeElement::one());
        let x1 = Polynomial::variable(2, 0);
        let x2 = Polynomial::variable(2, 1);
        assert!(evaluate(&x1.pow(3), &g).is_zero());
        let mut expected = SquareFreeElement::zero();
        for s in [phis(&[1, 2]), phis(&[1, 3]), phis(&[2, 3])] {
            expected.add_term(s, int(1));
        }
        assert_eq!(evaluate(&x1.mul(&x2), &g), expected);
    }

    #[test]
    fn coefficient_matrix_examples() {
        let limits = Limits::default();
        let m0 = coefficient_matrix(&a2(), 0, limits).unwrap();
        assert_eq!(m0, Matrix::identity(1));

        let m1 = coefficient_matrix(&a2(), 1, limits).unwrap();
        assert_eq!(
            m1,
            Matrix::from_int_rows(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap()
        );

        let m3 = coefficient_matrix(&a2(), 3, limits).unwrap();
        assert_eq!((m3.rows(), m3.cols()), (1, 4));
        // columns: x1x1x1, x1x1x2, x1x2x2, x2x2x2
        assert_eq!(m3.get(0, 2), &int(2));
        assert_eq!(m3.row(0), &int_vector(&[0, 2, 2, 0])[..]);
    }

    #[test]
    fn coefficient_matrix_respects_row_limit() {
        let err = coefficient_matrix(&a2(), 1, Limits::with_max_rows(2)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn graded_dimension_examples() {
        let limits = Limits::default();
        assert_eq!(
            algebra_graded_dims(&cfg(1, &[&[3]]), limits)
                .unwrap()
                .counts(),
            &[1, 1]
        );
        assert_eq!(
            algebra_graded_dims(&a2(), limits).unwrap().counts(),
            &[1, 2, 3, 1]
        );
        let id2 = VectorConfiguration::identity(2);
        assert_eq!(
            algebra_graded_dims(&id2, limits).unwrap().counts(),
            &[1, 2, 1]
        );
        assert_eq!(dual_graded_dims(&id2, limits).unwrap().counts(), &[1, 2, 1]);
        assert_eq!(
            dual_graded_dims(&a2(), limits).unwrap().counts(),
            &[1, 2, 3, 1]
        );
    }

    #[test]
    fn robust_basis_examples() {
        let r = robust_basis_report(&a2());
        assert!(r.passed());
        assert_eq!(r.robust_count, 7);

        let r = robust_basis_report(&VectorConfiguration::identity(3));
        assert!(r.passed());
        assert_eq!(r.robust_count, 8);

        let dup = cfg(2, &[&[1, 2], &[1, 2]]);
        let r = robust_basis_report(&dup);
        assert!(r.passed());
        assert_eq!(r.robust_count, 3);
        assert_eq!(
            matroid::robust_subsets(&dup),
            vec![SubsetMask::EMPTY, phis(&[1, 2]), phis(&[2])]
        );
    }

    fn element() -> impl Strategy<Value = SquareFreeElement> {
        prop::collection::vec((0u128..32, -3i64..=3), 0..5).prop_map(|terms| {
            let mut e = SquareFreeElement::zero();
            for (mask, c) in terms {
                e.add_term(SubsetMask::from_bits(mask), int(c));
            }
            e
        })
    }

    fn polynomial() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, 2), -3i64..=3), 0..4).prop_map(
            |terms| Polynomial::from_terms(2, terms.into_iter().map(|(e, c)| (e, int(c)))),
        )
    }

    proptest! {
        #[test]
        fn multiplication_is_commutative_and_associative(a in element(), b in element(), c in element()) {
            prop_assert_eq!(multiply(&a, &b), multiply(&b, &a));
            prop_assert_eq!(multiply(&multiply(&a, &b), &c), multiply(&a, &multiply(&b, &c)));
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(f in polynomial(), g in polynomial()) {
            let gens = generators_from(&cfg(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1], &[2, 1]]));
            let lhs = evaluate(&f.mul(&g), &gens);
            let rhs = multiply(&evaluate(&f, &gens), &evaluate(&g, &gens));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(evaluate(&f.add(&g), &gens), evaluate(&f, &gens).add(&evaluate(&g, &gens)));
        }
    }
}
