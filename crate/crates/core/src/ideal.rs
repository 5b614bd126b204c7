//! Essential hyperplanes and the power ideal they generate.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::config::{binomial, SubsetMask, VectorConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{self, EchelonBasis, Matrix, Rational};
use crate::matroid::{self, Contraction, GradedCount};
use crate::poly::{self, Polynomial};
use crate::squarefree::{self, GeneratorSet, Limits, SquareFreeElement};

/// A hyperplane spanned by the vectors lying on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EssentialHyperplane {
    /// Canonical normal: first nonzero coordinate is one.
    pub normal: Vec<Rational>,
    /// Indices of the vectors off the hyperplane.
    pub index_set: SubsetMask,
    /// `|index_set|`
    pub d: usize,
}

/// The generator `linear_form^power` of the power ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealGenerator {
    pub linear_form: Vec<Rational>,
    pub power: u32,
}

impl IdealGenerator {
    pub fn polynomial(&self) -> Polynomial {
        Polynomial::linear_form(&self.linear_form).pow(self.power)
    }
}

/// All essential hyperplanes, sorted by canonical normal.
///
/// Each flat of rank `n - 1` is reached once, through its lexicographically
/// first basis.
pub fn essential_hyperplanes(cfg: &VectorConfiguration) -> Result<Vec<EssentialHyperplane>> {
    cfg.require_spanning()?;
    let n = cfg.ambient_dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let ints = cfg.integer_vectors();
    let closure = |basis: &EchelonBasis| -> SubsetMask {
        (0..ints.len())
            .filter(|&i| basis.contains(&ints[i]))
            .collect()
    };
    let root = EchelonBasis::new(n);
    let root_closure = closure(&root);

    let mut out = Vec::new();
    let mut stack = vec![(root, root_closure, Vec::<usize>::new())];
    while let Some((basis, flat, chosen)) = stack.pop() {
        if basis.rank() == n - 1 {
            let rows: Vec<Vec<Rational>> = chosen.iter().map(|&i| cfg.vector(i).to_vec()).collect();
            let m = Matrix::from_rows(n, &rows).expect("rows have ambient length");
            let kernel = linalg::kernel_basis(&m);
            debug_assert_eq!(kernel.len(), 1);
            let index_set = flat.complement(cfg.len());
            out.push(EssentialHyperplane {
                normal: linalg::normalize_leading(&kernel[0]),
                index_set,
                d: index_set.len(),
            });
            continue;
        }
        let start = chosen.last().map_or(0, |&j| j + 1);
        for j in start..ints.len() {
            if flat.contains(j) {
                continue;
            }
            let mut next = basis.clone();
            next.insert(&ints[j]);
            let next_flat = closure(&next);
            if next_flat.difference(flat).min() != Some(j) {
                continue;
            }
            let mut next_chosen = chosen.clone();
            next_chosen.push(j);
            stack.push((next, next_flat, next_chosen));
        }
    }
    out.sort();
    Ok(out)
}

/// One generator `λ_H^{d(H)+1}` per essential hyperplane.
pub fn ideal_generators(cfg: &VectorConfiguration) -> Result<Vec<IdealGenerator>> {
    Ok(essential_hyperplanes(cfg)?
        .into_iter()
        .map(|h| IdealGenerator {
            linear_form: h.normal,
            power: h.d as u32 + 1,
        })
        .collect())
}

/// `λ(θ_1, .., θ_n) = Σ_j λ(v_j) φ_j`
fn linear_image(cfg: &VectorConfiguration, lambda: &[Rational]) -> SquareFreeElement {
    let mut out = SquareFreeElement::zero();
    for (j, v) in cfg.vectors().iter().enumerate() {
        out.add_term(SubsetMask::singleton(j), linalg::dot(lambda, v));
    }
    out
}

/// True iff every generator of the power ideal maps to zero in `Φ_N`.
pub fn generators_vanish(cfg: &VectorConfiguration) -> Result<bool> {
    let generators = ideal_generators(cfg)?;
    Ok(generators.par_iter().all(|g| {
        let base = linear_image(cfg, &g.linear_form);
        let mut acc = SquareFreeElement::one();
        for _ in 0..g.power {
            acc = squarefree::multiply(&acc, &base);
            if acc.is_zero() {
                return true;
            }
        }
        acc.is_zero()
    }))
}

/// True iff `f(θ_1, .., θ_n) = 0` in `Φ_N`.
pub fn vanishing_membership(cfg: &VectorConfiguration, f: &Polynomial) -> Result<bool> {
    cfg.require_spanning()?;
    check_nvars(cfg, f)?;
    Ok(squarefree::evaluate(f, &squarefree::generators_from(cfg)).is_zero())
}

fn check_nvars(cfg: &VectorConfiguration, f: &Polynomial) -> Result<()> {
    if f.nvars() != cfg.ambient_dim() {
        return Err(Error::Precondition(format!(
            "polynomial has {} variables, configuration has dimension {}",
            f.nvars(),
            cfg.ambient_dim()
        )));
    }
    Ok(())
}

/// Hilbert function of `Sym(E*) / I` in degrees `0..=max_degree`, computed
/// degree by degree from the span of `m · λ^p` over monomials `m`.
pub fn quotient_hilbert(
    cfg: &VectorConfiguration,
    max_degree: usize,
    limits: Limits,
) -> Result<GradedCount> {
    let generators = ideal_generators(cfg)?;
    let n = cfg.ambient_dim();
    let powers: Vec<(usize, Polynomial)> = generators
        .iter()
        .map(|g| (g.power as usize, g.polynomial()))
        .collect();

    for d in 0..=max_degree {
        let rows: u128 = powers
            .iter()
            .filter(|(p, _)| *p <= d)
            .map(|(p, _)| {
                if n == 0 {
                    u128::from(d == *p)
                } else {
                    binomial(n + d - p - 1, d - p)
                }
            })
            .sum();
        limits.check_rows(rows, &format!("ideal span in degree {d}"))?;
    }

    let counts: Vec<u64> = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let index = poly::monomial_index(n, d);
            let mut rows: Vec<Vec<Rational>> = Vec::new();
            for (p, power) in powers.iter().filter(|(p, _)| *p <= d) {
                for e in poly::monomials_of_degree(n, d - p) {
                    let product = power.mul(&Polynomial::monomial(e, Rational::one()));
                    let mut row = vec![Rational::zero(); index.len()];
                    for (exp, c) in product.terms() {
                        row[index[exp]] = c.clone();
                    }
                    rows.push(row);
                }
            }
            let m = Matrix::from_rows(index.len(), &rows).expect("rows have basis length");
            (index.len() - linalg::rank(&m)) as u64
        })
        .collect();
    Ok(GradedCount::new(counts))
}

fn require_deletable(cfg: &VectorConfiguration) -> Result<()> {
    if cfg.is_empty() || cfg.is_zero_vector(cfg.len() - 1) {
        return Err(Error::Precondition(
            "the last vector must exist and be nonzero".into(),
        ));
    }
    Ok(())
}

/// Rebuilds the essential hyperplanes of `V` from those of the deletion and
/// the contraction of the last vector, and compares with direct enumeration.
pub fn essential_deletion_contraction_check(cfg: &VectorConfiguration) -> Result<bool> {
    require_deletable(cfg)?;
    let direct: BTreeSet<EssentialHyperplane> = essential_hyperplanes(cfg)?.into_iter().collect();
    Ok(direct == recursive_essential(cfg)?)
}

/// Essential hyperplanes assembled from the deletion/contraction recursion.
pub fn recursive_essential(cfg: &VectorConfiguration) -> Result<BTreeSet<EssentialHyperplane>> {
    require_deletable(cfg)?;
    cfg.require_spanning()?;
    let n = cfg.ambient_dim();
    let last = cfg.len() - 1;
    let (deleted, contracted) = matroid::delete_contract(cfg)?;
    let contraction = Contraction::new(cfg.vector(last))?;

    let mut out: BTreeSet<EssentialHyperplane> = essential_hyperplanes(&contracted)?
        .into_iter()
        .map(|h| EssentialHyperplane {
            normal: linalg::normalize_leading(&contraction.lift_functional(&h.normal)),
            index_set: h.index_set,
            d: h.d,
        })
        .collect();

    let last_only = SubsetMask::singleton(last);
    if deleted.rank() == n - 1 {
        let m = Matrix::from_rows(n, deleted.vectors()).expect("rows have ambient length");
        let kernel = linalg::kernel_basis(&m);
        out.insert(EssentialHyperplane {
            normal: linalg::normalize_leading(&kernel[0]),
            index_set: last_only,
            d: 1,
        });
    } else {
        let lifted: BTreeSet<Vec<Rational>> = out.iter().map(|h| h.normal.clone()).collect();
        for h in essential_hyperplanes(&deleted)? {
            if !lifted.contains(&h.normal) {
                out.insert(EssentialHyperplane {
                    normal: h.normal,
                    index_set: h.index_set.union(last_only),
                    d: h.d + 1,
                });
            }
        }
    }
    Ok(out)
}

/// Generators `θ'_1, .., θ'_n` for the dual basis adapted to the last vector,
/// together with `θ'_1, .., θ'_{n-1}, θ'_n - φ_N`.
pub fn adapted_generators(cfg: &VectorConfiguration) -> Result<(GeneratorSet, GeneratorSet)> {
    require_deletable(cfg)?;
    let last = cfg.len() - 1;
    let basis = Contraction::new(cfg.vector(last))?.adapted_dual_basis();
    let adapted = squarefree::generators_from(cfg).transformed(&basis);
    let mut shifted = adapted.thetas().to_vec();
    let top = shifted.last_mut().expect("dimension is positive");
    debug_assert_eq!(
        top.coefficient(SubsetMask::singleton(last)),
        Rational::one()
    );
    *top = top.add(&SquareFreeElement::phi(last).scale(&-Rational::one()));
    Ok((adapted, GeneratorSet::from_elements(shifted)))
}

/// Checks, for one polynomial `f` written in the adapted coordinates, that
/// `f` vanishes on `V` exactly when `f` and `∂f/∂x_n` vanish on `V'`.
pub fn derivative_membership_check(cfg: &VectorConfiguration, f: &Polynomial) -> Result<bool> {
    check_nvars(cfg, f)?;
    let (adapted, shifted) = adapted_generators(cfg)?;
    derivative_membership_with(&adapted, &shifted, f)
}

/// As [`derivative_membership_check`] with precomputed generators.
pub fn derivative_membership_with(
    adapted: &GeneratorSet,
    shifted: &GeneratorSet,
    f: &Polynomial,
) -> Result<bool> {
    let n = adapted.len();
    if f.nvars() != n {
        return Err(Error::Precondition(format!(
            "polynomial has {} variables, expected {n}",
            f.nvars()
        )));
    }
    let in_v = squarefree::evaluate(f, adapted).is_zero();
    let in_deletion = squarefree::evaluate(f, shifted).is_zero()
        && squarefree::evaluate(&f.derivative(n - 1), shifted).is_zero();
    Ok(in_v == in_deletion)
}

/// The three descriptions of essential index sets side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinatePlaneReport {
    /// `I_H` over the essential hyperplanes.
    pub essential: Vec<SubsetMask>,
    /// Minimal `I` with `P ∩ <φ_i : i ∈ I>` nonzero.
    pub coordinate_planes: Vec<SubsetMask>,
    /// Minimal nonempty `φ`-parts of circuits of `{φ_1, .., φ_N, θ_1, .., θ_n}`.
    pub circuits: Vec<SubsetMask>,
}

impl CoordinatePlaneReport {
    pub fn passed(&self) -> bool {
        self.essential == self.coordinate_planes && self.essential == self.circuits
    }
}

/// Largest configuration accepted by [`coordinate_plane_report`].
pub const COORDINATE_PLANE_MAX_VECTORS: usize = 24;

pub fn coordinate_plane_report(cfg: &VectorConfiguration) -> Result<CoordinatePlaneReport> {
    let big_n = cfg.len();
    if big_n > COORDINATE_PLANE_MAX_VECTORS {
        return Err(Error::ResourceLimit(format!(
            "coordinate plane check supports at most {COORDINATE_PLANE_MAX_VECTORS} vectors, got {big_n}"
        )));
    }
    let mut essential: Vec<SubsetMask> = essential_hyperplanes(cfg)?
        .into_iter()
        .map(|h| h.index_set)
        .collect();
    essential.sort();

    let n = cfg.ambient_dim();
    let thetas: Vec<Vec<Rational>> = (0..n)
        .map(|i| cfg.vectors().iter().map(|v| v[i].clone()).collect())
        .collect();

    // dim(P ∩ <e_I>) = n + |I| - rank(θ ∪ e_I)
    let mut plane = EchelonBasis::new(big_n);
    for t in &thetas {
        plane.insert(&linalg::primitive_integer(t));
    }
    let unit = |i: usize| -> Vec<num_bigint::BigInt> {
        (0..big_n)
            .map(|j| num_bigint::BigInt::from(u8::from(i == j)))
            .collect()
    };
    let mut candidates = Vec::new();
    let mut stack = vec![(plane, SubsetMask::EMPTY, 0usize)];
    while let Some((basis, set, start)) = stack.pop() {
        for i in start..big_n {
            let mut next = basis.clone();
            let grew = next.insert(&unit(i));
            let with = set.with(i);
            if grew {
                stack.push((next, with, i + 1));
            } else {
                candidates.push(with);
            }
        }
    }
    let coordinate_planes = minimal_sets(candidates);

    let mut vectors: Vec<Vec<Rational>> = (0..big_n)
        .map(|i| (0..big_n).map(|j| linalg::int(i64::from(i == j))).collect())
        .collect();
    vectors.extend(thetas);
    let joint = VectorConfiguration::new(big_n, vectors)?;
    let phi_part = SubsetMask::full(big_n);
    let parts = matroid::circuits(&joint)
        .into_iter()
        .map(|c| c.support.intersection(phi_part))
        .filter(|s| !s.is_empty())
        .collect();
    let circuits = minimal_sets(parts);

    Ok(CoordinatePlaneReport {
        essential,
        coordinate_planes,
        circuits,
    })
}

pub fn coordinate_plane_check(cfg: &VectorConfiguration) -> Result<bool> {
    Ok(coordinate_plane_report(cfg)?.passed())
}

/// Inclusion-minimal members, deduplicated and sorted.
fn minimal_sets(sets: Vec<SubsetMask>) -> Vec<SubsetMask> {
    let unique: BTreeSet<SubsetMask> = sets.into_iter().collect();
    unique
        .iter()
        .filter(|s| !unique.iter().any(|t| t != *s && t.is_subset_of(**s)))
        .copied()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, int_vector};

    fn cfg(dim: usize, vs: &[&[i64]]) -> VectorConfiguration {
        let vs: Vec<Vec<i64>> = vs.iter().map(|v| v.to_vec()).collect();
        VectorConfiguration::from_integers(dim, &vs).unwrap()
    }

    fn a2() -> VectorConfiguration {
        cfg(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    fn b2() -> VectorConfiguration {
        cfg(2, &[&[1, 0], &[0, 1], &[2, 1], &[1, 1]])
    }

    fn set(idx: &[usize]) -> SubsetMask {
        idx.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn a2_hyperplanes() {
        let hs = essential_hyperplanes(&a2()).unwrap();
        let normals: Vec<Vec<Rational>> = hs.iter().map(|h| h.normal.clone()).collect();
        assert_eq!(
            normals,
            vec![
                int_vector(&[0, 1]),
                int_vector(&[1, -1]),
                int_vector(&[1, 0])
            ]
        );
        assert!(hs.iter().all(|h| h.d == 2));
        assert_eq!(hs[0].index_set, set(&[2, 3]));
        assert_eq!(hs[1].index_set, set(&[1, 2]));
        assert_eq!(hs[2].index_set, set(&[1, 3]));
    }

    #[test]
    fn small_hyperplane_families() {
        let id = VectorConfiguration::identity(2);
        let hs = essential_hyperplanes(&id).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.iter().all(|h| h.d == 1));

        let hs = essential_hyperplanes(&b2()).unwrap();
        assert_eq!(hs.len(), 4);
        assert!(hs.iter().all(|h| h.d == 3));

        let line = cfg(1, &[&[3], &[0], &[-1]]);
        let hs = essential_hyperplanes(&line).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].index_set, set(&[1, 3]));
        assert_eq!(hs[0].normal, int_vector(&[1]));

        assert!(essential_hyperplanes(&VectorConfiguration::identity(0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn duplicate_vectors_share_a_hyperplane() {
        let c = cfg(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 0]],
        );
        let hs = essential_hyperplanes(&c).unwrap();
        let unique: BTreeSet<_> = hs.iter().map(|h| h.normal.clone()).collect();
        assert_eq!(unique.len(), hs.len());
        for h in &hs {
            let off: SubsetMask = (0..c.len())
                .filter(|&i| !linalg::dot(&h.normal, c.vector(i)).is_zero())
                .collect();
            assert_eq!(off, h.index_set);
            assert_eq!(c.subset_rank(off.complement(c.len())), 2);
        }
    }

    #[test]
    fn rejects_non_spanning() {
        let err = essential_hyperplanes(&cfg(2, &[&[1, 1], &[2, 2]])).unwrap_err();
        assert!(matches!(
            err,
            Error::NotSpanning {
                rank: 1,
                ambient_dim: 2
            }
        ));
    }

    #[test]
    fn generator_examples() {
        let gs = ideal_generators(&a2()).unwrap();
        assert_eq!(gs.len(), 3);
        assert!(gs.iter().all(|g| g.power == 3));
        let gs = ideal_generators(&VectorConfiguration::identity(2)).unwrap();
        assert!(gs.iter().all(|g| g.power == 2));
        let gs = ideal_generators(&cfg(1, &[&[5]])).unwrap();
        assert_eq!(
            gs,
            vec![IdealGenerator {
                linear_form: int_vector(&[1]),
                power: 2
            }]
        );
    }

    #[test]
    fn vanishing_examples() {
        assert!(generators_vanish(&a2()).unwrap());
        assert!(generators_vanish(&b2()).unwrap());
        assert!(generators_vanish(&VectorConfiguration::identity(2)).unwrap());

        let x1 = Polynomial::variable(2, 0);
        assert!(!vanishing_membership(&a2(), &x1.pow(2)).unwrap());
        assert!(vanishing_membership(&a2(), &x1.pow(3)).unwrap());
        assert!(!vanishing_membership(&a2(), &Polynomial::one(2)).unwrap());
        for g in ideal_generators(&b2()).unwrap() {
            assert!(vanishing_membership(&b2(), &g.polynomial()).unwrap());
        }
    }

    #[test]
    fn quotient_examples() {
        let limits = Limits::default();
        assert_eq!(
            quotient_hilbert(&a2(), 4, limits).unwrap().counts(),
            &[1, 2, 3, 1, 0]
        );
        let id = VectorConfiguration::identity(2);
        assert_eq!(
            quotient_hilbert(&id, 3, limits).unwrap().counts(),
            &[1, 2, 1, 0]
        );
        assert_eq!(
            quotient_hilbert(&cfg(1, &[&[2]]), 2, limits)
                .unwrap()
                .counts(),
            &[1, 1, 0]
        );
        assert_eq!(
            quotient_hilbert(&b2(), 5, limits).unwrap().counts(),
            &[1, 2, 3, 4, 1, 0]
        );
        assert_eq!(
            quotient_hilbert(&VectorConfiguration::identity(0), 2, limits)
                .unwrap()
                .counts(),
            &[1, 0, 0]
        );
    }

    #[test]
    fn quotient_respects_row_limit() {
        let err = quotient_hilbert(&b2(), 5, Limits::with_max_rows(3)).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn deletion_contraction_examples() {
        assert!(essential_deletion_contraction_check(&a2()).unwrap());
        assert!(essential_deletion_contraction_check(&b2()).unwrap());
        // deletion spans only a line
        assert!(essential_deletion_contraction_check(&VectorConfiguration::identity(2)).unwrap());
        assert!(essential_deletion_contraction_check(&cfg(1, &[&[0], &[2]])).unwrap());
        let err = essential_deletion_contraction_check(&cfg(1, &[&[1], &[0]])).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn derivative_examples() {
        let x1 = Polynomial::variable(2, 0);
        assert!(derivative_membership_check(&a2(), &Polynomial::zero(2)).unwrap());
        assert!(derivative_membership_check(&a2(), &x1.pow(3)).unwrap());
        assert!(derivative_membership_check(&a2(), &x1.pow(2)).unwrap());
        let (adapted, shifted) = adapted_generators(&b2()).unwrap();
        for t in shifted.thetas() {
            assert!(t.coefficient(SubsetMask::singleton(3)).is_zero());
        }
        assert_eq!(
            adapted.thetas()[1].coefficient(SubsetMask::singleton(3)),
            int(1)
        );
    }

    #[test]
    fn coordinate_plane_examples() {
        let r = coordinate_plane_report(&a2()).unwrap();
        assert!(r.passed());
        assert_eq!(r.essential, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        let r = coordinate_plane_report(&VectorConfiguration::identity(2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.essential, vec![set(&[1]), set(&[2])]);
        let r = coordinate_plane_report(&b2()).unwrap();
        assert!(r.passed());
        assert!(r.essential.iter().all(|s| s.len() == 3));
    }
}
