//! Root systems of types A to G, their coroots and Weyl group actions.
//!
//! Roots are generated in the usual Euclidean models and then expressed in
//! the basis of simple roots (for roots) and simple coroots (for coroots).
//! Weights are written in the basis of fundamental weights, so a weight
//! evaluates on a coroot by the dot product of coordinates.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};

use crate::config::VectorConfiguration;
use crate::error::{Error, Result};
use crate::ideal::IdealGenerator;
use crate::linalg::{self, rational, Matrix, Rational};

/// Largest rank for which [`weyl_group_order`] runs its orbit computation.
pub const WEYL_ORDER_MAX_RANK: usize = 6;

/// Largest orbit [`weyl_orbit`] will enumerate.
pub const MAX_ORBIT: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn valid_ranks(self) -> &'static str {
        match self {
            Family::A => "rank >= 1",
            Family::B | Family::C => "rank >= 2",
            Family::D => "rank >= 3",
            Family::E => "rank 6, 7 or 8",
            Family::F => "rank 4",
            Family::G => "rank 2",
        }
    }

    fn accepts(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::InvalidRootSystem {
                label: other.to_string(),
                reason: "type must be one of A, B, C, D, E, F, G".into(),
            }),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A type label such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if !family.accepts(rank) {
            return Err(Error::InvalidRootSystem {
                label: format!("{family}{rank}"),
                reason: format!("type {family} requires {}", family.valid_ranks()),
            });
        }
        Ok(RootSystemType { family, rank })
    }

    /// Parses a label like `A2`, or a bare family letter combined with an
    /// explicit rank.
    pub fn parse(label: &str, rank: Option<usize>) -> Result<Self> {
        let label = label.trim();
        let split = label.char_indices().nth(1).map_or(label.len(), |(i, _)| i);
        let (letter, digits) = label.split_at(split);
        let family: Family = letter.parse()?;
        let embedded = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidRootSystem {
                        label: label.to_string(),
                        reason: "rank must be a positive integer".into(),
                    })?,
            )
        };
        let rank = match (embedded, rank) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvalidRootSystem {
                    label: label.to_string(),
                    reason: format!("label rank {a} conflicts with rank {b}"),
                })
            }
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return Err(Error::InvalidRootSystem {
                    label: label.to_string(),
                    reason: "no rank given".into(),
                })
            }
        };
        RootSystemType::new(family, rank)
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RootSystemType::parse(s, None)
    }
}

/// Positive roots, coroots and Cartan matrix of a root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystemData {
    pub type_label: RootSystemType,
    /// Simple roots in the Euclidean model.
    pub simple_roots: Vec<Vec<Rational>>,
    /// Positive roots in the Euclidean model, in root order.
    pub positive_roots: Vec<Vec<Rational>>,
    /// Simple root coefficients of each positive root.
    pub root_coefficients: Vec<Vec<i64>>,
    /// Simple coroot coefficients of each coroot.
    pub coroots: Vec<Vec<i64>>,
    /// `cartan[i][j] = α_j(h_{α_i})`
    pub cartan: Vec<Vec<i64>>,
}

impl RootSystemData {
    pub fn rank(&self) -> usize {
        self.type_label.rank
    }

    /// Number of positive roots.
    pub fn len(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive_roots.is_empty()
    }

    pub fn height(&self, root: usize) -> i64 {
        self.root_coefficients[root].iter().sum()
    }

    /// Index of the positive root with the given simple root coefficients.
    pub fn root_index(&self, coefficients: &[i64]) -> Option<usize> {
        self.root_coefficients
            .iter()
            .position(|c| c == coefficients)
    }
}

/// A weight in the basis of fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coordinates: Vec<Rational>,
}

impl Weight {
    pub fn new(coordinates: Vec<Rational>) -> Self {
        Weight { coordinates }
    }

    pub fn from_integers(coordinates: &[i64]) -> Self {
        Weight::new(linalg::int_vector(coordinates))
    }

    pub fn zero(rank: usize) -> Self {
        Weight::new(vec![Rational::zero(); rank])
    }

    /// The fundamental weight `ω_i` (zero-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.coordinates[i] = linalg::int(1);
        w
    }

    pub fn rank(&self) -> usize {
        self.coordinates.len()
    }

    /// `λ(h)` for a coroot given in simple coroot coordinates.
    pub fn evaluate(&self, coroot: &[i64]) -> Rational {
        self.coordinates
            .iter()
            .zip(coroot)
            .fold(Rational::zero(), |acc, (x, &c)| acc + x * linalg::int(c))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coordinates
                .iter()
                .zip(&other.coordinates)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|j| linalg::int(i64::from(i == j))).collect()
}

fn combo(dim: usize, terms: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (i, c) in terms {
        v[*i] += c;
    }
    v
}

fn simple_roots(t: RootSystemType) -> Vec<Vec<Rational>> {
    let l = t.rank;
    let one = || linalg::int(1);
    let neg = || linalg::int(-1);
    let half = || rational(1, 2);
    let neg_half = || rational(-1, 2);
    let chain = |dim: usize, count: usize| -> Vec<Vec<Rational>> {
        (0..count)
            .map(|i| combo(dim, &[(i, one()), (i + 1, neg())]))
            .collect()
    };
    match t.family {
        Family::A => chain(l + 1, l),
        Family::B => {
            let mut s = chain(l, l - 1);
            s.push(unit(l, l - 1));
            s
        }
        Family::C => {
            let mut s = chain(l, l - 1);
            s.push(combo(l, &[(l - 1, linalg::int(2))]));
            s
        }
        Family::D => {
            let mut s = chain(l, l - 1);
            s.push(combo(l, &[(l - 2, one()), (l - 1, one())]));
            s
        }
        Family::E => {
            let mut first = vec![neg_half(); 8];
            first[0] = half();
            first[7] = half();
            let mut s = vec![first, combo(8, &[(0, one()), (1, one())])];
            for i in 0..6 {
                s.push(combo(8, &[(i + 1, one()), (i, neg())]));
            }
            s.truncate(l);
            s
        }
        Family::F => vec![
            combo(4, &[(1, one()), (2, neg())]),
            combo(4, &[(2, one()), (3, neg())]),
            unit(4, 3),
            vec![half(), neg_half(), neg_half(), neg_half()],
        ],
        Family::G => vec![
            combo(3, &[(0, one()), (1, neg())]),
            combo(3, &[(0, linalg::int(-2)), (1, one()), (2, one())]),
        ],
    }
}

fn reflect(x: &[Rational], alpha: &[Rational]) -> Vec<Rational> {
    let c = linalg::int(2) * linalg::dot(x, alpha) / linalg::dot(alpha, alpha);
    x.iter().zip(alpha).map(|(a, b)| a - &c * b).collect()
}

fn to_i64(x: &Rational) -> i64 {
    assert!(x.is_integer(), "expected an integral value, got {x}");
    x.to_integer().to_i64().expect("coordinate fits in i64")
}

/// Builds the root system of the given type.
pub fn build(t: RootSystemType) -> RootSystemData {
    let simple = simple_roots(t);
    let l = t.rank;
    let norms: Vec<Rational> = simple.iter().map(|a| linalg::dot(a, a)).collect();

    let mut seen: HashSet<Vec<Rational>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<Rational>> = simple.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for a in &simple {
            let y = reflect(&x, a);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }

    let mut gram = Matrix::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            gram.set(i, j, linalg::dot(&simple[i], &simple[j]));
        }
    }
    let mut positive: Vec<(Vec<i64>, Vec<Rational>)> = seen
        .into_iter()
        .filter_map(|x| {
            let rhs: Vec<Rational> = simple.iter().map(|a| linalg::dot(&x, a)).collect();
            let c = linalg::solve(&gram, &rhs).expect("simple roots are independent");
            let c: Vec<i64> = c.iter().map(to_i64).collect();
            c.iter().all(|&v| v >= 0).then_some((c, x))
        })
        .collect();
    // height, then simple root coefficients in decreasing lexicographic order
    positive.sort_by(|(a, _), (b, _)| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });

    let coroots = positive
        .iter()
        .map(|(c, x)| {
            let norm = linalg::dot(x, x);
            c.iter()
                .zip(&norms)
                .map(|(&ci, ni)| to_i64(&(linalg::int(ci) * ni / &norm)))
                .collect()
        })
        .collect();
    let cartan = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| to_i64(&(linalg::int(2) * &gram.get(i, j).clone() / &norms[i])))
                .collect()
        })
        .collect();

    RootSystemData {
        type_label: t,
        simple_roots: simple,
        root_coefficients: positive.iter().map(|(c, _)| c.clone()).collect(),
        positive_roots: positive.into_iter().map(|(_, x)| x).collect(),
        coroots,
        cartan,
    }
}

/// Parses a label and builds the root system.
pub fn build_label(label: &str) -> Result<RootSystemData> {
    Ok(build(label.parse()?))
}

/// The coroots as a configuration in the simple coroot coordinates.
pub fn coroot_configuration(rs: &RootSystemData) -> VectorConfiguration {
    VectorConfiguration::from_integers(rs.rank(), &rs.coroots)
        .expect("coroots have rank coordinates")
}

fn check_weight(rs: &RootSystemData, lambda: &Weight) -> Result<()> {
    if lambda.rank() != rs.rank() {
        return Err(Error::Precondition(format!(
            "weight has {} coordinates, {} has rank {}",
            lambda.rank(),
            rs.type_label,
            rs.rank()
        )));
    }
    Ok(())
}

/// `(λ(h_α))` over the positive roots in root order.
pub fn curvature_coefficients(rs: &RootSystemData, lambda: &Weight) -> Result<Vec<Rational>> {
    check_weight(rs, lambda)?;
    Ok(rs.coroots.iter().map(|h| lambda.evaluate(h)).collect())
}

/// `s_j(λ)`, acting by `λ_i ↦ λ_i - λ_j · cartan[i][j]`.
pub fn simple_reflection(rs: &RootSystemData, lambda: &Weight, j: usize) -> Weight {
    let lj = lambda.coordinates[j].clone();
    Weight::new(
        lambda
            .coordinates
            .iter()
            .enumerate()
            .map(|(i, x)| x - &lj * linalg::int(rs.cartan[i][j]))
            .collect(),
    )
}

/// The Weyl group orbit of `λ`, sorted lexicographically.
pub fn weyl_orbit(rs: &RootSystemData, lambda: &Weight) -> Result<Vec<Weight>> {
    check_weight(rs, lambda)?;
    let mut seen: BTreeSet<Weight> = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(w) = queue.pop_front() {
        for j in 0..rs.rank() {
            if w.coordinates[j].is_zero() {
                continue;
            }
            let next = simple_reflection(rs, &w, j);
            if seen.insert(next.clone()) {
                if seen.len() > MAX_ORBIT {
                    return Err(Error::ResourceLimit(format!(
                        "Weyl orbit exceeds {MAX_ORBIT} weights"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `d_i`: the number of coroots with nonzero `i`-th coordinate.
pub fn fundamental_degrees(rs: &RootSystemData) -> Vec<usize> {
    (0..rs.rank())
        .map(|i| rs.coroots.iter().filter(|h| h[i] != 0).count())
        .collect()
}

/// The forms `(w·ω_i)^{d_i+1}`, one per line, sorted.
pub fn orbit_generators(rs: &RootSystemData) -> Result<Vec<IdealGenerator>> {
    let degrees = fundamental_degrees(rs);
    let mut out = BTreeSet::new();
    for (i, d) in degrees.iter().enumerate() {
        for w in weyl_orbit(rs, &Weight::fundamental(rs.rank(), i))? {
            out.insert(IdealGenerator {
                linear_form: linalg::normalize_leading(&w.coordinates),
                power: *d as u32 + 1,
            });
        }
    }
    Ok(out.into_iter().collect())
}

/// `|W|` as the orbit size of `(1, .., 1)`, on which `W` acts freely.
pub fn weyl_group_order(rs: &RootSystemData) -> Result<u64> {
    if rs.rank() > WEYL_ORDER_MAX_RANK {
        return Err(Error::ResourceLimit(format!(
            "Weyl group order by orbit enumeration is limited to rank {WEYL_ORDER_MAX_RANK}"
        )));
    }
    let rho = Weight::from_integers(&vec![1; rs.rank()]);
    Ok(weyl_orbit(rs, &rho)?.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal;

    fn rs(label: &str) -> RootSystemData {
        build_label(label).unwrap()
    }

    #[test]
    fn root_counts() {
        let cases = [
            ("A1", 1),
            ("A2", 3),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D5", 20),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ];
        for (label, n) in cases {
            assert_eq!(rs(label).len(), n, "{label}");
        }
    }

    #[test]
    fn simple_coroots_are_unit_vectors() {
        for label in ["A3", "B3", "C4", "D4", "E6", "F4", "G2"] {
            let r = rs(label);
            for i in 0..r.rank() {
                let mut e = vec![0; r.rank()];
                e[i] = 1;
                assert_eq!(r.coroots[i], e, "{label}");
            }
        }
    }

    #[test]
    fn small_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.coroots, vec![vec![1]]);
        let a2 = rs("A2");
        assert_eq!(a2.coroots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a2.cartan, vec![vec![2, -1], vec![-1, 2]]);
        let b2 = rs("B2");
        assert_eq!(
            b2.coroots,
            vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 1]]
        );
        let g2 = coroot_configuration(&rs("G2"));
        assert_eq!(g2.len(), 6);
        for i in 0..6 {
            for j in i + 1..6 {
                let pair = [i, j].into_iter().collect();
                assert_eq!(g2.subset_rank(pair), 2);
            }
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!(
            RootSystemType::parse("a", Some(3)).unwrap().to_string(),
            "A3"
        );
        assert_eq!(
            RootSystemType::parse("B2", Some(2)).unwrap().to_string(),
            "B2"
        );
        for bad in ["B1", "D2", "E5", "F3", "G3", "X2", "A0"] {
            assert!(matches!(
                bad.parse::<RootSystemType>(),
                Err(Error::InvalidRootSystem { .. })
            ));
        }
        assert!(RootSystemType::parse("A2", Some(3)).is_err());
    }

    #[test]
    fn curvature_examples() {
        let a2 = rs("A2");
        let c = curvature_coefficients(&a2, &Weight::fundamental(2, 0)).unwrap();
        assert_eq!(c, linalg::int_vector(&[1, 0, 1]));
        let c = curvature_coefficients(&a2, &Weight::zero(2)).unwrap();
        assert!(c.iter().all(Zero::is_zero));
        let c = curvature_coefficients(&rs("A1"), &Weight::fundamental(1, 0)).unwrap();
        assert_eq!(c, linalg::int_vector(&[1]));
        assert!(curvature_coefficients(&a2, &Weight::zero(3)).is_err());
    }

    #[test]
    fn orbit_examples() {
        let a2 = rs("A2");
        let orbit = weyl_orbit(&a2, &Weight::fundamental(2, 0)).unwrap();
        let expected: Vec<Weight> = [[-1, 1], [0, -1], [1, 0]]
            .iter()
            .map(|w| Weight::from_integers(w))
            .collect();
        assert_eq!(orbit, expected);
        assert_eq!(weyl_orbit(&a2, &Weight::zero(2)).unwrap().len(), 1);
        assert_eq!(
            weyl_orbit(&rs("A1"), &Weight::fundamental(1, 0))
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn weyl_orders() {
        for (label, order) in [
            ("A1", 2),
            ("A2", 6),
            ("B2", 8),
            ("G2", 12),
            ("A3", 24),
            ("F4", 1152),
        ] {
            assert_eq!(weyl_group_order(&rs(label)).unwrap(), order, "{label}");
        }
        assert!(matches!(
            weyl_group_order(&rs("E7")),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn orbit_lines_match_essential_ideal() {
        for label in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
            let r = rs(label);
            let lines = orbit_generators(&r).unwrap();
            let essential = ideal::ideal_generators(&coroot_configuration(&r)).unwrap();
            assert_eq!(lines, essential, "{label}");
        }
        let a2 = orbit_generators(&rs("A2")).unwrap();
        assert_eq!(a2.len(), 3);
        assert!(a2.iter().all(|g| g.power == 3));
    }

    #[test]
    fn simply_laced_coroots_are_additive() {
        for label in ["A4", "D4", "D5"] {
            let r = rs(label);
            for a in 0..r.len() {
                for b in 0..r.len() {
                    let sum: Vec<i64> = r.root_coefficients[a]
                        .iter()
                        .zip(&r.root_coefficients[b])
                        .map(|(x, y)| x + y)
                        .collect();
                    if let Some(c) = r.root_index(&sum) {
                        let h: Vec<i64> = r.coroots[a]
                            .iter()
                            .zip(&r.coroots[b])
                            .map(|(x, y)| x + y)
                            .collect();
                        assert_eq!(r.coroots[c], h, "{label}");
                    }
                }
            }
        }
    }
}
