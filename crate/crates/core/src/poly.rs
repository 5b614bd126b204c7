//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Rational;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// A polynomial in `x_1..x_n`, stored as exponent vector → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Polynomial::monomial(vec![0; nvars], c)
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Polynomial::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coefficient: Rational) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.add_term(exponents, coefficient);
        p
    }

    /// `Σ coefficients[i] x_i`
    pub fn linear_form(coefficients: &[Rational]) -> Self {
        let n = coefficients.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in coefficients.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponents: Exponents, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        if k == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, k)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Degree-`d` monomials in `n` variables, ordered lexicographically as
/// non-decreasing index sequences `j_1 <= .. <= j_d`.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Exponents> {
    fn go(start: usize, left: usize, n: usize, current: &mut Exponents, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(current.clone());
            return;
        }
        for j in start..n {
            current[j] += 1;
            go(j, left - 1, n, current, out);
            current[j] -= 1;
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, d, n, &mut vec![0; n], &mut out);
    out
}

/// Position of each degree-`d` monomial in [`monomials_of_degree`] order.
pub fn monomial_index(n: usize, d: usize) -> std::collections::HashMap<Exponents, usize> {
    monomials_of_degree(n, d)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn monomial_order_matches_index_sequences() {
        let ms = monomials_of_degree(2, 2);
        assert_eq!(ms, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials_of_degree(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(0, 2).is_empty());
    }

    #[test]
    fn arithmetic() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coefficient(&[1, 1]), int(2));
        assert_eq!(sq.derivative(0), x.scale(&int(2)).add(&y.scale(&int(2))));
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(Polynomial::zero(2).degree(), None);
    }
}
