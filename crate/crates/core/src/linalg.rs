//! Exact rational linear algebra.
//!
//! Scalars are canonical big rationals (positive denominator, reduced). Rank
//! computations clear denominators row by row and work over the integers with
//! fraction-free elimination. A modular pass runs first: a rank found modulo a
//! prime is always a lower bound for the rank over the rationals, so when it
//! already reaches `min(rows, cols)` the answer is certified without any big
//! integer elimination. Otherwise an exact kernel of the modular pivot rows is
//! recovered by Chinese remaindering over small primes and checked against
//! every row; if every row annihilates it, the modular rank is exact. Only when
//! that certificate fails do we fall back to exact elimination.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar type used everywhere in the crate.
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn int_vector(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Precondition(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Matrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned());
        }
        Matrix::new(rows.len(), cols, entries)
    }

    pub fn from_int_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| int_vector(r)).collect();
        Matrix::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Rows scaled to primitive integer vectors. Scaling a row by a nonzero
    /// constant never changes rank or row space.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| primitive_integer(self.row(r)))
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact rank over the rationals.
pub fn rank(m: &Matrix) -> usize {
    rank_of_integer_rows(&m.integer_rows(), m.cols())
}

/// Basis of the right null space, one vector per free column of the reduced
/// row echelon form (free columns in increasing order).
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let (reduced, pivots) = rref(rows, m.cols());
    let mut pivot_of_col = vec![None; m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_of_col[c] = Some(r);
    }
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Rational::zero(); m.cols()];
        v[free] = Rational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -reduced[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// True iff `v` is a rational linear combination of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    let mut echelon = EchelonBasis::new(v.len());
    for b in basis {
        echelon.insert(&primitive_integer(b));
    }
    echelon.contains(&primitive_integer(v))
}

/// Solves `m x = b`, returning one solution if the system is consistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must match rows");
    let cols = m.cols();
    let rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(rows, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = reduced[r][cols].clone();
    }
    Some(x)
}

/// Reduced row echelon form over the rationals. Returns the nonzero rows and
/// their pivot columns.
fn rref(mut a: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            for j in c..cols {
                let delta = &factor * &a[r][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction and the same sign (zero stays zero).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(ints)
}

/// Divides an integer vector by the gcd of its entries.
pub fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Scales a nonzero rational vector so its first nonzero coordinate is one.
pub fn normalize_leading(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Incrementally maintained row echelon basis over the integers.
///
/// Rows are kept primitive. Row `i` is zero in the pivot columns of every
/// earlier row, so reducing a vector against the rows in insertion order
/// clears all pivot columns.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residual of `v` after clearing every pivot column; primitive.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let g = row[p].gcd(&v[p]);
            let a = &row[p] / &g;
            let b = &v[p] / &g;
            for (x, y) in v.iter_mut().zip(row) {
                if y.is_zero() {
                    *x *= &a;
                } else {
                    *x = &*x * &a - y * &b;
                }
            }
            v = make_primitive(v);
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.is_full() || self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank increased.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        if self.is_full() {
            return false;
        }
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}

/// Exact rank of the integer matrix with the given rows.
pub fn rank_of_integer_rows(rows: &[Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    let bound = rows.len().min(cols);
    let (modular_rank, pivot_rows) = rank_mod_prime(rows, cols, CERTIFICATE_PRIME);
    if modular_rank == bound {
        return modular_rank;
    }
    let selected: Vec<Vec<BigInt>> = pivot_rows.iter().map(|&i| rows[i].clone()).collect();
    if let Some(kernel) = multimodular_kernel(&selected, cols) {
        if annihilates(rows, &kernel) {
            return modular_rank;
        }
    }
    if kernel_certifies(rows, &selected, cols) {
        return modular_rank;
    }
    bareiss_rank(rows.to_vec(), cols)
}

const CERTIFICATE_PRIME: u64 = (1 << 61) - 1;

/// Rank modulo `p` together with the indices of rows that were pivots.
///
/// Any nonzero minor modulo `p` is nonzero over the integers, so the returned
/// rows are independent over the rationals.
pub(crate) fn rank_mod_prime(rows: &[Vec<BigInt>], cols: usize, p: u64) -> (usize, Vec<usize>) {
    let big_p = BigInt::from(p);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    let bound = rows.len().min(cols);
    for (idx, row) in rows.iter().enumerate() {
        if basis.len() == bound {
            break;
        }
        let mut v: Vec<u64> = row
            .iter()
            .map(|x| x.mod_floor(&big_p).to_u64().expect("reduced residue fits"))
            .collect();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f == 0 {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if *y != 0 {
                    *x = sub_mod(*x, mul_mod(f, *y, p), p);
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[pc], p);
            for x in v.iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    (basis.len(), chosen)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

/// Primes just below `2^31`, so products of residues fit in a `u64`.
fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let is_prime = |n: u64| {
            (3..)
                .step_by(2)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
        };
        ((1u64 << 30)..(1u64 << 31))
            .rev()
            .filter(|n| n % 2 == 1 && is_prime(*n))
            .take(MAX_KERNEL_PRIMES)
            .collect()
    })
}

const MAX_KERNEL_PRIMES: usize = 256;

/// Kernel basis of `rows` modulo `p` in reduced echelon form: one vector per
/// free column, read off as `(pivot columns, -R[., free])`. Returns the pivot
/// columns and, for each free column, the pivot entries.
fn kernel_mod_prime(rows: &[Vec<BigInt>], cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let big_p = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&big_p).to_u64().expect("reduced residue fits"))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(found) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, found);
        let inv = inv_mod(a[r][c], p);
        for x in a[r][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f == 0 {
                continue;
            }
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if *y != 0 {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let is_pivot: HashSet<usize> = pivots.iter().copied().collect();
    let columns = (0..cols)
        .filter(|c| !is_pivot.contains(c))
        .map(|f| (0..pivots.len()).map(|i| (p - a[i][f]) % p).collect())
        .collect();
    (pivots, columns)
}

/// Exact kernel of a full-row-rank integer matrix by Chinese remaindering
/// and rational reconstruction over several primes. Returns primitive
/// integer vectors, or `None` if the reconstruction does not settle.
fn multimodular_kernel(rows: &[Vec<BigInt>], cols: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut modulus = BigInt::one();
    let mut reference: Option<Vec<usize>> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut previous: Option<Vec<Vec<Rational>>> = None;
    for &p in small_primes() {
        let (pivots, columns) = kernel_mod_prime(rows, cols, p);
        if pivots.len() != rows.len() {
            continue;
        }
        match &reference {
            Some(r) if *r < pivots => continue,
            Some(r) if *r == pivots => {}
            _ => {
                // first prime, or an earlier prime had unlucky pivots
                reference = Some(pivots.clone());
                modulus = BigInt::one();
                residues = columns
                    .iter()
                    .map(|c| vec![BigInt::zero(); c.len()])
                    .collect();
                previous = None;
            }
        }
        let big_p = BigInt::from(p);
        let m_inv = BigInt::from(inv_mod((&modulus % &big_p).to_u64().expect("fits"), p));
        for (acc, col) in residues.iter_mut().zip(&columns) {
            for (x, &r) in acc.iter_mut().zip(col) {
                // x + modulus * ((r - x) / modulus mod p)
                let delta = ((BigInt::from(r) - &*x) * &m_inv).mod_floor(&big_p);
                *x += &modulus * delta;
            }
        }
        modulus *= &big_p;
        let reconstructed: Option<Vec<Vec<Rational>>> = residues
            .iter()
            .map(|col| {
                col.iter()
                    .map(|x| rational_reconstruction(x, &modulus))
                    .collect()
            })
            .collect();
        match reconstructed {
            Some(current) if previous.as_ref() == Some(&current) => {
                let pivots = reference.as_ref().expect("set with residues");
                let is_pivot: HashSet<usize> = pivots.iter().copied().collect();
                let free = (0..cols).filter(|c| !is_pivot.contains(c));
                let kernel = free
                    .zip(&current)
                    .map(|(f, entries)| {
                        let mut v = vec![Rational::zero(); cols];
                        v[f] = Rational::one();
                        for (&pc, x) in pivots.iter().zip(entries) {
                            v[pc] = x.clone();
                        }
                        primitive_integer(&v)
                    })
                    .collect();
                return Some(kernel);
            }
            other => previous = other,
        }
    }
    None
}

/// The fraction `n/d` with `|n|, d <= sqrt(m/2)` congruent to `a` modulo `m`.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// True iff every row is orthogonal to every kernel vector.
fn annihilates(rows: &[Vec<BigInt>], kernel: &[Vec<BigInt>]) -> bool {
    rows.iter().all(|row| {
        kernel.iter().all(|k| {
            row.iter()
                .zip(k)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    })
}

/// Checks that every row annihilates the exact kernel of `selected`. If so the
/// row space is contained in the row space of `selected`.
fn kernel_certifies(rows: &[Vec<BigInt>], selected: &[Vec<BigInt>], cols: usize) -> bool {
    let selected: Vec<Vec<Rational>> = selected
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let Ok(m) = Matrix::from_rows(cols, &selected) else {
        return false;
    };
    let kernel: Vec<Vec<BigInt>> = kernel_basis(&m)
        .iter()
        .map(|k| primitive_integer(k))
        .collect();
    if kernel.len() + selected.len() != cols {
        return false;
    }
    rows.iter().all(|row| {
        kernel.iter().all(|k| {
            row.iter()
                .zip(k)
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    })
}

/// Fraction-free Gaussian elimination (Bareiss). Every intermediate entry is a
/// minor of the input, so all divisions are exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let m = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            for j in (c + 1)..cols {
                let val = &pivot_row[c] * &row[j] - &row[c] * &pivot_row[j];
                row[j] = val / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = top[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(cols: usize, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_int_rows(cols, &rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&mat(2, &[&[1, -1], &[0, 2], &[2, 0], &[1, 1]])), 2);
        assert_eq!(rank(&Matrix::zeros(0, 0)), 0);
        assert_eq!(rank(&Matrix::zeros(0, 3)), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(
            2,
            &[
                vec![rational(1, 2), rational(1, 3)],
                vec![rational(3, 2), int(1)],
            ],
        )
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());

        let k = kernel_basis(&mat(2, &[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(normalize_leading(&k[0]), int_vector(&[1, -1]));

        // columns (1,0), (0,1), (1,1)
        let k = kernel_basis(&mat(3, &[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(normalize_leading(&k[0]), int_vector(&[1, 1, -1]));
    }

    #[test]
    fn span_examples() {
        assert!(in_span(&int_vector(&[0, 0]), &[int_vector(&[1, 0])]));
        assert!(in_span(&int_vector(&[0, 0]), &[]));
        assert!(!in_span(&int_vector(&[1, 1]), &[int_vector(&[1, 0])]));
        assert!(in_span(
            &int_vector(&[1, 1]),
            &[int_vector(&[1, -1]), int_vector(&[0, 2])]
        ));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(2, &[&[1, 1], &[1, -1]]);
        let x = solve(&m, &int_vector(&[2, 0])).unwrap();
        assert_eq!(x, int_vector(&[1, 1]));
        let singular = mat(2, &[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &int_vector(&[1, 3])).is_none());
    }

    #[test]
    fn certificate_path_rejects_nothing_on_rank_deficient() {
        // rank 2, three rows, three columns: modular pass is not full so the
        // kernel certificate decides
        let rows: Vec<Vec<BigInt>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rank_of_integer_rows(&rows, 3), 2);
        assert_eq!(bareiss_rank(rows, 3), 2);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut e = EchelonBasis::new(3);
        let v = |x: [i64; 3]| x.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>();
        assert!(e.insert(&v([0, 2, 4])));
        assert!(e.insert(&v([1, 1, 0])));
        assert!(!e.insert(&v([2, 4, 4])));
        assert!(e.contains(&v([3, 5, 4])));
        assert!(!e.contains(&v([0, 0, 1])));
        assert_eq!(e.rank(), 2);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (
                Just(c),
                prop::collection::vec(prop::collection::vec(-4i64..=4, c), r),
            )
        })
    }

    fn low_rank_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        // products of thin factors exercise the rank-deficient paths
        (1usize..6, 1usize..6, 1usize..3).prop_flat_map(|(r, c, k)| {
            (
                Just(c),
                prop::collection::vec(prop::collection::vec(-3i64..=3, k), r),
                prop::collection::vec(prop::collection::vec(-3i64..=3, c), k),
            )
                .prop_map(|(c, left, right)| {
                    let rows = left
                        .iter()
                        .map(|l| {
                            (0..c)
                                .map(|j| l.iter().zip(&right).map(|(a, row)| a * row[j]).sum())
                                .collect()
                        })
                        .collect();
                    (c, rows)
                })
        })
    }

    #[test]
    fn reconstruction_recovers_fractions() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let x = Rational::new(BigInt::from(-355), BigInt::from(113));
        let a = (x.numer() * x.denom().modinv(&m).unwrap()).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m), Some(x));
    }

    #[test]
    fn multimodular_kernel_with_large_entries() {
        // rank 2, entries well beyond one 31-bit prime
        let big = BigInt::from(10u64).pow(25);
        let a: Vec<BigInt> = [3, -1, 4, 1, 5]
            .iter()
            .map(|&x| BigInt::from(x) * &big + 7)
            .collect();
        let b: Vec<BigInt> = [2, 7, -1, 8, 2]
            .iter()
            .map(|&x| BigInt::from(x) * &big - 11)
            .collect();
        let mix = |s: i64, t: i64| -> Vec<BigInt> {
            a.iter().zip(&b).map(|(x, y)| x * s + y * t).collect()
        };
        let rows = vec![a.clone(), b.clone(), mix(2, -3), mix(-5, 1)];
        assert_eq!(rank_of_integer_rows(&rows, 5), 2);
        assert_eq!(bareiss_rank(rows.clone(), 5), 2);
        let kernel = multimodular_kernel(&rows[..2], 5).unwrap();
        assert_eq!(kernel.len(), 3);
        assert!(annihilates(&rows, &kernel));
    }

    proptest! {
        #[test]
        fn rank_matches_transpose((cols, rows) in small_matrix()) {
            let m = Matrix::from_int_rows(cols, &rows).unwrap();
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn rank_plus_nullity((cols, rows) in low_rank_matrix()) {
            let m = Matrix::from_int_rows(cols, &rows).unwrap();
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), cols);
            for v in &k {
                for r in 0..m.rows() {
                    prop_assert!(dot(m.row(r), v).is_zero());
                }
            }
        }

        #[test]
        fn rank_agrees_with_bareiss_and_primes((cols, rows) in low_rank_matrix()) {
            let m = Matrix::from_int_rows(cols, &rows).unwrap();
            let ints = m.integer_rows();
            let exact = bareiss_rank(ints.clone(), cols);
            prop_assert_eq!(rank(&m), exact);
            let mut disagreements = 0;
            for p in [1_000_003u64, 998_244_353, 2_147_483_647] {
                if rank_mod_prime(&ints, cols, p).0 != exact {
                    disagreements += 1;
                }
            }
            prop_assert!(disagreements < 3);
        }

        #[test]
        fn rank_invariant_under_permutations((cols, rows) in small_matrix(), seed in any::<u64>()) {
            let m = Matrix::from_int_rows(cols, &rows).unwrap();
            let mut row_order: Vec<usize> = (0..rows.len()).collect();
            let mut col_order: Vec<usize> = (0..cols).collect();
            let mut s = seed;
            for i in (1..row_order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                row_order.swap(i, (s >> 33) as usize % (i + 1));
            }
            for i in (1..col_order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                col_order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let permuted: Vec<Vec<i64>> = row_order
                .iter()
                .map(|&r| col_order.iter().map(|&c| rows[r][c]).collect())
                .collect();
            let p = Matrix::from_int_rows(cols, &permuted).unwrap();
            prop_assert_eq!(rank(&m), rank(&p));
        }
    }
}
