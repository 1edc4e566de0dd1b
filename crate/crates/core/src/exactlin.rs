//! Exact scalars and dense matrices over the rationals or a prime field.
//!
//! Every hom-space map in the crate is a [`Mat`] in chosen bases, so all
//! equalities checked elsewhere reduce to exact equality of these values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("linear system has a {0}-dimensional solution space")]
    UnderdeterminedAmbiguous(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// The base ring: exact rationals or the prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    PrimeField(u64),
}

impl RingSpec {
    /// `F_p`, rejecting composite or oversized `p`.
    pub fn prime_field(p: u64) -> Result<Self, MatError> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(MatError::NotPrime(p));
        }
        Ok(RingSpec::PrimeField(p))
    }

    /// Parses `Q` or `Fp:p` (also accepts `F5`-style shorthand).
    pub fn parse(s: &str) -> Result<Self, MatError> {
        let t = s.trim();
        if t == "Q" || t.eq_ignore_ascii_case("rationals") {
            return Ok(RingSpec::Rationals);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| MatError::Parse(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| MatError::Parse(s.to_string()))?;
        RingSpec::prime_field(p)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the base ring. Rationals are kept in lowest terms with a
/// positive denominator; residues lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(ring: RingSpec) -> Self {
        match ring {
            RingSpec::Rationals => Scalar::Q(BigRational::zero()),
            RingSpec::PrimeField(p) => Scalar::Fp { value: 0, p },
        }
    }

    pub fn one(ring: RingSpec) -> Self {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: RingSpec, v: i64) -> Self {
        match ring {
            RingSpec::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            RingSpec::PrimeField(p) => Scalar::Fp {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// `num / den` in `ring`; fails when `den` is zero in the ring.
    pub fn from_ratio(ring: RingSpec, num: i64, den: i64) -> Result<Self, MatError> {
        let d = Scalar::from_i64(ring, den);
        let inv = d
            .inv()
            .ok_or_else(|| MatError::Parse(format!("{num}/{den}")))?;
        Ok(&Scalar::from_i64(ring, num) * &inv)
    }

    /// Parses `"n"` or `"n/d"` in the given ring.
    pub fn parse(ring: RingSpec, s: &str) -> Result<Self, MatError> {
        let err = || MatError::Parse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        match ring {
            RingSpec::Rationals => Ok(Scalar::Q(BigRational::new(n, d))),
            RingSpec::PrimeField(p) => {
                let bp = BigInt::from(p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &bp) + &bp) % &bp;
                    r.to_u64().expect("residue fits")
                };
                let num = Scalar::Fp {
                    value: reduce(&n),
                    p,
                };
                let den = Scalar::Fp {
                    value: reduce(&d),
                    p,
                };
                let inv = den.inv().ok_or_else(err)?;
                Ok(&num * &inv)
            }
        }
    }

    pub fn ring(&self) -> RingSpec {
        match self {
            Scalar::Q(_) => RingSpec::Rationals,
            Scalar::Fp { p, .. } => RingSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp { value, p } => Some(Scalar::Fp {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            }),
        }
    }

    fn check_ring(&self, other: &Scalar) {
        assert_eq!(
            self.ring(),
            other.ring(),
            "scalar arithmetic across different rings"
        );
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.check_ring(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.check_ring(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, p } => Scalar::Fp {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

/// `acc += a * b`, skipping the work when either factor vanishes.
pub(crate) fn add_product(acc: &mut Scalar, a: &Scalar, b: &Scalar) {
    if a.is_zero() || b.is_zero() {
        return;
    }
    *acc = &*acc + &(a * b);
}

/// Dense row-major matrix. Columns index the domain basis, rows the codomain
/// basis, so a linear map acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    ring: RingSpec,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            ring,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(ring);
        }
        m
    }

    pub fn from_entries(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, MatError> {
        if entries.len() != rows * cols {
            return Err(MatError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.ring() != ring) {
            return Err(MatError::RingMismatch(bad.ring(), ring));
        }
        Ok(Mat {
            rows,
            cols,
            ring,
            entries,
        })
    }

    /// Builds a matrix from integer rows; handy in tests and fixtures.
    pub fn from_i64_rows(ring: RingSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(move |&v| Scalar::from_i64(ring, v))
            })
            .collect();
        Mat {
            rows: r,
            cols: c,
            ring,
            entries,
        }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.ring(), self.ring);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![Scalar::zero(self.ring); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                add_product(o, &self.entries[i * self.cols + j], vj);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            ring: self.ring,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Horizontal concatenation `[a | b | ...]`.
    pub fn hstack(ring: RingSpec, rows: usize, blocks: &[Mat]) -> Result<Mat, MatError> {
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(ring, rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.ring != ring {
                return Err(MatError::RingMismatch(b.ring, ring));
            }
            if b.rows != rows {
                return Err(MatError::DimensionMismatch(format!(
                    "hstack block has {} rows, expected {rows}",
                    b.rows
                )));
            }
            for i in 0..rows {
                for j in 0..b.cols {
                    out.entries[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce().len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// In-place reduced row echelon form. Returns the pivot columns. The
    /// pivot in each column is the first nonzero entry at or below the
    /// current row.
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in 0..self.cols {
                    if self.get(row, j).is_zero() {
                        continue;
                    }
                    let v = self.get(r, j) - &(&factor * self.get(row, j));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Exact product `a * b`.
pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat, MatError> {
    if a.ring != b.ring {
        return Err(MatError::RingMismatch(a.ring, b.ring));
    }
    if a.cols != b.rows {
        return Err(MatError::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Mat::zeros(a.ring, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                add_product(&mut out.entries[i * b.cols + j], aik, b.get(k, j));
            }
        }
    }
    Ok(out)
}

/// Exact inverse by Gauss-Jordan elimination on `[a | I]`.
pub fn mat_inverse(a: &Mat) -> Result<Mat, MatError> {
    if !a.is_square() {
        return Err(MatError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    let aug = Mat::hstack(a.ring, n, &[a.clone(), Mat::identity(a.ring, n)])?;
    let mut work = aug;
    let pivots = work.row_reduce();
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return Err(MatError::Singular);
    }
    let mut inv = Mat::zeros(a.ring, n, n);
    for i in 0..n {
        for j in 0..n {
            inv.entries[i * n + j] = work.get(i, n + j).clone();
        }
    }
    Ok(inv)
}

/// Solves `a * x = rhs` exactly, requiring a unique solution.
pub fn solve_linear(a: &Mat, rhs: &Mat) -> Result<Mat, MatError> {
    if a.ring != rhs.ring {
        return Err(MatError::RingMismatch(a.ring, rhs.ring));
    }
    if a.rows != rhs.rows {
        return Err(MatError::DimensionMismatch(format!(
            "system has {} rows, right-hand side {}",
            a.rows, rhs.rows
        )));
    }
    let n = a.cols;
    let mut work = Mat::hstack(a.ring, a.rows, &[a.clone(), rhs.clone()])?;
    let pivots = work.row_reduce();
    if pivots.iter().any(|&c| c >= n) {
        return Err(MatError::Inconsistent);
    }
    if pivots.len() < n {
        return Err(MatError::UnderdeterminedAmbiguous(n - pivots.len()));
    }
    let mut x = Mat::zeros(a.ring, n, rhs.cols);
    for (r, &c) in pivots.iter().enumerate() {
        for j in 0..rhs.cols {
            x.entries[c * rhs.cols + j] = work.get(r, n + j).clone();
        }
    }
    Ok(x)
}

/// Solves `a * x = b` for a single column, returning any one solution when
/// the system is consistent (free variables set to zero).
pub fn solve_any(a: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rhs = Mat::from_columns(a.ring, a.rows, &[b.to_vec()]);
    let n = a.cols;
    let mut work = Mat::hstack(a.ring, a.rows, &[a.clone(), rhs]).ok()?;
    let pivots = work.row_reduce();
    if pivots.iter().any(|&c| c >= n) {
        return None;
    }
    let mut x = vec![Scalar::zero(a.ring); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = work.get(r, n).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rationals;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Q, n, d).unwrap()
    }

    #[test]
    fn identity_times_matrix() {
        let m = Mat::from_i64_rows(Q, &[&[3, -1], &[7, 2]]);
        assert_eq!(mat_mul(&Mat::identity(Q, 2), &m).unwrap(), m);
        let f5 = RingSpec::prime_field(5).unwrap();
        let m5 = Mat::from_i64_rows(f5, &[&[2, 3], &[1, 4]]);
        assert_eq!(mat_mul(&m5, &Mat::identity(f5, 2)).unwrap(), m5);
    }

    #[test]
    fn rational_product_by_hand() {
        let a = Mat::from_entries(Q, 1, 1, vec![q(1, 2)]).unwrap();
        let b = Mat::from_entries(Q, 1, 1, vec![q(2, 3)]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().get(0, 0), &q(1, 3));
    }

    #[test]
    fn product_errors() {
        let a = Mat::zeros(Q, 2, 3);
        assert!(matches!(
            mat_mul(&a, &a),
            Err(MatError::DimensionMismatch(_))
        ));
        let b = Mat::zeros(RingSpec::PrimeField(5), 3, 1);
        assert!(matches!(mat_mul(&a, &b), Err(MatError::RingMismatch(..))));
    }

    #[test]
    fn inverse_examples() {
        let id = Mat::identity(Q, 3);
        assert_eq!(mat_inverse(&id).unwrap(), id);
        let swap = Mat::from_i64_rows(Q, &[&[0, 1], &[1, 0]]);
        assert_eq!(mat_inverse(&swap).unwrap(), swap);
        let shear = Mat::from_i64_rows(Q, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            mat_inverse(&shear).unwrap(),
            Mat::from_i64_rows(Q, &[&[1, -1], &[0, 1]])
        );
        let sing = Mat::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(mat_inverse(&sing), Err(MatError::Singular));
        assert_eq!(
            mat_inverse(&Mat::zeros(Q, 1, 2)),
            Err(MatError::NotSquare(1, 2))
        );
        assert_eq!(
            mat_inverse(&Mat::zeros(Q, 0, 0)).unwrap(),
            Mat::zeros(Q, 0, 0)
        );
    }

    #[test]
    fn solve_examples() {
        let v = Mat::from_i64_rows(Q, &[&[4], &[-2]]);
        assert_eq!(solve_linear(&Mat::identity(Q, 2), &v).unwrap(), v);
        let two = Mat::from_i64_rows(Q, &[&[2]]);
        let one = Mat::from_i64_rows(Q, &[&[1]]);
        assert_eq!(solve_linear(&two, &one).unwrap().get(0, 0), &q(1, 2));
        let deficient = Mat::from_i64_rows(Q, &[&[1, 1], &[1, 1]]);
        let rhs = Mat::from_i64_rows(Q, &[&[1], &[2]]);
        assert_eq!(solve_linear(&deficient, &rhs), Err(MatError::Inconsistent));
        let rhs = Mat::from_i64_rows(Q, &[&[1], &[1]]);
        assert_eq!(
            solve_linear(&deficient, &rhs),
            Err(MatError::UnderdeterminedAmbiguous(1))
        );
    }

    #[test]
    fn prime_field_arithmetic() {
        let f5 = RingSpec::prime_field(5).unwrap();
        let two = Scalar::from_i64(f5, 2);
        let three = Scalar::from_i64(f5, 3);
        assert!((&two * &three).is_one());
        assert_eq!(two.inv().unwrap(), three);
        assert_eq!(Scalar::from_i64(f5, -1), Scalar::from_i64(f5, 4));
        assert_eq!(Scalar::parse(f5, "1/2").unwrap(), three);
        assert!(RingSpec::prime_field(6).is_err());
    }

    #[test]
    fn scalar_parse_and_display() {
        assert_eq!(Scalar::parse(Q, "-4/6").unwrap().to_string(), "-2/3");
        assert_eq!(Scalar::parse(Q, "3").unwrap().to_string(), "3");
        assert!(Scalar::parse(Q, "1/0").is_err());
        assert!(Scalar::parse(Q, "x").is_err());
        assert_eq!(RingSpec::parse("Fp:7").unwrap(), RingSpec::PrimeField(7));
        assert_eq!(RingSpec::parse("Q").unwrap(), RingSpec::Rationals);
    }
}
