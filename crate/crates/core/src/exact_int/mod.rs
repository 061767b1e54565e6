//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Nothing in this
//! module touches floating point: multiplicities and solvability verdicts
//! upstream are discrete decisions and must not depend on rounding.

mod det;
mod diophantine;
mod hnf;
mod snf;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use det::det_exact;
pub use diophantine::{primitive_kernel_vector, solve_linear_diophantine, DiophantineSolution, Obstruction};
pub use hnf::{hermite_normal_form, HermiteForm};
pub use snf::{smith_normal_form, SnfDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactIntError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has trivial kernel")]
    NoKernel,
    #[error("vector entries are not coprime (gcd {0})")]
    NotPrimitive(BigInt),
    #[error("matrix is not unimodular (det {0})")]
    NotUnimodular(BigInt),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics on ragged or empty input; use
    /// [`IntMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        Self::try_from_rows(rows).expect("well-formed rows")
    }

    pub fn try_from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, ExactIntError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(ExactIntError::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactIntError::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|row| row.iter().cloned().map(Into::into)).collect();
        Ok(Self { rows: r, cols: c, data })
    }

    pub fn from_column<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        assert!(!entries.is_empty());
        Self { rows: entries.len(), cols: 1, data: entries.iter().cloned().map(Into::into).collect() }
    }

    pub fn from_row<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        assert!(!entries.is_empty());
        Self { rows: 1, cols: entries.len(), data: entries.iter().cloned().map(Into::into).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }))
    }

    /// gcd of all entries; zero for the zero matrix.
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// `self - lambda * I`.
    pub fn shift_diagonal(&self, lambda: &BigInt) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        m
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ExactIntError> {
        if self.cols != rhs.rows {
            return Err(ExactIntError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ExactIntError> {
        if v.len() != self.cols {
            return Err(ExactIntError::Dimension(format!("vector length {} vs {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum()).collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ExactIntError> {
        if v.len() != self.rows {
            return Err(ExactIntError::Dimension(format!("vector length {} vs {} rows", v.len(), self.rows)));
        }
        Ok((0..self.cols).map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum()).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square());
        (0..exp).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Inverse of a matrix with determinant ±1, via the Hermite form of the
    /// matrix (which is the identity in that case).
    pub fn inverse_unimodular(&self) -> Result<Self, ExactIntError> {
        if !self.is_square() {
            return Err(ExactIntError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let hf = hermite_normal_form(self);
        if !hf.h.is_identity() {
            return Err(ExactIntError::NotUnimodular(det_exact(self)?));
        }
        Ok(hf.transform)
    }

    /// Embeds `block` as the lower-right corner of an identity matrix of size `n`.
    pub fn embed_lower_right(block: &Self, n: usize) -> Self {
        assert!(block.is_square() && block.rows <= n);
        let off = n - block.rows;
        let mut m = Self::identity(n);
        for i in 0..block.rows {
            for j in 0..block.cols {
                m[(off + i, off + j)] = block[(i, j)].clone();
            }
        }
        m
    }

    /// Submatrix starting at `(r0, c0)` with the given shape.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        hermite_normal_form(self).rank
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect()).collect()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * factor;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * factor;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Replaces rows `a`, `b` by `(x*ra + y*rb, z*ra + w*rb)`.
    pub(crate) fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: [&BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = z * &ra + w * &rb;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows(), self.cols()), (rhs.rows(), rhs.cols()));
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out[(i, j)] += &rhs[(i, j)];
            }
        }
        out
    }
}

impl Mul<&BigInt> for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &BigInt) -> IntMatrix {
        let mut out = self.clone();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                out[(i, j)] *= rhs;
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Integers that fit in an `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
pub(crate) fn serialize_int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

pub(crate) struct IntSlice<'a>(pub &'a [BigInt]);

impl Serialize for IntSlice<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in self.0 {
            seq.serialize_element(&IntEntry(x))?;
        }
        seq.end()
    }
}

struct IntEntry<'a>(&'a BigInt);

impl Serialize for IntEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_int(self.0, s)
    }
}

pub(crate) fn serialize_int_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    IntSlice(v).serialize(s)
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(&IntSlice(&self.data[i * self.cols..(i + 1) * self.cols]))?;
        }
        seq.end()
    }
}

/// An integer vector whose entries have gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveVector(Vec<BigInt>);

impl PrimitiveVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, ExactIntError> {
        if entries.is_empty() {
            return Err(ExactIntError::Dimension("empty vector".into()));
        }
        let g = gcd_all(&entries);
        if !g.is_one() {
            return Err(ExactIntError::NotPrimitive(g));
        }
        Ok(Self(entries))
    }

    /// Divides out the content. Fails only on the zero vector.
    pub fn normalize(entries: Vec<BigInt>) -> Result<Self, ExactIntError> {
        let g = gcd_all(&entries);
        if g.is_zero() {
            return Err(ExactIntError::NotPrimitive(g));
        }
        Ok(Self(entries.into_iter().map(|x| x / &g).collect()))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    /// Flips the sign so that the first nonzero entry is positive.
    pub fn sign_normalized(mut self) -> Self {
        if self.0.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            for x in &mut self.0 {
                *x = -std::mem::take(x);
            }
        }
        self
    }
}

impl Serialize for PrimitiveVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntSlice(&self.0).serialize(s)
    }
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with `x*a + y*b = g`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn to_bigints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
