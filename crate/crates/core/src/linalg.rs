//! Dense matrices over exact scalars.
//!
//! Two instantiations are used throughout the crate: [`IntMatrix`] over
//! arbitrary-precision integers for Cartan, Euler and Coxeter data, and
//! [`QMatrix`] over arbitrary-precision rationals for representation maps and
//! the Hom/Ext solver. Row reduction is only offered over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type QMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must share one length;
    /// `cols` is used only when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
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

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Stacks `blocks` side by side. All blocks must have `rows` rows.
    pub fn hstack(rows: usize, blocks: &[Matrix<T>]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for b in blocks {
                assert_eq!(b.rows, rows, "hstack row mismatch");
                data.extend_from_slice(b.row(r));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Stacks `blocks` vertically. All blocks must have `cols` columns.
    pub fn vstack(cols: usize, blocks: &[Matrix<T>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
        }
        Matrix { rows, cols, data }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + PartialEq,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "vector-matrix shape mismatch");
        (0..self.cols)
            .map(|c| (0..self.rows).fold(T::zero(), |acc, r| &acc + &(&v[r] * self.get(r, c))))
            .collect()
    }

    pub fn add_mat(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub_mat(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x * s)
    }

    /// Bilinear form `x^T M y`.
    pub fn bilinear(&self, x: &[T], y: &[T]) -> T {
        let my = self.mul_vec(y);
        x.iter()
            .zip(&my)
            .fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn pow(&self, mut k: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_mat(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_mat(&base);
            }
        }
        acc
    }
}

impl<T> Neg for &Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Neg<Output = T>,
{
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x)
    }
}

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
        .expect("ragged literal matrix")
    }

    pub fn to_rational(&self) -> QMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Inverse over the integers, if the matrix is unimodular.
    pub fn integer_inverse(&self) -> Result<IntMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let inv = self.to_rational().inverse().ok_or(Error::NotUnimodular)?;
        if inv.data.iter().any(|x| !x.is_integer()) {
            return Err(Error::NotUnimodular);
        }
        Ok(inv.map(|x| x.to_integer()))
    }
}

impl QMatrix {
    pub fn from_int(rows: &[&[i64]]) -> Self {
        IntMatrix::from_i64(rows).to_rational()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if p != lead {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, lead * self.cols + k);
                }
            }
            let inv = self.get(lead, c).recip();
            for k in c..self.cols {
                let v = self.get(lead, k) * &inv;
                self.set(lead, k, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let f = self.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for k in c..self.cols {
                    let v = self.get(r, k) - &(&f * self.get(lead, k));
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, as column vectors.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// Null space basis packed as the columns of a `cols x k` matrix.
    pub fn kernel_matrix(&self) -> QMatrix {
        let basis = self.nullspace();
        Matrix::from_fn(self.cols, basis.len(), |r, c| basis[c][r].clone())
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::hstack(n, &[self.clone(), QMatrix::identity(n)]);
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Solves `self * X = rhs` for `X`, if a solution exists.
    pub fn solve(&self, rhs: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape mismatch");
        let n = self.cols;
        let mut aug = Matrix::hstack(self.rows, &[self.clone(), rhs.clone()]);
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = QMatrix::zeros(n, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, aug.get(row, n + c).clone());
            }
        }
        Some(x)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }
}

/// Scalars with a canonical decimal text form used by the JSON interfaces.
pub trait ScalarText: Sized {
    fn to_text(&self) -> String;
    fn from_text(s: &str) -> Option<Self>;
}

impl ScalarText for BigInt {
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn from_text(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
}

impl ScalarText for BigRational {
    fn to_text(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
    fn from_text(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

/// Parses `"p/q"` or an integer `"p"`; rejects a zero denominator.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl<T: ScalarText + Clone> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(ScalarText::to_text).collect())
            .collect();
        rows.serialize(ser)
    }
}

impl<'de, T: ScalarText + Clone> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(de)?;
        let parsed = rows
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        T::from_text(s).ok_or_else(|| D::Error::custom(format!("bad scalar {s:?}")))
                    })
                    .collect::<std::result::Result<Vec<T>, D::Error>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Matrix::from_rows(parsed, 0).map_err(D::Error::custom)
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
        }
        write!(f, "]")
    }
}

/// Scales a rational vector by the lcm of its denominators, giving a
/// primitive-up-to-content integer vector on the same line.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.iter().map(|x| x / &g).collect()
    }
}

pub fn is_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

/// `serialize_with` helper writing a value through its `Display`.
pub fn serialize_display<T: fmt::Display, S: Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}
