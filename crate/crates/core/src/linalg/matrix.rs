use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Products with at least this many output rows are split across threads.
/// Each output row is computed by exactly one thread in a fixed order, so the
/// result is bit-identical to the serial loop.
const PAR_ROWS: usize = 64;

/// Dense complex matrix stored in row-major order.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        Self::from_vec(rows.len(), cols, data).expect("non-empty rows")
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let c: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&c)
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols))
            .map(|i| self.data[i * self.cols + i])
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_abs(self - self^dagger)`; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let d = self.data[i * n + j] - self.data[j * n + i].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape("add", other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape("sub", other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.matmul_unchecked(other))
    }

    fn same_shape(&self, op: &'static str, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn matmul_unchecked(&self, other: &Self) -> Self {
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        let row_kernel = |(i, out_row): (usize, &mut [C64])| {
            let a_row = &self.data[i * k..(i + 1) * k];
            for (l, &a) in a_row.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b_row = &other.data[l * m..(l + 1) * m];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        };
        if n >= PAR_ROWS && k * m >= 4096 {
            out.par_chunks_mut(m).enumerate().for_each(row_kernel);
        } else {
            out.chunks_mut(m).enumerate().for_each(row_kernel);
        }
        Self {
            rows: n,
            cols: m,
            data: out,
        }
    }

    /// Principal submatrix on the given (sorted or unsorted) index set.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.data[i * self.cols + j]);
            }
        }
        Self::from_vec(rows.len(), cols.len(), data).expect("non-empty index sets")
    }

    /// Entrywise comparison within an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape() == other.shape()
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Max-abs distance; infinite when shapes differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "({:+.4}{:+.4}i) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Operator impls panic on shape mismatch; use the `checked_*` methods where
// the shapes come from user input.

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_add(rhs).expect("shape mismatch in add")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_sub(rhs).expect("shape mismatch in sub")
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.checked_mul(rhs).expect("shape mismatch in mul")
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_real(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add_assign");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub_assign");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

/// Kronecker product; block `(i, j)` of the result is `a[i, j] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let cols = ac * bc;
    let mut out = ComplexMatrix::zeros(ar * br, cols);
    for i in 0..ar {
        for j in 0..ac {
            let s = a.data[i * ac + j];
            if s.re == 0.0 && s.im == 0.0 {
                continue;
            }
            for k in 0..br {
                let dst = (i * br + k) * cols + j * bc;
                for l in 0..bc {
                    out.data[dst + l] = s * b.data[k * bc + l];
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// `ab - ba` or `ab + ba` for square matrices of equal dimension.
pub fn bracket(a: &ComplexMatrix, b: &ComplexMatrix, kind: BracketKind) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "bracket",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let ab = a.matmul_unchecked(b);
    let ba = b.matmul_unchecked(a);
    Ok(match kind {
        BracketKind::Commutator => ab.zip_with(&ba, |x, y| x - y),
        BracketKind::Anticommutator => ab.zip_with(&ba, |x, y| x + y),
    })
}

/// Commutator of two matrices already known to be square and conformable.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    bracket(a, b, BracketKind::Commutator).expect("commutator of conformable square matrices")
}

pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    bracket(a, b, BracketKind::Anticommutator)
        .expect("anticommutator of conformable square matrices")
}

pub fn max_abs(a: &ComplexMatrix) -> f64 {
    a.max_abs()
}

/// The three Pauli matrices, indexed 0..3 for x, y, z.
pub fn pauli(k: usize) -> ComplexMatrix {
    match k {
        0 => ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        1 => ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        2 => ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
        _ => panic!("Pauli index {k} out of range"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity_factors() {
        let id = ComplexMatrix::identity(2);
        let sz = pauli(2);
        assert_eq!(
            kron(&id, &sz),
            ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0, -1.0])
        );
        assert_eq!(
            kron(&sz, &id),
            ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0, -1.0])
        );
    }

    #[test]
    fn kron_sigma_x_pair_is_antidiagonal() {
        let sx = pauli(0);
        let k = kron(&sx, &sx);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i + j == 3 { ONE } else { ZERO };
                assert_eq!(k[(i, j)], expect);
            }
        }
    }

    #[test]
    fn kron_rectangular_shape() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(4, 1);
        assert_eq!(kron(&a, &b).shape(), (8, 3));
    }

    #[test]
    fn pauli_brackets() {
        let (sx, sy, sz) = (pauli(0), pauli(1), pauli(2));
        let comm = bracket(&sx, &sy, BracketKind::Commutator).unwrap();
        assert_eq!(comm, sz.scale(c(0.0, 2.0)));
        assert!(bracket(&sx, &sx, BracketKind::Commutator).unwrap().is_zero());
        assert!(bracket(&sx, &sy, BracketKind::Anticommutator)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn bracket_rejects_mismatched_dimensions() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(
            bracket(&a, &b, BracketKind::Commutator),
            Err(Error::DimensionMismatch { .. })
        ));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(bracket(&r, &r, BracketKind::Anticommutator).is_err());
    }

    #[test]
    fn max_abs_examples() {
        assert_eq!(ComplexMatrix::zeros(3, 3).max_abs(), 0.0);
        assert_eq!(pauli(1).max_abs(), 1.0);
        assert_eq!(ComplexMatrix::identity(2).scale(c(0.0, 3.0)).max_abs(), 3.0);
    }

    #[test]
    fn from_vec_validates_shape() {
        assert!(ComplexMatrix::from_vec(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::from_vec(0, 2, vec![]).is_err());
    }

    #[test]
    fn checked_ops_enforce_dimensions() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 3);
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&ComplexMatrix::zeros(3, 2)).is_err());
        assert_eq!(a.checked_mul(&b.adjoint()).unwrap().shape(), (2, 2));
    }

    #[test]
    fn parallel_and_serial_products_agree_bitwise() {
        let n = 80;
        let data: Vec<C64> = (0..n * n)
            .map(|k| c(((k * 7919) % 101) as f64 / 7.0, ((k * 31) % 17) as f64 / 3.0))
            .collect();
        let a = ComplexMatrix::from_vec(n, n, data).unwrap();
        let par = a.matmul_unchecked(&a);
        let mut ser = vec![ZERO; n * n];
        for i in 0..n {
            for l in 0..n {
                let x = a.data[i * n + l];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    ser[i * n + j] += x * a.data[l * n + j];
                }
            }
        }
        assert_eq!(par.data, ser);
    }
}
