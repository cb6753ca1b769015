//! Dense square complex matrices of dimension `2^n`.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::bits::MAX_QUBITS;
use crate::error::{Error, Result};

/// Dense row-major `2^n x 2^n` complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// All-zero matrix on `n` qubits.
    pub fn zeros(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); 1 << (2 * n)],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..m.dim() {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// Wraps a row-major buffer whose length must be `4^n`.
    pub fn from_vec(data: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(data.len())?;
        Ok(Self { n, data })
    }

    /// Builds a matrix from rows; the row count must be a power of two and
    /// every row must have that many entries.
    pub fn from_rows<R: AsRef<[Complex64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.len();
        let n = qubits_for_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::BadBufferLength {
                    len: row.len() * dim,
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { n, data })
    }

    /// Builds a real matrix from rows of `f64`.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let n = qubits_for_dim(values.len())?;
        let mut m = Self::zeros(n)?;
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        Ok(m)
    }

    /// Qubit count `n`.
    #[inline]
    pub fn qubits(&self) -> usize {
        self.n
    }

    /// Side length `2^n`.
    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        let dim = self.dim();
        &self.data[r * dim..(r + 1) * dim]
    }

    /// Largest entry modulus, 0 for the zero matrix.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Squared Frobenius norm.
    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest elementwise modulus of `self - other`.
    ///
    /// # Panics
    ///
    /// If the two matrices have different sizes.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn conj_transpose(&self) -> Self {
        let dim = self.dim();
        let mut out = self.clone();
        for r in 0..dim {
            for c in 0..dim {
                out.data[c * dim + r] = self.data[r * dim + c].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let dim = self.dim();
        let mut out = self.clone();
        for r in 0..dim {
            for c in 0..dim {
                out.data[c * dim + r] = self.data[r * dim + c];
            }
        }
        out
    }

    /// Elementwise `a * self + b * other`.
    pub fn linear_combination(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim() + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        let dim = self.dim();
        &mut self.data[r * dim + c]
    }
}

/// Pauli coefficients in dense form: entry `(r, s)` is the weight of the
/// Pauli string with X-bits `r` and Z-bits `s`.
///
/// Shares the layout of [`ComplexMatrix`]; the transform reuses the input
/// buffer, so converting between the two never copies.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMatrix(ComplexMatrix);

impl CoefficientMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        ComplexMatrix::zeros(n).map(Self)
    }

    /// Reinterprets a buffer of coefficients.
    pub fn from_matrix(m: ComplexMatrix) -> Self {
        Self(m)
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.0.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Coefficient of the Pauli string `(r, s)`.
    #[inline]
    pub fn get(&self, r: usize, s: usize) -> Complex64 {
        self.0[(r, s)]
    }

    #[inline]
    pub fn set(&mut self, r: usize, s: usize, value: Complex64) {
        self.0[(r, s)] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        self.0.as_slice()
    }

    /// Iterates `(r, s, coefficient)` in row-major, i.e. `(r, s)`-lexicographic, order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let dim = self.dim();
        self.0
            .as_slice()
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i / dim, i % dim, c))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }

    /// `sum |alpha|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.0.frobenius_norm_sqr()
    }
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// `n` such that `dim == 2^n`.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    let n = dim.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

/// `n` such that `len == 4^n`.
pub fn qubits_for_len(len: usize) -> Result<usize> {
    if !len.is_power_of_two() || !len.trailing_zeros().is_multiple_of(2) {
        return Err(Error::BadBufferLength { len });
    }
    let n = len.trailing_zeros() as usize / 2;
    check_qubits(n)?;
    Ok(n)
}
