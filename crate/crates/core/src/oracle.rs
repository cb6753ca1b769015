//! Brute-force reference implementations.
//!
//! Pauli strings are built from their per-qubit 2x2 matrices and
//! coefficients come straight from the trace formula. Nothing here shares
//! code with the transform engine; it exists to check it.

use num_complex::Complex64;

use crate::bits::BitIndex;
use crate::error::{Error, Result};
use crate::matrix::{CoefficientMatrix, ComplexMatrix};
use crate::pauli::Pauli;

/// Largest qubit count accepted by [`naive_decompose`].
pub const NAIVE_MAX_QUBITS: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Row-major 2x2 matrix of a single-qubit Pauli.
pub fn pauli_matrix(p: Pauli) -> [[Complex64; 2]; 2] {
    match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -I], [I, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

fn qubit_factor(r: BitIndex, s: BitIndex, j: usize) -> [[Complex64; 2]; 2] {
    pauli_matrix(Pauli::from_bits((r >> j) & 1 == 1, (s >> j) & 1 == 1))
}

/// Dense matrix of `P_{r,s}` as a Kronecker product with qubit `n-1` as
/// the leftmost factor.
pub fn materialize(r: BitIndex, s: BitIndex, n: usize) -> ComplexMatrix {
    let mut acc = vec![ONE];
    let mut dim = 1;
    for j in (0..n).rev() {
        let f = qubit_factor(r, s, j);
        let new_dim = 2 * dim;
        let mut next = vec![ZERO; new_dim * new_dim];
        for (ai, &a) in acc.iter().enumerate() {
            let (ar, ac) = (ai / dim, ai % dim);
            for (fr, row) in f.iter().enumerate() {
                for (fc, &b) in row.iter().enumerate() {
                    next[(2 * ar + fr) * new_dim + 2 * ac + fc] = a * b;
                }
            }
        }
        acc = next;
        dim = new_dim;
    }
    ComplexMatrix::from_vec(acc).expect("Kronecker product has 4^n entries")
}

/// `(1/2^n) tr(P_{r,s} A)`.
///
/// Each row of a Pauli string has a single nonzero, at column `row ^ r`,
/// whose value is the product of the per-qubit entries.
pub fn trace_coefficient(a: &ComplexMatrix, r: BitIndex, s: BitIndex) -> Complex64 {
    let n = a.qubits();
    let dim = a.dim();
    let mut trace = ZERO;
    for row in 0..dim {
        let col = row ^ r;
        let p = (0..n).fold(ONE, |acc, j| {
            acc * qubit_factor(r, s, j)[(row >> j) & 1][(col >> j) & 1]
        });
        trace += p * a[(col, row)];
    }
    trace / dim as f64
}

/// All `4^n` coefficients through [`trace_coefficient`], `O(8^n)` work.
pub fn naive_decompose(a: &ComplexMatrix) -> Result<CoefficientMatrix> {
    let n = a.qubits();
    if n > NAIVE_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            qubits: n,
            max: NAIVE_MAX_QUBITS,
        });
    }
    let dim = a.dim();
    let mut out = CoefficientMatrix::zeros(n)?;
    for r in 0..dim {
        for s in 0..dim {
            out.set(r, s, trace_coefficient(a, r, s));
        }
    }
    Ok(out)
}

/// `sum alpha_{r,s} P_{r,s}` by explicit materialisation.
pub fn naive_reconstruct(c: &CoefficientMatrix) -> ComplexMatrix {
    let n = c.qubits();
    let mut acc = ComplexMatrix::zeros(n).expect("size already validated");
    for (r, s, alpha) in c.iter() {
        if alpha == ZERO {
            continue;
        }
        let p = materialize(r, s, n);
        acc = acc.linear_combination(ONE, &p, alpha);
    }
    acc
}
