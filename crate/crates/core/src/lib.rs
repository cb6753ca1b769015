//! Pauli string decomposition of dense `2^n x 2^n` complex matrices.
//!
//! A matrix `A` is written as `sum_{r,s} alpha_{r,s} P_{r,s}`, where the
//! Pauli string `P_{r,s}` has `X`-type bits `r` and `Z`-type bits `s`. All
//! `4^n` coefficients are computed in place, in `O(4^n n)` time with
//! constant extra memory, by permuting the matrix entries, applying a fast
//! Walsh-Hadamard transform to every row, and scaling by a phase. The
//! reconstruction runs the same steps in reverse.
//!
//! ```
//! use num_complex::Complex64;
//! use pauli_fwht::{decompose_to_terms, ComplexMatrix};
//!
//! let a = ComplexMatrix::diagonal(&[1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0))).unwrap();
//! let terms = decompose_to_terms(a, 1e-12);
//! let labels: Vec<String> = terms.iter().map(|t| t.label()).collect();
//! assert_eq!(labels, ["II", "IZ", "ZI"]);
//! ```

pub mod bits;
pub mod cli;
pub mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod pauli;
pub mod random;
pub mod structure;
pub mod transform;

pub use error::{Error, Result};
pub use matrix::{CoefficientMatrix, ComplexMatrix};
pub use pauli::{label_of, parse_label, PauliTerm, SymplecticRep, TermList};
pub use transform::{decompose, decompose_to_terms, reconstruct, OpCounters};

pub use num_complex::Complex64;
