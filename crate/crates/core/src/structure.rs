//! Symmetry classes of input matrices and the coefficient structure they
//! force.
//!
//! Hermitian inputs have real coefficients. Symmetric inputs (real or
//! complex) have `alpha_{r,s} = 0` whenever `|r & s|` is odd, which is
//! exactly where `H^{(x)n}` has a `-1`, i.e. `2^{n-1}(2^n - 1)` positions.

use num_complex::Complex64;

use crate::bits::{parity_of_and, BitIndex};
use crate::error::{Error, Result};
use crate::matrix::{CoefficientMatrix, ComplexMatrix};

/// Default absolute tolerance for unit-scaled inputs.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Most specific symmetry of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    RealSymmetric,
    Hermitian,
    ComplexSymmetric,
    General,
}

impl SymmetryClass {
    /// Symmetric inputs (real or complex) zero out the odd-overlap coefficients.
    pub fn is_symmetric(self) -> bool {
        matches!(
            self,
            SymmetryClass::RealSymmetric | SymmetryClass::ComplexSymmetric
        )
    }

    /// Hermitian inputs (including real symmetric ones) have real coefficients.
    pub fn is_hermitian(self) -> bool {
        matches!(
            self,
            SymmetryClass::RealSymmetric | SymmetryClass::Hermitian
        )
    }
}

/// Measured coefficient structure for one decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub class: SymmetryClass,
    /// Largest `|Im alpha|` over all coefficients.
    pub max_imag_coeff: f64,
    /// Largest `|alpha|` over the odd-overlap positions.
    pub max_forbidden_coeff: f64,
    /// Odd-overlap positions whose coefficient is within tolerance of zero.
    pub zero_pattern_count: usize,
    /// Odd-overlap positions that the class forces to zero.
    pub expected_zero_count: usize,
    pub passed: bool,
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

fn max_deviation(a: &ComplexMatrix, f: impl Fn(usize, usize) -> Complex64) -> f64 {
    let dim = a.dim();
    let mut worst = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            worst = worst.max((a[(r, c)] - f(r, c)).norm());
        }
    }
    worst
}

/// Classifies `a` with absolute tolerance `tol`.
pub fn classify(a: &ComplexMatrix, tol: f64) -> Result<SymmetryClass> {
    check_tolerance(tol)?;
    let hermitian = max_deviation(a, |r, c| a[(c, r)].conj()) <= tol;
    let symmetric = max_deviation(a, |r, c| a[(c, r)]) <= tol;
    let real = a.as_slice().iter().all(|z| z.im.abs() <= tol);
    Ok(match (symmetric && real, hermitian, symmetric) {
        (true, _, _) => SymmetryClass::RealSymmetric,
        (_, true, _) => SymmetryClass::Hermitian,
        (_, _, true) => SymmetryClass::ComplexSymmetric,
        _ => SymmetryClass::General,
    })
}

/// `2^{n-1}(2^n - 1)`, the number of `(r, s)` with `|r & s|` odd.
pub fn forbidden_count(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (1 << (n - 1)) * ((1 << n) - 1)
}

/// Whether symmetric inputs force `alpha_{r,s}` to zero.
#[inline]
pub fn is_forbidden(r: BitIndex, s: BitIndex) -> bool {
    parity_of_and(r, s) == 1
}

/// All `(r, s)` with `|r & s|` odd, in `(r, s)` order.
pub fn forbidden_positions(n: usize) -> impl Iterator<Item = (BitIndex, BitIndex)> {
    let dim = 1usize << n;
    (0..dim).flat_map(move |r| {
        (0..dim)
            .map(move |s| (r, s))
            .filter(|&(r, s)| is_forbidden(r, s))
    })
}

/// Measures `c` against the structure promised for `class`.
///
/// Hermitian classes require every imaginary part within `tol`. Symmetric
/// classes require every odd-overlap coefficient within `tol` of zero.
/// `General` always passes.
pub fn check_structure(
    c: &CoefficientMatrix,
    class: SymmetryClass,
    tol: f64,
) -> Result<StructureReport> {
    check_tolerance(tol)?;
    let n = c.qubits();
    let mut max_imag_coeff = 0.0f64;
    let mut max_forbidden_coeff = 0.0f64;
    let mut zero_pattern_count = 0;
    for (r, s, alpha) in c.iter() {
        max_imag_coeff = max_imag_coeff.max(alpha.im.abs());
        if is_forbidden(r, s) {
            let m = alpha.norm();
            max_forbidden_coeff = max_forbidden_coeff.max(m);
            if m <= tol {
                zero_pattern_count += 1;
            }
        }
    }
    let expected_zero_count = if class.is_symmetric() {
        forbidden_count(n)
    } else {
        0
    };
    let passed = (!class.is_hermitian() || max_imag_coeff <= tol)
        && (!class.is_symmetric() || max_forbidden_coeff <= tol);
    Ok(StructureReport {
        class,
        max_imag_coeff,
        max_forbidden_coeff,
        zero_pattern_count,
        expected_zero_count,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::hadamard_entry;
    use crate::transform::decompose;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classify_examples() {
        let id = ComplexMatrix::identity(2).unwrap();
        assert_eq!(classify(&id, 0.0).unwrap(), SymmetryClass::RealSymmetric);

        let y =
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
                .unwrap();
        assert_eq!(classify(&y, 0.0).unwrap(), SymmetryClass::Hermitian);

        let s = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, 1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap();
        assert_eq!(classify(&s, 0.0).unwrap(), SymmetryClass::ComplexSymmetric);

        let g = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [2.0, 0.0]]).unwrap();
        assert_eq!(classify(&g, 0.0).unwrap(), SymmetryClass::General);
        assert_eq!(classify(&g, 1.0).unwrap(), SymmetryClass::RealSymmetric);
    }

    #[test]
    fn classify_rejects_bad_tolerance() {
        let id = ComplexMatrix::identity(1).unwrap();
        assert!(classify(&id, -1.0).is_err());
        assert!(classify(&id, f64::NAN).is_err());
    }

    #[test]
    fn forbidden_position_examples() {
        assert_eq!(forbidden_positions(1).collect::<Vec<_>>(), vec![(1, 1)]);
        assert_eq!(forbidden_positions(2).count(), 6);
        assert_eq!(forbidden_count(2), 6);
        for s in 0..16 {
            assert!(!is_forbidden(0, s));
        }
    }

    #[test]
    fn forbidden_positions_are_hadamard_minus_ones() {
        for n in 0..=6 {
            let dim = 1usize << n;
            let listed: Vec<_> = forbidden_positions(n).collect();
            let minus: Vec<_> = (0..dim)
                .flat_map(|r| (0..dim).map(move |s| (r, s)))
                .filter(|&(r, s)| hadamard_entry(r, s) == -1)
                .collect();
            assert_eq!(listed, minus);
            assert_eq!(listed.len(), forbidden_count(n));
        }
    }

    #[test]
    fn identity_passes_real_symmetric_check() {
        let coeffs = decompose(ComplexMatrix::identity(3).unwrap());
        let report =
            check_structure(&coeffs, SymmetryClass::RealSymmetric, DEFAULT_TOLERANCE).unwrap();
        assert!(report.passed);
        assert_eq!(report.zero_pattern_count, 28);
        assert_eq!(report.expected_zero_count, 28);
        for (r, s, z) in coeffs.iter() {
            if (r, s) != (0, 0) {
                assert_eq!(z, c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn general_class_is_vacuous_and_reports_maxima() {
        let a = ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap();
        let coeffs = decompose(a);
        let report = check_structure(&coeffs, SymmetryClass::General, 0.0).unwrap();
        assert!(report.passed);
        assert_eq!(report.expected_zero_count, 0);
        // |1><0| = (X - iY)/2 has an imaginary Y coefficient.
        assert!(report.max_forbidden_coeff > 0.4);
        let strict = check_structure(&coeffs, SymmetryClass::Hermitian, 1e-12).unwrap();
        assert!(!strict.passed);
    }
}
