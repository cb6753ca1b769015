//! Pauli strings indexed by an X-bit mask `r` and a Z-bit mask `s`.
//!
//! Per qubit `j`, the bit pair `(r_j, s_j)` selects `I`, `X`, `Z` or `Y` for
//! `(0,0)`, `(1,0)`, `(0,1)`, `(1,1)`. The string `P_{r,s}` is the tensor
//! product of `i^{r_j s_j} X^{r_j} Z^{s_j}`, so `(1,1)` is exactly `Y` and no
//! global phase is left over. Labels are written with qubit `n-1` first.

use std::fmt;

use num_complex::Complex64;

use crate::bits::{BitIndex, MAX_QUBITS};
use crate::error::{Error, Result};

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Operator for the bit pair `(x, z)`.
    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    /// `(x, z)` bits of this operator.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Label of `P_{r,s}` on `n` qubits, highest qubit first.
///
/// ```
/// use pauli_fwht::pauli::label_of;
/// assert_eq!(label_of(1, 2, 2), "ZX");
/// ```
pub fn label_of(r: BitIndex, s: BitIndex, n: usize) -> String {
    (0..n)
        .rev()
        .map(|j| Pauli::from_bits((r >> j) & 1 == 1, (s >> j) & 1 == 1).as_char())
        .collect()
}

/// Inverse of [`label_of`]: returns `(r, s, n)`.
pub fn parse_label(label: &str) -> Result<(BitIndex, BitIndex, usize)> {
    if label.is_empty() {
        return Err(Error::EmptyLabel);
    }
    let mut r = 0;
    let mut s = 0;
    let mut n = 0;
    for (position, c) in label.chars().enumerate() {
        let p = Pauli::from_char(c).ok_or(Error::InvalidLabel { position, found: c })?;
        if position >= MAX_QUBITS {
            return Err(Error::TooManyQubits {
                qubits: label.chars().count(),
                max: MAX_QUBITS,
            });
        }
        let (x, z) = p.bits();
        r = (r << 1) | x as usize;
        s = (s << 1) | z as usize;
        n += 1;
    }
    Ok((r, s, n))
}

/// Symplectic encoding `i^phase * X^x_bits Z^z_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticRep {
    pub x_bits: BitIndex,
    pub z_bits: BitIndex,
    /// Power of `i`, modulo 4.
    pub phase_exponent: u8,
}

/// One weighted Pauli string.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliTerm {
    pub r: BitIndex,
    pub s: BitIndex,
    pub coeff: Complex64,
    pub n: usize,
}

impl PauliTerm {
    pub fn new(r: BitIndex, s: BitIndex, coeff: Complex64, n: usize) -> Self {
        debug_assert!(r >> n == 0 && s >> n == 0);
        Self { r, s, coeff, n }
    }

    pub fn label(&self) -> String {
        label_of(self.r, self.s, self.n)
    }

    pub fn symplectic(&self) -> SymplecticRep {
        symplectic_of(self)
    }
}

impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coeff, self.label())
    }
}

/// The phase `i^{|r&s|}` is part of the string's definition, so the
/// symplectic phase is always zero and the coefficient is untouched.
pub fn symplectic_of(term: &PauliTerm) -> SymplecticRep {
    SymplecticRep {
        x_bits: term.r,
        z_bits: term.s,
        phase_exponent: 0,
    }
}

/// Sparse decomposition: terms sorted by `(r, s)`, each with
/// `|coeff| > threshold`.
#[derive(Clone, Debug, PartialEq)]
pub struct TermList {
    n: usize,
    terms: Vec<PauliTerm>,
    threshold: f64,
}

impl TermList {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
            threshold: 0.0,
        }
    }

    /// Builds a list from terms already in strictly increasing `(r, s)` order.
    pub(crate) fn from_sorted(n: usize, terms: Vec<PauliTerm>, threshold: f64) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| (w[0].r, w[0].s) < (w[1].r, w[1].s)));
        Self {
            n,
            terms,
            threshold,
        }
    }

    /// Sorts `terms` by `(r, s)`. Returns the first duplicated pair on failure.
    pub fn from_terms(
        n: usize,
        mut terms: Vec<PauliTerm>,
        threshold: f64,
    ) -> std::result::Result<Self, (BitIndex, BitIndex)> {
        terms.sort_by_key(|t| (t.r, t.s));
        if let Some(w) = terms
            .windows(2)
            .find(|w| (w[0].r, w[0].s) == (w[1].r, w[1].s))
        {
            return Err((w[0].r, w[0].s));
        }
        Ok(Self {
            n,
            terms,
            threshold,
        })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PauliTerm> {
        self.terms.iter()
    }

    /// Coefficient of `(r, s)`, zero if absent.
    pub fn coefficient(&self, r: BitIndex, s: BitIndex) -> Complex64 {
        self.terms
            .binary_search_by_key(&(r, s), |t| (t.r, t.s))
            .map(|i| self.terms[i].coeff)
            .unwrap_or_default()
    }
}

impl<'a> IntoIterator for &'a TermList {
    type Item = &'a PauliTerm;
    type IntoIter = std::slice::Iter<'a, PauliTerm>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
