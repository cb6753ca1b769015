//! Bitwise primitives on n-bit basis indices.
//!
//! Qubit `j` corresponds to the bit of weight `2^j`. All functions are pure.

/// An index into `[0, 2^n)`; the width `n` comes from the enclosing matrix.
pub type BitIndex = usize;

/// Largest supported qubit count. Dense storage at this size is already
/// `2^32` complex entries.
pub const MAX_QUBITS: usize = 16;

/// Number of set bits.
#[inline(always)]
pub fn hamming_weight(x: BitIndex) -> u32 {
    x.count_ones()
}

/// Portable population count, kept bit-exact with [`hamming_weight`].
pub fn hamming_weight_portable(mut x: BitIndex) -> u32 {
    let mut count = 0;
    while x != 0 {
        x &= x - 1;
        count += 1;
    }
    count
}

/// Entry `(q, s)` of the n-fold tensor power of the 2x2 Hadamard matrix,
/// i.e. `(-1)^{|q & s|}`.
#[inline(always)]
pub fn hadamard_entry(q: BitIndex, s: BitIndex) -> i32 {
    1 - 2 * parity_of_and(q, s) as i32
}

/// `|r & s| mod 2`.
#[inline(always)]
pub fn parity_of_and(r: BitIndex, s: BitIndex) -> u32 {
    hamming_weight(r & s) & 1
}

/// `|r & s| mod 4`, the exponent of the Pauli phase factor.
#[inline(always)]
pub fn and_weight_mod4(r: BitIndex, s: BitIndex) -> u32 {
    hamming_weight(r & s) & 3
}
