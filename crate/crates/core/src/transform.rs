//! In-place Pauli decomposition and reconstruction.
//!
//! Decomposition runs three passes over the row-major buffer:
//!
//! 1. XOR permutation: `a[r][q] <- a[r ^ q][q]`, which lines up every
//!    generalised diagonal of the matrix along a row.
//! 2. Walsh-Hadamard transform of each row with in-place butterflies.
//! 3. Elementwise prefactor `(-i)^{|r & s|} / 2^n`.
//!
//! Afterwards entry `(r, s)` holds the coefficient of `P_{r,s}`. Reconstruction
//! runs the passes backwards. Every pass works in place with constant extra
//! memory. Rows are independent in the butterfly and prefactor passes and
//! are spread across the rayon pool; the butterfly order inside a row is
//! fixed, so results do not depend on the worker count.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bits::and_weight_mod4;
use crate::matrix::{qubits_for_len, CoefficientMatrix, ComplexMatrix};
use crate::pauli::{PauliTerm, TermList};

/// Tile side (as a power of two) used by the XOR permutation.
const TILE_BITS: usize = 5;

/// Rows shorter than this are transformed on the calling thread.
const PAR_MIN_DIM: usize = 64;

/// Operation counts recorded by the instrumented passes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub swaps: u64,
    pub complex_adds: u64,
    pub complex_subs: u64,
    pub complex_muls: u64,
}

impl OpCounters {
    pub fn adds_plus_subs(&self) -> u64 {
        self.complex_adds + self.complex_subs
    }

    /// Expected swap count of the XOR permutation on `n` qubits, `2^{n-1}(2^n - 1)`.
    pub fn expected_swaps(n: usize) -> u64 {
        if n == 0 {
            return 0;
        }
        (1u64 << (n - 1)) * ((1u64 << n) - 1)
    }

    /// Expected additions plus subtractions of the row transforms, `n 4^n`.
    pub fn expected_adds_plus_subs(n: usize) -> u64 {
        n as u64 * (1u64 << (2 * n))
    }
}

impl std::ops::AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.swaps += rhs.swaps;
        self.complex_adds += rhs.complex_adds;
        self.complex_subs += rhs.complex_subs;
        self.complex_muls += rhs.complex_muls;
    }
}

/// Applies `a[r][q] <- a[r ^ q][q]`. The map is an involution.
pub fn xor_permute_in_place(m: &mut ComplexMatrix, counters: &mut OpCounters) {
    let n = m.qubits();
    counters.swaps += xor_permute(m.as_mut_slice(), n);
}

/// Replaces every row `v` by `v H^{(x)n}`.
pub fn fwht_rows_in_place(m: &mut ComplexMatrix, counters: &mut OpCounters) {
    let n = m.qubits();
    *counters += fwht_rows(m.as_mut_slice(), n);
}

/// Multiplies entry `(r, s)` by `(-i)^{|r & s|} / 2^n`.
pub fn apply_prefactors_in_place(m: &mut ComplexMatrix) {
    let n = m.qubits();
    apply_prefactors(m.as_mut_slice(), n);
}

/// Pauli coefficients of `a`, computed in its own buffer.
pub fn decompose(a: ComplexMatrix) -> CoefficientMatrix {
    decompose_counted(a, &mut OpCounters::default())
}

pub fn decompose_counted(mut a: ComplexMatrix, counters: &mut OpCounters) -> CoefficientMatrix {
    let n = a.qubits();
    *counters += decompose_slice(a.as_mut_slice(), n);
    CoefficientMatrix::from_matrix(a)
}

/// The matrix whose decomposition is `c`, computed in its own buffer.
pub fn reconstruct(c: CoefficientMatrix) -> ComplexMatrix {
    reconstruct_counted(c, &mut OpCounters::default())
}

pub fn reconstruct_counted(c: CoefficientMatrix, counters: &mut OpCounters) -> ComplexMatrix {
    let mut m = c.into_matrix();
    let n = m.qubits();
    *counters += reconstruct_slice(m.as_mut_slice(), n);
    m
}

/// Decomposes `a` and keeps the terms with `|coeff| > threshold`, in
/// `(r, s)` order. Negative or NaN thresholds act as zero.
pub fn decompose_to_terms(a: ComplexMatrix, threshold: f64) -> TermList {
    terms_from_coefficients(&decompose(a), threshold)
}

/// Sparse view of a dense coefficient matrix.
pub fn terms_from_coefficients(c: &CoefficientMatrix, threshold: f64) -> TermList {
    let threshold = threshold.max(0.0);
    let n = c.qubits();
    let terms = c
        .iter()
        .filter(|(_, _, z)| z.norm() > threshold)
        .map(|(r, s, z)| PauliTerm::new(r, s, z, n))
        .collect();
    TermList::from_sorted(n, terms, threshold)
}

/// Dense coefficient matrix holding the terms of `list`; absent strings are zero.
pub fn coefficients_from_terms(list: &TermList) -> CoefficientMatrix {
    let mut c =
        CoefficientMatrix::zeros(list.qubits()).expect("term list qubit count is validated");
    for t in list {
        c.set(t.r, t.s, t.coeff);
    }
    c
}

/// Decomposes a row-major `4^n` buffer in place.
///
/// # Panics
///
/// If `data.len() != 4^n`.
pub fn decompose_slice(data: &mut [Complex64], n: usize) -> OpCounters {
    check_len(data, n);
    let swaps = xor_permute(data, n);
    let mut counters = fwht_rows_with_prefactors(data, n);
    counters.swaps += swaps;
    counters
}

/// Inverse of [`decompose_slice`].
///
/// Undoing the prefactor multiplies by `2^n i^{|r&s|}`, and the second row
/// transform contributes another `2^n`, so the two scalings cancel and only
/// the phase is applied.
pub fn reconstruct_slice(data: &mut [Complex64], n: usize) -> OpCounters {
    check_len(data, n);
    let mut counters = phases_with_fwht_rows(data, n);
    counters.swaps += xor_permute(data, n);
    counters
}

/// Infers `n` from a flat buffer length; `None` unless it is `4^n` with `n` in range.
pub fn qubits_for_buffer(data: &[Complex64]) -> Option<usize> {
    qubits_for_len(data.len()).ok()
}

fn check_len(data: &[Complex64], n: usize) {
    assert_eq!(
        data.len(),
        1usize << (2 * n),
        "buffer length must be 4^n for n = {n}"
    );
}

/// Returns the number of swaps performed.
///
/// Writing `r = (R, r_lo)` and `q = (Q, q_lo)` for the tile and in-tile
/// parts of each index, the partner of `(r, q)` lies in tile row `R ^ Q` of
/// the same tile column. Each pair of tiles is visited once with the
/// smaller tile row driving, so every 2-cycle is swapped exactly once.
fn xor_permute(data: &mut [Complex64], n: usize) -> u64 {
    let dim = 1usize << n;
    let tile_bits = n.min(TILE_BITS);
    let tile = 1usize << tile_bits;
    let tiles = dim >> tile_bits;
    let mut swaps = 0u64;

    let pairs = (0..tiles)
        .flat_map(|tr| (0..tiles).map(move |tq| (tr, tq)))
        .filter(|&(tr, tq)| tr ^ tq >= tr);
    let mut pairs = pairs.peekable();
    while let Some((tr, tq)) = pairs.next() {
        let next = pairs.peek().copied();
        let partner = tr ^ tq;
        let row0 = tr * tile;
        let col0 = tq * tile;
        let prow0 = partner * tile;
        for rl in 0..tile {
            // Tile rows are short strided segments; the hardware prefetcher
            // does not pick them up once the matrix is out of cache.
            if let Some((ntr, ntq)) = next {
                let ncol = ntq * tile;
                prefetch_segment(data, (ntr * tile + rl) * dim + ncol, tile);
                prefetch_segment(data, ((ntr ^ ntq) * tile + rl) * dim + ncol, tile);
            }
            let base = (row0 + rl) * dim + col0;
            for ql in 0..tile {
                let pl = rl ^ ql;
                // Inside a diagonal tile the pair would otherwise be visited twice.
                if partner == tr && pl <= rl {
                    continue;
                }
                data.swap(base + ql, (prow0 + pl) * dim + col0 + ql);
                swaps += 1;
            }
        }
    }
    swaps
}

#[inline(always)]
fn prefetch_segment(data: &[Complex64], start: usize, len: usize) {
    #[cfg(target_arch = "x86_64")]
    {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        for z in data[start..start + len].iter().step_by(4) {
            // SAFETY: prefetching has no architectural effect and the address is in bounds.
            unsafe { _mm_prefetch::<_MM_HINT_T0>((z as *const Complex64).cast()) };
        }
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = (data, start, len);
}

fn fwht_rows(data: &mut [Complex64], n: usize) -> OpCounters {
    let dim = 1usize << n;
    let butterflies: u64 = if dim >= PAR_MIN_DIM {
        data.par_chunks_mut(dim).map(fwht_row).sum()
    } else {
        data.chunks_mut(dim).map(fwht_row).sum()
    };
    OpCounters {
        complex_adds: butterflies,
        complex_subs: butterflies,
        ..OpCounters::default()
    }
}

/// Unnormalised Walsh-Hadamard transform of one row. Stages run with
/// half-width 1, 2, 4, ...; consecutive stage pairs are fused into radix-4
/// blocks, which perform the same operations on the same operands as two
/// radix-2 passes. Returns the number of butterflies.
#[inline(always)]
fn fwht_row_generic(row: &mut [Complex64]) -> u64 {
    let len = row.len();
    let mut butterflies = 0u64;
    let mut h = 1;
    while 4 * h <= len {
        for block in row.chunks_exact_mut(4 * h) {
            let (lo, hi) = block.split_at_mut(2 * h);
            let (a, b) = lo.split_at_mut(h);
            let (c, d) = hi.split_at_mut(h);
            for j in 0..h {
                let s0 = a[j] + b[j];
                let d0 = a[j] - b[j];
                let s1 = c[j] + d[j];
                let d1 = c[j] - d[j];
                a[j] = s0 + s1;
                c[j] = s0 - s1;
                b[j] = d0 + d1;
                d[j] = d0 - d1;
            }
            butterflies += 4 * h as u64;
        }
        h *= 4;
    }
    if 2 * h == len {
        let (a, b) = row.split_at_mut(h);
        for (x, y) in a.iter_mut().zip(b.iter_mut()) {
            let s = *x + *y;
            *y = *x - *y;
            *x = s;
        }
        butterflies += h as u64;
    }
    butterflies
}

/// Defines `$name` calling `$generic`, recompiled with AVX2 and POPCNT
/// enabled when the running CPU has them. Additions, subtractions and
/// power-of-two scalings round identically at every vector width, so both
/// builds produce the same bits.
macro_rules! dispatch_simd {
    ($(#[$meta:meta])* fn $name:ident($($arg:ident: $ty:ty),*) $(-> $ret:ty)? => $generic:ident) => {
        $(#[$meta])*
        fn $name($($arg: $ty),*) $(-> $ret)? {
            #[cfg(target_arch = "x86_64")]
            {
                #[target_feature(enable = "avx2,popcnt")]
                unsafe fn simd($($arg: $ty),*) $(-> $ret)? {
                    $generic($($arg),*)
                }
                if std::arch::is_x86_feature_detected!("avx2")
                    && std::arch::is_x86_feature_detected!("popcnt")
                {
                    // SAFETY: both target features were detected on this CPU.
                    return unsafe { simd($($arg),*) };
                }
            }
            $generic($($arg),*)
        }
    };
}

dispatch_simd! {
    /// Unnormalised Walsh-Hadamard transform of one row; returns the butterfly count.
    fn fwht_row(row: &mut [Complex64]) -> u64 => fwht_row_generic
}

dispatch_simd! {
    fn phase_row(row: &mut [Complex64], r: usize, phase: Phase, scale: f64) => phase_row_generic
}

dispatch_simd! {
    fn decompose_row(row: &mut [Complex64], r: usize, scale: f64) -> u64 => decompose_row_generic
}

dispatch_simd! {
    fn reconstruct_row(row: &mut [Complex64], r: usize) -> u64 => reconstruct_row_generic
}

#[inline(always)]
fn decompose_row_generic(row: &mut [Complex64], r: usize, scale: f64) -> u64 {
    let butterflies = fwht_row_generic(row);
    phase_row_generic(row, r, Phase::Conjugate, scale);
    butterflies
}

#[inline(always)]
fn reconstruct_row_generic(row: &mut [Complex64], r: usize) -> u64 {
    phase_row_generic(row, r, Phase::Forward, 1.0);
    fwht_row_generic(row)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    /// `i^{|r&s|}`
    Forward,
    /// `(-i)^{|r&s|}`
    Conjugate,
}

fn apply_prefactors(data: &mut [Complex64], n: usize) -> u64 {
    apply_phases(data, n, Phase::Conjugate, prefactor_scale(n))
}

fn prefactor_scale(n: usize) -> f64 {
    1.0 / (1u64 << n) as f64
}

/// Multiplies entry `(r, s)` by `phase^{|r&s|} * scale`.
fn apply_phases(data: &mut [Complex64], n: usize, phase: Phase, scale: f64) -> u64 {
    let dim = 1usize << n;
    let apply_row = |(r, row): (usize, &mut [Complex64])| phase_row(row, r, phase, scale);
    if dim >= PAR_MIN_DIM {
        data.par_chunks_mut(dim).enumerate().for_each(apply_row);
    } else {
        data.chunks_mut(dim).enumerate().for_each(apply_row);
    }
    data.len() as u64
}

/// Low index bits handled by the per-row lookup table in [`phase_row`].
const PHASE_TABLE_BITS: usize = 6;

/// Multiplies `row[s]` by `phase^{|r&s|} * scale`.
///
/// `|r & s|` splits into the overlap of the high bits, fixed for a block of
/// `2^6` consecutive `s`, plus the overlap of the low bits, read from a small
/// table. A rotation by a power of `i` is a component swap with sign flips,
/// so with a power-of-two `scale` every product is exact.
#[inline(always)]
fn phase_row_generic(row: &mut [Complex64], r: usize, phase: Phase, scale: f64) {
    let block = row.len().min(1 << PHASE_TABLE_BITS);
    let sign = |k: u32| match phase {
        Phase::Forward => k,
        Phase::Conjugate => k.wrapping_neg(),
    };
    let mut low = [0u32; 1 << PHASE_TABLE_BITS];
    for (s_lo, k) in low.iter_mut().enumerate().take(block) {
        *k = sign(and_weight_mod4(r, s_lo));
    }
    // i^k (a + bi) = x * sx[k] + i y * sy[k], where (x, y) is (a, b) for even k
    // and (b, a) for odd k.
    let sx = [scale, -scale, -scale, scale];
    let sy = [scale, scale, -scale, -scale];
    for (b, chunk) in row.chunks_exact_mut(block).enumerate() {
        let high = sign(and_weight_mod4(r, b * block));
        for (z, &lo) in chunk.iter_mut().zip(&low) {
            let k = (high.wrapping_add(lo) & 3) as usize;
            let parts = [z.re, z.im];
            let odd = k & 1;
            *z = Complex64::new(parts[odd] * sx[k], parts[odd ^ 1] * sy[k]);
        }
    }
}

/// Row transform followed by the prefactor, on each row while it is hot in
/// cache. Same result as [`fwht_rows`] then [`apply_prefactors`].
fn fwht_rows_with_prefactors(data: &mut [Complex64], n: usize) -> OpCounters {
    let dim = 1usize << n;
    let scale = prefactor_scale(n);
    let kernel = |(r, row): (usize, &mut [Complex64])| decompose_row(row, r, scale);
    let butterflies: u64 = if dim >= PAR_MIN_DIM {
        data.par_chunks_mut(dim).enumerate().map(kernel).sum()
    } else {
        data.chunks_mut(dim).enumerate().map(kernel).sum()
    };
    OpCounters {
        complex_adds: butterflies,
        complex_subs: butterflies,
        complex_muls: data.len() as u64,
        ..OpCounters::default()
    }
}

/// Phase `i^{|r&s|}` followed by the row transform, row by row.
fn phases_with_fwht_rows(data: &mut [Complex64], n: usize) -> OpCounters {
    let dim = 1usize << n;
    let kernel = |(r, row): (usize, &mut [Complex64])| reconstruct_row(row, r);
    let butterflies: u64 = if dim >= PAR_MIN_DIM {
        data.par_chunks_mut(dim).enumerate().map(kernel).sum()
    } else {
        data.chunks_mut(dim).enumerate().map(kernel).sum()
    };
    OpCounters {
        complex_adds: butterflies,
        complex_subs: butterflies,
        complex_muls: data.len() as u64,
        ..OpCounters::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::hadamard_entry;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real_row(values: &[f64]) -> Vec<Complex64> {
        values.iter().map(|&x| c(x, 0.0)).collect()
    }

    /// Row-vector times explicit H^{(x)n}.
    fn dense_wht(row: &[Complex64]) -> Vec<Complex64> {
        let len = row.len();
        (0..len)
            .map(|s| (0..len).map(|q| row[q] * hadamard_entry(q, s) as f64).sum())
            .collect()
    }

    #[test]
    fn xor_permute_two_by_two() {
        let (a, b, cc, d) = (c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0));
        let mut m = ComplexMatrix::from_rows(&[[a, b], [cc, d]]).unwrap();
        let mut counters = OpCounters::default();
        xor_permute_in_place(&mut m, &mut counters);
        assert_eq!(m, ComplexMatrix::from_rows(&[[a, d], [cc, b]]).unwrap());
        assert_eq!(counters.swaps, 1);

        let mut id = ComplexMatrix::identity(1).unwrap();
        xor_permute_in_place(&mut id, &mut OpCounters::default());
        assert_eq!(
            id,
            ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]).unwrap()
        );
    }

    #[test]
    fn xor_permute_matches_index_map() {
        // Sizes below, at, and above one tile.
        for n in 0..=8 {
            let dim = 1usize << n;
            let original: Vec<Complex64> = (0..dim * dim).map(|i| c(i as f64, 0.0)).collect();
            let mut data = original.clone();
            let swaps = xor_permute(&mut data, n);
            for r in 0..dim {
                for q in 0..dim {
                    assert_eq!(data[r * dim + q], original[(r ^ q) * dim + q], "n={n}");
                }
            }
            assert_eq!(swaps, OpCounters::expected_swaps(n));
        }
    }

    #[test]
    fn swap_count_for_three_qubits() {
        let mut m = ComplexMatrix::zeros(3).unwrap();
        let mut counters = OpCounters::default();
        xor_permute_in_place(&mut m, &mut counters);
        assert_eq!(counters.swaps, 28);
    }

    #[test]
    fn fwht_examples() {
        let mut row = real_row(&[1.0, 1.0]);
        fwht_row(&mut row);
        assert_eq!(row, real_row(&[2.0, 0.0]));

        let mut row = real_row(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(dense_wht(&row), real_row(&[10.0, -2.0, -4.0, 0.0]));
        fwht_row(&mut row);
        assert_eq!(row, real_row(&[10.0, -2.0, -4.0, 0.0]));

        let mut zeros = vec![Complex64::default(); 32];
        fwht_row(&mut zeros);
        assert!(zeros.iter().all(|z| *z == Complex64::default()));
    }

    #[test]
    fn fwht_matches_dense_product_for_odd_and_even_sizes() {
        for n in 0..=7 {
            let len = 1usize << n;
            let row: Vec<Complex64> = (0..len)
                .map(|i| c((i * 7 % 11) as f64 - 5.0, (i * 3 % 5) as f64))
                .collect();
            let expected = dense_wht(&row);
            let mut got = row.clone();
            let butterflies = fwht_row(&mut got);
            assert_eq!(got, expected, "n={n}");
            assert_eq!(butterflies, (n * len / 2) as u64);
        }
    }

    #[test]
    fn prefactor_examples() {
        let mut m =
            ComplexMatrix::from_rows(&[[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 2.0)]])
                .unwrap();
        apply_prefactors_in_place(&mut m);
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 1)], c(1.0, 0.0));

        let mut m = ComplexMatrix::zeros(2).unwrap();
        m[(3, 3)] = c(4.0, 0.0);
        apply_prefactors_in_place(&mut m);
        assert_eq!(m[(3, 3)], c(-1.0, 0.0));
    }

    #[test]
    fn decompose_small_examples() {
        let coeffs = decompose(ComplexMatrix::identity(1).unwrap());
        assert_eq!(coeffs.as_slice(), &real_row(&[1.0, 0.0, 0.0, 0.0])[..]);

        let y =
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
                .unwrap();
        let coeffs = decompose(y);
        assert_eq!(coeffs.as_slice(), &real_row(&[0.0, 0.0, 0.0, 1.0])[..]);
    }

    #[test]
    fn zero_qubit_matrix_is_its_own_coefficient() {
        let a = ComplexMatrix::from_vec(vec![c(-2.5, 0.75)]).unwrap();
        let mut counters = OpCounters::default();
        let coeffs = decompose_counted(a.clone(), &mut counters);
        assert_eq!(coeffs.get(0, 0), c(-2.5, 0.75));
        assert_eq!(counters.swaps, 0);
        assert_eq!(counters.adds_plus_subs(), 0);
        assert_eq!(reconstruct(coeffs), a);
    }

    #[test]
    fn reconstruct_single_strings() {
        let mut c00 = CoefficientMatrix::zeros(1).unwrap();
        c00.set(0, 0, c(1.0, 0.0));
        assert_eq!(reconstruct(c00), ComplexMatrix::identity(1).unwrap());

        let mut c11 = CoefficientMatrix::zeros(1).unwrap();
        c11.set(1, 1, c(1.0, 0.0));
        let y =
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]])
                .unwrap();
        assert_eq!(reconstruct(c11), y);
    }

    #[test]
    fn terms_threshold_filtering() {
        let list = decompose_to_terms(ComplexMatrix::identity(2).unwrap(), 0.0);
        assert_eq!(list.len(), 1);
        assert_eq!(list.terms()[0].label(), "II");
        assert_eq!(list.terms()[0].coeff, c(1.0, 0.0));

        let list = decompose_to_terms(ComplexMatrix::identity(2).unwrap(), f64::MAX);
        assert!(list.is_empty());

        let list = decompose_to_terms(ComplexMatrix::identity(2).unwrap(), f64::NAN);
        assert_eq!(list.len(), 1);
    }

    #[test]
    fn fused_kernels_match_separate_passes() {
        for n in [0, 1, 2, 5, 7] {
            let dim = 1usize << n;
            let a: Vec<Complex64> = (0..dim * dim)
                .map(|i| {
                    c(
                        ((i * 37) % 101) as f64 / 7.0 - 6.0,
                        ((i * 11) % 13) as f64 - 6.5,
                    )
                })
                .collect();
            let mut separate = ComplexMatrix::from_vec(a.clone()).unwrap();
            let mut counters = OpCounters::default();
            xor_permute_in_place(&mut separate, &mut counters);
            fwht_rows_in_place(&mut separate, &mut counters);
            apply_prefactors_in_place(&mut separate);

            let mut fused = a.clone();
            let fused_counters = decompose_slice(&mut fused, n);
            assert_eq!(fused, separate.as_slice(), "n={n}");
            assert_eq!(fused_counters.swaps, counters.swaps);
            assert_eq!(fused_counters.adds_plus_subs(), counters.adds_plus_subs());
        }
    }

    #[test]
    fn phase_rotation_matches_explicit_powers() {
        let z = c(0.75, -2.5);
        let powers = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for r in 0..8usize {
            for s in 0..8 {
                let k = (r & s).count_ones() as usize % 4;
                let mut row = vec![Complex64::default(); 8];
                row[s] = z;
                phase_row(&mut row, r, Phase::Forward, 0.5);
                assert_eq!(row[s], z * powers[k] * 0.5);
                row[s] = z;
                phase_row(&mut row, r, Phase::Conjugate, 1.0);
                assert_eq!(row[s], z * powers[(4 - k) % 4]);
            }
        }
    }

    #[test]
    #[should_panic(expected = "buffer length")]
    fn slice_length_checked() {
        let mut data = vec![Complex64::default(); 8];
        decompose_slice(&mut data, 1);
    }
}
