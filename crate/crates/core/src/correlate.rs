//! Exact integer cross-correlation, `out[i] = Σ_j pat[j]·text[i+j]`.
//!
//! Two kernels compute the same thing. The float kernel runs a double
//! precision complex FFT and rounds each output, checking that every
//! pre-rounding residual stays below 1/4. It is only chosen when the a-priori
//! error bound `m·|text|max·|pat|max·FLOAT_EPSILON < 1/4` holds, and any
//! block that fails the residual check is recomputed on the modular kernel.
//! The modular kernel runs number theoretic transforms over two 62-bit primes
//! and reconstructs with the CRT, which is exact whenever
//! `m·|text|max·|pat|max < 2^122`. Larger operands go through
//! [`cross_correlate_big`], which splits values into limbs.
//!
//! [`chunked_correlate`] processes the text in overlapping blocks sized to the
//! pattern (overlap-save), giving `O(n log m)` time; [`cross_correlate`]
//! transforms the whole text at once.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Conservative worst-case relative error of one float correlation output.
/// See the `float_error_calibration` test.
pub const FLOAT_EPSILON: f64 = 1.0 / (1u64 << 46) as f64;

/// Exactness limit of the modular kernel: `m·A·B` must stay below this.
pub const MODULAR_LIMIT: u128 = 1 << 122;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    /// Float when its bound allows, modular otherwise.
    Auto,
    Float,
    Modular,
}

/// Correlates over the whole text with a single transform.
pub fn cross_correlate(text: &[i128], pat: &[i128]) -> Result<Vec<i128>> {
    let size = transform_size(text.len());
    correlate_with(text, pat, size, Kernel::Auto)
}

/// Same contract as [`cross_correlate`], in `O(n log m)`.
pub fn chunked_correlate(text: &[i128], pat: &[i128]) -> Result<Vec<i128>> {
    chunked_correlate_with(text, pat, Kernel::Auto)
}

pub fn chunked_correlate_with(text: &[i128], pat: &[i128], kernel: Kernel) -> Result<Vec<i128>> {
    let size = transform_size(2 * pat.len()).min(transform_size(text.len()));
    correlate_with(text, pat, size, kernel)
}

fn transform_size(len: usize) -> usize {
    len.max(2).next_power_of_two()
}

fn max_abs(v: &[i128]) -> u128 {
    v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
}

fn check_shapes<T>(text: &[T], pat: &[T]) -> Result<()> {
    if pat.is_empty() {
        return Err(Error::EmptySequence);
    }
    if pat.len() > text.len() {
        return Err(Error::PatternLongerThanText {
            m: pat.len(),
            n: text.len(),
        });
    }
    Ok(())
}

/// Correlates using blocks of `block` text symbols (a power of two no
/// smaller than the pattern).
pub fn correlate_with(
    text: &[i128],
    pat: &[i128],
    block: usize,
    kernel: Kernel,
) -> Result<Vec<i128>> {
    check_shapes(text, pat)?;
    let m = pat.len();
    assert!(block.is_power_of_two() && block >= m);
    let text_max = max_abs(text);
    let pattern_max = max_abs(pat);
    let product = (m as u128)
        .checked_mul(text_max)
        .and_then(|x| x.checked_mul(pattern_max));
    let product = match product {
        Some(p) if p < MODULAR_LIMIT => p,
        _ => {
            return Err(Error::ExactnessBound {
                m,
                text_max,
                pattern_max,
            })
        }
    };
    let use_float = match kernel {
        Kernel::Float => true,
        Kernel::Modular => false,
        Kernel::Auto => (product as f64) * FLOAT_EPSILON < 0.25,
    };
    let outputs = text.len() - m + 1;
    let mut out = vec![0i128; outputs];
    if product == 0 {
        return Ok(out);
    }
    let step = block - m + 1;
    if use_float {
        let plan = FloatPlan::new(pat, block);
        // Two text blocks share one complex transform (real and imaginary).
        for_each_block(&mut out, 2 * step, |start, dst| {
            if !plan.correlate_pair(text, start, step, dst) {
                let modular = ModularPlan::new(pat, block);
                for (k, sub) in dst.chunks_mut(step).enumerate() {
                    modular.correlate_block(text, start + k * step, sub);
                }
            }
        });
    } else {
        let plan = ModularPlan::new(pat, block);
        for_each_block(&mut out, step, |start, dst| {
            plan.correlate_block(text, start, dst);
        });
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn for_each_block<F>(out: &mut [i128], width: usize, f: F)
where
    F: Fn(usize, &mut [i128]) + Sync + Send,
{
    use rayon::prelude::*;
    out.par_chunks_mut(width)
        .enumerate()
        .for_each(|(idx, dst)| f(idx * width, dst));
}

#[cfg(not(feature = "parallel"))]
fn for_each_block<F>(out: &mut [i128], width: usize, f: F)
where
    F: Fn(usize, &mut [i128]),
{
    out.chunks_mut(width)
        .enumerate()
        .for_each(|(idx, dst)| f(idx * width, dst));
}

struct FloatPlan {
    size: usize,
    m: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    pattern_spectrum: Vec<Complex64>,
}

impl FloatPlan {
    fn new(pat: &[i128], size: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(size);
        let inverse = planner.plan_fft_inverse(size);
        let m = pat.len();
        // Reversed pattern turns convolution into correlation.
        let mut pattern_spectrum = vec![Complex64::default(); size];
        for (j, &p) in pat.iter().enumerate() {
            pattern_spectrum[m - 1 - j] = Complex64::new(p as f64, 0.0);
        }
        forward.process(&mut pattern_spectrum);
        FloatPlan {
            size,
            m,
            forward,
            inverse,
            pattern_spectrum,
        }
    }

    /// Fills `dst` (up to two blocks of `step` outputs starting at `start`).
    /// Returns false if any residual reached 1/4.
    fn correlate_pair(&self, text: &[i128], start: usize, step: usize, dst: &mut [i128]) -> bool {
        let mut buf = vec![Complex64::default(); self.size];
        let first_end = (start + self.size).min(text.len());
        for (slot, &t) in buf.iter_mut().zip(&text[start..first_end]) {
            slot.re = t as f64;
        }
        let second = start + step;
        let has_second = dst.len() > step;
        if has_second {
            let second_end = (second + self.size).min(text.len());
            for (slot, &t) in buf.iter_mut().zip(&text[second..second_end]) {
                slot.im = t as f64;
            }
        }
        self.forward.process(&mut buf);
        for (b, p) in buf.iter_mut().zip(&self.pattern_spectrum) {
            *b *= p;
        }
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.size as f64;
        let offset = self.m - 1;
        let (first, rest) = dst.split_at_mut(dst.len().min(step));
        for (i, d) in first.iter_mut().enumerate() {
            match round_checked(buf[offset + i].re * scale) {
                Some(v) => *d = v,
                None => return false,
            }
        }
        for (i, d) in rest.iter_mut().enumerate() {
            match round_checked(buf[offset + i].im * scale) {
                Some(v) => *d = v,
                None => return false,
            }
        }
        true
    }
}

fn round_checked(x: f64) -> Option<i128> {
    let r = x.round();
    if (x - r).abs() < 0.25 {
        Some(r as i128)
    } else {
        None
    }
}

// NTT-friendly primes c·2^30 + 1 just below 2^62, both with primitive root 3.
const PRIME_A: u64 = 4_611_685_944_339_202_049;
const PRIME_B: u64 = 4_611_685_941_117_976_577;
const ROOT: u64 = 3;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn to_residue(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

struct NttTables {
    p: u64,
    /// Twiddles for each stage, forward direction.
    roots: Vec<u64>,
    inverse_roots: Vec<u64>,
    size_inverse: u64,
}

impl NttTables {
    fn new(p: u64, size: usize) -> Self {
        assert!(size.is_power_of_two() && (p - 1).is_multiple_of(size as u64));
        let w = pow_mod(ROOT, (p - 1) / size as u64, p);
        let w_inv = pow_mod(w, p - 2, p);
        let half = size / 2;
        let mut roots = Vec::with_capacity(half);
        let mut inverse_roots = Vec::with_capacity(half);
        let (mut a, mut b) = (1u64, 1u64);
        for _ in 0..half {
            roots.push(a);
            inverse_roots.push(b);
            a = mul_mod(a, w, p);
            b = mul_mod(b, w_inv, p);
        }
        NttTables {
            p,
            roots,
            inverse_roots,
            size_inverse: pow_mod(size as u64, p - 2, p),
        }
    }

    fn transform(&self, a: &mut [u64], inverse: bool) {
        let n = a.len();
        let p = self.p;
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let table = if inverse {
            &self.inverse_roots
        } else {
            &self.roots
        };
        let mut len = 2;
        while len <= n {
            let stride = n / len;
            for chunk in a.chunks_mut(len) {
                let (lo, hi) = chunk.split_at_mut(len / 2);
                for (k, (x, y)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let u = *x;
                    let v = mul_mod(*y, table[k * stride], p);
                    *x = if u + v >= p { u + v - p } else { u + v };
                    *y = if u >= v { u - v } else { u + p - v };
                }
            }
            len <<= 1;
        }
        if inverse {
            for x in a.iter_mut() {
                *x = mul_mod(*x, self.size_inverse, p);
            }
        }
    }
}

struct ModularPlan {
    size: usize,
    m: usize,
    tables: [NttTables; 2],
    spectra: [Vec<u64>; 2],
}

impl ModularPlan {
    fn new(pat: &[i128], size: usize) -> Self {
        let m = pat.len();
        let tables = [NttTables::new(PRIME_A, size), NttTables::new(PRIME_B, size)];
        let spectra = [0, 1].map(|k| {
            let t = &tables[k];
            let mut s = vec![0u64; size];
            for (j, &v) in pat.iter().enumerate() {
                s[m - 1 - j] = to_residue(v, t.p);
            }
            t.transform(&mut s, false);
            s
        });
        ModularPlan {
            size,
            m,
            tables,
            spectra,
        }
    }

    fn correlate_block(&self, text: &[i128], start: usize, dst: &mut [i128]) {
        let end = (start + self.size).min(text.len());
        let residues = [0, 1].map(|k| {
            let t = &self.tables[k];
            let mut buf = vec![0u64; self.size];
            for (slot, &v) in buf.iter_mut().zip(&text[start..end]) {
                *slot = to_residue(v, t.p);
            }
            t.transform(&mut buf, false);
            for (b, s) in buf.iter_mut().zip(&self.spectra[k]) {
                *b = mul_mod(*b, *s, t.p);
            }
            t.transform(&mut buf, true);
            buf
        });
        for (i, d) in dst.iter_mut().enumerate() {
            let idx = self.m - 1 + i;
            *d = crt(residues[0][idx], residues[1][idx]);
        }
    }
}

/// Signed value in `(-pq/2, pq/2]` congruent to `a mod p` and `b mod q`.
fn crt(a: u64, b: u64) -> i128 {
    let p = PRIME_A as u128;
    let q = PRIME_B as u128;
    // p^-1 mod q
    let p_inv = pow_mod(PRIME_A % PRIME_B, PRIME_B - 2, PRIME_B) as u128;
    let diff = (b as u128 + q - (a as u128 % q)) % q;
    let t = mul_mod(diff as u64, p_inv as u64, PRIME_B) as u128;
    let x = a as u128 + p * t;
    let modulus = p * q;
    if x > modulus / 2 {
        -((modulus - x) as i128)
    } else {
        x as i128
    }
}

/// Exact correlation of arbitrary-precision operands. Values are split into
/// signed limbs small enough for the modular kernel and recombined.
pub fn cross_correlate_big(text: &[BigInt], pat: &[BigInt]) -> Result<Vec<BigInt>> {
    check_shapes(text, pat)?;
    let m = pat.len();
    let outputs = text.len() - m + 1;
    let fits = |v: &[BigInt]| v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let (text_bits, pat_bits) = (fits(text), fits(pat));
    let m_bits = (usize::BITS - (m - 1).leading_zeros()) as u64;
    if text_bits + pat_bits + m_bits < 121 {
        let t: Vec<i128> = text.iter().map(|x| x.to_i128().unwrap()).collect();
        let p: Vec<i128> = pat.iter().map(|x| x.to_i128().unwrap()).collect();
        let out = chunked_correlate(&t, &p)?;
        return Ok(out.into_iter().map(BigInt::from).collect());
    }
    let limb_bits = (120 - m_bits) / 2;
    let text_limbs = split_limbs(text, limb_bits);
    let pat_limbs = split_limbs(pat, limb_bits);
    let mut out = vec![BigInt::zero(); outputs];
    for (a, tl) in text_limbs.iter().enumerate() {
        for (b, pl) in pat_limbs.iter().enumerate() {
            let part = chunked_correlate(tl, pl)?;
            let shift = limb_bits as usize * (a + b);
            for (o, v) in out.iter_mut().zip(part) {
                if v != 0 {
                    *o += BigInt::from(v) << shift;
                }
            }
        }
    }
    Ok(out)
}

fn split_limbs(values: &[BigInt], limb_bits: u64) -> Vec<Vec<i128>> {
    let max_bits = values.iter().map(|x| x.bits()).max().unwrap_or(0).max(1);
    let count = max_bits.div_ceil(limb_bits) as usize;
    let mask = (BigInt::from(1) << limb_bits as usize) - 1;
    let mut limbs = vec![vec![0i128; values.len()]; count];
    for (j, v) in values.iter().enumerate() {
        let negative = v.sign() == Sign::Minus;
        let mut rest = v.abs();
        for limb in limbs.iter_mut() {
            if rest.is_zero() {
                break;
            }
            let digit = (&rest & &mask).to_i128().unwrap();
            limb[j] = if negative { -digit } else { digit };
            rest >>= limb_bits as usize;
        }
    }
    limbs
}
