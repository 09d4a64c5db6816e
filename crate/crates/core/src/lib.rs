//! Normalised pattern matching over integer sequences.
//!
//! For a pattern `P` of length `m` and a text `T` of length `n`, every
//! operation produces one answer per alignment `i ∈ 0..=n-m`:
//!
//! * [`l2`]: least-squares distance after the best shift, shift-scale, or
//!   degree-`r` polynomial map of the pattern, with `*` wildcards, computed
//!   from exact FFT/NTT cross-correlations in `O(n log m)`.
//! * [`hamming`]: number of mismatches after the best shift, unbounded or
//!   capped at `k+1` (run-length shift arrays over difference strings).
//! * [`randomised`]: one-sided-error decision "is the shift Hamming distance
//!   at most `k`" using random cyclic permuted difference strings.
//! * [`oracles`]: brute-force references and hard-instance generators.
//!
//! All distances are exact: rationals for L2, integers for Hamming.

pub mod correlate;
pub mod error;
pub mod hamming;
pub mod l2;
mod lce;
pub mod oracles;
pub mod profile;
pub mod randomised;
pub mod rational;
pub mod sequence;

pub use error::{Error, Result};
pub use profile::{
    DistanceProfile, HammingProfile, PolyCoefficients, PolyProfile, ShiftProfile, ShiftScaleProfile,
};
pub use rational::{rational_reduce, Rational};
pub use sequence::{build_masks, Bounds, MaskVector, Sequence, SequencePair, Symbol};

/// Computes `f(i)` for each alignment `i < count`, in order.
#[cfg(feature = "parallel")]
pub(crate) fn map_alignments<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_alignments<T, F>(count: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..count).map(f).collect()
}
