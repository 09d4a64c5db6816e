//! Randomised decision "is the shift Hamming distance at most `k`?".
//!
//! For a permutation `π` of pattern positions, the permuted difference string
//! is `S_π[j] = S[π(j)] − S[j]`. If `d(i) ≤ k` then `P_π` and `(T_i)_π`
//! differ in at most `2k` places, for every `π`. The converse fails for some
//! `π`, but when `m > 6k²` and `k ≥ 2` at least a sixth of the cyclic
//! permutations `π_q(j) = (j + q) mod m` are *k-tight* (the converse holds).
//! Repeating with independent uniform `q` and keeping only alignments that
//! pass every round gives one-sided error: true matches are always reported.
//!
//! For cyclic `π_q` the permuted window splits into two slices of fixed text
//! vectors, `T⁺[j] = T[j+q] − T[j]` and `T⁻[j] = T[j+q−m] − T[j]`, so each
//! round is two ordinary k-mismatch runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hamming::{skmismatch_values, KMismatchMatcher};
use crate::sequence::{check_pair, Sequence};

/// `π_q(j) = (j + q) mod m` with `1 ≤ q ≤ m − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicPermutation {
    q: usize,
    m: usize,
}

impl CyclicPermutation {
    pub fn new(q: usize, m: usize) -> Result<Self> {
        if q == 0 || q >= m {
            return Err(Error::InvalidParameter(format!(
                "cyclic shift q = {q} must lie in 1..={} for pattern length {m}",
                m.saturating_sub(1)
            )));
        }
        Ok(CyclicPermutation { q, m })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn apply(&self, j: usize) -> usize {
        (j + self.q) % self.m
    }

    pub fn inverse(&self, j: usize) -> usize {
        (j + self.m - self.q) % self.m
    }

    /// `S_π[j] = S[π(j)] − S[j]` for a length-`m` slice.
    pub fn difference(&self, s: &[i64]) -> Vec<i64> {
        (0..s.len()).map(|j| s[self.apply(j)] - s[j]).collect()
    }
}

/// Pattern and text pieces for one cyclic permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutedDifferenceViews {
    pub permutation: CyclicPermutation,
    /// `P_π[0 .. m−q]`
    pub p_plus: Vec<i64>,
    /// `P_π[m−q .. m]`
    pub p_minus: Vec<i64>,
    /// `T⁺[j]` for `j ∈ [0, n−q)`.
    pub t_plus: Vec<i64>,
    /// `T⁻[j]` for `j ∈ [m−q, n)`, stored from index 0.
    pub t_minus: Vec<i64>,
}

impl PermutedDifferenceViews {
    fn build(text: &[i64], pattern: &[i64], permutation: CyclicPermutation) -> Self {
        let (q, m, n) = (permutation.q, permutation.m, text.len());
        let p_pi = permutation.difference(pattern);
        let p_minus = p_pi[m - q..].to_vec();
        let mut p_plus = p_pi;
        p_plus.truncate(m - q);
        let t_plus = (0..n - q).map(|j| text[j + q] - text[j]).collect();
        let t_minus = (m - q..n).map(|j| text[j + q - m] - text[j]).collect();
        PermutedDifferenceViews {
            permutation,
            p_plus,
            p_minus,
            t_plus,
            t_minus,
        }
    }

    /// First index of `T⁻` held in `t_minus[0]`.
    pub fn t_minus_offset(&self) -> usize {
        self.permutation.m - self.permutation.q
    }

    /// `(T_i)_π` assembled from the two text views.
    pub fn permuted_window(&self, i: usize) -> Vec<i64> {
        let split = self.t_minus_offset();
        let mut out = self.t_plus[i..i + split].to_vec();
        // T⁻[(i+m−q) .. (i+m)] lives at t_minus[i ..].
        out.extend_from_slice(&self.t_minus[i..i + self.permutation.q]);
        out
    }
}

pub fn permuted_views(
    text: &Sequence,
    pattern: &Sequence,
    q: CyclicPermutation,
) -> Result<PermutedDifferenceViews> {
    check_pair(text, pattern)?;
    if q.m != pattern.len() {
        return Err(Error::InvalidParameter(format!(
            "permutation is over {} positions but the pattern has {}",
            q.m,
            pattern.len()
        )));
    }
    Ok(PermutedDifferenceViews::build(
        &text.values()?,
        &pattern.values()?,
        q,
    ))
}

fn check_round_parameters(m: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "a permuted round needs k >= 2 (got {k})"
        )));
    }
    if m <= 6 * k * k {
        return Err(Error::InvalidParameter(format!(
            "a permuted round needs m > 6k² (m = {m}, k = {k})"
        )));
    }
    Ok(())
}

/// Marks alignments where the permuted difference strings differ in at most
/// `2k` places. Alignments with `alive[i] == false` are skipped and stay false.
fn round_values(views: &PermutedDifferenceViews, alive: &[bool], k: usize) -> Vec<bool> {
    let budget = 2 * k;
    let plus = KMismatchMatcher::new(&views.p_plus, &views.t_plus);
    let minus = KMismatchMatcher::new(&views.p_minus, &views.t_minus);
    crate::map_alignments(alive.len(), |i| {
        if !alive[i] {
            return false;
        }
        match plus.count(i, budget) {
            Some(c) => minus.count(i, budget - c).is_some(),
            None => false,
        }
    })
}

/// One round with a fixed permutation; `true` where `ham(P_π, (T_i)_π) ≤ 2k`.
pub fn single_round(
    text: &Sequence,
    pattern: &Sequence,
    q: CyclicPermutation,
    k: usize,
) -> Result<Vec<bool>> {
    let views = permuted_views(text, pattern, q)?;
    check_round_parameters(pattern.len(), k)?;
    let alive = vec![true; text.len() - pattern.len() + 1];
    Ok(round_values(&views, &alive, k))
}

/// `4(c+1)⌈log₂ n⌉` rounds, at least one.
pub fn decision_rounds(n: usize, confidence: u32) -> usize {
    let log = (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize;
    4 * (confidence as usize + 1) * log.max(1)
}

/// The permutation shifts drawn for a seeded run, fixed before any round.
pub fn draw_shifts(seed: u64, m: usize, rounds: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rounds).map(|_| rng.random_range(1..m)).collect()
}

/// `true` where `d(i) ≤ k` is reported. Every such alignment is reported;
/// with probability at least `1 − n^−c` nothing else is.
///
/// Requires `k < √(m/6)`. For `k ≤ 1` the answer comes from the
/// deterministic k-mismatch profile and involves no randomness.
pub fn skdecision(
    text: &Sequence,
    pattern: &Sequence,
    k: usize,
    confidence: u32,
    seed: u64,
) -> Result<Vec<bool>> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    let (n, m) = (t.len(), p.len());
    if 6 * k * k >= m {
        return Err(Error::InvalidParameter(format!(
            "randomised decision needs k < sqrt(m/6) (m = {m}, k = {k}); use the deterministic k-mismatch profile"
        )));
    }
    if k <= 1 {
        let prof = skmismatch_values(&t, &p, k);
        return Ok(prof.distances.iter().map(|&d| d <= k as u64).collect());
    }
    let shifts = draw_shifts(seed, m, decision_rounds(n, confidence));
    let mut alive = vec![true; n - m + 1];
    for q in shifts {
        if !alive.iter().any(|&a| a) {
            break;
        }
        let views = PermutedDifferenceViews::build(&t, &p, CyclicPermutation::new(q, m)?);
        alive = round_values(&views, &alive, k);
    }
    Ok(alive)
}

/// Brute-force check that `π_q` is k-tight for this pair:
/// `d ≤ k ⇔ ham(P_π, W_π) ≤ 2k`.
pub fn k_tight_check(
    pattern: &Sequence,
    window: &Sequence,
    q: CyclicPermutation,
    k: usize,
) -> Result<bool> {
    let p = pattern.values()?;
    let w = window.values()?;
    if p.len() != w.len() || q.m != p.len() {
        return Err(Error::InvalidParameter(
            "pattern, window and permutation must have the same length".into(),
        ));
    }
    let shift_distance = {
        let mut shifts: Vec<i64> = w.iter().zip(&p).map(|(a, b)| a - b).collect();
        shifts.sort_unstable();
        let best = shifts
            .chunk_by(|a, b| a == b)
            .map(<[i64]>::len)
            .max()
            .unwrap_or(0);
        p.len() - best
    };
    let permuted = q
        .difference(&p)
        .iter()
        .zip(q.difference(&w))
        .filter(|(a, b)| **a != *b)
        .count();
    Ok((shift_distance <= k) == (permuted <= 2 * k))
}
