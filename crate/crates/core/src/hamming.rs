//! Shift-invariant Hamming distance.
//!
//! `d(i) = min_α |{j : α + P[j] ≠ T[i+j]}|`, i.e. `m` minus the multiplicity
//! of the most frequent value in the shift array `A_i[j] = T[i+j] − P[j]`.
//!
//! [`sham_profile`] sorts every shift array (`O(nm log m)`).
//! [`skmismatch_profile`] reports `min(d(i), k+1)` in `O(nk log k)` after
//! suffix-array preprocessing: an alignment with `d(i) ≤ k` has at most `2k`
//! mismatches between the difference strings of pattern and window, and
//! between consecutive difference-string mismatches the shift array is
//! constant, so `A_i` collapses to at most `2k+1` runs.
//!
//! Ties between equally frequent shifts resolve to the smallest shift.

use crate::error::{Error, Result};
use crate::lce::LceIndex;
use crate::profile::HammingProfile;
use crate::sequence::{check_pair, Sequence};

/// `S_δ[j] = S[j+1] − S[j]`.
pub fn difference_string(seq: &Sequence) -> Result<Sequence> {
    let values = seq.values()?;
    if values.len() < 2 {
        return Err(Error::InvalidParameter(
            "difference string needs at least two symbols".into(),
        ));
    }
    Ok(Sequence::from_values(differences(&values)))
}

pub(crate) fn differences(values: &[i64]) -> Vec<i64> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// `A_i[j] = T[i+j] − P[j]` for one alignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftArray {
    pub values: Vec<i64>,
}

impl ShiftArray {
    pub fn new(text: &[i64], pattern: &[i64], i: usize) -> Self {
        ShiftArray {
            values: pattern.iter().zip(&text[i..]).map(|(p, t)| t - p).collect(),
        }
    }

    /// Most frequent value and its count; smallest value on ties.
    pub fn mode(&self) -> (i64, usize) {
        let mut sorted = self.values.clone();
        sorted.sort_unstable();
        let mut best = (sorted[0], 0usize);
        let mut start = 0;
        for end in 1..=sorted.len() {
            if end == sorted.len() || sorted[end] != sorted[start] {
                if end - start > best.1 {
                    best = (sorted[start], end - start);
                }
                start = end;
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: usize,
    pub len: usize,
    pub value: i64,
}

/// A shift array as contiguous constant runs covering `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthShiftArray {
    pub runs: Vec<Run>,
}

impl RunLengthShiftArray {
    pub fn expand(&self) -> Vec<i64> {
        self.runs
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.len))
            .collect()
    }

    /// Number of positions covered, i.e. the length of the expanded array.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.len).sum()
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Most frequent value and its total length; smallest value on ties.
    pub fn mode(&self) -> (i64, usize) {
        let mut runs: Vec<(i64, usize)> = self.runs.iter().map(|r| (r.value, r.len)).collect();
        runs.sort_unstable();
        let mut best = (runs[0].0, 0usize);
        let mut idx = 0;
        while idx < runs.len() {
            let value = runs[idx].0;
            let mut total = 0;
            while idx < runs.len() && runs[idx].0 == value {
                total += runs[idx].1;
                idx += 1;
            }
            if total > best.1 {
                best = (value, total);
            }
        }
        best
    }
}

/// Builds `A_i` for `window` from the sorted positions where the pattern's
/// and window's difference strings disagree. Within each stretch of agreeing
/// differences `A_i` is constant, so one subtraction per run suffices.
pub fn run_length_decompose(
    pattern: &[i64],
    window: &[i64],
    delta_mismatches: &[usize],
) -> RunLengthShiftArray {
    debug_assert_eq!(pattern.len(), window.len());
    let m = pattern.len();
    let mut runs = Vec::with_capacity(delta_mismatches.len() + 1);
    let mut start = 0;
    // A mismatch at delta position d separates A[d] from A[d + 1].
    for &d in delta_mismatches.iter().chain(std::iter::once(&(m - 1))) {
        let end = d + 1;
        runs.push(Run {
            start,
            len: end - start,
            value: window[start] - pattern[start],
        });
        start = end;
    }
    RunLengthShiftArray { runs }
}

/// Unbounded shift Hamming profile by sorting each shift array.
pub fn sham_profile(text: &Sequence, pattern: &Sequence) -> Result<HammingProfile> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    let m = p.len();
    let results = crate::map_alignments(t.len() - m + 1, |i| {
        let (alpha, count) = ShiftArray::new(&t, &p, i).mode();
        ((m - count) as u64, Some(alpha))
    });
    let (distances, minimisers) = results.into_iter().unzip();
    Ok(HammingProfile {
        distances,
        minimisers,
    })
}

/// Mismatch positions at one alignment, or a marker that there were more
/// than the budget allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlignmentMismatches {
    Within(Vec<usize>),
    OverBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport {
    pub budget: usize,
    pub alignments: Vec<AlignmentMismatches>,
}

/// Kangaroo k-mismatch: hop between mismatches with O(1) LCE queries.
pub struct KMismatchMatcher {
    index: LceIndex,
    pattern_len: usize,
    text_len: usize,
}

impl KMismatchMatcher {
    pub fn new(pattern: &[i64], text: &[i64]) -> Self {
        assert!(pattern.len() <= text.len());
        KMismatchMatcher {
            index: LceIndex::new(pattern, text),
            pattern_len: pattern.len(),
            text_len: text.len(),
        }
    }

    pub fn alignments(&self) -> usize {
        self.text_len - self.pattern_len + 1
    }

    /// Visits mismatches left to right; stops early when `visit` returns false.
    fn hop<F: FnMut(usize) -> bool>(&self, i: usize, mut visit: F) {
        let m = self.pattern_len;
        let mut j = 0;
        while j < m {
            j += self.index.extend(j, i + j);
            if j >= m || !visit(j) {
                return;
            }
            j += 1;
        }
    }

    /// Sorted mismatch positions at alignment `i`, up to `budget`.
    pub fn locations(&self, i: usize, budget: usize) -> AlignmentMismatches {
        let mut found = Vec::new();
        let mut over = false;
        self.hop(i, |j| {
            if found.len() == budget {
                over = true;
                return false;
            }
            found.push(j);
            true
        });
        if over {
            AlignmentMismatches::OverBudget
        } else {
            AlignmentMismatches::Within(found)
        }
    }

    /// Number of mismatches at alignment `i`, or `None` above `budget`.
    pub fn count(&self, i: usize, budget: usize) -> Option<usize> {
        let mut count = 0;
        self.hop(i, |_| {
            count += 1;
            count <= budget
        });
        (count <= budget).then_some(count)
    }

    pub fn report(&self, budget: usize) -> MismatchReport {
        MismatchReport {
            budget,
            alignments: crate::map_alignments(self.alignments(), |i| self.locations(i, budget)),
        }
    }
}

/// Mismatch positions per alignment, `OverBudget` beyond `budget`.
pub fn kmismatch_locations(
    text: &Sequence,
    pattern: &Sequence,
    budget: usize,
) -> Result<MismatchReport> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    Ok(KMismatchMatcher::new(&p, &t).report(budget))
}

/// `min(d(i), k+1)` per alignment, deterministically.
pub fn skmismatch_profile(text: &Sequence, pattern: &Sequence, k: usize) -> Result<HammingProfile> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    Ok(skmismatch_values(&t, &p, k))
}

pub(crate) fn skmismatch_values(t: &[i64], p: &[i64], k: usize) -> HammingProfile {
    let m = p.len();
    let outputs = t.len() - m + 1;
    let cap = (k + 1) as u64;
    if m == 1 {
        return HammingProfile {
            distances: vec![0; outputs],
            minimisers: (0..outputs).map(|i| Some(t[i] - p[0])).collect(),
        };
    }
    let p_delta = differences(p);
    let t_delta = differences(t);
    let matcher = KMismatchMatcher::new(&p_delta, &t_delta);
    let budget = 2 * k;
    let results = crate::map_alignments(outputs, |i| match matcher.locations(i, budget) {
        AlignmentMismatches::OverBudget => (cap, None),
        AlignmentMismatches::Within(mismatches) => {
            let runs = run_length_decompose(p, &t[i..i + m], &mismatches);
            let (alpha, count) = runs.mode();
            let d = (m - count) as u64;
            if d <= k as u64 {
                (d, Some(alpha))
            } else {
                (cap, None)
            }
        }
    });
    let (distances, minimisers) = results.into_iter().unzip();
    HammingProfile {
        distances,
        minimisers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s).unwrap()
    }

    #[test]
    fn difference_string_examples() {
        assert_eq!(difference_string(&seq("1 2 3")).unwrap(), seq("1 1"));
        assert_eq!(difference_string(&seq("5 5")).unwrap(), seq("0"));
        assert_eq!(difference_string(&seq("3 1 4 1")).unwrap(), seq("-2 3 -3"));
        assert!(matches!(
            difference_string(&seq("5")),
            Err(Error::InvalidParameter(_))
        ));
        assert_eq!(
            difference_string(&seq("5 * 1")),
            Err(Error::WildcardNotAllowed { position: 1 })
        );
    }

    #[test]
    fn sham_identity_alignment() {
        let prof = sham_profile(&seq("9 4 7 1 8 8 2"), &seq("7 1 8")).unwrap();
        assert_eq!(prof.distances[2], 0);
        assert_eq!(prof.minimisers[2], Some(0));
        assert!(prof.distances.iter().all(|&d| d <= 2));
    }

    #[test]
    fn sham_tie_breaks_to_smallest_shift() {
        // Shift array [3, -1]: both values once.
        let prof = sham_profile(&seq("3 1"), &seq("0 2")).unwrap();
        assert_eq!(prof.distances, vec![1]);
        assert_eq!(prof.minimisers, vec![Some(-1)]);
    }

    #[test]
    fn kmismatch_examples() {
        let r = kmismatch_locations(&seq("4 4 2 1"), &seq("4 4 2 1"), 3).unwrap();
        assert_eq!(r.alignments[0], AlignmentMismatches::Within(vec![]));
        let r = kmismatch_locations(&seq("1 2 1 1"), &seq("1 1 1 1"), 2).unwrap();
        assert_eq!(r.alignments[0], AlignmentMismatches::Within(vec![1]));
        let r = kmismatch_locations(&seq("1 2 3 4 5"), &seq("0 0 0"), 2).unwrap();
        assert!(r
            .alignments
            .iter()
            .all(|a| *a == AlignmentMismatches::OverBudget));
        let r = kmismatch_locations(&seq("1 2 3"), &seq("0 2 3"), 0).unwrap();
        assert_eq!(r.alignments[0], AlignmentMismatches::OverBudget);
    }

    #[test]
    fn count_matches_locations() {
        let m = KMismatchMatcher::new(&[1, 2, 3], &[1, 0, 3, 1, 2, 3, 9]);
        assert_eq!(m.count(0, 3), Some(1));
        assert_eq!(m.count(3, 0), Some(0));
        assert_eq!(m.count(1, 1), None);
        assert_eq!(m.count(4, 3), Some(3));
    }

    #[test]
    fn run_length_examples() {
        let p = [1, 2, 3, 4];
        let w = [5, 6, 7, 8];
        let r = run_length_decompose(&p, &w, &[]);
        assert_eq!(
            r.runs,
            vec![Run {
                start: 0,
                len: 4,
                value: 4
            }]
        );
        // Window differs from P + 4 only at position 2.
        let w = [5, 6, 9, 8];
        let mism: Vec<usize> = differences(&p)
            .iter()
            .zip(differences(&w))
            .enumerate()
            .filter(|(_, (a, b))| *a != b)
            .map(|(d, _)| d)
            .collect();
        assert_eq!(mism, vec![1, 2]);
        let r = run_length_decompose(&p, &w, &mism);
        assert!(r.runs.len() <= 3);
        assert_eq!(r.expand(), vec![4, 4, 6, 4]);
        assert_eq!(r.mode(), (4, 3));
    }

    #[test]
    fn skmismatch_examples() {
        let prof = skmismatch_profile(&seq("0 0 9 0 0"), &seq("0 0 0"), 1).unwrap();
        assert_eq!(prof.distances, vec![1, 1, 1]);

        let text = seq("3 1 4 1 5 9 2 6 5 3 5");
        let pat = seq("2 0 3");
        let prof = skmismatch_profile(&text, &pat, 0).unwrap();
        // Distance 0 exactly where the difference strings agree.
        let pd = differences(&pat.values().unwrap());
        let td = differences(&text.values().unwrap());
        for (i, d) in prof.distances.iter().enumerate() {
            assert_eq!(*d == 0, td[i..i + 2] == pd[..], "alignment {i}");
        }
        assert_eq!(prof.distances[0], 0);
        assert_eq!(prof.minimisers[0], Some(1));
    }

    #[test]
    fn single_symbol_pattern() {
        let prof = skmismatch_profile(&seq("4 -2 7"), &seq("1"), 0).unwrap();
        assert_eq!(prof.distances, vec![0, 0, 0]);
        assert_eq!(prof.minimisers, vec![Some(3), Some(-3), Some(6)]);
    }

    #[test]
    fn wildcards_rejected() {
        assert!(sham_profile(&seq("1 2 *"), &seq("1")).is_err());
        assert!(skmismatch_profile(&seq("1 2 3"), &seq("*"), 1).is_err());
    }
}
