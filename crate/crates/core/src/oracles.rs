//! Brute-force reference distances and hard-instance generators.
//!
//! The oracles work alignment by alignment from raw sums and share no code
//! with the fast paths beyond the sequence and rational types.
//!
//! The generators build the standard hard instances: 3SUM to shift Hamming,
//! GEOMBASE (collinear points on three vertical lines) to shift-scale Hamming,
//! and a pair on which a given cyclic permutation is not k-tight.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::profile::{
    DistanceProfile, HammingProfile, PolyCoefficients, PolyProfile, ShiftProfile, ShiftScaleProfile,
};
use crate::randomised::CyclicPermutation;
use crate::rational::Rational;
use crate::sequence::{check_pair, Bounds, Sequence, SequencePair, DEFAULT_MAX_MAGNITUDE};

/// Shift-scale Hamming profile with `(α, β)` per alignment.
pub type ShiftScaleHammingProfile = DistanceProfile<u64, (Rational, Rational)>;

fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `(P[j], T[i+j])` for every position where neither side is a wildcard.
fn overlaps(text: &Sequence, pattern: &Sequence, i: usize) -> Vec<(i64, i64)> {
    pattern
        .symbols()
        .iter()
        .zip(&text.symbols()[i..])
        .filter_map(|(p, t)| Some((p.value()?, t.value()?)))
        .collect()
}

fn alignments(text: &Sequence, pattern: &Sequence) -> usize {
    text.len() - pattern.len() + 1
}

pub fn brute_shift_l2(text: &Sequence, pattern: &Sequence) -> Result<ShiftProfile> {
    check_pair(text, pattern)?;
    let mut out = ShiftProfile {
        distances: Vec::new(),
        minimisers: Vec::new(),
    };
    for i in 0..alignments(text, pattern) {
        let pairs = overlaps(text, pattern, i);
        if pairs.is_empty() {
            out.distances.push(Rational::zero());
            out.minimisers.push(Rational::zero());
            continue;
        }
        // α = total / count; each residual is (total + count·(p − t)) / count.
        let total: i128 = pairs.iter().map(|&(p, t)| (t - p) as i128).sum();
        let count = pairs.len() as i128;
        let squares: BigInt = pairs
            .iter()
            .map(|&(p, t)| {
                let e = BigInt::from(total + count * (p - t) as i128);
                &e * &e
            })
            .sum();
        out.distances
            .push(Rational::new(squares, BigInt::from(count * count)));
        out.minimisers
            .push(Rational::new(total.into(), count.into()));
    }
    Ok(out)
}

pub fn brute_shift_scale_l2(text: &Sequence, pattern: &Sequence) -> Result<ShiftScaleProfile> {
    check_pair(text, pattern)?;
    let mut out = ShiftScaleProfile {
        distances: Vec::new(),
        minimisers: Vec::new(),
    };
    for i in 0..alignments(text, pattern) {
        let pairs = overlaps(text, pattern, i);
        if pairs.is_empty() {
            out.distances.push(Rational::zero());
            out.minimisers.push((Rational::zero(), Rational::zero()));
            continue;
        }
        let (mut sp, mut spp, mut st, mut spt) = (
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::zero(),
        );
        for &(p, t) in &pairs {
            sp += p;
            spp += p as i128 * p as i128;
            st += t;
            spt += p as i128 * t as i128;
        }
        let count = BigInt::from(pairs.len());
        // [count sp; sp spp] [α; β] = [st; spt], by Cramer's rule: α and β
        // are num_α/det and num_β/det.
        let mut det = &count * &spp - &sp * &sp;
        let (num_alpha, num_beta) = if det.is_zero() {
            det = count.clone();
            (st, BigInt::zero())
        } else {
            (&spp * &st - &sp * &spt, &count * &spt - &sp * &st)
        };
        let squares: BigInt = pairs
            .iter()
            .map(|&(p, t)| {
                let e = &num_alpha + &num_beta * p - &det * t;
                &e * &e
            })
            .sum();
        out.distances.push(Rational::new(squares, &det * &det));
        out.minimisers.push((
            Rational::new(num_alpha, det.clone()),
            Rational::new(num_beta, det),
        ));
    }
    Ok(out)
}

/// Gauss-Jordan over rationals; pivots taken column by column, columns with
/// no pivot are free and fixed to 0.
fn gauss_jordan(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = b.len();
    let mut pivot_of_col = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let Some(found) = (row..n).find(|&k| !a[k][col].is_zero()) else {
            continue;
        };
        a.swap(row, found);
        b.swap(row, found);
        let inv = a[row][col].recip();
        for c in 0..n {
            a[row][c] *= &inv;
        }
        b[row] *= &inv;
        for k in 0..n {
            if k != row && !a[k][col].is_zero() {
                let f = a[k][col].clone();
                for c in 0..n {
                    let d = &f * &a[row][c];
                    a[k][c] -= d;
                }
                let d = &f * &b[row];
                b[k] -= d;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    pivot_of_col
        .iter()
        .map(|p| p.map_or_else(Rational::zero, |row| b[row].clone()))
        .collect()
}

pub fn brute_poly_l2(text: &Sequence, pattern: &Sequence, degree: usize) -> Result<PolyProfile> {
    check_pair(text, pattern)?;
    if degree < 1 {
        return Err(Error::InvalidParameter(
            "polynomial degree must be at least 1".into(),
        ));
    }
    let size = degree + 1;
    let mut out = PolyProfile {
        distances: Vec::new(),
        minimisers: Vec::new(),
    };
    for i in 0..alignments(text, pattern) {
        let pairs = overlaps(text, pattern, i);
        if pairs.is_empty() {
            out.distances.push(Rational::zero());
            out.minimisers.push(PolyCoefficients::zero(degree));
            continue;
        }
        // Raw power sums Σ p^e and Σ t·p^e.
        let mut power_sums = vec![BigInt::zero(); 2 * size - 1];
        let mut moment_sums = vec![BigInt::zero(); size];
        for &(p, t) in &pairs {
            let mut pw = BigInt::one();
            for e in 0..2 * size - 1 {
                power_sums[e] += &pw;
                if e < size {
                    moment_sums[e] += &pw * t;
                }
                pw *= p;
            }
        }
        let a = (0..size)
            .map(|x| {
                (0..size)
                    .map(|y| Rational::from_integer(power_sums[x + y].clone()))
                    .collect()
            })
            .collect();
        let b = moment_sums
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let coefficients = PolyCoefficients {
            coefficients: gauss_jordan(a, b),
        };
        // Integer polynomial den·f, evaluated exactly at each pattern value.
        let den = coefficients
            .coefficients
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = coefficients
            .coefficients
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let squares: BigInt = pairs
            .iter()
            .map(|&(p, t)| {
                let fp = scaled
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * p + c);
                let e = fp - &den * t;
                &e * &e
            })
            .sum();
        out.distances.push(Rational::new(squares, &den * &den));
        out.minimisers.push(coefficients);
    }
    Ok(out)
}

/// Shift Hamming distance by counting every value of each shift array.
pub fn brute_sham(text: &Sequence, pattern: &Sequence) -> Result<HammingProfile> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    let m = p.len();
    let mut out = HammingProfile {
        distances: Vec::new(),
        minimisers: Vec::new(),
    };
    for i in 0..=t.len() - m {
        let mut counts: HashMap<i64, usize> = HashMap::new();
        for j in 0..m {
            *counts.entry(t[i + j] - p[j]).or_default() += 1;
        }
        let (alpha, count) = counts
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .unwrap();
        out.distances.push((m - count) as u64);
        out.minimisers.push(Some(alpha));
    }
    Ok(out)
}

/// Shift-scale Hamming distance `min_{α,β} |{j : α + βP[j] ≠ T[i+j]}|` over
/// rational `α, β`, by trying the line through every pair of positions with
/// distinct pattern values and every constant fit.
pub fn brute_ssham(text: &Sequence, pattern: &Sequence) -> Result<ShiftScaleHammingProfile> {
    check_pair(text, pattern)?;
    let t = text.values()?;
    let p = pattern.values()?;
    let m = p.len();
    let mut out = ShiftScaleHammingProfile {
        distances: Vec::new(),
        minimisers: Vec::new(),
    };
    for i in 0..=t.len() - m {
        let w = &t[i..i + m];
        let mut best = 0usize;
        let mut fit = (Rational::zero(), Rational::zero());
        for j in 0..m {
            let hits = w.iter().filter(|&&v| v == w[j]).count();
            if hits > best {
                best = hits;
                fit = (r(w[j]), Rational::zero());
            }
        }
        for j1 in 0..m {
            for j2 in j1 + 1..m {
                let dp = (p[j2] - p[j1]) as i128;
                if dp == 0 {
                    continue;
                }
                let dt = (w[j2] - w[j1]) as i128;
                let hits = (0..m)
                    .filter(|&j| (w[j] - w[j1]) as i128 * dp == dt * (p[j] - p[j1]) as i128)
                    .count();
                if hits > best {
                    best = hits;
                    let beta = Rational::new(dt.into(), dp.into());
                    let alpha = r(w[j1]) - &beta * r(p[j1]);
                    fit = (alpha, beta);
                }
            }
        }
        out.distances.push((m - best) as u64);
        out.minimisers.push(fit);
    }
    Ok(out)
}

/// A set of distinct positive integers, held in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeSumInstance {
    elements: Vec<i64>,
}

impl ThreeSumInstance {
    pub fn new(elements: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut elements: Vec<i64> = elements.into_iter().collect();
        if let Some(&bad) = elements.iter().find(|&&x| x <= 0) {
            return Err(Error::InvalidParameter(format!(
                "3SUM elements must be positive (got {bad})"
            )));
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(
                "3SUM elements must be distinct".into(),
            ));
        }
        Ok(ThreeSumInstance { elements })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A witness `a + b = c`, preferring one with `a ≠ b`.
pub fn threesum_witness(instance: &ThreeSumInstance) -> Option<(i64, i64, i64)> {
    let set: HashSet<i64> = instance.elements.iter().copied().collect();
    let mut reused = None;
    for (x, &a) in instance.elements.iter().enumerate() {
        for &b in &instance.elements[x..] {
            if set.contains(&(a + b)) {
                if a != b {
                    return Some((a, b, a + b));
                }
                reused.get_or_insert((a, b, a + b));
            }
        }
    }
    reused
}

/// Whether some `a + b = c` with `a, b, c` in the set; `a = b` is allowed, as
/// the Hamming reduction matches that case too.
pub fn threesum_brute(instance: &ThreeSumInstance) -> bool {
    threesum_witness(instance).is_some()
}

pub fn threesum_to_sham(instance: &ThreeSumInstance) -> Result<SequencePair> {
    threesum_to_sham_with_bounds(instance, &Bounds::default())
}

/// `T = S₀ S₁ S₂ S₁ S₃` (length `5s`) and `P = S₄ S₀ S₀` (length `3s`), where
/// `S₀` is `s` zeros, `S₁` the elements ascending, `S₄` descending, and
/// `S₂ S₃` the run `y₁ = 2x_s + 1, y₁ + 1, …` of length `2s`. Some alignment
/// has distance `m − 2` iff the set has a triple, otherwise all are `≥ m − 1`.
pub fn threesum_to_sham_with_bounds(
    instance: &ThreeSumInstance,
    bounds: &Bounds,
) -> Result<SequencePair> {
    let x = &instance.elements;
    let s = x.len();
    if s < 3 {
        return Err(Error::InvalidParameter(format!(
            "3SUM reduction needs at least 3 elements (got {s})"
        )));
    }
    let y1 = 2 * x[s - 1] + 1;
    let largest = y1 + 2 * s as i64 - 1;
    if largest > bounds.max_magnitude {
        return Err(Error::MagnitudeExceeded {
            line: 0,
            value: largest,
            bound: bounds.max_magnitude,
        });
    }
    let zeros = vec![0i64; s];
    let y: Vec<i64> = (0..2 * s as i64).map(|d| y1 + d).collect();
    let mut text = zeros.clone();
    text.extend(x);
    text.extend(&y[..s]);
    text.extend(x);
    text.extend(&y[s..]);
    let mut pattern: Vec<i64> = x.iter().rev().copied().collect();
    pattern.extend(&zeros);
    pattern.extend(&zeros);

    let listed = x.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let mut metadata = vec![format!("3sum elements: {listed}")];
    match threesum_witness(instance) {
        Some((a, b, c)) => {
            metadata.push(format!("3sum witness: {a} + {b} = {c}"));
            metadata.push(format!(
                "3sum witness reuses an element: {}",
                if a == b { "yes" } else { "no" }
            ));
            metadata.push(format!("expected minimum distance: {}", 3 * s - 2));
        }
        None => {
            metadata.push("3sum witness: none".into());
            metadata.push(format!("expected minimum distance: >= {}", 3 * s - 1));
        }
    }
    Ok(SequencePair {
        pattern: Sequence::from_values(pattern),
        text: Sequence::from_values(text),
        metadata,
    })
}

/// Points whose x-coordinates lie in `{0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeomBaseInstance {
    points: Vec<(i64, i64)>,
}

impl GeomBaseInstance {
    pub fn new(points: Vec<(i64, i64)>) -> Result<Self> {
        if let Some(&(x, y)) = points.iter().find(|(x, _)| !(0..=2).contains(x)) {
            return Err(Error::InvalidParameter(format!(
                "point ({x}, {y}) is off the lines x = 0, 1, 2"
            )));
        }
        Ok(GeomBaseInstance { points })
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Whether three of the points lie on one non-vertical line.
pub fn geombase_brute(instance: &GeomBaseInstance) -> bool {
    let pts = &instance.points;
    let s = pts.len();
    for a in 0..s {
        for b in a + 1..s {
            for c in b + 1..s {
                let [(x1, y1), (x2, y2), (x3, y3)] = [pts[a], pts[b], pts[c]];
                let on_line = if x1 == x2 && x2 == x3 {
                    y1 == y2 && y2 == y3
                } else {
                    (x2 - x1) as i128 * (y3 - y1) as i128 == (y2 - y1) as i128 * (x3 - x1) as i128
                };
                if on_line {
                    return true;
                }
            }
        }
    }
    false
}

/// Pattern holds the x-coordinates and text the y-coordinates, so that
/// `n = m = s` and the single alignment has shift-scale Hamming distance at
/// most `s − 3` iff three points share a non-vertical line.
pub fn geombase_to_ssham(instance: &GeomBaseInstance) -> SequencePair {
    let listed = instance
        .points
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ");
    SequencePair {
        pattern: Sequence::from_values(instance.points.iter().map(|p| p.0)),
        text: Sequence::from_values(instance.points.iter().map(|p| p.1)),
        metadata: vec![
            format!("geombase points: {listed}"),
            format!(
                "geombase collinear triple: {}",
                if geombase_brute(instance) {
                    "yes"
                } else {
                    "no"
                }
            ),
        ],
    }
}

/// A zero pattern and a window on which `π_q` is not k-tight.
///
/// With `k' = ⌊k/2⌋ + 1`, locations `ℓ₀ = 0, ℓ₁, …` are chosen greedily as
/// the smallest position not already used and not the image or preimage of
/// an earlier one. The window is 1 at every `ℓ` and `π(ℓ)`, so its shift
/// Hamming distance is `2k' > k` while the permuted difference strings differ
/// in at most `3k' ≤ 2k` places. Requires `6 ≤ k < m/4`.
pub fn notconv_adversary(q: CyclicPermutation, k: usize, m: usize) -> Result<(Sequence, Sequence)> {
    if q.len() != m {
        return Err(Error::InvalidParameter(format!(
            "permutation is over {} positions but m = {m}",
            q.len()
        )));
    }
    if k < 6 || 4 * k >= m {
        return Err(Error::InvalidParameter(format!(
            "adversary needs 6 <= k < m/4 (k = {k}, m = {m})"
        )));
    }
    let k_prime = k / 2 + 1;
    let mut blocked = BTreeSet::new();
    let mut window = vec![0i64; m];
    for _ in 0..k_prime {
        let l = (0..m).find(|l| !blocked.contains(l)).ok_or_else(|| {
            Error::InvalidParameter("ran out of locations for the adversary".into())
        })?;
        window[l] = 1;
        window[q.apply(l)] = 1;
        blocked.extend([l, q.apply(l), q.inverse(l)]);
    }
    Ok((
        Sequence::from_values(vec![0; m]),
        Sequence::from_values(window),
    ))
}

pub fn random_threesum<R: Rng + ?Sized>(
    rng: &mut R,
    s: usize,
    max: i64,
) -> Result<ThreeSumInstance> {
    check_generator_range(s, max)?;
    let mut pool: Vec<i64> = (1..=max).collect();
    pool.shuffle(rng);
    pool.truncate(s);
    ThreeSumInstance::new(pool)
}

/// A random instance guaranteed to contain `a + b = c` with `a ≠ b`.
pub fn planted_threesum<R: Rng + ?Sized>(
    rng: &mut R,
    s: usize,
    max: i64,
) -> Result<ThreeSumInstance> {
    check_generator_range(s, max)?;
    if max < 3 {
        return Err(Error::InvalidParameter("planting needs max >= 3".into()));
    }
    let a = rng.random_range(1..=(max - 1) / 2);
    let b = rng.random_range(a + 1..=max - a);
    let mut chosen: BTreeSet<i64> = [a, b, a + b].into();
    while chosen.len() < s {
        chosen.insert(rng.random_range(1..=max));
    }
    ThreeSumInstance::new(chosen)
}

/// A random instance with no `a + b = c` (including `a = b`), by rejection
/// with a fallback to odd numbers, which never sum to each other.
pub fn triple_free_threesum<R: Rng + ?Sized>(
    rng: &mut R,
    s: usize,
    max: i64,
) -> Result<ThreeSumInstance> {
    check_generator_range(s, max)?;
    for _ in 0..64 {
        let candidate = random_threesum(rng, s, max)?;
        if !threesum_brute(&candidate) {
            return Ok(candidate);
        }
    }
    if (s as i64) > (max + 1) / 2 {
        return Err(Error::InvalidParameter(format!(
            "no triple-free set of {s} elements found below {max}"
        )));
    }
    let mut odds: Vec<i64> = (1..=max).step_by(2).collect();
    odds.shuffle(rng);
    odds.truncate(s);
    ThreeSumInstance::new(odds)
}

fn check_generator_range(s: usize, max: i64) -> Result<()> {
    if max < 1 || (s as i64) > max {
        return Err(Error::InvalidParameter(format!(
            "cannot choose {s} distinct values from 1..={max}"
        )));
    }
    if 2 * max + 2 * s as i64 > DEFAULT_MAX_MAGNITUDE {
        return Err(Error::InvalidParameter(format!(
            "values up to {max} would exceed the symbol magnitude bound in the reduction"
        )));
    }
    Ok(())
}

/// `s` random points with y-coordinates in `[-range, range]`; when `plant` is
/// set, three of them are placed on a random non-vertical line.
pub fn random_geombase<R: Rng + ?Sized>(
    rng: &mut R,
    s: usize,
    range: i64,
    plant: bool,
) -> Result<GeomBaseInstance> {
    if range < 1 || (plant && s < 3) {
        return Err(Error::InvalidParameter(
            "need range >= 1 and, when planting, at least 3 points".into(),
        ));
    }
    let mut points: Vec<(i64, i64)> = (0..s)
        .map(|_| (rng.random_range(0..=2), rng.random_range(-range..=range)))
        .collect();
    if plant {
        let slope = rng.random_range(-range / 2..=range / 2);
        let base = rng.random_range(-range / 2..=range / 2);
        let mut slots: Vec<usize> = (0..s).collect();
        slots.shuffle(rng);
        for (x, &slot) in slots[..3].iter().enumerate() {
            points[slot] = (x as i64, base + slope * x as i64);
        }
    }
    GeomBaseInstance::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s).unwrap()
    }

    #[test]
    fn shift_examples() {
        let prof = brute_shift_l2(&seq("0 2"), &seq("0 0")).unwrap();
        assert_eq!(prof.distances, vec![r(2)]);
        assert_eq!(prof.minimisers, vec![r(1)]);
        let prof = brute_shift_l2(&seq("9 9 9"), &seq("* *")).unwrap();
        assert_eq!(prof.distances, vec![r(0), r(0)]);
    }

    #[test]
    fn shift_scale_examples() {
        let prof = brute_shift_scale_l2(&seq("5 9"), &seq("0 1")).unwrap();
        assert_eq!(prof.distances, vec![r(0)]);
        assert_eq!(prof.minimisers, vec![(r(5), r(4))]);
        let prof = brute_shift_scale_l2(&seq("1 2 3"), &seq("3 3 3")).unwrap();
        assert_eq!(prof.distances, vec![r(2)]);
        assert_eq!(prof.minimisers, vec![(r(2), r(0))]);
        let prof = brute_shift_scale_l2(&seq("1 7 7"), &seq("* *")).unwrap();
        assert_eq!(prof.distances, vec![r(0), r(0)]);
    }

    #[test]
    fn poly_examples() {
        let prof = brute_poly_l2(&seq("5 7 13"), &seq("0 1 2"), 2).unwrap();
        assert_eq!(prof.distances, vec![r(0)]);
        assert_eq!(prof.minimisers[0].coefficients, vec![r(5), r(0), r(2)]);
        // Singular: two distinct values, degree 3.
        let prof = brute_poly_l2(&seq("1 3 10"), &seq("0 0 1"), 3).unwrap();
        assert_eq!(prof.distances, vec![r(2)]);
        assert!(brute_poly_l2(&seq("1 2"), &seq("1"), 0).is_err());
    }

    #[test]
    fn sham_examples() {
        let prof = brute_sham(&seq("0 0 9 0 0"), &seq("0 0 0")).unwrap();
        assert_eq!(prof.distances, vec![1, 1, 1]);
        let prof = brute_sham(&seq("3 5 1 8"), &seq("1 3")).unwrap();
        assert_eq!(prof.distances, vec![0, 1, 1]);
        assert_eq!(prof.minimisers[0], Some(2));
        assert!(brute_sham(&seq("1 2"), &seq("*")).is_err());
    }

    #[test]
    fn ssham_examples() {
        assert_eq!(
            brute_ssham(&seq("5 9"), &seq("0 1")).unwrap().distances,
            vec![0]
        );
        assert_eq!(
            brute_ssham(&seq("4"), &seq("7")).unwrap().distances,
            vec![0]
        );
        // Constant fit beats any line through distinct pattern values.
        let prof = brute_ssham(&seq("5 5 5 1"), &seq("0 1 2 3")).unwrap();
        assert_eq!(prof.distances, vec![1]);
        assert_eq!(prof.minimisers, vec![(r(5), r(0))]);
    }

    fn sham_min(pair: &SequencePair) -> u64 {
        *brute_sham(&pair.text, &pair.pattern)
            .unwrap()
            .distances
            .iter()
            .min()
            .unwrap()
    }

    #[test]
    fn threesum_reduction_examples() {
        let yes = ThreeSumInstance::new([1, 2, 3]).unwrap();
        assert!(threesum_brute(&yes));
        let pair = threesum_to_sham(&yes).unwrap();
        assert_eq!((pair.text.len(), pair.pattern.len()), (15, 9));
        assert_eq!(sham_min(&pair), 7);

        let no = ThreeSumInstance::new([1, 3, 5]).unwrap();
        assert!(!threesum_brute(&no));
        assert!(sham_min(&threesum_to_sham(&no).unwrap()) >= 8);

        // 1 + 1 = 2: the construction also matches a reused element.
        let reuse = ThreeSumInstance::new([1, 2, 5]).unwrap();
        assert_eq!(threesum_witness(&reuse), Some((1, 1, 2)));
        assert_eq!(sham_min(&threesum_to_sham(&reuse).unwrap()), 7);

        // x₃ + x₄ = x₆ in ascending order.
        let seven = ThreeSumInstance::new([3, 5, 7, 11, 17, 18, 41]).unwrap();
        assert_eq!(threesum_witness(&seven), Some((7, 11, 18)));
        let pair = threesum_to_sham(&seven).unwrap();
        assert_eq!(sham_min(&pair), 19);
        assert!(pair
            .metadata
            .iter()
            .any(|l| l.ends_with("reuses an element: no")));
    }

    #[test]
    fn threesum_reduction_reused_element() {
        let inst = ThreeSumInstance::new([3, 5, 10]).unwrap();
        assert_eq!(threesum_witness(&inst), Some((5, 5, 10)));
        let pair = threesum_to_sham(&inst).unwrap();
        assert_eq!(sham_min(&pair), 7);
        assert!(pair
            .metadata
            .iter()
            .any(|l| l.ends_with("reuses an element: yes")));
    }

    #[test]
    fn threesum_validation() {
        assert!(ThreeSumInstance::new([1, 1, 2]).is_err());
        assert!(ThreeSumInstance::new([0, 1, 2]).is_err());
        assert!(threesum_to_sham(&ThreeSumInstance::new([1, 2]).unwrap()).is_err());
        let big = ThreeSumInstance::new([1, 2, 1 << 20]).unwrap();
        assert!(matches!(
            threesum_to_sham(&big),
            Err(Error::MagnitudeExceeded { .. })
        ));
    }

    #[test]
    fn threesum_brute_matches_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let inst = random_threesum(&mut rng, 50, 5000).unwrap();
            let e = inst.elements();
            let naive = e
                .iter()
                .any(|a| e.iter().any(|b| e.iter().any(|c| a + b == *c)));
            assert_eq!(threesum_brute(&inst), naive);
        }
        let planted = planted_threesum(&mut rng, 20, 1000).unwrap();
        assert!(threesum_brute(&planted));
        let free = triple_free_threesum(&mut rng, 20, 1000).unwrap();
        assert!(!threesum_brute(&free));
    }

    #[test]
    fn geombase_examples() {
        let line = GeomBaseInstance::new(vec![(0, 0), (1, 1), (2, 2), (0, 5)]).unwrap();
        let pair = geombase_to_ssham(&line);
        assert_eq!(
            brute_ssham(&pair.text, &pair.pattern).unwrap().distances,
            vec![1]
        );

        let vertical = GeomBaseInstance::new(vec![(0, 0), (0, 1), (0, 2), (1, 7)]).unwrap();
        assert!(!geombase_brute(&vertical));
        let pair = geombase_to_ssham(&vertical);
        assert!(brute_ssham(&pair.text, &pair.pattern).unwrap().distances[0] > 1);

        let three = GeomBaseInstance::new(vec![(0, 4), (1, 1), (2, -2)]).unwrap();
        let pair = geombase_to_ssham(&three);
        assert_eq!(
            brute_ssham(&pair.text, &pair.pattern).unwrap().distances,
            vec![0]
        );

        assert!(GeomBaseInstance::new(vec![(3, 0)]).is_err());
    }

    #[test]
    fn adversary_shape() {
        let m = 40;
        let k = 6;
        for q in 1..m {
            let pi = CyclicPermutation::new(q, m).unwrap();
            let (pattern, window) = notconv_adversary(pi, k, m).unwrap();
            let w = window.values().unwrap();
            assert!(pattern.values().unwrap().iter().all(|&v| v == 0));
            assert_eq!(w.iter().filter(|&&v| v == 1).count(), 2 * (k / 2 + 1));
            let d = brute_sham(&window, &pattern).unwrap().distances[0];
            assert_eq!(d as usize, 2 * (k / 2 + 1));
            let permuted = pi.difference(&w).iter().filter(|&&v| v != 0).count();
            assert!(permuted <= 2 * k, "q = {q}: {permuted}");
        }
        let pi = CyclicPermutation::new(1, 24).unwrap();
        assert!(notconv_adversary(pi, 6, 24).is_err());
        let pi = CyclicPermutation::new(1, 40).unwrap();
        assert!(notconv_adversary(pi, 5, 40).is_err());
    }
}
