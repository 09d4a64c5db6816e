//! Normalised L2 distance profiles.
//!
//! At alignment `i` the distance is `min Σ_j (f(P[j]) − T[i+j])²` over
//! positions where neither side is a wildcard, minimised over
//!
//! * shifts `f(x) = α + x` ([`shift_l2_profile`]),
//! * shift-scale maps `f(x) = α + βx` ([`shift_scale_l2_profile`]),
//! * polynomials of degree `r` ([`poly_l2_profile`]).
//!
//! Shift and shift-scale both reduce to six cross-correlations of the masked
//! inputs; see [`CorrelationSix`]. Alignments with no non-wildcard overlap
//! have distance 0 and all coefficients 0. When every overlapping pattern
//! value is equal the shift-scale fit is not unique and `β̂ = 0` is reported.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::correlate::{chunked_correlate, cross_correlate_big};
use crate::error::{Error, Result};
use crate::profile::{PolyCoefficients, PolyProfile, ShiftProfile, ShiftScaleProfile};
use crate::rational::Rational;
use crate::sequence::{check_pair, Sequence};

/// Degree limit applied by front ends unless overridden.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// The six masked correlations shared by the shift and shift-scale fits.
///
/// With masks `T'`, `P'` (1 where not a wildcard):
/// `c1 = (T²T')⊗P'`, `c2 = (TT')⊗(PP')`, `c3 = T'⊗(P²P')`,
/// `c4 = (TT')⊗P'`, `c5 = T'⊗(PP')`, `c6 = T'⊗P'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSix {
    pub c1: Vec<i128>,
    pub c2: Vec<i128>,
    pub c3: Vec<i128>,
    pub c4: Vec<i128>,
    pub c5: Vec<i128>,
    pub c6: Vec<i128>,
}

impl CorrelationSix {
    pub fn len(&self) -> usize {
        self.c6.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c6.is_empty()
    }
}

/// Masked operands `(mask, value·mask, value²·mask)`.
fn masked_powers(seq: &Sequence) -> [Vec<i128>; 3] {
    let mut mask = Vec::with_capacity(seq.len());
    let mut first = Vec::with_capacity(seq.len());
    let mut second = Vec::with_capacity(seq.len());
    for s in seq.symbols() {
        let (k, v) = match s.value() {
            Some(v) => (1, v as i128),
            None => (0, 0),
        };
        mask.push(k);
        first.push(v);
        second.push(v * v);
    }
    [mask, first, second]
}

pub fn correlation_six(text: &Sequence, pattern: &Sequence) -> Result<CorrelationSix> {
    check_pair(text, pattern)?;
    let [t_mask, t1, t2] = masked_powers(text);
    let [p_mask, p1, p2] = masked_powers(pattern);
    Ok(CorrelationSix {
        c1: chunked_correlate(&t2, &p_mask)?,
        c2: chunked_correlate(&t1, &p1)?,
        c3: chunked_correlate(&t_mask, &p2)?,
        c4: chunked_correlate(&t1, &p_mask)?,
        c5: chunked_correlate(&t_mask, &p1)?,
        c6: chunked_correlate(&t_mask, &p_mask)?,
    })
}

fn reduced(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// `num/den` reduced in machine integers when nothing overflows.
fn ratio_i128(num: i128, den: i128) -> Rational {
    debug_assert!(den > 0);
    let g = num.gcd(&den);
    if g > 1 {
        Rational::new_raw(BigInt::from(num / g), BigInt::from(den / g))
    } else {
        Rational::new_raw(BigInt::from(num), BigInt::from(den))
    }
}

fn shift_at(six: &CorrelationSix, i: usize) -> (Rational, Rational) {
    let (c1, c2, c3, c4, c5, c6) = (
        six.c1[i], six.c2[i], six.c3[i], six.c4[i], six.c5[i], six.c6[i],
    );
    if c6 == 0 {
        return (Rational::zero(), Rational::zero());
    }
    let alpha = ratio_i128(c4 - c5, c6);
    // A = c1 − 2c2 + c3 − (c4 − c5)²/c6
    let fast = (|| {
        let base = c1.checked_sub(c2.checked_mul(2)?)?.checked_add(c3)?;
        let d = c4.checked_sub(c5)?;
        base.checked_mul(c6)?.checked_sub(d.checked_mul(d)?)
    })();
    let distance = match fast {
        Some(num) => ratio_i128(num, c6),
        None => {
            let base = BigInt::from(c1) - BigInt::from(c2) * 2 + BigInt::from(c3);
            let d = BigInt::from(c4) - BigInt::from(c5);
            reduced(base * c6 - &d * &d, BigInt::from(c6))
        }
    };
    (distance, alpha)
}

fn shift_scale_at(six: &CorrelationSix, i: usize) -> (Rational, (Rational, Rational)) {
    let big = |v: &Vec<i128>| BigInt::from(v[i]);
    let (c1, c2, c3, c4, c5, c6) = (
        big(&six.c1),
        big(&six.c2),
        big(&six.c3),
        big(&six.c4),
        big(&six.c5),
        big(&six.c6),
    );
    if c6.is_zero() {
        return (Rational::zero(), (Rational::zero(), Rational::zero()));
    }
    let b2 = &c3 * &c6 - &c5 * &c5;
    if b2.is_zero() {
        // β̂ = 0, α̂ = c4/c6: B = α̂²c6 − 2α̂c4 + c1 = c1 − c4²/c6.
        let alpha = reduced(c4.clone(), c6.clone());
        let distance = reduced(&c1 * &c6 - &c4 * &c4, c6);
        return (distance, (alpha, Rational::zero()));
    }
    // α̂ = B1/B2 and β̂ = B3/B4 = (c2c6 − c4c5)/B2 share the denominator B2.
    let b1 = &c3 * &c4 - &c2 * &c5;
    let b5 = &c2 * &c6 - &c4 * &c5;
    // B·B2² = B1²c6 + 2B1B5c5 − 2B1c4B2 + B5²c3 − 2B5c2B2 + c1B2²
    let numerator = &b1 * &b1 * &c6 + BigInt::from(2) * &b1 * &b5 * &c5
        - BigInt::from(2) * &b1 * &c4 * &b2
        + &b5 * &b5 * &c3
        - BigInt::from(2) * &b5 * &c2 * &b2
        + &c1 * &b2 * &b2;
    let distance = reduced(numerator, &b2 * &b2);
    let alpha = reduced(b1, b2.clone());
    let beta = reduced(b5, b2);
    (distance, (alpha, beta))
}

pub fn shift_l2_from_correlations(six: &CorrelationSix) -> ShiftProfile {
    let (distances, minimisers) = crate::map_alignments(six.len(), |i| shift_at(six, i))
        .into_iter()
        .unzip();
    ShiftProfile {
        distances,
        minimisers,
    }
}

pub fn shift_scale_l2_from_correlations(six: &CorrelationSix) -> ShiftScaleProfile {
    let (distances, minimisers) = crate::map_alignments(six.len(), |i| shift_scale_at(six, i))
        .into_iter()
        .unzip();
    ShiftScaleProfile {
        distances,
        minimisers,
    }
}

/// Distance under the best shift `α`, with `α̂` per alignment.
pub fn shift_l2_profile(text: &Sequence, pattern: &Sequence) -> Result<ShiftProfile> {
    Ok(shift_l2_from_correlations(&correlation_six(text, pattern)?))
}

/// Distance under the best `α + βx`, with `(α̂, β̂)` per alignment.
pub fn shift_scale_l2_profile(text: &Sequence, pattern: &Sequence) -> Result<ShiftScaleProfile> {
    Ok(shift_scale_l2_from_correlations(&correlation_six(
        text, pattern,
    )?))
}

/// Both profiles from one set of correlations.
pub fn shift_and_shift_scale_profiles(
    text: &Sequence,
    pattern: &Sequence,
) -> Result<(ShiftProfile, ShiftScaleProfile)> {
    let six = correlation_six(text, pattern)?;
    Ok((
        shift_l2_from_correlations(&six),
        shift_scale_l2_from_correlations(&six),
    ))
}

/// Distance under the best polynomial of degree `r ≥ 1`.
///
/// Per alignment, the normal equations `Σ_b S[a+b]·α_b = R[a]` use
/// `S[e] = T' ⊗ (P^e·P')` for `e ≤ 2r` and `R[a] = (T·T') ⊗ (P^a·P')`.
/// Singular systems keep free coefficients at 0; the distance is the true
/// minimum either way.
pub fn poly_l2_profile(text: &Sequence, pattern: &Sequence, r: usize) -> Result<PolyProfile> {
    check_pair(text, pattern)?;
    if r < 1 {
        return Err(Error::InvalidParameter(
            "polynomial degree must be at least 1 (degree 0 is the shift profile)".into(),
        ));
    }
    let t_mask: Vec<BigInt> = text
        .symbols()
        .iter()
        .map(|s| BigInt::from(u8::from(!s.is_wildcard())))
        .collect();
    let t_vals: Vec<BigInt> = text
        .values_or_zero()
        .into_iter()
        .map(BigInt::from)
        .collect();
    let t_sq: Vec<BigInt> = t_vals.iter().map(|v| v * v).collect();

    let p_vals: Vec<BigInt> = pattern
        .values_or_zero()
        .into_iter()
        .map(BigInt::from)
        .collect();
    let p_mask: Vec<bool> = pattern.symbols().iter().map(|s| !s.is_wildcard()).collect();
    // P^e·P' for e = 0..=2r
    let mut powers: Vec<Vec<BigInt>> = Vec::with_capacity(2 * r + 1);
    powers.push(p_mask.iter().map(|&k| BigInt::from(u8::from(k))).collect());
    for e in 1..=2 * r {
        let next = powers[e - 1]
            .iter()
            .zip(&p_vals)
            .map(|(prev, v)| prev * v)
            .collect();
        powers.push(next);
    }

    let sums: Vec<Vec<BigInt>> = powers
        .iter()
        .map(|pw| cross_correlate_big(&t_mask, pw))
        .collect::<Result<_>>()?;
    let moments: Vec<Vec<BigInt>> = powers[..=r]
        .iter()
        .map(|pw| cross_correlate_big(&t_vals, pw))
        .collect::<Result<_>>()?;
    let squares = cross_correlate_big(&t_sq, &powers[0])?;

    let results = crate::map_alignments(squares.len(), |i| {
        if sums[0][i].is_zero() {
            return (Rational::zero(), PolyCoefficients::zero(r));
        }
        let size = r + 1;
        let matrix: Vec<Vec<BigInt>> = (0..size)
            .map(|a| (0..size).map(|b| sums[a + b][i].clone()).collect())
            .collect();
        let rhs: Vec<BigInt> = (0..size).map(|a| moments[a][i].clone()).collect();
        let coeffs = solve_fraction_free(&matrix, &rhs);
        // D = Σ T² − 2 Σ_a α_a R_a + Σ_ab α_a α_b S_{a+b}, with every α_a
        // written as num_a / den over one common denominator.
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut numerator = &squares[i] * &den * &den;
        for a in 0..size {
            numerator -= BigInt::from(2) * &nums[a] * &rhs[a] * &den;
            for b in 0..size {
                numerator += &nums[a] * &nums[b] * &matrix[a][b];
            }
        }
        let distance = reduced(numerator, &den * &den);
        (
            distance,
            PolyCoefficients {
                coefficients: coeffs,
            },
        )
    });
    let (distances, minimisers) = results.into_iter().unzip();
    Ok(PolyProfile {
        distances,
        minimisers,
    })
}

/// Solves `A x = b` exactly by fraction-free (Bareiss) elimination with
/// column pivoting. Columns without a pivot are free and set to 0. The system
/// must be consistent.
pub fn solve_fraction_free(matrix: &[Vec<BigInt>], rhs: &[BigInt]) -> Vec<Rational> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&p| !a[p][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..=cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    debug_assert!(
        (r..rows).all(|i| a[i][cols].is_zero()),
        "normal equations are always consistent"
    );
    let mut x = vec![Rational::zero(); cols];
    for &(row, col) in pivots.iter().rev() {
        let mut acc = Rational::from_integer(a[row][cols].clone());
        for j in col + 1..cols {
            if !x[j].is_zero() {
                acc -= &x[j] * Rational::from_integer(a[row][j].clone());
            }
        }
        x[col] = acc / Rational::from_integer(a[row][col].clone());
    }
    x
}

/// The `O(nm)` answer for a degree at least the number of distinct pattern
/// values: each distinct value maps to the mean of the text values under it.
pub fn function_match_fallback(text: &Sequence, pattern: &Sequence) -> Result<Vec<Rational>> {
    check_pair(text, pattern)?;
    let m = pattern.len();
    let t = text.symbols();
    let p = pattern.symbols();
    Ok(crate::map_alignments(text.len() - m + 1, |i| {
        // value → (count, Σ t, Σ t²)
        let mut groups: BTreeMap<i64, (i128, i128, i128)> = BTreeMap::new();
        for j in 0..m {
            if let (Some(pv), Some(tv)) = (p[j].value(), t[i + j].value()) {
                let e = groups.entry(pv).or_default();
                e.0 += 1;
                e.1 += tv as i128;
                e.2 += (tv as i128) * (tv as i128);
            }
        }
        groups
            .values()
            .map(|&(count, sum, sq)| {
                Rational::new(
                    BigInt::from(sq) * count - BigInt::from(sum) * sum,
                    BigInt::from(count),
                )
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }))
}

/// True where some shift makes every non-wildcard pair equal.
pub fn exact_shift_match(text: &Sequence, pattern: &Sequence) -> Result<Vec<bool>> {
    Ok(shift_l2_profile(text, pattern)?
        .distances
        .iter()
        .map(Zero::is_zero)
        .collect())
}

/// True where some `α + βx` (β = 0 allowed) makes every non-wildcard pair equal.
pub fn exact_shift_scale_match(text: &Sequence, pattern: &Sequence) -> Result<Vec<bool>> {
    Ok(shift_scale_l2_profile(text, pattern)?
        .distances
        .iter()
        .map(Zero::is_zero)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_reduce;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        rational_reduce(n, d).unwrap()
    }

    #[test]
    fn six_single_symbol() {
        let six = correlation_six(&seq("2"), &seq("1")).unwrap();
        assert_eq!(
            [&six.c1, &six.c2, &six.c3, &six.c4, &six.c5, &six.c6],
            [&vec![4], &vec![2], &vec![1], &vec![2], &vec![1], &vec![1]]
        );
        let six = correlation_six(&seq("3 -4"), &seq("* *")).unwrap();
        assert_eq!(six.c6, vec![0]);
    }

    #[test]
    fn six_invariants_hold() {
        let six = correlation_six(&seq("3 * 1 4 -1 5 9 * 2 6"), &seq("2 * 7 1")).unwrap();
        for i in 0..six.len() {
            assert!(six.c6[i] >= 0 && six.c6[i] <= 4);
            assert!(six.c5[i] * six.c5[i] <= six.c3[i] * six.c6[i]);
        }
    }

    #[test]
    fn shift_examples() {
        let p = shift_l2_profile(&seq("5 6 7"), &seq("1 2")).unwrap();
        assert_eq!(p.distances, vec![q(0, 1), q(0, 1)]);
        assert_eq!(p.minimisers, vec![q(4, 1), q(5, 1)]);

        // Σ(α − 0)² + (α − 2)² is minimised at α = 1 with value 2.
        let p = shift_l2_profile(&seq("0 2"), &seq("0 0")).unwrap();
        assert_eq!(p.distances, vec![q(2, 1)]);
        assert_eq!(p.minimisers, vec![q(1, 1)]);

        let p = shift_l2_profile(&seq("9 9 9"), &seq("* *")).unwrap();
        assert_eq!(p.distances, vec![q(0, 1), q(0, 1)]);
        assert_eq!(p.minimisers, vec![q(0, 1), q(0, 1)]);
    }

    #[test]
    fn shift_scale_examples() {
        let p = shift_scale_l2_profile(&seq("5 9"), &seq("0 1")).unwrap();
        assert_eq!(p.distances, vec![q(0, 1)]);
        assert_eq!(p.minimisers, vec![(q(5, 1), q(4, 1))]);

        // β fixed at 0: min Σ(α − T)² over T = 1, 2, 3 is 2 at α = 2.
        let p = shift_scale_l2_profile(&seq("1 2 3"), &seq("3 3 3")).unwrap();
        assert_eq!(p.distances, vec![q(2, 1)]);
        assert_eq!(p.minimisers, vec![(q(2, 1), q(0, 1))]);

        let p = shift_scale_l2_profile(&seq("1 7 7"), &seq("* *")).unwrap();
        assert_eq!(p.distances, vec![q(0, 1), q(0, 1)]);
    }

    #[test]
    fn poly_examples() {
        let p = poly_l2_profile(&seq("5 7 13"), &seq("0 1 2"), 2).unwrap();
        assert_eq!(p.distances, vec![q(0, 1)]);
        // f(x) = 5 + 2x² interpolates (0,5), (1,7), (2,13).
        assert_eq!(
            p.minimisers[0].coefficients,
            vec![q(5, 1), q(0, 1), q(2, 1)]
        );
        assert!(matches!(
            poly_l2_profile(&seq("1 2"), &seq("1"), 0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn poly_singular_system_reports_true_minimum() {
        // Two distinct pattern values with r = 3: rank-deficient normal matrix.
        let p = poly_l2_profile(&seq("1 4 2 6 3"), &seq("0 1 0 1"), 3).unwrap();
        let f = function_match_fallback(&seq("1 4 2 6 3"), &seq("0 1 0 1")).unwrap();
        assert_eq!(p.distances, f);
        for c in &p.minimisers {
            assert_eq!(c.coefficients[2], q(0, 1));
            assert_eq!(c.coefficients[3], q(0, 1));
        }
    }

    #[test]
    fn fraction_free_solver() {
        let b = |v: i64| BigInt::from(v);
        let m = vec![vec![b(2), b(1)], vec![b(1), b(3)]];
        assert_eq!(
            solve_fraction_free(&m, &[b(3), b(5)]),
            vec![q(4, 5), q(7, 5)]
        );
        // Rank one; second column free.
        let m = vec![vec![b(1), b(2)], vec![b(2), b(4)]];
        assert_eq!(
            solve_fraction_free(&m, &[b(3), b(6)]),
            vec![q(3, 1), q(0, 1)]
        );
        // Zero first column.
        let m = vec![vec![b(0), b(0)], vec![b(0), b(5)]];
        assert_eq!(
            solve_fraction_free(&m, &[b(0), b(10)]),
            vec![q(0, 1), q(2, 1)]
        );
    }

    #[test]
    fn function_match_examples() {
        assert_eq!(
            function_match_fallback(&seq("1 3"), &seq("7 7")).unwrap(),
            vec![q(2, 1)]
        );
        let d = function_match_fallback(&seq("4 -1 8 2 2 0"), &seq("1 2 3")).unwrap();
        assert!(d.iter().all(Zero::is_zero));
    }

    #[test]
    fn exact_match_examples() {
        assert_eq!(
            exact_shift_match(&seq("4 5 6"), &seq("1 2 3")).unwrap(),
            vec![true]
        );
        assert_eq!(
            exact_shift_match(&seq("2 9 4"), &seq("1 * 3")).unwrap(),
            vec![true]
        );
        assert_eq!(
            exact_shift_match(&seq("1 3 2"), &seq("1 2")).unwrap(),
            vec![false, false]
        );
        assert_eq!(
            exact_shift_scale_match(&seq("10 12 14"), &seq("0 1 2")).unwrap(),
            vec![true]
        );
        assert_eq!(
            exact_shift_scale_match(&seq("0 0 1"), &seq("0 1 2")).unwrap(),
            vec![false]
        );
        assert_eq!(
            exact_shift_scale_match(&seq("3 9 3"), &seq("5 5")).unwrap(),
            vec![false, false]
        );
        assert_eq!(
            exact_shift_scale_match(&seq("3 3"), &seq("5 5")).unwrap(),
            vec![true]
        );
    }
}
