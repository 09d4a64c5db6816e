use normmatch::hamming::{sham_profile, skmismatch_profile};
use normmatch::l2::{
    correlation_six, exact_shift_match, exact_shift_scale_match, function_match_fallback,
    poly_l2_profile, shift_l2_profile, shift_scale_l2_profile,
};
use normmatch::oracles::{brute_poly_l2, brute_sham};
use normmatch::randomised::{permuted_views, single_round, skdecision, CyclicPermutation};
use normmatch::{Rational, Sequence, Symbol};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn symbol(wild: u32) -> impl Strategy<Value = Symbol> {
    prop_oneof![
        wild => Just(Symbol::Wildcard),
        (100 - wild) => (-60i64..=60).prop_map(Symbol::Int),
    ]
}

/// `(text, pattern)` with `1 ≤ m ≤ n`.
fn wild_pair(max_n: usize, max_m: usize) -> impl Strategy<Value = (Sequence, Sequence)> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=n.min(max_m)))
        .prop_flat_map(|(n, m)| {
            (
                prop::collection::vec(symbol(10), n),
                prop::collection::vec(symbol(10), m),
            )
        })
        .prop_map(|(t, p)| (Sequence::new(t), Sequence::new(p)))
}

fn int_pair(max_n: usize, max_m: usize, sigma: i64) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=n.min(max_m)))
        .prop_flat_map(move |(n, m)| {
            (
                prop::collection::vec(0..sigma, n),
                prop::collection::vec(0..sigma, m),
            )
        })
}

fn map_values(seq: &Sequence, f: impl Fn(i64) -> i64) -> Sequence {
    Sequence::new(
        seq.symbols()
            .iter()
            .map(|s| match s {
                Symbol::Int(v) => Symbol::Int(f(*v)),
                Symbol::Wildcard => Symbol::Wildcard,
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn correlation_bounds((t, p) in wild_pair(40, 12)) {
        let six = correlation_six(&t, &p).unwrap();
        for i in 0..six.len() {
            prop_assert!(six.c6[i] >= 0 && six.c6[i] <= p.len() as i128);
            prop_assert!(six.c5[i] * six.c5[i] <= six.c3[i] * six.c6[i]);
        }
    }

    #[test]
    fn more_freedom_never_increases_distance((t, p) in wild_pair(30, 8)) {
        let shift = shift_l2_profile(&t, &p).unwrap();
        let ss = shift_scale_l2_profile(&t, &p).unwrap();
        let p2 = poly_l2_profile(&t, &p, 2).unwrap();
        let p3 = poly_l2_profile(&t, &p, 3).unwrap();
        for i in 0..shift.len() {
            prop_assert!(ss.distances[i] <= shift.distances[i]);
            prop_assert!(p2.distances[i] <= ss.distances[i]);
            prop_assert!(p3.distances[i] <= p2.distances[i]);
        }
    }

    #[test]
    fn shift_scale_is_affine_invariant(
        (t, p) in wild_pair(30, 8),
        lambda in prop_oneof![-5i64..=-1, 1i64..=5],
        mu in -50i64..=50,
    ) {
        let moved = map_values(&p, |v| lambda * v + mu);
        prop_assert_eq!(
            shift_scale_l2_profile(&t, &p).unwrap().distances,
            shift_scale_l2_profile(&t, &moved).unwrap().distances
        );
    }

    #[test]
    fn shift_is_translation_invariant((t, p) in wild_pair(30, 8), a in -50i64..=50, b in -50i64..=50) {
        let base = shift_l2_profile(&t, &p).unwrap().distances;
        prop_assert_eq!(&base, &shift_l2_profile(&t, &map_values(&p, |v| v + a)).unwrap().distances);
        prop_assert_eq!(&base, &shift_l2_profile(&map_values(&t, |v| v + b), &p).unwrap().distances);
    }

    #[test]
    fn zero_characterisation((t, p) in wild_pair(30, 6)) {
        let shift = shift_l2_profile(&t, &p).unwrap();
        let ss = shift_scale_l2_profile(&t, &p).unwrap();
        let es = exact_shift_match(&t, &p).unwrap();
        let ess = exact_shift_scale_match(&t, &p).unwrap();
        let six = correlation_six(&t, &p).unwrap();
        for i in 0..shift.len() {
            prop_assert_eq!(es[i], shift.distances[i].is_zero());
            prop_assert_eq!(ess[i], ss.distances[i].is_zero());
            prop_assert!(!shift.distances[i].is_negative());
            prop_assert!(!ss.distances[i].is_negative());
            if six.c6[i] <= 1 {
                prop_assert!(shift.distances[i].is_zero());
            }
        }
    }

    #[test]
    fn poly_matches_oracle((t, p) in wild_pair(25, 7), r in 1usize..=4) {
        prop_assert_eq!(
            poly_l2_profile(&t, &p, r).unwrap().distances,
            brute_poly_l2(&t, &p, r).unwrap().distances
        );
    }

    #[test]
    fn function_match_agrees_with_high_degree((t, p) in wild_pair(25, 6)) {
        let mut distinct: Vec<i64> = p.symbols().iter().filter_map(|s| s.value()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let r = distinct.len().max(1);
        prop_assert_eq!(
            function_match_fallback(&t, &p).unwrap(),
            poly_l2_profile(&t, &p, r).unwrap().distances
        );
    }

    #[test]
    fn hamming_profiles_agree((t, p) in int_pair(60, 20, 4), k in 0usize..=6) {
        let (ts, ps) = (Sequence::from_values(t), Sequence::from_values(p.clone()));
        let brute = brute_sham(&ts, &ps).unwrap();
        let sham = sham_profile(&ts, &ps).unwrap();
        prop_assert_eq!(&sham, &brute);
        let sk = skmismatch_profile(&ts, &ps, k).unwrap();
        for i in 0..sham.len() {
            prop_assert!(sham.distances[i] < p.len() as u64 || p.is_empty());
            prop_assert_eq!(sk.distances[i], sham.distances[i].min(k as u64 + 1));
        }
    }

    #[test]
    fn hamming_is_translation_invariant((t, p) in int_pair(50, 15, 5), a in -9i64..=9, k in 0usize..=4) {
        let (ts, ps) = (Sequence::from_values(t.clone()), Sequence::from_values(p.clone()));
        let moved = Sequence::from_values(p.iter().map(|v| v + a));
        let moved_text = Sequence::from_values(t.iter().map(|v| v - a));
        let base = sham_profile(&ts, &ps).unwrap().distances;
        prop_assert_eq!(&base, &sham_profile(&ts, &moved).unwrap().distances);
        prop_assert_eq!(&base, &sham_profile(&moved_text, &ps).unwrap().distances);
        prop_assert_eq!(
            skmismatch_profile(&ts, &ps, k).unwrap().distances,
            skmismatch_profile(&moved_text, &ps, k).unwrap().distances
        );
    }

    #[test]
    fn permuted_views_split_the_permuted_hamming_distance(
        (t, p) in int_pair(60, 20, 3).prop_filter("m >= 2", |(_, p)| p.len() >= 2),
        q_seed in any::<usize>(),
    ) {
        let m = p.len();
        let pi = CyclicPermutation::new(1 + q_seed % (m - 1), m).unwrap();
        let views = permuted_views(
            &Sequence::from_values(t.clone()),
            &Sequence::from_values(p.clone()),
            pi,
        )
        .unwrap();
        for i in 0..=t.len() - m {
            let w = &t[i..i + m];
            let direct = (0..m)
                .filter(|&j| p[pi.apply(j)] - p[j] != w[pi.apply(j)] - w[j])
                .count();
            let split = m - pi.q();
            let plus = (0..split)
                .filter(|&j| views.p_plus[j] != views.t_plus[i + j])
                .count();
            let minus = (0..pi.q())
                .filter(|&j| views.p_minus[j] != views.t_minus[i + j])
                .count();
            prop_assert_eq!(direct, plus + minus);
            // Position j matches after permuted differencing exactly when the
            // shifts at j and π(j) agree.
            for j in 0..m {
                let matched = p[pi.apply(j)] - p[j] == w[pi.apply(j)] - w[j];
                prop_assert_eq!(matched, w[j] - p[j] == w[pi.apply(j)] - p[pi.apply(j)]);
            }
        }
    }
}

fn planted(m: usize, n: usize, at: usize, edits: &[usize], seed: u64) -> (Vec<i64>, Vec<i64>) {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let p: Vec<i64> = (0..m).map(|_| rng.random_range(0..6)).collect();
    let mut t: Vec<i64> = (0..n).map(|_| rng.random_range(0..6)).collect();
    for j in 0..m {
        t[at + j] = p[j] + 17;
    }
    for &e in edits {
        t[at + e] = -100 - e as i64;
    }
    (t, p)
}

#[test]
fn planted_occurrence_always_reported() {
    let (t, p) = planted(100, 400, 123, &[5, 70], 3);
    let (ts, ps) = (Sequence::from_values(t), Sequence::from_values(p));
    for seed in 0..50 {
        let got = skdecision(&ts, &ps, 2, 1, seed).unwrap();
        assert!(got[123], "seed {seed}");
    }
}

#[test]
fn single_round_matches_direct_evaluation() {
    let (t, p) = planted(30, 120, 40, &[3, 11, 20], 5);
    let (ts, ps) = (
        Sequence::from_values(t.clone()),
        Sequence::from_values(p.clone()),
    );
    let m = p.len();
    for q in 1..m {
        let pi = CyclicPermutation::new(q, m).unwrap();
        let got = single_round(&ts, &ps, pi, 2).unwrap();
        for (i, &flag) in got.iter().enumerate() {
            let w = &t[i..i + m];
            let direct = (0..m)
                .filter(|&j| p[pi.apply(j)] - p[j] != w[pi.apply(j)] - w[j])
                .count();
            assert_eq!(flag, direct <= 4, "q {q} alignment {i}");
        }
    }
}

#[test]
fn adversary_fools_its_own_round() {
    use normmatch::oracles::notconv_adversary;
    let (m, k) = (260, 6);
    for q in [1, 7, 129, 259] {
        let pi = CyclicPermutation::new(q, m).unwrap();
        let (pattern, window) = notconv_adversary(pi, k, m).unwrap();
        assert!(single_round(&window, &pattern, pi, k).unwrap()[0]);
        assert!(sham_profile(&window, &pattern).unwrap().distances[0] > k as u64);
    }
}

#[test]
fn decision_is_deterministic_under_seed() {
    let (t, p) = planted(60, 300, 10, &[1, 2, 3, 4], 8);
    let (ts, ps) = (Sequence::from_values(t), Sequence::from_values(p));
    let a = skdecision(&ts, &ps, 3, 1, 99).unwrap();
    let b = skdecision(&ts, &ps, 3, 1, 99).unwrap();
    assert_eq!(a, b);
}

#[test]
fn decision_superset_of_ground_truth() {
    for seed in 0..20 {
        let (t, p) = planted(56, 300, 77, &[9, 30], seed);
        let (ts, ps) = (Sequence::from_values(t), Sequence::from_values(p));
        let truth = skmismatch_profile(&ts, &ps, 3).unwrap();
        let got = skdecision(&ts, &ps, 3, 2, seed).unwrap();
        for (i, d) in truth.distances.iter().enumerate() {
            assert_eq!(got[i], *d <= 3, "seed {seed} alignment {i}");
        }
    }
}

#[test]
fn rational_distances_are_reduced() {
    let t = Sequence::parse("1 4 9 16 25 36").unwrap();
    let p = Sequence::parse("0 1 3").unwrap();
    for d in shift_l2_profile(&t, &p).unwrap().distances {
        let r: Rational = d.clone();
        assert_eq!(r, Rational::new(d.numer().clone(), d.denom().clone()));
    }
}
