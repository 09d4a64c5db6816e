use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use normmatch::correlate::chunked_correlate;
use normmatch::{hamming, l2, randomised, Sequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Target {
    Correlate,
    L2Shift,
    L2Shiftscale,
    L2Poly,
    HamShift,
    Kmismatch,
    Kdecision,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    target: Target,
    #[arg(long, default_value_t = 1 << 16)]
    n: usize,
    #[arg(long, default_value_t = 1 << 8)]
    m: usize,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 2)]
    confidence: u32,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A text over a small alphabet with shifted copies of the pattern planted
/// in it, so Hamming benchmarks see both near and far alignments.
fn inputs(args: &BenchArgs, sigma: i64) -> (Sequence, Sequence) {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let p: Vec<i64> = (0..args.m).map(|_| rng.random_range(0..sigma)).collect();
    let mut t: Vec<i64> = (0..args.n).map(|_| rng.random_range(0..sigma)).collect();
    if args.n >= args.m {
        for _ in 0..(args.n / args.m).min(64) {
            let at = rng.random_range(0..=args.n - args.m);
            let shift = rng.random_range(-3..=3);
            for (j, v) in p.iter().enumerate() {
                t[at + j] = v + shift;
            }
        }
    }
    (Sequence::from_values(t), Sequence::from_values(p))
}

pub fn run(args: &BenchArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let sigma = match args.target {
        Target::HamShift | Target::Kmismatch | Target::Kdecision => 4,
        _ => 1000,
    };
    let (text, pattern) = inputs(args, sigma);
    let name = args
        .target
        .to_possible_value()
        .expect("every target has a name")
        .get_name()
        .to_owned();
    for rep in 0..args.reps {
        let start = Instant::now();
        match args.target {
            Target::Correlate => {
                let t: Vec<i128> = text.values()?.into_iter().map(i128::from).collect();
                let p: Vec<i128> = pattern.values()?.into_iter().map(i128::from).collect();
                chunked_correlate(&t, &p)?;
            }
            Target::L2Shift => {
                l2::shift_l2_profile(&text, &pattern)?;
            }
            Target::L2Shiftscale => {
                l2::shift_scale_l2_profile(&text, &pattern)?;
            }
            Target::L2Poly => {
                l2::poly_l2_profile(&text, &pattern, args.degree)?;
            }
            Target::HamShift => {
                hamming::sham_profile(&text, &pattern)?;
            }
            Target::Kmismatch => {
                hamming::skmismatch_profile(&text, &pattern, args.k)?;
            }
            Target::Kdecision => {
                randomised::skdecision(&text, &pattern, args.k, args.confidence, args.seed)?;
            }
        }
        let seconds = start.elapsed().as_secs_f64();
        let line = json!({
            "bench": name,
            "n": args.n,
            "m": args.m,
            "k": args.k,
            "degree": args.degree,
            "rep": rep,
            "seconds": seconds,
        });
        writeln!(out, "{line}")?;
    }
    Ok(())
}
