use std::io::Write;

use anyhow::{bail, Context};
use clap::Args;
use normmatch::oracles::{
    geombase_to_ssham, notconv_adversary, planted_threesum, random_geombase, random_threesum,
    threesum_to_sham_with_bounds, triple_free_threesum, GeomBaseInstance, ThreeSumInstance,
};
use normmatch::randomised::CyclicPermutation;
use normmatch::sequence::DEFAULT_MAX_MAGNITUDE;
use normmatch::{Bounds, SequencePair};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Args, Debug)]
pub struct ThreeSumArgs {
    /// Distinct positive integers, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "random")]
    elements: Vec<i64>,
    /// Draw a random set of this size instead.
    #[arg(long, value_name = "S")]
    random: Option<usize>,
    /// Largest random element.
    #[arg(long, default_value_t = 1000)]
    max: i64,
    /// Random set contains a + b = c with a != b.
    #[arg(long, conflicts_with = "triple_free")]
    planted: bool,
    /// Random set has no a + b = c, not even with a = b.
    #[arg(long)]
    triple_free: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest symbol allowed in the emitted text.
    #[arg(long, value_name = "B", default_value_t = DEFAULT_MAX_MAGNITUDE)]
    max_magnitude: i64,
}

#[derive(Args, Debug)]
pub struct GeomBaseArgs {
    /// Points as `x,y` with x in {0, 1, 2}.
    #[arg(value_name = "X,Y", conflicts_with = "random")]
    points: Vec<String>,
    /// Draw this many random points instead.
    #[arg(long, value_name = "S")]
    random: Option<usize>,
    /// Random y-coordinates lie in [-RANGE, RANGE].
    #[arg(long, default_value_t = 20)]
    range: i64,
    /// Put three random points on a common non-vertical line.
    #[arg(long)]
    plant: bool,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct AdversaryArgs {
    /// Cyclic shift of the permutation, in 1..m.
    #[arg(long)]
    q: usize,
    /// Mismatch budget, 6 <= k < m/4.
    #[arg(long)]
    k: usize,
    /// Pattern length.
    #[arg(long)]
    m: usize,
}

fn rng_for(seed: Option<u64>) -> (ChaCha8Rng, u64) {
    let seed = seed.unwrap_or_else(rand::random);
    (ChaCha8Rng::seed_from_u64(seed), seed)
}

fn emit(out: &mut impl Write, pair: &SequencePair) -> std::io::Result<()> {
    out.write_all(pair.render().as_bytes())
}

pub fn three_sum(args: &ThreeSumArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let mut seed_note = None;
    let instance = match args.random {
        Some(s) => {
            let (mut rng, seed) = rng_for(args.seed);
            eprintln!("seed: {seed}");
            seed_note = Some(seed);
            if args.planted {
                planted_threesum(&mut rng, s, args.max)?
            } else if args.triple_free {
                triple_free_threesum(&mut rng, s, args.max)?
            } else {
                random_threesum(&mut rng, s, args.max)?
            }
        }
        None if args.elements.is_empty() => bail!("give --elements or --random S"),
        None => ThreeSumInstance::new(args.elements.iter().copied())?,
    };
    let bounds = Bounds {
        max_magnitude: args.max_magnitude,
        ..Bounds::default()
    };
    let mut pair = threesum_to_sham_with_bounds(&instance, &bounds)?;
    if let Some(seed) = seed_note {
        pair.metadata.push(format!("seed: {seed}"));
    }
    Ok(emit(out, &pair)?)
}

fn parse_point(raw: &str) -> anyhow::Result<(i64, i64)> {
    let (x, y) = raw
        .split_once(',')
        .with_context(|| format!("point {raw:?} is not of the form x,y"))?;
    Ok((
        x.trim()
            .parse()
            .with_context(|| format!("bad x in {raw:?}"))?,
        y.trim()
            .parse()
            .with_context(|| format!("bad y in {raw:?}"))?,
    ))
}

pub fn geombase(args: &GeomBaseArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let mut seed_note = None;
    let instance = match args.random {
        Some(s) => {
            let (mut rng, seed) = rng_for(args.seed);
            eprintln!("seed: {seed}");
            seed_note = Some(seed);
            random_geombase(&mut rng, s, args.range, args.plant)?
        }
        None if args.points.is_empty() => bail!("give points as x,y or --random S"),
        None => GeomBaseInstance::new(
            args.points
                .iter()
                .map(|p| parse_point(p))
                .collect::<anyhow::Result<_>>()?,
        )?,
    };
    let mut pair = geombase_to_ssham(&instance);
    if let Some(seed) = seed_note {
        pair.metadata.push(format!("seed: {seed}"));
    }
    Ok(emit(out, &pair)?)
}

pub fn adversary(args: &AdversaryArgs, out: &mut impl Write) -> anyhow::Result<()> {
    let q = CyclicPermutation::new(args.q, args.m)?;
    let (pattern, text) = notconv_adversary(q, args.k, args.m)?;
    let pair = SequencePair {
        pattern,
        text,
        metadata: vec![
            format!(
                "adversary for cyclic shift q={} k={} m={}",
                args.q, args.k, args.m
            ),
            format!("shift Hamming distance: {}", 2 * (args.k / 2) + 2),
        ],
    };
    Ok(emit(out, &pair)?)
}
