//! `normmatch`: normalised pattern matching profiles from the command line.

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normmatch::l2::DEFAULT_MAX_DEGREE;
use normmatch::sequence::{DEFAULT_MAX_MAGNITUDE, DEFAULT_MAX_PATTERN_LEN};
use normmatch::{hamming, l2, oracles, randomised, Bounds};

mod bench;
mod generate;
mod input;
mod output;

use output::Table;

#[derive(Parser)]
#[command(
    name = "normmatch",
    version,
    about = "Normalised pattern matching distance profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the pattern and text come from. With no files and no `--pair`, a
/// pair stream is read from standard input.
#[derive(Args, Debug, Clone)]
struct Inputs {
    /// Pattern file, `-` for standard input.
    #[arg(requires = "text")]
    pattern: Option<PathBuf>,
    /// Text file, `-` for standard input.
    text: Option<PathBuf>,
    /// Pair file holding both sequences (`#@ pattern` / `#@ text`), `-` for standard input.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["pattern", "text"])]
    pair: Option<PathBuf>,
    /// Largest accepted |symbol|. Raising it may push correlations past the exact range.
    #[arg(long, value_name = "B", default_value_t = DEFAULT_MAX_MAGNITUDE)]
    max_magnitude: i64,
    /// Largest accepted pattern length.
    #[arg(long, value_name = "M", default_value_t = DEFAULT_MAX_PATTERN_LEN)]
    max_pattern_len: usize,
}

impl Inputs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_magnitude: self.max_magnitude,
            max_pattern_len: self.max_pattern_len,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct Render {
    /// Append the minimising transformation as extra columns.
    #[arg(long)]
    with_minimisers: bool,
    /// Print rationals as decimals with this many digits instead of `p/q`.
    #[arg(long, value_name = "D")]
    decimal: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// L2 distance under the best shift.
    L2Shift {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
    },
    /// L2 distance under the best shift and scale.
    L2Shiftscale {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
    },
    /// L2 distance under the best polynomial of the given degree.
    L2Poly {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
        #[arg(long, value_name = "R")]
        degree: usize,
        /// Largest degree accepted.
        #[arg(long, value_name = "R", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// 1 where some shift matches exactly (wildcards ignored).
    ExactShift {
        #[command(flatten)]
        input: Inputs,
    },
    /// 1 where some shift-scale map matches exactly (wildcards ignored).
    ExactShiftscale {
        #[command(flatten)]
        input: Inputs,
    },
    /// Hamming distance under the best shift.
    HamShift {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
    },
    /// Shift Hamming distance capped at k+1.
    Kmismatch {
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
        #[arg(long)]
        k: usize,
    },
    /// Randomised "shift Hamming distance <= k" decision (one-sided error).
    Kdecision {
        #[command(flatten)]
        input: Inputs,
        #[arg(long)]
        k: usize,
        /// Failure probability is at most n^-C.
        #[arg(long, value_name = "C", default_value_t = 2)]
        confidence: u32,
        /// RNG seed; drawn from the system when absent. Always echoed on stderr.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Shift Hamming instance from a 3SUM set.
    #[command(name = "gen-3sum")]
    Gen3Sum(generate::ThreeSumArgs),
    /// Shift-scale Hamming instance from points on x = 0, 1, 2.
    GenGeombase(generate::GeomBaseArgs),
    /// Pattern and window on which a cyclic permutation is not k-tight.
    GenAdversary(generate::AdversaryArgs),
    /// Run a brute-force reference implementation.
    Oracle {
        name: OracleName,
        #[command(flatten)]
        input: Inputs,
        #[command(flatten)]
        render: Render,
        /// Degree for the `poly` oracle.
        #[arg(long, value_name = "R", default_value_t = 2)]
        degree: usize,
    },
    /// Time an operation on synthetic inputs; prints one JSON line per run.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleName {
    Shift,
    Shiftscale,
    Poly,
    Sham,
    Ssham,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("normmatch: {e}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(io) = e.downcast_ref::<io::Error>() {
                if io.kind() == io::ErrorKind::BrokenPipe {
                    return ExitCode::SUCCESS;
                }
            }
            eprintln!("normmatch: {e:#}");
            let exactness = e
                .downcast_ref::<normmatch::Error>()
                .is_some_and(normmatch::Error::is_exactness_failure);
            ExitCode::from(if exactness { 2 } else { 1 })
        }
    }
}

/// `NORMMATCH_THREADS` caps the worker pool; 0 or unset lets rayon decide.
fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("NORMMATCH_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        anyhow::anyhow!("NORMMATCH_THREADS must be a non-negative integer, got {raw:?}")
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::L2Shift { input, render } => {
            let (pattern, text) = input::load(&input)?;
            let prof = l2::shift_l2_profile(&text, &pattern)?;
            Table::new(render).shift(&prof).write(&mut out)?;
        }
        Command::L2Shiftscale { input, render } => {
            let (pattern, text) = input::load(&input)?;
            let prof = l2::shift_scale_l2_profile(&text, &pattern)?;
            Table::new(render).shift_scale(&prof).write(&mut out)?;
        }
        Command::L2Poly {
            input,
            render,
            degree,
            max_degree,
        } => {
            if degree > max_degree {
                anyhow::bail!("degree {degree} exceeds --max-degree {max_degree}");
            }
            let (pattern, text) = input::load(&input)?;
            let prof = l2::poly_l2_profile(&text, &pattern, degree)?;
            Table::new(render).poly(&prof).write(&mut out)?;
        }
        Command::ExactShift { input } => {
            let (pattern, text) = input::load(&input)?;
            output::write_flags(&mut out, &l2::exact_shift_match(&text, &pattern)?)?;
        }
        Command::ExactShiftscale { input } => {
            let (pattern, text) = input::load(&input)?;
            output::write_flags(&mut out, &l2::exact_shift_scale_match(&text, &pattern)?)?;
        }
        Command::HamShift { input, render } => {
            let (pattern, text) = input::load(&input)?;
            let prof = hamming::sham_profile(&text, &pattern)?;
            Table::new(render).hamming(&prof).write(&mut out)?;
        }
        Command::Kmismatch { input, render, k } => {
            let (pattern, text) = input::load(&input)?;
            let prof = hamming::skmismatch_profile(&text, &pattern, k)?;
            Table::new(render).hamming(&prof).write(&mut out)?;
        }
        Command::Kdecision {
            input,
            k,
            confidence,
            seed,
        } => {
            let (pattern, text) = input::load(&input)?;
            let seed = seed.unwrap_or_else(rand::random);
            eprintln!("seed: {seed}");
            let flags = randomised::skdecision(&text, &pattern, k, confidence, seed)?;
            output::write_flags(&mut out, &flags)?;
        }
        Command::Gen3Sum(args) => generate::three_sum(&args, &mut out)?,
        Command::GenGeombase(args) => generate::geombase(&args, &mut out)?,
        Command::GenAdversary(args) => generate::adversary(&args, &mut out)?,
        Command::Oracle {
            name,
            input,
            render,
            degree,
        } => {
            let (pattern, text) = input::load(&input)?;
            let table = Table::new(render);
            match name {
                OracleName::Shift => table.shift(&oracles::brute_shift_l2(&text, &pattern)?),
                OracleName::Shiftscale => {
                    table.shift_scale(&oracles::brute_shift_scale_l2(&text, &pattern)?)
                }
                OracleName::Poly => table.poly(&oracles::brute_poly_l2(&text, &pattern, degree)?),
                OracleName::Sham => table.hamming(&oracles::brute_sham(&text, &pattern)?),
                OracleName::Ssham => {
                    table.shift_scale_hamming(&oracles::brute_ssham(&text, &pattern)?)
                }
            }
            .write(&mut out)?;
        }
        Command::Bench(args) => bench::run(&args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}
