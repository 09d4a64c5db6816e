use std::fs;
use std::io::{self, Read};
use std::path::Path;

use anyhow::{bail, Context};
use normmatch::{Bounds, Sequence, SequencePair};

use crate::Inputs;

fn read_source(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_one(path: &Path, bounds: &Bounds) -> anyhow::Result<Sequence> {
    let raw = read_source(path)?;
    Sequence::parse_with_bounds(&raw, bounds).with_context(|| format!("parsing {}", path.display()))
}

/// Returns `(pattern, text)`.
pub fn load(inputs: &Inputs) -> anyhow::Result<(Sequence, Sequence)> {
    let bounds = inputs.bounds();
    let (pattern, text) = match (&inputs.pattern, &inputs.text, &inputs.pair) {
        (Some(p), Some(t), None) => {
            if p.as_os_str() == "-" && t.as_os_str() == "-" {
                bail!("pattern and text cannot both come from standard input; use --pair -");
            }
            (parse_one(p, &bounds)?, parse_one(t, &bounds)?)
        }
        (None, None, pair) => {
            let path = pair.as_deref().unwrap_or(Path::new("-"));
            let raw = read_source(path)?;
            let pair = SequencePair::parse(&raw, &bounds)
                .with_context(|| format!("parsing pair {}", path.display()))?;
            (pair.pattern, pair.text)
        }
        _ => bail!("give PATTERN and TEXT files, or --pair FILE"),
    };
    bounds.check_pattern(&pattern)?;
    Ok((pattern, text))
}
