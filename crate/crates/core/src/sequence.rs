//! Integer sequences with single-character wildcards, and their text format.
//!
//! The text format is ASCII: whitespace-separated tokens, each a base-10
//! signed integer or `*`. Blank lines are ignored and `#` starts a comment
//! that runs to the end of the line.
//!
//! A *pair* file holds a pattern and a text in one stream. Each section is
//! introduced by a marker comment, `#@ pattern` or `#@ text`. Since markers
//! are comments, a pair file section is itself a valid single sequence.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest accepted `|value|` for parsed symbols.
pub const DEFAULT_MAX_MAGNITUDE: i64 = 1 << 20;
/// Largest accepted pattern length.
pub const DEFAULT_MAX_PATTERN_LEN: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Int(i64),
    Wildcard,
}

impl Symbol {
    pub fn value(self) -> Option<i64> {
        match self {
            Symbol::Int(v) => Some(v),
            Symbol::Wildcard => None,
        }
    }

    pub fn is_wildcard(self) -> bool {
        matches!(self, Symbol::Wildcard)
    }
}

impl From<i64> for Symbol {
    fn from(v: i64) -> Self {
        Symbol::Int(v)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(v) => write!(f, "{v}"),
            Symbol::Wildcard => f.write_str("*"),
        }
    }
}

/// Input limits enforced when reading sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_magnitude: i64,
    pub max_pattern_len: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_magnitude: DEFAULT_MAX_MAGNITUDE,
            max_pattern_len: DEFAULT_MAX_PATTERN_LEN,
        }
    }
}

impl Bounds {
    pub fn unbounded() -> Self {
        Bounds {
            max_magnitude: i64::MAX,
            max_pattern_len: usize::MAX,
        }
    }

    pub fn check_values(&self, seq: &Sequence) -> Result<()> {
        for v in seq.symbols.iter().filter_map(|s| s.value()) {
            if v.unsigned_abs() > self.max_magnitude.unsigned_abs() {
                return Err(Error::MagnitudeExceeded {
                    line: 0,
                    value: v,
                    bound: self.max_magnitude,
                });
            }
        }
        Ok(())
    }

    pub fn check_pattern(&self, pattern: &Sequence) -> Result<()> {
        if pattern.len() > self.max_pattern_len {
            return Err(Error::LengthExceeded {
                len: pattern.len(),
                bound: self.max_pattern_len,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Sequence {
    symbols: Vec<Symbol>,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Sequence { symbols }
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        Sequence {
            symbols: values.into_iter().map(Symbol::Int).collect(),
        }
    }

    /// Parses the text format with the default [`Bounds`].
    pub fn parse(input: &str) -> Result<Self> {
        Self::parse_with_bounds(input, &Bounds::default())
    }

    pub fn parse_with_bounds(input: &str, bounds: &Bounds) -> Result<Self> {
        let mut symbols = Vec::new();
        for (idx, raw) in input.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(cut) => &raw[..cut],
                None => raw,
            };
            for token in content.split_whitespace() {
                symbols.push(parse_token(token, line, bounds)?);
            }
        }
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Sequence { symbols })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn has_wildcards(&self) -> bool {
        self.symbols.iter().any(|s| s.is_wildcard())
    }

    /// The plain values, or an error naming the first wildcard.
    pub fn values(&self) -> Result<Vec<i64>> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(position, s)| s.value().ok_or(Error::WildcardNotAllowed { position }))
            .collect()
    }

    /// Values with wildcards read as zero. Always paired with a mask.
    pub fn values_or_zero(&self) -> Vec<i64> {
        self.symbols
            .iter()
            .map(|s| s.value().unwrap_or(0))
            .collect()
    }

    pub fn mask(&self) -> MaskVector {
        build_masks(self)
    }

    /// Renders in the text format, `per_line` tokens to a line.
    pub fn render(&self, per_line: usize) -> String {
        let per_line = per_line.max(1);
        let mut out = String::new();
        for chunk in self.symbols.chunks(per_line) {
            let line: Vec<String> = chunk.iter().map(|s| s.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Sequence::parse(s)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn parse_token(token: &str, line: usize, bounds: &Bounds) -> Result<Symbol> {
    if token == "*" {
        return Ok(Symbol::Wildcard);
    }
    let value: i64 = token.parse().map_err(|_| Error::InvalidToken {
        line,
        token: token.to_string(),
    })?;
    if value.unsigned_abs() > bounds.max_magnitude.unsigned_abs() {
        return Err(Error::MagnitudeExceeded {
            line,
            value,
            bound: bounds.max_magnitude,
        });
    }
    Ok(Symbol::Int(value))
}

/// 0/1 per position: 0 exactly where the source has a wildcard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskVector {
    pub bits: Vec<u8>,
}

impl MaskVector {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

pub fn build_masks(seq: &Sequence) -> MaskVector {
    MaskVector {
        bits: seq
            .symbols
            .iter()
            .map(|s| u8::from(!s.is_wildcard()))
            .collect(),
    }
}

/// Checks the pairing precondition shared by every matching operation.
pub fn check_pair(text: &Sequence, pattern: &Sequence) -> Result<()> {
    if pattern.is_empty() || text.is_empty() {
        return Err(Error::EmptySequence);
    }
    if pattern.len() > text.len() {
        return Err(Error::PatternLongerThanText {
            m: pattern.len(),
            n: text.len(),
        });
    }
    Ok(())
}

/// A pattern and a text carried in one stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePair {
    pub pattern: Sequence,
    pub text: Sequence,
    /// Free-form comment lines (without the leading `#`), e.g. generator metadata.
    pub metadata: Vec<String>,
}

const PATTERN_MARKER: &str = "#@ pattern";
const TEXT_MARKER: &str = "#@ text";

impl SequencePair {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.metadata {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(PATTERN_MARKER);
        out.push('\n');
        out.push_str(&self.pattern.render(32));
        out.push_str(TEXT_MARKER);
        out.push('\n');
        out.push_str(&self.text.render(32));
        out
    }

    pub fn parse(input: &str, bounds: &Bounds) -> Result<Self> {
        #[derive(PartialEq)]
        enum Section {
            Preamble,
            Pattern,
            Text,
        }
        let mut section = Section::Preamble;
        let mut pattern = String::new();
        let mut text = String::new();
        let mut metadata = Vec::new();
        for line in input.lines() {
            let trimmed = line.trim();
            if trimmed == PATTERN_MARKER {
                section = Section::Pattern;
                pattern.push('\n');
                continue;
            }
            if trimmed == TEXT_MARKER {
                section = Section::Text;
                text.push('\n');
                continue;
            }
            match section {
                Section::Preamble => {
                    if let Some(comment) = trimmed.strip_prefix('#') {
                        metadata.push(comment.trim().to_string());
                    } else if !trimmed.is_empty() {
                        return Err(Error::InvalidParameter(
                            "pair input has symbols before the `#@ pattern` marker".into(),
                        ));
                    }
                }
                Section::Pattern => {
                    pattern.push_str(line);
                    pattern.push('\n');
                }
                Section::Text => {
                    text.push_str(line);
                    text.push('\n');
                }
            }
        }
        if section == Section::Preamble {
            return Err(Error::InvalidParameter(
                "pair input needs `#@ pattern` and `#@ text` sections".into(),
            ));
        }
        Ok(SequencePair {
            pattern: Sequence::parse_with_bounds(&pattern, bounds)?,
            text: Sequence::parse_with_bounds(&text, bounds)?,
            metadata,
        })
    }
}
