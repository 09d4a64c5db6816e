//! TSV rendering: `position<TAB>distance[<TAB>minimiser...]`.

use std::io::{self, Write};

use normmatch::oracles::ShiftScaleHammingProfile;
use normmatch::rational::{render, render_decimal};
use normmatch::{HammingProfile, PolyProfile, Rational, ShiftProfile, ShiftScaleProfile};

use crate::Render;

pub struct Table {
    render: Render,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(render: Render) -> Self {
        Table {
            render,
            rows: Vec::new(),
        }
    }

    fn rational(&self, r: &Rational) -> String {
        match self.render.decimal {
            Some(d) => render_decimal(r, d),
            None => render(r),
        }
    }

    fn fill<'a, D: 'a, M: 'a>(
        mut self,
        distances: &'a [D],
        minimisers: &'a [M],
        distance: impl Fn(&Self, &D) -> String,
        minimiser: impl Fn(&Self, &M) -> Vec<String>,
    ) -> Self {
        let rows = distances
            .iter()
            .zip(minimisers)
            .map(|(d, m)| {
                let mut row = vec![distance(&self, d)];
                if self.render.with_minimisers {
                    row.extend(minimiser(&self, m));
                }
                row
            })
            .collect();
        self.rows = rows;
        self
    }

    pub fn shift(self, p: &ShiftProfile) -> Self {
        self.fill(&p.distances, &p.minimisers, Self::rational, |t, a| {
            vec![t.rational(a)]
        })
    }

    pub fn shift_scale(self, p: &ShiftScaleProfile) -> Self {
        self.fill(&p.distances, &p.minimisers, Self::rational, |t, (a, b)| {
            vec![t.rational(a), t.rational(b)]
        })
    }

    pub fn poly(self, p: &PolyProfile) -> Self {
        self.fill(&p.distances, &p.minimisers, Self::rational, |t, c| {
            c.coefficients.iter().map(|x| t.rational(x)).collect()
        })
    }

    /// Capped alignments have no known shift and print `-`.
    pub fn hamming(self, p: &HammingProfile) -> Self {
        self.fill(
            &p.distances,
            &p.minimisers,
            |_, d| d.to_string(),
            |_, a| vec![a.map_or_else(|| "-".to_string(), |a| a.to_string())],
        )
    }

    pub fn shift_scale_hamming(self, p: &ShiftScaleHammingProfile) -> Self {
        self.fill(
            &p.distances,
            &p.minimisers,
            |_, d| d.to_string(),
            |t, (a, b)| vec![t.rational(a), t.rational(b)],
        )
    }

    pub fn write(&self, out: &mut impl Write) -> io::Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            write!(out, "{i}")?;
            for cell in row {
                write!(out, "\t{cell}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

pub fn write_flags(out: &mut impl Write, flags: &[bool]) -> io::Result<()> {
    for (i, &f) in flags.iter().enumerate() {
        writeln!(out, "{i}\t{}", u8::from(f))?;
    }
    Ok(())
}
