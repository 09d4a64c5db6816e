use crate::rational::Rational;

/// One distance per alignment `i` in `0..=n-m`, with the minimising
/// transformation found at each alignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile<D, M> {
    pub distances: Vec<D>,
    pub minimisers: Vec<M>,
}

impl<D, M> DistanceProfile<D, M> {
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }
}

/// Shift `α̂` per alignment.
pub type ShiftProfile = DistanceProfile<Rational, Rational>;

/// Shift and scale `(α̂, β̂)` per alignment.
pub type ShiftScaleProfile = DistanceProfile<Rational, (Rational, Rational)>;

/// Coefficients `α₀..α_r` per alignment.
pub type PolyProfile = DistanceProfile<Rational, PolyCoefficients>;

/// Integer Hamming-family distances; the minimiser is the optimal integer
/// shift when one is known (`None` for capped alignments).
pub type HammingProfile = DistanceProfile<u64, Option<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyCoefficients {
    pub coefficients: Vec<Rational>,
}

impl PolyCoefficients {
    pub fn zero(degree: usize) -> Self {
        PolyCoefficients {
            coefficients: vec![Rational::default(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Evaluates the polynomial at `x` by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::default(), |acc, c| acc * x + c)
    }
}
