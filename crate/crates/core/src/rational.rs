//! Exact rationals over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Always reduced, denominator positive.
pub type Rational = BigRational;

/// Builds the canonical reduced form of `num / den`.
pub fn rational_reduce(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num.into(), den))
}

pub fn int(v: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(v.into())
}

/// `p/q` with the denominator always written, `0/1` for zero.
pub fn render(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal approximation rounded half away from zero to `digits` places.
pub fn render_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.numer().abs() * &scale;
    let den = r.denom();
    let (mut q, rem) = scaled.div_rem(den);
    if rem * 2 >= *den {
        q += 1;
    }
    let negative = r.is_negative() && !q.is_zero();
    let (whole, frac) = q.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let frac = frac.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Lossy conversion for plotting.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(render(&rational_reduce(4, 6).unwrap()), "2/3");
        assert_eq!(render(&rational_reduce(-2, -4).unwrap()), "1/2");
        assert_eq!(render(&rational_reduce(0, 7).unwrap()), "0/1");
        assert_eq!(render(&rational_reduce(3, -9).unwrap()), "-1/3");
        assert_eq!(rational_reduce(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn decimal_rendering() {
        let r = |n: i64, d: i64| rational_reduce(n, d).unwrap();
        assert_eq!(render_decimal(&r(2, 3), 4), "0.6667");
        assert_eq!(render_decimal(&r(-2, 3), 2), "-0.67");
        assert_eq!(render_decimal(&r(5, 1), 0), "5");
        assert_eq!(render_decimal(&r(1, 200), 2), "0.01");
        assert_eq!(render_decimal(&r(-1, 1000), 2), "0.00");
        assert_eq!(render_decimal(&r(123, 10), 3), "12.300");
    }

    proptest! {
        #[test]
        fn arithmetic_is_exact(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = rational_reduce(a, b).unwrap();
            let y = rational_reduce(c, d).unwrap();
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
            prop_assert!(x.denom().is_positive());
            prop_assert!(x.numer().gcd(x.denom()).is_one());
        }
    }
}
