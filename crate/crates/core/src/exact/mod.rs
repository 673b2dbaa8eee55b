//! Arbitrary-precision rationals, univariate polynomials over them, and exact
//! symmetric-matrix algebra.
//!
//! Rationals are [`num_rational::BigRational`], which always stores lowest
//! terms with a positive denominator. Their canonical text form is `p/q`
//! (or just `p` when the denominator is 1); that form is used in every file
//! format and report this crate produces.

mod matrix;
mod poly;

pub use matrix::{same_span, AsymmetricError, PsdOutcome, SymMatrix};
pub use poly::Poly;

use crate::ParseError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (optionally signed). The result is normalized to
/// lowest terms with a positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ParseError::new(format!("bad rational {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| ParseError::new(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ParseError::new(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

/// Canonical `p/q` rendering (just `p` for integers).
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal expansion of `r` with `digits` places after the point, truncated
/// toward zero. Used only for display next to the paper's printed decimals;
/// comparisons stay rational.
pub fn decimal_string(r: &Rat, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (a.numer() * &scale) / a.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    format!("{sign}{int_part}.{frac_part:0>width$}", width = digits as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-5/4", "43/27648", "1024/7", "-8"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(fmt_rat(&parse_rat("10/120").unwrap()), "1/12");
        assert_eq!(fmt_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(fmt_rat(&parse_rat("0/7").unwrap()), "0");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 8), 3), "0.125");
        assert_eq!(decimal_string(&rat(439, 351232), 9), "0.001249886");
        assert_eq!(decimal_string(&rat(-5, 4), 2), "-1.25");
    }
}
