//! The one numeric type: arbitrary-precision exact rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Exact rational scalar. `BigRational` keeps lowest terms with a positive
/// denominator, which is exactly the invariant the domain requires.
pub type Scalar = BigRational;

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Exact factorial as a scalar.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Scalar::from_integer(acc)
}

/// Parses "p/q" or "p". Round-trips with [`format`].
pub fn parse(src: &str) -> Result<Scalar> {
    let src = src.trim();
    let bad = || AlgebraError::InvalidInput(format!("invalid rational literal '{src}'"));
    match src.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(AlgebraError::InvalidInput(format!("zero denominator in '{src}'")));
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = src.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

/// Renders as "p/q", or "p" when the denominator is one.
pub fn format(s: &Scalar) -> String {
    s.to_string()
}

pub fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        for src in ["0", "1", "-1", "3/4", "-22/7", "100000000000000000001/3"] {
            let s = parse(src).unwrap();
            assert_eq!(format(&s), src);
            assert_eq!(parse(&format(&s)).unwrap(), s);
        }
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(format(&parse("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse("1/0").is_err());
    }
}
