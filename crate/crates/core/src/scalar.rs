//! Scalar abstraction: the exact engines are generic over an ordered field.
//!
//! `Exact` (arbitrary-precision rationals, always stored in lowest terms
//! with positive denominator) is the type every bit-exact result uses;
//! `f64` satisfies the same bound for floating-point experiments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num};
use std::fmt::Debug;

use crate::error::{Error, Result};

/// Ordered-field scalar: rational or floating point.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive + Debug {
    /// The fraction `num/den`.
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("small integer") / Self::from_i64(den).expect("small integer")
    }
}

impl<T: Num + Clone + PartialOrd + FromPrimitive + Debug> Scalar for T {}

/// Exact arbitrary-precision rational.
pub type Exact = num_rational::BigRational;

/// The fraction `num/den` in any scalar type.
pub fn ratio<S: Scalar>(num: i64, den: i64) -> S {
    S::from_ratio(num, den)
}

/// The exact rational `num/den`.
pub fn exact(num: i64, den: i64) -> Exact {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"num/den"` or a plain integer into an exact rational.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Renders an exact rational as `"num/den"`, or just `"num"` for integers.
pub fn format_exact(r: &Exact) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/2", "-3/7", "0", "5", "22/9"] {
            let r = parse_exact(s).unwrap();
            assert_eq!(parse_exact(&format_exact(&r)).unwrap(), r);
        }
        assert_eq!(format_exact(&exact(4, 8)), "1/2");
        assert_eq!(format_exact(&exact(-4, 2)), "-2");
        assert_eq!(parse_exact("3/-6").unwrap(), exact(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_exact("a/b").is_err());
        assert!(parse_exact("1/0").is_err());
        assert!(parse_exact("").is_err());
    }

    #[test]
    fn generic_ratio_agrees_across_scalars() {
        let e: Exact = ratio(3, 4);
        let f: f64 = ratio(3, 4);
        assert_eq!(e, exact(3, 4));
        assert_eq!(f, 0.75);
    }
}
