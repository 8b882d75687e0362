//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating-point mode anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn half() -> Scalar {
    frac(1, 2)
}

/// Parses `p`, `-p` or `p/q` with a nonzero denominator.
pub fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let text = text.trim();
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| format!("malformed rational `{text}`"))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("malformed rational `{text}`"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(format!("malformed rational `{text}`: zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Renders a scalar as `p` or `p/q`, the same forms `parse_scalar` accepts.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Splits a scalar into sign and magnitude text, for rendering sums.
pub fn format_signed(s: &Scalar) -> (bool, String) {
    (s.is_negative(), format_scalar(&s.abs()))
}
