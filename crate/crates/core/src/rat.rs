//! Exact rationals and the small helpers shared across the crate.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rat {
    Rat::from_integer(n.into())
}

pub fn recip(d: &BigUint) -> Rat {
    Rat::new(BigInt::one(), BigInt::from(d.clone()))
}

/// Parses a `p/q` literal (or a bare integer). Decimal notation is rejected so
/// that no input is silently rounded.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!(
            "`{s}` is not a fraction; use the p/q form"
        )));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(num, den))
}

/// Renders in lowest terms as `p/q`; integers keep the `/1` so every value in
/// structured output has the same shape.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn check_unit(x: &Rat) -> Result<()> {
    if x.is_negative() || *x > Rat::one() {
        return Err(Error::Domain(format!("{} is outside [0, 1]", fmt_rat(x))));
    }
    Ok(())
}

pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `floor(x * 2^bits)` as an integer.
pub fn floor_scaled(x: &Rat, bits: u32) -> BigInt {
    (x.numer() << bits as usize).div_floor(x.denom())
}

pub fn biguint_of(x: &BigInt) -> Option<BigUint> {
    match x.sign() {
        Sign::Minus => None,
        _ => Some(x.magnitude().clone()),
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn abs(x: &Rat) -> Rat {
    x.abs()
}

/// `serialize_with` helpers: rationals as `"p/q"`, big integers as strings.
pub fn ser_rat<S: serde::Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(x))
}

pub fn ser_opt_rat<S: serde::Serializer>(
    x: &Option<Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_str(&fmt_rat(x)),
        None => s.serialize_none(),
    }
}

pub fn ser_biguint<S: serde::Serializer>(
    x: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
