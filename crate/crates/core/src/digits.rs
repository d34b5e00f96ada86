//! Pierce digits of numbers in `[0, 1]`: the first-digit map, the shift, finite
//! expansions of rationals, convergents and rule-based digit streams.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::{check_unit, Rat};
use crate::seq::PierceSeq;

/// Default cap on the number of digits produced by [`expand`].
pub const EXPANSION_CAP: usize = 10_000;

/// A positive integer or the point at infinity of the one-point
/// compactification of the naturals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtDigit {
    Finite(BigUint),
    Infinity,
}

impl ExtDigit {
    pub fn finite(d: impl Into<BigUint>) -> Self {
        ExtDigit::Finite(d.into())
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            ExtDigit::Finite(d) => Some(d),
            ExtDigit::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtDigit::Infinity)
    }

    /// `1/d`, with `1/∞ = 0`.
    pub fn recip(&self) -> Rat {
        match self {
            ExtDigit::Finite(d) => crate::rat::recip(d),
            ExtDigit::Infinity => Rat::zero(),
        }
    }
}

impl fmt::Display for ExtDigit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDigit::Finite(d) => write!(f, "{d}"),
            ExtDigit::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtDigit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `d_1(x) = floor(1/x)` for `x != 0`, and `∞` at zero.
pub fn digit1(x: &Rat) -> Result<ExtDigit> {
    check_unit(x)?;
    if x.is_zero() {
        return Ok(ExtDigit::Infinity);
    }
    let d = x.denom().div_floor(x.numer());
    Ok(ExtDigit::Finite(d.magnitude().clone()))
}

/// The Pierce shift `T(x) = 1 - d_1(x) x`, with `T(0) = 0`.
pub fn shift(x: &Rat) -> Result<Rat> {
    match digit1(x)? {
        ExtDigit::Infinity => Ok(Rat::zero()),
        ExtDigit::Finite(d) => Ok(Rat::one() - Rat::from_integer(BigInt::from(d)) * x),
    }
}

/// The full digit sequence of a rational, capped at [`EXPANSION_CAP`] digits.
pub fn expand(x: &Rat) -> Result<PierceSeq> {
    expand_capped(x, EXPANSION_CAP)
}

pub fn expand_capped(x: &Rat, cap: usize) -> Result<PierceSeq> {
    Ok(PierceSeq::finite_unchecked(expand_digits(x, cap)?))
}

/// Iterates the shift on the numerator; the denominator of `T^k x` always
/// divides that of `x`, so only `q mod p` needs computing.
pub(crate) fn expand_digits(x: &Rat, cap: usize) -> Result<Vec<BigUint>> {
    check_unit(x)?;
    let q = x.denom().magnitude().clone();
    let mut p = x.numer().magnitude().clone();
    let mut digits = Vec::new();
    while !p.is_zero() {
        if digits.len() == cap {
            return Err(Error::ExpansionOverflow { cap });
        }
        let (d, r) = q.div_rem(&p);
        digits.push(d);
        p = r;
    }
    Ok(digits)
}

/// Word-sized expansion of `p/q`, used on hot paths (Riemann sums).
pub fn expand_u64(p: u64, q: u64) -> Vec<u64> {
    debug_assert!(q > 0 && p <= q);
    let mut p = p;
    let mut digits = Vec::new();
    while p != 0 {
        digits.push(q / p);
        p = q % p;
    }
    digits
}

/// The convergent `s_n(x)`; infinite digits contribute nothing.
pub fn convergent(x: &Rat, n: usize) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Precondition(
            "convergent order must be at least 1".into(),
        ));
    }
    let digits = expand_digits(x, EXPANSION_CAP)?;
    Ok(alternating_partial_sum(&digits[..n.min(digits.len())]))
}

/// `sum_{k<=len} (-1)^{k+1} / (d_1 ... d_k)` over a common denominator.
pub(crate) fn alternating_partial_sum(digits: &[BigUint]) -> Rat {
    // Horner from the back: 1/d1 (1 - 1/d2 (1 - ...)).
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for d in digits.iter().rev() {
        let d = BigInt::from(d.clone());
        num = &den - num;
        den *= d;
    }
    Rat::new(num, den)
}

/// A rule emitting Pierce digits `d_1, d_2, ...`.
///
/// Every variant is validated on construction: emitted digits are strictly
/// increasing and `d_n >= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DigitStream {
    /// An explicit finite table of digits.
    Table(Vec<BigUint>),
    /// `d_n = slope * n + offset`.
    Arithmetic { slope: BigUint, offset: BigInt },
    /// `d_n = n!`.
    Factorial,
}

impl DigitStream {
    pub fn table(digits: Vec<BigUint>) -> Result<Self> {
        check_pierce_digits(&digits, 0, None).map_err(Error::InvalidStream)?;
        Ok(DigitStream::Table(digits))
    }

    pub fn arithmetic(slope: u64, offset: i64) -> Result<Self> {
        if slope == 0 {
            return Err(Error::InvalidStream("slope must be positive".into()));
        }
        // d_n >= n for all n iff (slope - 1) + offset >= 0.
        if slope as i128 - 1 + (offset as i128) < 0 {
            return Err(Error::InvalidStream(format!(
                "{slope}n{offset:+} falls below n at n = 1"
            )));
        }
        Ok(DigitStream::Arithmetic {
            slope: BigUint::from(slope),
            offset: BigInt::from(offset),
        })
    }

    pub fn factorial() -> Self {
        DigitStream::Factorial
    }

    /// Parses `const:NAME`, `arith:SLOPE:OFFSET`, `factorial` or
    /// `table:D1,D2,...`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(name) = s.strip_prefix("const:") {
            return constant_stream(name);
        }
        if s == "factorial" {
            return Ok(DigitStream::Factorial);
        }
        if let Some(rest) = s.strip_prefix("arith:") {
            let (a, b) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected arith:SLOPE:OFFSET, got `{s}`")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad slope in `{s}`")))?;
            let b = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad offset in `{s}`")))?;
            return DigitStream::arithmetic(a, b);
        }
        if let Some(rest) = s.strip_prefix("table:") {
            let digits = parse_digit_list(rest)?;
            return DigitStream::table(digits);
        }
        Err(Error::Parse(format!("unrecognised digit stream `{s}`")))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, DigitStream::Table(_))
    }

    /// The `n`-th digit (1-based).
    pub fn digit(&self, n: usize) -> ExtDigit {
        assert!(n >= 1, "digits are indexed from 1");
        match self {
            DigitStream::Table(t) => t
                .get(n - 1)
                .cloned()
                .map_or(ExtDigit::Infinity, ExtDigit::Finite),
            DigitStream::Arithmetic { slope, offset } => {
                let v = BigInt::from(slope.clone()) * BigInt::from(n) + offset;
                ExtDigit::Finite(v.magnitude().clone())
            }
            DigitStream::Factorial => ExtDigit::Finite(crate::rat::factorial(n as u64)),
        }
    }

    /// Finite digits in order; ends where a table ends.
    pub fn iter(&self) -> impl Iterator<Item = BigUint> + '_ {
        (1..).map_while(move |n| self.digit(n).as_finite().cloned())
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitStream::Table(t) => {
                let parts: Vec<String> = t.iter().map(|d| d.to_string()).collect();
                write!(f, "table:{}", parts.join(","))
            }
            DigitStream::Arithmetic { slope, offset } => write!(f, "arith:{slope}:{offset}"),
            DigitStream::Factorial => f.write_str("factorial"),
        }
    }
}

/// Named digit streams. Only `one-minus-inv-e` (digits `1, 2, 3, ...`, since
/// `1 - 1/e = sum (-1)^{n+1}/n!`) is known.
pub fn constant_stream(name: &str) -> Result<DigitStream> {
    match name {
        "one-minus-inv-e" => DigitStream::arithmetic(1, 0),
        other => Err(Error::UnknownConstant(other.to_string())),
    }
}

pub(crate) fn parse_digit_list(s: &str) -> Result<Vec<BigUint>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::Parse(format!("bad digit `{t}`")))
        })
        .collect()
}

/// Checks strict increase, `d_k >= k` (with `k` offset by `start`) and that the
/// first digit exceeds `after` when given.
pub(crate) fn check_pierce_digits(
    digits: &[BigUint],
    start: usize,
    after: Option<&BigUint>,
) -> std::result::Result<(), String> {
    let mut prev = after;
    for (i, d) in digits.iter().enumerate() {
        let k = start + i + 1;
        if d.is_zero() {
            return Err(format!("digit {k} is zero"));
        }
        if let Some(p) = prev {
            if d <= p {
                return Err(format!(
                    "digit {k} ({d}) does not exceed its predecessor ({p})"
                ));
            }
        }
        if d.to_usize().is_some_and(|v| v < k) {
            return Err(format!("digit {k} ({d}) is smaller than its index"));
        }
        prev = Some(d);
    }
    Ok(())
}

/// `x - s_n(x)` computed from the shift: `(-1)^n T^n x / (d_1 ... d_n)`.
pub fn residual_via_shift(x: &Rat, n: usize) -> Result<Rat> {
    let mut t = x.clone();
    let mut prod = Rat::one();
    for _ in 0..n {
        match digit1(&t)? {
            ExtDigit::Infinity => return Ok(Rat::zero()),
            ExtDigit::Finite(d) => {
                prod *= Rat::from_integer(BigInt::from(d));
                t = shift(&t)?;
            }
        }
    }
    let r = t / prod;
    Ok(if n % 2 == 1 { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn digits(x: Rat) -> Vec<u64> {
        expand(&x)
            .unwrap()
            .prefix()
            .iter()
            .map(|d| d.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn first_digit() {
        assert_eq!(digit1(&rat(1, 2)).unwrap(), ExtDigit::finite(2u32));
        assert_eq!(digit1(&rat(0, 1)).unwrap(), ExtDigit::Infinity);
        // 8 div 3
        assert_eq!(digit1(&rat(3, 8)).unwrap(), ExtDigit::finite(8u32 / 3));
        assert!(matches!(digit1(&rat(3, 2)), Err(Error::Domain(_))));
        assert!(matches!(digit1(&rat(-1, 2)), Err(Error::Domain(_))));
    }

    #[test]
    fn shift_values() {
        assert_eq!(
            shift(&rat(3, 8)).unwrap(),
            Rat::one() - rat(2, 1) * rat(3, 8)
        );
        assert_eq!(shift(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(shift(&rat(1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn expansions() {
        assert_eq!(digits(rat(1, 2)), vec![2]);
        assert_eq!(digits(rat(0, 1)), Vec::<u64>::new());
        assert_eq!(digits(rat(3, 8)), vec![2, 4]);
        assert_eq!(digits(rat(1, 1)), vec![1]);
    }

    #[test]
    fn expansion_cap_is_enforced() {
        // 1000/1001 has a long-ish expansion; a cap of 1 must trip.
        assert_eq!(
            expand_capped(&rat(1000, 1001), 1),
            Err(Error::ExpansionOverflow { cap: 1 })
        );
    }

    #[test]
    fn convergents() {
        assert_eq!(convergent(&rat(3, 8), 1).unwrap(), rat(1, 2));
        assert_eq!(convergent(&rat(3, 8), 2).unwrap(), rat(1, 2) - rat(1, 8));
        assert_eq!(convergent(&rat(0, 1), 5).unwrap(), rat(0, 1));
        assert!(convergent(&rat(1, 3), 0).is_err());
    }

    #[test]
    fn word_sized_expansion_matches() {
        for q in 1..60u64 {
            for p in 0..=q {
                let big: Vec<u64> = digits(rat(p as i64, q as i64));
                // The unreduced fraction gives the same digits.
                assert_eq!(expand_u64(p, q), big, "{p}/{q}");
            }
        }
    }

    #[test]
    fn streams() {
        let e = constant_stream("one-minus-inv-e").unwrap();
        assert_eq!(
            e.iter()
                .take(4)
                .map(|d| d.to_u64().unwrap())
                .collect::<Vec<_>>(),
            [1, 2, 3, 4]
        );
        let even = DigitStream::arithmetic(2, 0).unwrap();
        assert_eq!(
            even.iter()
                .take(3)
                .map(|d| d.to_u64().unwrap())
                .collect::<Vec<_>>(),
            [2, 4, 6]
        );
        let t = DigitStream::table(vec![2u32.into(), 4u32.into()]).unwrap();
        assert_eq!(
            t.iter().map(|d| d.to_u64().unwrap()).collect::<Vec<_>>(),
            [2, 4]
        );
        assert_eq!(t.digit(3), ExtDigit::Infinity);
        let f = DigitStream::factorial();
        assert_eq!(
            f.iter()
                .take(4)
                .map(|d| d.to_u64().unwrap())
                .collect::<Vec<_>>(),
            [1, 2, 6, 24]
        );
        assert!(matches!(
            constant_stream("sin-1"),
            Err(Error::UnknownConstant(_))
        ));
    }

    #[test]
    fn invalid_streams_are_rejected() {
        assert!(DigitStream::arithmetic(0, 5).is_err());
        assert!(DigitStream::arithmetic(1, -1).is_err());
        assert!(DigitStream::table(vec![2u32.into(), 2u32.into()]).is_err());
        assert!(DigitStream::table(vec![1u32.into(), 2u32.into(), 2u32.into()]).is_err());
    }

    #[test]
    fn stream_parsing() {
        assert_eq!(
            DigitStream::parse("const:one-minus-inv-e").unwrap(),
            DigitStream::arithmetic(1, 0).unwrap()
        );
        assert_eq!(
            DigitStream::parse("arith:2:1").unwrap(),
            DigitStream::arithmetic(2, 1).unwrap()
        );
        assert_eq!(
            DigitStream::parse("table:2,4").unwrap().to_string(),
            "table:2,4"
        );
        assert!(DigitStream::parse("nope").is_err());
    }
}
