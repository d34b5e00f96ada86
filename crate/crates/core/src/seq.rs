//! The space of Pierce sequences: finite sequences padded with `∞`, and
//! infinite strictly increasing sequences given by a digit rule.
//!
//! Values attached to infinite sequences (the evaluation map, the product
//! metric) are returned as [`Enclosure`]s whose width is exactly the
//! truncation bound of the producing operation.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::digits::{check_pierce_digits, DigitStream, ExtDigit};
use crate::error::{Error, Result};
use crate::rat::{factorial, fmt_rat, Rat};

/// Largest truncation depth accepted by evaluation routines.
pub const MAX_DEPTH: usize = 10_000;

/// A certified rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        debug_assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi }
    }

    pub fn exact(x: Rat) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    /// `[x, x + w]` if `up`, otherwise `[x - w, x]`.
    pub fn one_sided(x: Rat, w: Rat, up: bool) -> Self {
        if up {
            let hi = &x + w;
            Enclosure { lo: x, hi }
        } else {
            let lo = &x - w;
            Enclosure { lo, hi: x }
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fmt_rat(&self.lo), fmt_rat(&self.hi))
    }
}

impl Serialize for Enclosure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// An element of the Pierce sequence space.
///
/// `tail == None` means every digit after the prefix is `∞`. Otherwise digit
/// `n > prefix.len()` is `tail.digit(n)`. Two stream-backed sequences are equal
/// when their prefixes and rules are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PierceSeq {
    prefix: Vec<BigUint>,
    tail: Option<DigitStream>,
}

impl PierceSeq {
    pub fn empty() -> Self {
        PierceSeq {
            prefix: Vec::new(),
            tail: None,
        }
    }

    pub fn finite(prefix: Vec<BigUint>) -> Result<Self> {
        check_pierce_digits(&prefix, 0, None).map_err(Error::Domain)?;
        Ok(PierceSeq { prefix, tail: None })
    }

    pub fn from_u64(prefix: &[u64]) -> Result<Self> {
        PierceSeq::finite(prefix.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub(crate) fn finite_unchecked(prefix: Vec<BigUint>) -> Self {
        PierceSeq { prefix, tail: None }
    }

    /// Parses `(2,4,7)` / `2,4,7` / `()`, or any stream literal accepted by
    /// [`DigitStream::parse`].
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with(|c: char| c.is_ascii_digit() || c == '(') {
            PierceSeq::finite(crate::digits::parse_digit_list(t)?)
        } else {
            Ok(PierceSeq::from_stream(DigitStream::parse(t)?))
        }
    }

    pub fn from_stream(stream: DigitStream) -> Self {
        match stream {
            DigitStream::Table(t) => PierceSeq {
                prefix: t,
                tail: None,
            },
            s => PierceSeq {
                prefix: Vec::new(),
                tail: Some(s),
            },
        }
    }

    /// A finite prefix followed by the rule's digits from index
    /// `prefix.len() + 1` on.
    pub fn with_tail(prefix: Vec<BigUint>, stream: DigitStream) -> Result<Self> {
        check_pierce_digits(&prefix, 0, None).map_err(Error::Domain)?;
        if let DigitStream::Table(t) = &stream {
            let mut all = prefix;
            all.extend(t.iter().skip(all.len()).cloned());
            return PierceSeq::finite(all);
        }
        let next = stream.digit(prefix.len() + 1);
        if let (Some(last), Some(next)) = (prefix.last(), next.as_finite()) {
            if next <= last {
                return Err(Error::Domain("stream digits must exceed the prefix".into()));
            }
        }
        Ok(PierceSeq {
            prefix,
            tail: Some(stream),
        })
    }

    pub fn prefix(&self) -> &[BigUint] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&DigitStream> {
        self.tail.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Number of finite digits, or `None` for an infinite sequence.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.prefix.is_empty()
    }

    /// Digit `n` (1-based).
    pub fn digit(&self, n: usize) -> ExtDigit {
        assert!(n >= 1, "digits are indexed from 1");
        if let Some(d) = self.prefix.get(n - 1) {
            return ExtDigit::Finite(d.clone());
        }
        match &self.tail {
            None => ExtDigit::Infinity,
            Some(s) => s.digit(n),
        }
    }

    /// The finite digits among the first `n`.
    pub fn digits_upto(&self, n: usize) -> Vec<BigUint> {
        (1..=n)
            .map_while(|k| self.digit(k).as_finite().cloned())
            .collect()
    }

    fn finite_prefix(&self) -> Result<&[BigUint]> {
        if self.is_finite() && !self.prefix.is_empty() {
            Ok(&self.prefix)
        } else {
            Err(Error::NotFiniteNonEmpty)
        }
    }
}

impl fmt::Display for PierceSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.prefix.iter().map(|d| d.to_string()).collect();
        match &self.tail {
            None => write!(f, "({})", parts.join(",")),
            Some(s) if parts.is_empty() => write!(f, "({s})"),
            Some(s) => write!(f, "({},{s}...)", parts.join(",")),
        }
    }
}

impl Serialize for PierceSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Order and digits of a cylinder set: all sequences beginning with `prefix`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderId {
    prefix: Vec<BigUint>,
}

impl CylinderId {
    pub fn new(prefix: Vec<BigUint>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::Precondition("a cylinder needs order >= 1".into()));
        }
        check_pierce_digits(&prefix, 0, None).map_err(Error::Domain)?;
        Ok(CylinderId { prefix })
    }

    pub fn from_u64(prefix: &[u64]) -> Result<Self> {
        CylinderId::new(prefix.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub(crate) fn from_u64_unchecked(prefix: &[u64]) -> Self {
        CylinderId {
            prefix: prefix.iter().map(|&d| BigUint::from(d)).collect(),
        }
    }

    pub fn of_seq(seq: &PierceSeq) -> Result<Self> {
        CylinderId::new(seq.finite_prefix()?.to_vec())
    }

    pub fn order(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix(&self) -> &[BigUint] {
        &self.prefix
    }

    pub fn last(&self) -> &BigUint {
        self.prefix.last().expect("non-empty by construction")
    }

    pub fn to_seq(&self) -> PierceSeq {
        PierceSeq::finite_unchecked(self.prefix.clone())
    }

    /// The child cylinder obtained by appending `d`.
    pub fn child(&self, d: BigUint) -> Result<Self> {
        if &d <= self.last() {
            return Err(Error::Domain(format!(
                "child digit {d} must exceed {}",
                self.last()
            )));
        }
        let mut prefix = self.prefix.clone();
        prefix.push(d);
        Ok(CylinderId { prefix })
    }

    pub fn product(&self) -> BigUint {
        self.prefix.iter().product()
    }
}

impl fmt::Display for CylinderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_seq().fmt(f)
    }
}

impl Serialize for CylinderId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A sequence fails to be some number's digit sequence exactly when it is
/// finite of length at least two and ends in two consecutive integers.
pub fn is_realizable(seq: &PierceSeq) -> bool {
    if !seq.is_finite() {
        return true;
    }
    match seq.prefix() {
        [.., a, b] => a + 1u32 != *b,
        _ => true,
    }
}

pub(crate) fn check_depth(depth: usize) -> Result<()> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    if depth > MAX_DEPTH {
        return Err(Error::DepthOverflow {
            requested: depth,
            cap: MAX_DEPTH,
        });
    }
    Ok(())
}

/// `phi` of a finite digit list, exactly.
pub fn phi_finite(digits: &[BigUint]) -> Rat {
    crate::digits::alternating_partial_sum(digits)
}

/// The evaluation map `phi(σ) = sum (-1)^{n+1} / (σ_1 ... σ_n)`.
///
/// Finite sequences give an exact value. For infinite sequences the series is
/// cut after `depth` terms; the tail has sign `(-1)^depth` and magnitude at
/// most `1/(σ_1 ... σ_{depth+1})`, which is the enclosure width.
pub fn phi(seq: &PierceSeq, depth: usize) -> Result<Enclosure> {
    check_depth(depth)?;
    if seq.is_finite() {
        return Ok(Enclosure::exact(phi_finite(seq.prefix())));
    }
    let digits = seq.digits_upto(depth + 1);
    let partial = phi_finite(&digits[..depth]);
    let bound = Rat::new(
        BigInt::one(),
        BigInt::from(digits.iter().product::<BigUint>()),
    );
    Ok(Enclosure::one_sided(partial, bound, depth % 2 == 0))
}

/// `σ^{(n)}`: keeps the first `n` digits, the rest become `∞`.
pub fn truncate(seq: &PierceSeq, n: usize) -> Result<PierceSeq> {
    if n == 0 {
        return Err(Error::Precondition(
            "truncation order must be at least 1".into(),
        ));
    }
    Ok(PierceSeq::finite_unchecked(seq.digits_upto(n)))
}

/// `σ̂`: the last digit incremented.
pub fn hat(seq: &PierceSeq) -> Result<PierceSeq> {
    let mut p = seq.finite_prefix()?.to_vec();
    *p.last_mut().expect("non-empty") += 1u32;
    Ok(PierceSeq::finite_unchecked(p))
}

/// `σ̂'`: the last digit plus one appended. Never realizable, and evaluates
/// to the same point as [`hat`].
pub fn hat_prime(seq: &PierceSeq) -> Result<PierceSeq> {
    let mut p = seq.finite_prefix()?.to_vec();
    let next = p.last().expect("non-empty") + 1u32;
    p.push(next);
    Ok(PierceSeq::finite_unchecked(p))
}

/// The metric on the extended naturals: `1/a + 1/b` for `a != b`.
pub fn rho(a: &ExtDigit, b: &ExtDigit) -> Rat {
    if a == b {
        Rat::zero()
    } else {
        a.recip() + b.recip()
    }
}

/// The product metric `sum_n rho(σ_n, τ_n) / n!`.
///
/// Exact when both sequences are `∞` past `depth`. Otherwise the tail is
/// enclosed using `rho(σ_k, τ_k) <= 2/k`, whose sum past `N` is at most
/// `4/(N+1)!`.
pub fn rho_seq(a: &PierceSeq, b: &PierceSeq, depth: usize) -> Result<Enclosure> {
    check_depth(depth)?;
    if a == b {
        return Ok(Enclosure::exact(Rat::zero()));
    }
    let mut sum = Rat::zero();
    let mut fact = BigUint::one();
    for n in 1..=depth {
        fact *= n;
        let r = rho(&a.digit(n), &b.digit(n));
        if !r.is_zero() {
            sum += r / Rat::from_integer(BigInt::from(fact.clone()));
        }
    }
    let exact_tail = a.len().is_some_and(|l| l <= depth) && b.len().is_some_and(|l| l <= depth);
    if exact_tail {
        Ok(Enclosure::exact(sum))
    } else {
        Ok(Enclosure::one_sided(sum, rho_tail_bound(depth), true))
    }
}

/// `4/(N+1)!`.
pub fn rho_tail_bound(depth: usize) -> Rat {
    Rat::new(BigInt::from(4), BigInt::from(factorial(depth as u64 + 1)))
}

/// The two preimages of a rational under `phi`: its own expansion and, for
/// points of `(0, 1)`, the non-realizable sequence ending in `d_n - 1, d_n`.
pub fn phi_preimages(x: &Rat) -> Result<Vec<PierceSeq>> {
    let own = crate::digits::expand(x)?;
    let p = own.prefix().to_vec();
    if p.is_empty() || (p.len() == 1 && p[0].is_one()) {
        return Ok(vec![own]);
    }
    let mut other = p.clone();
    let last = other.pop().expect("non-empty");
    other.push(&last - 1u32);
    other.push(last);
    Ok(vec![own, PierceSeq::finite_unchecked(other)])
}

/// Restriction used to make a prefix enumeration finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefixBound {
    /// `σ_n <= cap`.
    MaxDigit(u64),
    /// `σ_1 ... σ_n <= cap`.
    ProductAtMost(u128),
}

impl PrefixBound {
    /// Whether digit `v` at a position with `rest` digits still to come can be
    /// completed, given the product of the digits before it.
    fn feasible(&self, before: u128, v: u64, rest: usize) -> bool {
        match *self {
            PrefixBound::MaxDigit(cap) => v.checked_add(rest as u64).is_some_and(|m| m <= cap),
            PrefixBound::ProductAtMost(cap) => {
                let mut p = before;
                for k in 0..=rest as u64 {
                    match p.checked_mul((v + k) as u128) {
                        Some(q) if q <= cap => p = q,
                        _ => return false,
                    }
                }
                true
            }
        }
    }
}

/// Every strictly increasing `n`-tuple of positive integers within `bound`,
/// once each, in lexicographic order.
pub fn enumerate_prefixes(n: usize, bound: PrefixBound) -> Result<PrefixIter> {
    if n == 0 {
        return Err(Error::Precondition(
            "prefix order must be at least 1".into(),
        ));
    }
    Ok(PrefixIter {
        n,
        bound,
        cur: Vec::with_capacity(n),
        started: false,
        done: false,
    })
}

/// Lazy lexicographic enumerator behind [`enumerate_prefixes`].
#[derive(Clone, Debug)]
pub struct PrefixIter {
    n: usize,
    bound: PrefixBound,
    cur: Vec<u64>,
    started: bool,
    done: bool,
}

impl PrefixIter {
    /// Advances and exposes the raw digits without allocating.
    pub fn next_digits(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        let ok = if self.started {
            self.advance()
        } else {
            self.first()
        };
        self.started = true;
        if ok {
            Some(&self.cur)
        } else {
            self.done = true;
            None
        }
    }

    fn product_before(&self, k: usize) -> u128 {
        self.cur[..k].iter().map(|&d| d as u128).product()
    }

    fn fill_from(&mut self, k: usize) {
        self.cur.truncate(k);
        while self.cur.len() < self.n {
            let next = self.cur.last().map_or(1, |&d| d + 1);
            self.cur.push(next);
        }
    }

    fn first(&mut self) -> bool {
        if !self.bound.feasible(1, 1, self.n - 1) {
            return false;
        }
        self.fill_from(0);
        true
    }

    fn advance(&mut self) -> bool {
        for k in (0..self.n).rev() {
            let v = self.cur[k] + 1;
            if self
                .bound
                .feasible(self.product_before(k), v, self.n - 1 - k)
            {
                self.cur[k] = v;
                self.fill_from(k + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for PrefixIter {
    type Item = CylinderId;

    fn next(&mut self) -> Option<CylinderId> {
        self.next_digits().map(CylinderId::from_u64_unchecked)
    }
}

#[cfg(test)]
pub(crate) fn to_u64_digits(digits: &[BigUint]) -> Option<Vec<u64>> {
    digits.iter().map(num_traits::ToPrimitive::to_u64).collect()
}
