//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's arithmetic.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Digits of `p/q` by the remainder recursion `d = q div p`, `p <- q mod p`.
pub fn digits(x: &Q) -> Vec<u64> {
    let (mut p, den) = (x.numer().clone(), x.denom().clone());
    let mut out = Vec::new();
    while !p.is_zero() {
        let d = &den / &p;
        out.push(u64::try_from(d).expect("digit fits u64"));
        p = &den % &p;
    }
    out
}

/// `T^n x`, or `None` once the orbit has reached 0 earlier.
pub fn shift_n(x: &Q, n: usize) -> Q {
    let (mut p, den) = (x.numer().clone(), x.denom().clone());
    for _ in 0..n {
        if p.is_zero() {
            break;
        }
        p = &den % &p;
    }
    Q::new(p, den)
}

/// Partial sums `phi_1, ..., phi_m` of `sum (-1)^(k+1) / (d_1 ... d_k)`.
pub fn partial_sums(d: &[u64]) -> Vec<Q> {
    let mut prod = BigInt::one();
    let mut s = Q::zero();
    d.iter()
        .enumerate()
        .map(|(k, &x)| {
            prod *= x;
            let t = Q::new(BigInt::one(), prod.clone());
            if k % 2 == 0 {
                s += t;
            } else {
                s -= t;
            }
            s.clone()
        })
        .collect()
}

pub fn phi(d: &[u64]) -> Q {
    partial_sums(d).last().cloned().unwrap_or_else(Q::zero)
}

/// `E*` of a finite sequence straight from the definition
/// `sum_n (phi(σ) - phi_n(σ))`.
pub fn estar_def(d: &[u64]) -> Q {
    let ps = partial_sums(d);
    let total = ps.last().cloned().unwrap_or_else(Q::zero);
    ps.iter().map(|s| &total - s).fold(Q::zero(), |a, b| a + b)
}

pub fn prod(d: &[u64]) -> BigUint {
    d.iter().map(|&x| BigUint::from(x)).product()
}

/// Uniform `p/q` in `(0, 1)` with `2 <= q <= max_den`.
pub fn random_unit<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    let den = rng.gen_range(2..=max_den);
    q(rng.gen_range(1..den), den)
}

/// A random strictly increasing sequence of length `1..=max_len`.
pub fn random_seq<R: Rng>(rng: &mut R, max_len: usize, max_step: u64) -> Vec<u64> {
    let len = rng.gen_range(1..=max_len);
    let mut d = Vec::with_capacity(len);
    let mut last = 0u64;
    for _ in 0..len {
        last += rng.gen_range(1..=max_step);
        d.push(last);
    }
    d
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
