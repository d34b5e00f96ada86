//! Exhaustive counts of digit sequences with a bounded product, against the
//! analytic bounds `p (2 + ln p)^(m-1)` and the same divided by `m!`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use crate::certified::{exp, ln, PREC};
use crate::error::{Error, Result};
use crate::rat::{factorial, Rat};
use crate::seq::Enclosure;

/// Largest `p * m` accepted by the counters.
pub const COUNT_BUDGET: u64 = 200_000_000;

/// Working precision for the logarithms in the bounds.
const BITS: u32 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub p: u64,
    pub m: u32,
    pub increasing: bool,
    pub count: u64,
    pub bound: Enclosure,
    /// `count` is certified to be at most the bound.
    pub within_bound: bool,
}

/// Counts for every `p <= p_max` and `m <= m_max` at once.
///
/// `any[k][p]` is the number of sequences of length exactly `k` (entries
/// unrestricted) with product exactly `p`; `inc[k][p]` the same for strictly
/// increasing sequences. Index 0 is unused.
#[derive(Clone, Debug)]
pub struct CountTable {
    pub p_max: u64,
    pub m_max: u32,
    any: Vec<Vec<u64>>,
    inc: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn build(p_max: u64, m_max: u32) -> Result<Self> {
        if p_max == 0 || m_max == 0 {
            return Err(Error::Precondition("p and m must be at least 1".into()));
        }
        if p_max.saturating_mul(m_max as u64) > COUNT_BUDGET {
            return Err(Error::ResourceCap(format!(
                "p m = {} exceeds {COUNT_BUDGET}",
                p_max as u128 * m_max as u128
            )));
        }
        let len = p_max as usize + 1;
        let m = m_max as usize;
        // Ordered tuples: append any digit d to a tuple of product a.
        let mut any = vec![vec![0u64; len]; m + 1];
        any[1][1..].fill(1);
        for k in 2..=m {
            let (done, rest) = any.split_at_mut(k);
            let prev = &done[k - 1];
            let cur = &mut rest[0];
            for a in 1..len {
                if prev[a] == 0 {
                    continue;
                }
                let mut q = a;
                while q < len {
                    cur[q] += prev[a];
                    q += a;
                }
            }
        }
        // Increasing tuples by depth-first enumeration.
        let mut inc = vec![vec![0u64; len]; m + 1];
        fn walk(k: usize, last: u64, prod: u64, p_max: u64, m: usize, inc: &mut [Vec<u64>]) {
            inc[k][prod as usize] += 1;
            if k == m {
                return;
            }
            let mut d = last + 1;
            while prod * d <= p_max {
                walk(k + 1, d, prod * d, p_max, m, inc);
                d += 1;
            }
        }
        for d in 1..=p_max {
            walk(1, d, d, p_max, m, &mut inc);
        }
        // Cumulative in p.
        for row in any.iter_mut().chain(inc.iter_mut()) {
            for i in 1..len {
                row[i] += row[i - 1];
            }
        }
        Ok(CountTable {
            p_max,
            m_max,
            any,
            inc,
        })
    }

    /// `|S(p, m)|`: sequences of length `1..=m` with product `<= p`.
    pub fn unrestricted(&self, p: u64, m: u32) -> u64 {
        (1..=m as usize).map(|k| self.any[k][p as usize]).sum()
    }

    /// `|I(p, m)|`: strictly increasing sequences of length exactly `m`.
    pub fn increasing(&self, p: u64, m: u32) -> u64 {
        self.inc[m as usize][p as usize]
    }
}

/// `p (2 + ln p)^(m-1)`, divided by `m!` for the increasing variant.
pub fn analytic_bound(p: u64, m: u32, increasing: bool) -> Result<Enclosure> {
    let lp = ln(&Rat::from_integer(BigInt::from(p)), BITS)?;
    bound_from_log(p, m, increasing, &lp)
}

fn bound_from_log(p: u64, m: u32, increasing: bool, lp: &Enclosure) -> Result<Enclosure> {
    let base = lp.add(&Enclosure::exact(Rat::from_integer(BigInt::from(2))));
    let b = base
        .pow(m - 1)
        .scale(&Rat::from_integer(BigInt::from(p)))
        .round_out(BITS);
    Ok(if increasing {
        divide_factorial(&b, m)
    } else {
        b
    })
}

fn divide_factorial(b: &Enclosure, m: u32) -> Enclosure {
    b.scale(&Rat::new(BigInt::one(), BigInt::from(factorial(m as u64))))
        .round_out(BITS)
}

fn report(count: u64, p: u64, m: u32, increasing: bool, bound: Enclosure) -> CountReport {
    let within_bound = Rat::from_integer(BigInt::from(count)) <= bound.lo;
    CountReport {
        p,
        m,
        increasing,
        count,
        bound,
        within_bound,
    }
}

pub fn count_bounded_products(p: u64, m: u32, increasing: bool) -> Result<CountReport> {
    let table = CountTable::build(p, m)?;
    let count = if increasing {
        table.increasing(p, m)
    } else {
        table.unrestricted(p, m)
    };
    Ok(report(
        count,
        p,
        m,
        increasing,
        analytic_bound(p, m, increasing)?,
    ))
}

/// Every `(p, m, variant)` with `p <= p_max`, `m <= m_max`, in that order.
pub fn count_sweep(p_max: u64, m_max: u32) -> Result<Vec<CountReport>> {
    let table = CountTable::build(p_max, m_max)?;
    let mut out = Vec::with_capacity(2 * (p_max * m_max as u64) as usize);
    for p in 1..=p_max {
        let lp = ln(&Rat::from_integer(BigInt::from(p)), BITS)?;
        let base = lp.add(&Enclosure::exact(Rat::from_integer(BigInt::from(2))));
        let mut any = Enclosure::exact(Rat::from_integer(BigInt::from(p)));
        for m in 1..=m_max {
            if m > 1 {
                any = any.mul(&base).round_out(BITS);
            }
            out.push(report(table.unrestricted(p, m), p, m, false, any.clone()));
            out.push(report(
                table.increasing(p, m),
                p,
                m,
                true,
                divide_factorial(&any, m),
            ));
        }
    }
    Ok(out)
}

/// `n^n / e^(n-1) <= n! <= n^(n+1) / e^(n-1)`, certified.
pub fn factorial_bounds_check(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let en = exp(&Rat::from_integer(BigInt::from(n - 1)), PREC);
    let f = Rat::from_integer(BigInt::from(factorial(n)));
    let nn = Rat::from_integer(BigInt::from(BigUint::from(n).pow(n as u32)));
    let nn1 = &nn * Rat::from_integer(BigInt::from(n));
    Ok(nn <= &f * &en.lo && &f * &en.hi <= nn1)
}

/// Both factorial inequalities for `1..=n_max`.
pub fn factorial_bounds_all(n_max: u64) -> Result<bool> {
    for n in 1..=n_max {
        if !factorial_bounds_check(n)? {
            return Ok(false);
        }
    }
    Ok(true)
}
