//! Left-endpoint Riemann sums of `E` over `[0, 1]`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::digits::expand_u64;
use crate::error::{Error, Result};
use crate::rat::{rat, Rat};
use crate::seq::Enclosure;

/// Values are floored to this many fractional bits before summation.
pub const SUM_BITS: u32 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct IntegralReport {
    pub grid_size: u64,
    /// Encloses the exact Riemann sum `(1/grid) sum_k E(k/grid)`.
    pub estimate: Enclosure,
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub target: Rat,
    /// Encloses `estimate - target`.
    pub deviation: Enclosure,
    /// Upper bound on `|estimate - target|`.
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub error_bound: Rat,
}

impl IntegralReport {
    pub fn estimate_f64(&self) -> f64 {
        crate::rat::to_f64(&self.estimate.mid())
    }
}

/// `floor(E(p/q) 2^SUM_BITS)` and whether the floor was exact.
fn scaled_value(p: u64, q: u64) -> (i128, bool) {
    let digits = expand_u64(p, q);
    let mut num = BigInt::zero();
    let mut den = BigUint::one();
    for (i, &d) in digits.iter().enumerate() {
        num *= d;
        den *= d;
        if i >= 1 {
            if i % 2 == 0 {
                num += i;
            } else {
                num -= i;
            }
        }
    }
    let den = BigInt::from(den);
    let (f, r) = (num << SUM_BITS as usize).div_mod_floor(&den);
    (f.to_i128().expect("|E| <= 1/2"), r.is_zero())
}

pub fn integrate_esum(grid: u64) -> Result<IntegralReport> {
    if grid == 0 {
        return Err(Error::Precondition("grid must be at least 1".into()));
    }
    let (sum, inexact) = (0..grid)
        .into_par_iter()
        .map(|k| {
            let (v, exact) = scaled_value(k, grid);
            (v, u64::from(!exact))
        })
        .reduce(|| (0i128, 0u64), |a, b| (a.0 + b.0, a.1 + b.1));
    let scale = BigInt::from(grid) << SUM_BITS as usize;
    let lo = Rat::new(BigInt::from(sum), scale.clone());
    let hi = Rat::new(BigInt::from(sum + inexact as i128), scale);
    let estimate = Enclosure::new(lo, hi);
    let target = rat(-1, 8);
    let deviation = estimate.sub(&Enclosure::exact(target.clone()));
    let error_bound = std::cmp::max(abs(&deviation.lo), abs(&deviation.hi));
    Ok(IntegralReport {
        grid_size: grid,
        estimate,
        target,
        deviation,
        error_bound,
    })
}

fn abs(x: &Rat) -> Rat {
    if *x < Rat::zero() {
        -x
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esum::esum;

    #[test]
    fn degenerate_grids() {
        let r = integrate_esum(1).unwrap();
        assert_eq!(r.estimate, Enclosure::exact(rat(0, 1)));
        let r = integrate_esum(2).unwrap();
        assert_eq!(r.estimate, Enclosure::exact(rat(0, 1)));
        assert!(integrate_esum(0).is_err());
    }

    #[test]
    fn small_grid_matches_exact_sum() {
        for grid in [3u64, 7, 16, 50] {
            let exact: Rat = (0..grid)
                .map(|k| esum(&rat(k as i64, grid as i64)).unwrap())
                .fold(Rat::zero(), |a, b| a + b)
                / Rat::from_integer(BigInt::from(grid));
            let r = integrate_esum(grid).unwrap();
            assert!(r.estimate.contains(&exact), "{grid}: {}", r.estimate);
            assert!(
                r.estimate.width() <= Rat::new(BigInt::one(), BigInt::one() << SUM_BITS as usize)
            );
        }
    }

    #[test]
    fn converges_towards_target() {
        let tol = rat(1, 100);
        let r = integrate_esum(1 << 12).unwrap();
        assert!(r.error_bound < tol, "{}", r.error_bound);
    }
}
