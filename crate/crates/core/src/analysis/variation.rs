//! Oscillation of `E` summed over the fundamental intervals of one order.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::esum::cylinder_extrema;
use crate::intervals::omitted_mass;
use crate::rat::Rat;
use crate::seq::{enumerate_prefixes, PrefixBound};

#[derive(Clone, Debug, Serialize)]
pub struct VariationReport {
    pub order: usize,
    pub digit_cap: u64,
    pub intervals: usize,
    /// `sum (max - min)` of `E*` over the capped partition.
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub capped_sum: Rat,
    /// Total length of the intervals excluded by the cap.
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub omitted_mass: Rat,
    /// Capped sum plus `n` times the omitted mass: the uncapped sum.
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub analytic_total: Rat,
}

pub fn variation_over_partition(n: usize, digit_cap: u64) -> Result<VariationReport> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let cylinders: Vec<_> = enumerate_prefixes(n, PrefixBound::MaxDigit(digit_cap))?.collect();
    let capped_sum = cylinders
        .par_iter()
        .map(|c| {
            let e = cylinder_extrema(c);
            e.max - e.min
        })
        .reduce(Rat::zero, |a, b| a + b);
    let omitted = omitted_mass(n, digit_cap)?;
    let analytic_total = &capped_sum + &omitted * Rat::from_integer(BigInt::from(n));
    Ok(VariationReport {
        order: n,
        digit_cap,
        intervals: cylinders.len(),
        capped_sum,
        omitted_mass: omitted,
        analytic_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn order_one_with_cap_three() {
        let r = variation_over_partition(1, 3).unwrap();
        assert_eq!(r.capped_sum, rat(3, 4));
        assert_eq!(r.analytic_total, rat(1, 1));
    }

    #[test]
    fn totals_equal_the_order() {
        for n in 1..=4 {
            for cap in [n as u64, n as u64 + 3, 12] {
                let r = variation_over_partition(n, cap).unwrap();
                assert_eq!(r.analytic_total, rat(n as i64, 1), "n={n} cap={cap}");
                assert_eq!(
                    r.capped_sum,
                    rat(n as i64, 1) * (rat(1, 1) - &r.omitted_mass)
                );
            }
        }
    }

    #[test]
    fn any_bound_is_exceeded() {
        // A candidate bound V is beaten by the partition of order ceil(V) + 1.
        let v = rat(5, 2);
        let r = variation_over_partition(4, 10).unwrap();
        assert!(r.analytic_total > v);
    }
}
