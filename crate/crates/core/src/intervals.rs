//! Fundamental intervals: the set of points whose first `n` Pierce digits are
//! a given prefix.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digits::expand;
use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};
use crate::seq::{enumerate_prefixes, hat, is_realizable, phi_finite, CylinderId, PrefixBound};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundInterval {
    pub sigma: CylinderId,
    pub left: Rat,
    pub right: Rat,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl FundInterval {
    pub fn order(&self) -> usize {
        self.sigma.order()
    }

    pub fn length(&self) -> Rat {
        &self.right - &self.left
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let above = if self.left_closed {
            *x >= self.left
        } else {
            *x > self.left
        };
        let below = if self.right_closed {
            *x <= self.right
        } else {
            *x < self.right
        };
        above && below
    }

    /// Whether the interval meets the open interval `(a, b)`.
    pub fn meets_open(&self, a: &Rat, b: &Rat) -> bool {
        self.left < *b && self.right > *a
    }
}

impl std::fmt::Display for FundInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.left_closed { '[' } else { '(' },
            fmt_rat(&self.left),
            fmt_rat(&self.right),
            if self.right_closed { ']' } else { ')' }
        )
    }
}

impl Serialize for FundInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `I_σ` with exact endpoints `phi(σ)` and `phi(σ̂)`.
///
/// Odd order puts `phi(σ)` on the right, even order on the left. The `phi(σ)`
/// end is closed only when `σ` is realizable; the `phi(σ̂)` end is always open.
pub fn fundamental_interval(sigma: &CylinderId) -> FundInterval {
    let own = phi_finite(sigma.prefix());
    let hatted = hat(&sigma.to_seq()).expect("cylinders are non-empty");
    let other = phi_finite(hatted.prefix());
    let closed = is_realizable(&sigma.to_seq());
    if sigma.order() % 2 == 1 {
        FundInterval {
            sigma: sigma.clone(),
            left: other,
            right: own,
            left_closed: false,
            right_closed: closed,
        }
    } else {
        FundInterval {
            sigma: sigma.clone(),
            left: own,
            right: other,
            left_closed: closed,
            right_closed: false,
        }
    }
}

/// `λ(I_σ) = 1 / (σ_1 ... σ_n (σ_n + 1))`.
pub fn interval_length(sigma: &CylinderId) -> Rat {
    let den = sigma.product() * (sigma.last() + 1u32);
    Rat::new(BigInt::one(), BigInt::from(den))
}

/// The order-`n` fundamental intervals with `σ_n <= digit_cap`.
#[derive(Clone, Debug)]
pub struct Partition {
    pub order: usize,
    pub digit_cap: u64,
    pub intervals: Vec<FundInterval>,
    /// Total length of the intervals left out by the cap.
    pub residual: Rat,
    pub warning: Option<String>,
}

impl Partition {
    pub fn covered_mass(&self) -> Rat {
        Rat::one() - &self.residual
    }
}

pub fn partition(n: usize, digit_cap: u64) -> Result<Partition> {
    let intervals: Vec<FundInterval> = enumerate_prefixes(n, PrefixBound::MaxDigit(digit_cap))?
        .map(|c| fundamental_interval(&c))
        .collect();
    let covered: Rat = intervals
        .iter()
        .map(|i| i.length())
        .fold(Rat::zero(), |a, b| a + b);
    let warning = intervals
        .is_empty()
        .then(|| format!("digit cap {digit_cap} admits no prefix of order {n}"));
    Ok(Partition {
        order: n,
        digit_cap,
        intervals,
        residual: Rat::one() - covered,
        warning,
    })
}

/// Total length of the order-`n` intervals with `σ_n > cap`, by telescoping
/// `sum_{j > m} 1/(j (j+1)) = 1/(m+1)` instead of summing the covered part:
/// it equals `(1/(cap+1)) * sum_{k<n} sum_{τ of order k, digits <= cap} 1/(τ_1 ... τ_k)`.
pub fn omitted_mass(n: usize, digit_cap: u64) -> Result<Rat> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    // e[k] = elementary symmetric sum of 1/1, ..., 1/cap of degree k, which
    // is the sum of 1/(τ_1 ... τ_k) over increasing τ with digits <= cap.
    let mut e = vec![Rat::zero(); n];
    e[0] = Rat::one();
    for j in 1..=digit_cap {
        let inv = Rat::new(BigInt::one(), BigInt::from(j));
        for k in (1..n).rev() {
            let add = &e[k - 1] * &inv;
            e[k] += add;
        }
    }
    let total: Rat = e.into_iter().fold(Rat::zero(), |a, b| a + b);
    Ok(total / Rat::from_integer(BigInt::from(digit_cap + 1)))
}

/// The order-`n` cylinder containing `x`.
pub fn locate(x: &Rat, n: usize) -> Result<CylinderId> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    let e = expand(x)?;
    let len = e.prefix().len();
    if len < n {
        return Err(Error::ShortExpansion { len, order: n });
    }
    let c = CylinderId::new(e.prefix()[..n].to_vec())?;
    if !fundamental_interval(&c).contains(x) {
        return Err(Error::Inconsistent(format!(
            "{} not inside I{}",
            fmt_rat(x),
            c
        )));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn cyl(d: &[u64]) -> CylinderId {
        CylinderId::from_u64(d).unwrap()
    }

    #[test]
    fn interval_examples() {
        let i = fundamental_interval(&cyl(&[2]));
        assert_eq!((i.left.clone(), i.right.clone()), (rat(1, 3), rat(1, 2)));
        assert!(!i.left_closed && i.right_closed);
        assert_eq!(i.length(), rat(1, 6));
        assert_eq!(i.to_string(), "(1/3, 1/2]");

        let i = fundamental_interval(&cyl(&[1, 2]));
        assert_eq!((i.left.clone(), i.right.clone()), (rat(1, 2), rat(2, 3)));
        assert!(!i.left_closed && !i.right_closed);

        let i = fundamental_interval(&cyl(&[2, 4]));
        assert_eq!(i.to_string(), "[3/8, 2/5)");
        assert_eq!(i.length(), rat(1, 40));
    }

    #[test]
    fn lengths() {
        assert_eq!(interval_length(&cyl(&[2])), rat(1, 6));
        assert_eq!(interval_length(&cyl(&[1])), rat(1, 2));
        assert_eq!(interval_length(&cyl(&[2, 4])), rat(1, 40));
    }

    #[test]
    fn partitions() {
        let p = partition(1, 3).unwrap();
        let lens: Vec<Rat> = p.intervals.iter().map(|i| i.length()).collect();
        assert_eq!(lens, vec![rat(1, 2), rat(1, 6), rat(1, 12)]);
        assert_eq!(p.residual, rat(1, 4));
        assert_eq!(omitted_mass(1, 3).unwrap(), rat(1, 4));

        let p = partition(2, 3).unwrap();
        let ids: Vec<String> = p.intervals.iter().map(|i| i.sigma.to_string()).collect();
        assert_eq!(ids, ["(1,2)", "(1,3)", "(2,3)"]);
        assert_eq!(p.residual, omitted_mass(2, 3).unwrap());
        for (n, cap) in [(3, 7), (4, 9), (5, 6)] {
            assert_eq!(
                partition(n, cap).unwrap().residual,
                omitted_mass(n, cap).unwrap()
            );
        }

        let p = partition(3, 2).unwrap();
        assert!(p.intervals.is_empty() && p.warning.is_some());
        assert_eq!(p.residual, rat(1, 1));
    }

    #[test]
    fn order_one_mass_telescopes() {
        // sum_{k<=K} 1/(k(k+1)) = 1 - 1/(K+1)
        for cap in [1u64, 10, 100] {
            assert_eq!(
                partition(1, cap).unwrap().covered_mass(),
                rat(1, 1) - rat(1, cap as i64 + 1)
            );
        }
    }

    #[test]
    fn partitions_are_disjoint() {
        for n in 1..=3 {
            let mut p = partition(n, 9).unwrap().intervals;
            p.sort_by(|a, b| a.left.cmp(&b.left));
            for w in p.windows(2) {
                assert!(w[0].right <= w[1].left);
                if w[0].right == w[1].left {
                    assert!(!(w[0].right_closed && w[1].left_closed));
                }
            }
        }
    }

    #[test]
    fn locating() {
        assert_eq!(locate(&rat(3, 8), 1).unwrap(), cyl(&[2]));
        assert_eq!(locate(&rat(3, 8), 2).unwrap(), cyl(&[2, 4]));
        assert_eq!(locate(&rat(1, 2), 1).unwrap(), cyl(&[2]));
        assert_eq!(
            locate(&rat(1, 2), 2),
            Err(Error::ShortExpansion { len: 1, order: 2 })
        );
    }

    #[test]
    fn boundary_points_belong_only_to_realizable_cylinders() {
        // phi((2)) = phi((1,2)) = 1/2.
        assert!(fundamental_interval(&cyl(&[2])).contains(&rat(1, 2)));
        assert!(!fundamental_interval(&cyl(&[1, 2])).contains(&rat(1, 2)));
    }
}
