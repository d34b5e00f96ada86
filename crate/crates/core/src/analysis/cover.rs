//! Cover diagnostics for the graph of `E`: the cover sums behind the
//! Hausdorff dimension bound and the `Λ_k` square counts behind the upper
//! box dimension bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::certified::{exp, factorial_index, ln, pow_rat, PREC};
use crate::error::{Error, Result};
use crate::intervals::omitted_mass;
use crate::rat::{factorial, fmt_rat, Rat};
use crate::seq::Enclosure;

/// Working precision of the cover-sum recursion.
const BITS: u32 = 128;

#[derive(Clone, Debug, Serialize)]
pub struct CoverSum {
    pub order: usize,
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub exponent: Rat,
    pub digit_cap: u64,
    /// `sum (sqrt(n^2+1) λ(I_σ))^s` over `σ_n <= cap`.
    pub capped: Enclosure,
    /// Upper bound on the same sum over `σ_n > cap`.
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub tail_bound: Rat,
    /// Encloses the uncapped sum.
    pub total: Enclosure,
}

/// The cover sum by a recursion over the last digit:
/// `F_1(j) = j^-s`, `F_k(j) = j^-s sum_{i<j} F_{k-1}(i)`, and the sum is
/// `sum_j (sum_{i<j} F_{n-1}(i)) (j (j+1))^-s`.
pub fn hausdorff_cover_sum(n: usize, s: &Rat, digit_cap: u64) -> Result<CoverSum> {
    if n == 0 {
        return Err(Error::Precondition("order must be at least 1".into()));
    }
    if *s < Rat::one() {
        return Err(Error::Precondition(format!(
            "exponent {} is below 1",
            fmt_rat(s)
        )));
    }
    if digit_cap == 0 {
        return Err(Error::Precondition("digit cap must be positive".into()));
    }
    let cap = digit_cap as usize;
    let neg = -s.clone();
    let w: Vec<Enclosure> = (0..=cap + 1)
        .map(|j| {
            if j == 0 {
                Ok(Enclosure::exact(Rat::zero()))
            } else {
                pow_rat(&BigUint::from(j), &neg, BITS)
            }
        })
        .collect::<Result<_>>()?;

    // prefix[j] = sum_{i<j} F_k(i); the empty prefix contributes 1.
    let zero = Enclosure::exact(Rat::zero());
    let mut prefix = vec![Enclosure::exact(Rat::one()); cap + 2];
    prefix[0] = zero.clone();
    for _ in 1..n {
        let mut next = vec![zero.clone(); cap + 2];
        let mut acc = zero.clone();
        for j in 1..=cap + 1 {
            next[j] = acc.clone();
            acc = acc.add(&w[j].mul(&prefix[j])).round_out(BITS);
        }
        prefix = next;
    }
    let mut capped = zero;
    for j in 1..=cap {
        capped = capped
            .add(&prefix[j].mul(&w[j]).mul(&w[j + 1]))
            .round_out(BITS);
    }
    let half = s / Rat::from_integer(BigInt::from(2));
    let stretch = pow_rat(&BigUint::from(n * n + 1), &half, BITS)?;
    let capped = capped.mul(&stretch).round_out(BITS);

    // Two tail bounds, keeping the smaller. First: every omitted interval has
    // λ <= 1/((n-1)! (cap+1)(cap+2)), so λ^s <= λmax^(s-1) λ and the λ sum
    // is the omitted mass.
    let d = factorial(n as u64 - 1) * BigUint::from((digit_cap + 1) * (digit_cap + 2));
    let lmax_pow = pow_rat(&d, &(Rat::one() - s), BITS)?;
    let tail = stretch
        .mul(&lmax_pow)
        .scale(&omitted_mass(n, digit_cap)?)
        .round_out(BITS);
    let mut tail_bound = tail.hi;
    // Second, for s > 1: the prefix sums are at most e_{n-1}(1^-s, 2^-s, ...)
    // <= Z^(n-1)/(n-1)! with Z >= zeta(s), and sum_{j>cap} j^-2s <= cap^(1-2s)/(2s-1).
    if *s > Rat::one() {
        let c = BigUint::from(digit_cap);
        let mut z = pow_rat(&c, &(Rat::one() - s), BITS)?.scale(&(s - Rat::one()).recip());
        for wj in &w[1..=cap] {
            z = z.add(wj).round_out(BITS);
        }
        let two_s1 = s * Rat::from_integer(BigInt::from(2)) - Rat::one();
        let rest = pow_rat(&c, &-two_s1.clone(), BITS)?;
        let alt = stretch
            .mul(&z.pow(n as u32 - 1))
            .mul(&rest)
            .scale(
                &(Rat::one() / (two_s1 * Rat::from_integer(BigInt::from(factorial(n as u64 - 1))))),
            )
            .round_out(BITS);
        if alt.hi < tail_bound {
            tail_bound = alt.hi;
        }
    }
    let total = Enclosure::new(capped.lo.clone(), &capped.hi + &tail_bound);
    Ok(CoverSum {
        order: n,
        exponent: s.clone(),
        digit_cap,
        capped,
        tail_bound,
        total,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    /// Square side `2 e^-M`, when the report was built from it.
    #[serde(serialize_with = "crate::rat::ser_opt_rat")]
    pub epsilon: Option<Rat>,
    pub m: Enclosure,
    pub exp_m: Enclosure,
    /// The `n` with `(n-1)! <= e^M <= n!`.
    pub n_of_m: u64,
    /// `a_1, ..., a_{n+1}`.
    pub per_k_counts: Vec<Enclosure>,
    pub total: Enclosure,
    /// `floor` of the certified lower end of `sum a_k`.
    #[serde(serialize_with = "crate::rat::ser_biguint")]
    pub total_bound: BigUint,
    /// Whether `a_1 < a_2 < ... < a_{n+1}` was certified.
    pub chain_holds: bool,
    pub empirical_count: Option<u64>,
}

impl CoverReport {
    pub fn with_empirical(mut self, count: u64) -> Self {
        self.empirical_count = Some(count);
        self
    }

    /// `false` only when an attached empirical count exceeds the bound.
    pub fn consistent(&self) -> bool {
        self.empirical_count
            .is_none_or(|c| BigUint::from(c) <= self.total_bound)
    }
}

/// Square counts for a rational `M`.
pub fn lambda_cover_counts(m: &Rat) -> Result<CoverReport> {
    if !m.is_positive() {
        return Err(Error::Domain(format!(
            "M too small: {} is not positive",
            fmt_rat(m)
        )));
    }
    build(None, Enclosure::exact(m.clone()), exp(m, PREC))
}

/// Square counts at side `ε`, where `e^M = 2/ε` is exact and `M` is a
/// certified logarithm.
pub fn lambda_cover_for_epsilon(eps: &Rat) -> Result<CoverReport> {
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(Error::Domain(format!(
            "epsilon {} is outside (0, 1)",
            fmt_rat(eps)
        )));
    }
    let exp_m = Rat::from_integer(BigInt::from(2)) / eps;
    build(
        Some(eps.clone()),
        ln(&exp_m, PREC)?,
        Enclosure::exact(exp_m),
    )
}

fn build(epsilon: Option<Rat>, m: Enclosure, exp_m: Enclosure) -> Result<CoverReport> {
    let n = factorial_index(&exp_m)?;
    let two_plus_m = m.add(&Enclosure::exact(Rat::from_integer(BigInt::from(2))));
    let mut a = vec![Enclosure::exact(Rat::one())];
    for k in 2..=n + 1 {
        let log = ln(&Rat::from_integer(BigInt::from(k - 1)), PREC)?;
        let base = two_plus_m.add(&log).round_out(PREC);
        let k1 = Rat::from_integer(BigInt::from(k - 1));
        let fact = Rat::from_integer(BigInt::from(factorial(k - 1)));
        let ak = exp_m
            .mul(&base.pow((k - 2) as u32))
            .scale(&(k1 / fact))
            .round_out(PREC);
        a.push(ak);
    }
    let chain_holds = a.windows(2).all(|w| w[0].certainly_lt(&w[1]));
    let total = a
        .iter()
        .fold(Enclosure::exact(Rat::zero()), |acc, x| acc.add(x));
    let floor = total.lo.numer().div_floor(total.lo.denom());
    let total_bound = floor.to_biguint().unwrap_or_default();
    Ok(CoverReport {
        epsilon,
        m,
        exp_m,
        n_of_m: n,
        per_k_counts: a,
        total,
        total_bound,
        chain_holds,
        empirical_count: None,
    })
}

/// `f64` view of the `a_k`, for display.
pub fn per_k_f64(r: &CoverReport) -> Vec<f64> {
    r.per_k_counts
        .iter()
        .map(|e| e.mid().to_f64().unwrap_or(f64::NAN))
        .collect()
}
