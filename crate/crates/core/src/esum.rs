//! The error-sum functions: `E*` on Pierce sequences and `E = E* ∘ f` on
//! `[0, 1]`, their one-sided limits at rationals and exact extrema over
//! cylinder sets.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::digits::{self, convergent, expand, shift};
use crate::error::{Error, Result};
use crate::intervals::interval_length;
use crate::rat::{check_unit, fmt_rat, Rat};
use crate::seq::{
    self, check_depth, hat_prime, is_realizable, phi, CylinderId, Enclosure, PierceSeq,
};

/// `E*` of a finite digit list via `sum_{n<m} (-1)^n n / (σ_1 ... σ_{n+1})`,
/// accumulated over the common denominator `σ_1 ... σ_m`.
pub fn estar_finite(digits: &[BigUint]) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for (i, d) in digits.iter().enumerate() {
        let d = BigInt::from(d.clone());
        num *= &d;
        den *= &d;
        // Term n = i has denominator σ_1 ... σ_{i+1}.
        if i >= 1 {
            if i % 2 == 0 {
                num += i;
            } else {
                num -= i;
            }
        }
    }
    Rat::new(num, den)
}

/// `E*(σ)` from the closed formula.
///
/// Infinite sequences are cut at order `depth`: the remainder has sign
/// `(-1)^depth` and magnitude at most `depth / (σ_1 ... σ_{depth+1})`.
pub fn estar(seq: &PierceSeq, depth: usize) -> Result<Enclosure> {
    check_depth(depth)?;
    if seq.is_finite() {
        return Ok(Enclosure::exact(estar_finite(seq.prefix())));
    }
    let digits = seq.digits_upto(depth + 1);
    let head = estar_finite(&digits[..depth]);
    let prod: BigUint = digits.iter().product();
    let bound = Rat::new(BigInt::from(depth), BigInt::from(prod));
    Ok(Enclosure::one_sided(head, bound, depth % 2 == 0))
}

/// `E*(σ)` as the defining double series `sum_j (phi(σ) - phi_j(σ))`.
///
/// For infinite sequences every term uses the depth-`depth` enclosure of
/// `phi`, and the terms with `j >= depth` are bounded together by
/// `(depth + 2) / ((depth + 1) σ_1 ... σ_{depth+1})`.
pub fn estar_by_definition(seq: &PierceSeq, depth: usize) -> Result<Enclosure> {
    check_depth(depth)?;
    let value = phi(seq, depth)?;
    let terms = match seq.len() {
        Some(m) => m.saturating_sub(1),
        None => depth - 1,
    };
    let digits = seq.digits_upto(terms.max(depth) + 1);
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for j in 1..=terms {
        let partial = seq::phi_finite(&digits[..j]);
        lo += &value.lo - &partial;
        hi += &value.hi - &partial;
    }
    if !seq.is_finite() {
        let prod: BigUint = digits[..=depth].iter().product();
        let tail = Rat::new(BigInt::from(depth + 2), BigInt::from(prod * (depth + 1)));
        lo -= &tail;
        hi += tail;
    }
    Ok(Enclosure::new(lo, hi))
}

/// `E(x)` for rational `x`, exactly.
pub fn esum(x: &Rat) -> Result<Rat> {
    Ok(estar_finite(expand(x)?.prefix()))
}

/// `E` at the point encoded by a realizable (typically stream-backed)
/// sequence.
pub fn esum_stream(seq: &PierceSeq, depth: usize) -> Result<Enclosure> {
    if !is_realizable(seq) {
        return Err(Error::NotRealizable);
    }
    estar(seq, depth)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// One-sided behaviour of `E` at a rational point of `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpReport {
    pub x: Rat,
    /// The side on which `E` jumps; it is continuous from the other side.
    pub side: Side,
    /// Limit of `E` from the jumping side.
    pub limit_value: Rat,
    /// `E(x)`, also the limit from the continuous side.
    pub interior_value: Rat,
    pub jump_magnitude: Rat,
    pub expansion_length_parity: Parity,
    /// The realizable and non-realizable preimages of `x` under `phi`.
    pub preimages: (PierceSeq, PierceSeq),
}

impl JumpReport {
    pub fn left_limit(&self) -> &Rat {
        match self.side {
            Side::Left => &self.limit_value,
            Side::Right => &self.interior_value,
        }
    }

    pub fn right_limit(&self) -> &Rat {
        match self.side {
            Side::Right => &self.limit_value,
            Side::Left => &self.interior_value,
        }
    }
}

/// Both one-sided limits of `E` at a rational `x` in `(0, 1)`.
///
/// With `x = [d_1, ..., d_n]`, the jump is `1/(d_1 ... d_{n-1} (d_n - 1) d_n)`:
/// downward to the right for odd `n`, upward to the left for even `n`. The
/// limit values are checked against `E*` of the two `phi`-preimages.
pub fn jumps_at(x: &Rat) -> Result<JumpReport> {
    check_unit(x)?;
    if x.is_zero() || x.is_one() {
        return Err(Error::Domain(format!(
            "{} has a single phi-preimage; no jump",
            fmt_rat(x)
        )));
    }
    let own = expand(x)?;
    let d = own.prefix();
    let n = d.len();
    let last = &d[n - 1];
    let denom: BigUint = d[..n - 1].iter().product::<BigUint>() * (last - 1u32) * last;
    let magnitude = Rat::new(BigInt::one(), BigInt::from(denom));
    let interior = estar_finite(d);
    let (side, parity, limit) = if n % 2 == 1 {
        (Side::Right, Parity::Odd, &interior - &magnitude)
    } else {
        (Side::Left, Parity::Even, &interior + &magnitude)
    };

    let mut other = d[..n - 1].to_vec();
    other.push(last - 1u32);
    other.push(last.clone());
    let via_preimage = estar_finite(&other);
    if via_preimage != limit {
        return Err(Error::Inconsistent(format!(
            "jump limit {} differs from E* of the preimage {}",
            fmt_rat(&limit),
            fmt_rat(&via_preimage)
        )));
    }
    Ok(JumpReport {
        x: x.clone(),
        side,
        limit_value: limit,
        interior_value: interior,
        jump_magnitude: magnitude,
        expansion_length_parity: parity,
        preimages: (own, PierceSeq::finite(other)?),
    })
}

/// Exact maximum and minimum of `E*` over a cylinder set and where they are
/// attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderExtrema {
    pub max: Rat,
    pub min: Rat,
    pub argmax: PierceSeq,
    pub argmin: PierceSeq,
}

/// For odd order the maximum sits at `σ` and the minimum at `σ̂'`, lower by
/// `n λ(I_σ)`; for even order the roles swap.
pub fn cylinder_extrema(cyl: &CylinderId) -> CylinderExtrema {
    let own = cyl.to_seq();
    let at_own = estar_finite(cyl.prefix());
    let spread = oscillation(cyl);
    let hp = hat_prime(&own).expect("cylinders are finite and non-empty");
    if cyl.order() % 2 == 1 {
        CylinderExtrema {
            min: &at_own - spread,
            max: at_own,
            argmax: own,
            argmin: hp,
        }
    } else {
        CylinderExtrema {
            max: &at_own + spread,
            min: at_own,
            argmax: hp,
            argmin: own,
        }
    }
}

/// `sup |E(t) - E(u)|` over the fundamental interval, which is `n λ(I_σ)`.
pub fn oscillation(cyl: &CylinderId) -> Rat {
    interval_length(cyl) * Rat::from_integer(BigInt::from(cyl.order()))
}

/// Evaluates `E(x) = sum_{k<=n} (x - s_k(x)) + (-1)^n E(T^n x) / (d_1 ... d_n)`
/// with both sides computed independently, and reports whether they agree.
pub fn recursion_check(x: &Rat, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition(
            "recursion depth must be at least 1".into(),
        ));
    }
    let lhs = esum(x)?;
    let mut rhs = Rat::zero();
    for k in 1..=n {
        rhs += x - convergent(x, k)?;
    }
    let mut t = x.clone();
    let mut prod = Rat::one();
    let mut vanished = false;
    for _ in 0..n {
        match digits::digit1(&t)? {
            digits::ExtDigit::Infinity => {
                vanished = true;
                break;
            }
            digits::ExtDigit::Finite(d) => {
                prod *= Rat::from_integer(BigInt::from(d));
                t = shift(&t)?;
            }
        }
    }
    if !vanished {
        let tail = esum(&t)? / prod;
        if n % 2 == 0 {
            rhs += tail;
        } else {
            rhs -= tail;
        }
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::constant_stream;
    use crate::rat::rat;

    fn seq(d: &[u64]) -> PierceSeq {
        PierceSeq::from_u64(d).unwrap()
    }

    fn cyl(d: &[u64]) -> CylinderId {
        CylinderId::from_u64(d).unwrap()
    }

    #[test]
    fn closed_formula_values() {
        assert_eq!(
            estar(&seq(&[1, 2]), 1).unwrap(),
            Enclosure::exact(rat(-1, 2))
        );
        assert_eq!(
            estar(&seq(&[2, 3]), 1).unwrap(),
            Enclosure::exact(rat(-1, 6))
        );
        for k in 1..10 {
            assert_eq!(estar(&seq(&[k]), 1).unwrap(), Enclosure::exact(rat(0, 1)));
        }
    }

    #[test]
    fn definition_values() {
        assert_eq!(
            estar_by_definition(&seq(&[2, 3]), 1).unwrap(),
            Enclosure::exact(rat(-1, 6))
        );
        assert_eq!(
            estar_by_definition(&PierceSeq::empty(), 1).unwrap(),
            Enclosure::exact(rat(0, 1))
        );
        // (3/8 - 1/2) + 0
        assert_eq!(
            estar_by_definition(&seq(&[2, 4]), 1).unwrap(),
            Enclosure::exact(rat(-1, 8))
        );
    }

    /// 2/e - 1 = -0.26424111765711535680895245967707826510837773793646...
    fn two_over_e_minus_one() -> (Rat, Rat) {
        (
            rat(-264_241_117_657_115_357, 1_000_000_000_000_000_000),
            rat(-264_241_117_657_115_356, 1_000_000_000_000_000_000),
        )
    }

    #[test]
    fn stream_enclosures_contain_two_over_e_minus_one() {
        let s = PierceSeq::from_stream(constant_stream("one-minus-inv-e").unwrap());
        let (lo, hi) = two_over_e_minus_one();
        // Depth 14 keeps both enclosures wider than the decimal reference.
        let e = estar(&s, 14).unwrap();
        assert!(e.lo <= lo && hi <= e.hi, "{e}");
        let d = estar_by_definition(&s, 14).unwrap();
        assert!(d.lo <= lo && hi <= d.hi, "{d}");
        assert!(e.overlaps(&d));
        let deep = estar(&s, 30).unwrap();
        assert!(deep.overlaps(&Enclosure::new(lo.clone(), hi.clone())) && e.contains(&deep.lo));
        let via_e = esum_stream(&s, 14).unwrap();
        assert_eq!(via_e, e);
    }

    #[test]
    fn stream_width_at_depth_five() {
        let s = PierceSeq::from_stream(constant_stream("one-minus-inv-e").unwrap());
        let e = esum_stream(&s, 5).unwrap();
        // 5 / (1*2*3*4*5*6)
        assert_eq!(e.width(), rat(5, 720));
    }

    #[test]
    fn esum_values() {
        assert_eq!(esum(&rat(3, 8)).unwrap(), rat(-1, 8));
        assert_eq!(esum(&rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(esum(&rat(1, 2)).unwrap(), rat(0, 1));
        let finite =
            PierceSeq::from_stream(crate::digits::DigitStream::parse("table:2,4").unwrap());
        assert_eq!(
            esum_stream(&finite, 3).unwrap(),
            Enclosure::exact(rat(-1, 8))
        );
        assert_eq!(esum_stream(&seq(&[2, 3]), 3), Err(Error::NotRealizable));
    }

    #[test]
    fn non_commutation_witness() {
        let s = seq(&[2, 3]);
        let x = phi(&s, 1).unwrap().lo;
        assert_eq!(esum(&x).unwrap(), rat(0, 1));
        assert_eq!(estar(&s, 1).unwrap().lo, rat(-1, 6));
    }

    #[test]
    fn jumps() {
        let j = jumps_at(&rat(1, 2)).unwrap();
        assert_eq!(j.side, Side::Right);
        assert_eq!(*j.right_limit(), rat(-1, 2));
        assert_eq!(*j.left_limit(), rat(0, 1));
        assert_eq!(j.jump_magnitude, rat(1, 2));

        let j = jumps_at(&rat(3, 8)).unwrap();
        assert_eq!(j.expansion_length_parity, Parity::Even);
        assert_eq!(*j.left_limit(), rat(-1, 12));
        assert_eq!(*j.right_limit(), rat(-1, 8));
        assert_eq!(estar_finite(j.preimages.1.prefix()), rat(-1, 12));

        let j = jumps_at(&rat(1, 3)).unwrap();
        assert_eq!(*j.right_limit(), rat(-1, 6));

        assert!(matches!(jumps_at(&rat(0, 1)), Err(Error::Domain(_))));
        assert!(matches!(jumps_at(&rat(1, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn extrema_examples() {
        let e = cylinder_extrema(&cyl(&[2]));
        assert_eq!((e.max.clone(), e.min.clone()), (rat(0, 1), rat(-1, 6)));
        assert_eq!((e.argmax, e.argmin), (seq(&[2]), seq(&[2, 3])));

        let e = cylinder_extrema(&cyl(&[1]));
        assert_eq!((e.max, e.min), (rat(0, 1), rat(-1, 2)));
        assert_eq!(e.argmin, seq(&[1, 2]));

        let e = cylinder_extrema(&cyl(&[1, 2]));
        assert_eq!((e.max, e.min), (rat(-1, 6), rat(-1, 2)));
        assert_eq!(e.argmax, seq(&[1, 2, 3]));
    }

    #[test]
    fn oscillations() {
        assert_eq!(oscillation(&cyl(&[2])), rat(1, 6));
        assert_eq!(oscillation(&cyl(&[1])), rat(1, 2));
        assert_eq!(oscillation(&cyl(&[1, 2])), rat(1, 3));
    }

    /// Brute force over extensions of a few prefixes (digits <= 40, total
    /// length <= 4).
    #[test]
    fn extrema_against_brute_force() {
        fn walk(cur: &mut Vec<u64>, max_len: usize, cap: u64, f: &mut dyn FnMut(&[u64])) {
            f(cur);
            if cur.len() == max_len {
                return;
            }
            for d in cur.last().unwrap() + 1..=cap {
                cur.push(d);
                walk(cur, max_len, cap, f);
                cur.pop();
            }
        }
        for p in [&[2u64][..], &[1, 2], &[1], &[3, 5]] {
            let ext = cylinder_extrema(&cyl(p));
            let mut seen_min = None::<Rat>;
            let mut seen_max = None::<Rat>;
            walk(&mut p.to_vec(), 4, 40, &mut |s| {
                let v = estar_finite(&s.iter().map(|&d| BigUint::from(d)).collect::<Vec<_>>());
                assert!(ext.min <= v && v <= ext.max, "{s:?}");
                if seen_min.as_ref().is_none_or(|m| v < *m) {
                    seen_min = Some(v.clone());
                }
                if seen_max.as_ref().is_none_or(|m| v > *m) {
                    seen_max = Some(v);
                }
            });
            assert_eq!(seen_min.unwrap(), ext.min);
            assert_eq!(seen_max.unwrap(), ext.max);
        }
    }

    #[test]
    fn recursion_identity() {
        assert!(recursion_check(&rat(3, 8), 1).unwrap());
        assert!(recursion_check(&rat(3, 8), 2).unwrap());
        assert!(recursion_check(&rat(0, 1), 3).unwrap());
        assert!(recursion_check(&rat(17, 93), 4).unwrap());
    }
}
