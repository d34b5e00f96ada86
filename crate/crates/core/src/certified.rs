//! Certified enclosures of `exp`, `ln` and rational powers.
//!
//! Everything is exact rational interval arithmetic. Series are truncated with
//! an explicit remainder bound and results are rounded outward to a dyadic
//! grid so that sizes stay bounded.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};
use crate::seq::Enclosure;

/// Default number of fractional bits kept by outward rounding.
pub const PREC: u32 = 160;

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn dyadic(n: BigInt, bits: u32) -> Rat {
    Rat::new(n, two_pow(bits))
}

/// `floor(x)` and `ceil(x)` on the `2^-bits` grid.
pub fn round_down(x: &Rat, bits: u32) -> Rat {
    dyadic((x.numer() << bits as usize).div_floor(x.denom()), bits)
}

pub fn round_up(x: &Rat, bits: u32) -> Rat {
    dyadic(
        -((-(x.numer() << bits as usize)).div_floor(x.denom())),
        bits,
    )
}

impl Enclosure {
    pub fn round_out(&self, bits: u32) -> Enclosure {
        Enclosure::new(round_down(&self.lo, bits), round_up(&self.hi, bits))
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        if !self.lo.is_negative() && !other.lo.is_negative() {
            return Enclosure::new(&self.lo * &other.lo, &self.hi * &other.hi);
        }
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().expect("four products").clone();
        let hi = c.iter().max().expect("four products").clone();
        Enclosure::new(lo, hi)
    }

    pub fn scale(&self, k: &Rat) -> Enclosure {
        self.mul(&Enclosure::exact(k.clone()))
    }

    pub fn pow(&self, k: u32) -> Enclosure {
        (0..k).fold(Enclosure::exact(Rat::one()), |acc, _| acc.mul(self))
    }

    /// `1 / x` for an enclosure of a positive number.
    pub fn recip(&self) -> Result<Enclosure> {
        if !self.lo.is_positive() {
            return Err(Error::Domain(format!(
                "reciprocal of {self} which is not positive"
            )));
        }
        Ok(Enclosure::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Certified `self < other`.
    pub fn certainly_lt(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }
}

/// `exp(x)` for a rational `x`, to about `bits` fractional bits.
pub fn exp(x: &Rat, bits: u32) -> Enclosure {
    if x.is_zero() {
        return Enclosure::exact(Rat::one());
    }
    if x.is_negative() {
        return exp(&-x, bits + 8)
            .recip()
            .expect("exp is positive")
            .round_out(bits);
    }
    // Taylor series in fixed point with terms rounded outward. Once
    // i + 2 > 2x the remainder after term i is at most twice the next term.
    let g = bits + 32;
    let (xn, xd) = (x.numer().clone(), x.denom().clone());
    let one = two_pow(g);
    let eps = two_pow(g - bits - 2);
    let (mut t_lo, mut t_hi) = (one.clone(), one.clone());
    let (mut s_lo, mut s_hi) = (one.clone(), one);
    let mut i = 0u64;
    loop {
        i += 1;
        let d = &xd * i;
        t_lo = (&t_lo * &xn).div_floor(&d);
        t_hi = ceil_div(&t_hi * &xn, &d);
        s_lo += &t_lo;
        s_hi += &t_hi;
        let next = ceil_div(&t_hi * &xn, &(&xd * (i + 1)));
        if BigInt::from(i + 2) * &xd > &xn * 2 && next < eps {
            s_hi += next * 2;
            return Enclosure::new(dyadic(s_lo, g), dyadic(s_hi, g)).round_out(bits);
        }
    }
}

fn ceil_div(a: BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Euler's number.
pub fn e(bits: u32) -> Enclosure {
    exp(&Rat::one(), bits)
}

/// `exp` of an enclosure, using monotonicity.
pub fn exp_enc(x: &Enclosure, bits: u32) -> Enclosure {
    Enclosure::new(exp(&x.lo, bits).lo, exp(&x.hi, bits).hi)
}

/// `2 atanh(z) = ln((1+z)/(1-z))` for `0 <= z <= 1/3`.
fn two_atanh(z: &Rat, bits: u32) -> Enclosure {
    if z.is_zero() {
        return Enclosure::exact(Rat::zero());
    }
    let g = bits + 32;
    let (zn, zd) = (z.numer().clone(), z.denom().clone());
    let (zn2, zd2) = (&zn * &zn, &zd * &zd);
    let gap = &zd2 - &zn2;
    let eps = two_pow(g - bits - 4);
    let mut p_lo = (&zn << g as usize).div_floor(&zd);
    let mut p_hi = ceil_div(&zn << g as usize, &zd);
    let (mut s_lo, mut s_hi) = (BigInt::zero(), BigInt::zero());
    let mut k = 0u64;
    loop {
        let d = BigInt::from(2 * k + 1);
        s_lo += p_lo.div_floor(&d);
        s_hi += ceil_div(p_hi.clone(), &d);
        p_lo = (&p_lo * &zn2).div_floor(&zd2);
        p_hi = ceil_div(&p_hi * &zn2, &zd2);
        k += 1;
        // sum_{i>=k} z^(2i+1)/(2i+1) <= z^(2k+1) / ((2k+1)(1 - z^2))
        let tail = ceil_div(&p_hi * &zd2, &(&gap * (2 * k + 1)));
        if tail < eps {
            let lo = dyadic(s_lo * 2, g);
            let hi = dyadic((s_hi + tail) * 2, g);
            return Enclosure::new(lo, hi).round_out(bits);
        }
    }
}

pub fn ln2(bits: u32) -> Enclosure {
    two_atanh(&Rat::new(BigInt::one(), BigInt::from(3)), bits)
}

/// `ln(x)` for a positive rational.
pub fn ln(x: &Rat, bits: u32) -> Result<Enclosure> {
    if !x.is_positive() {
        return Err(Error::Domain(format!(
            "ln of {} which is not positive",
            fmt_rat(x)
        )));
    }
    if x.is_one() {
        return Ok(Enclosure::exact(Rat::zero()));
    }
    // x = 2^k y with y in [1, 2).
    let k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = x.clone();
    let two = Rat::from_integer(BigInt::from(2));
    let mut k = k;
    y = if k >= 0 {
        y / Rat::from_integer(two_pow(k as u32))
    } else {
        y * Rat::from_integer(two_pow((-k) as u32))
    };
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < Rat::one() {
        y *= &two;
        k -= 1;
    }
    let z = (&y - Rat::one()) / (&y + Rat::one());
    let frac = two_atanh(&z, bits + 8);
    let whole = ln2(bits + 16).scale(&Rat::from_integer(BigInt::from(k)));
    Ok(frac.add(&whole).round_out(bits))
}

/// `ln` of an enclosure of a positive number.
pub fn ln_enc(x: &Enclosure, bits: u32) -> Result<Enclosure> {
    Ok(Enclosure::new(ln(&x.lo, bits)?.lo, ln(&x.hi, bits)?.hi))
}

/// `base^s` for a rational exponent `s = p/q` (negative via the reciprocal), via an integer
/// `q`-th root: `floor((base^p 2^(q bits))^(1/q))` brackets `base^s 2^bits`.
pub fn pow_rat(base: &BigUint, s: &Rat, bits: u32) -> Result<Enclosure> {
    if s.is_negative() {
        return pow_rat(base, &-s, bits + 8)?
            .recip()
            .map(|e| e.round_out(bits));
    }
    if base.is_zero() {
        return Ok(Enclosure::exact(if s.is_zero() {
            Rat::one()
        } else {
            Rat::zero()
        }));
    }
    let p = s
        .numer()
        .to_u32()
        .ok_or_else(|| Error::Domain("exponent numerator too large".into()))?;
    let q = s
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Domain("exponent denominator too large".into()))?;
    let scaled = base.pow(p) << (q as usize * bits as usize);
    let r = scaled.nth_root(q);
    let exact = r.pow(q) == scaled;
    let lo = dyadic(BigInt::from(r.clone()), bits);
    let hi = if exact {
        lo.clone()
    } else {
        dyadic(BigInt::from(r + 1u32), bits)
    };
    Ok(Enclosure::new(lo, hi))
}

/// Smallest `n >= 1` with `(n-1)! <= x <= n!`, certified from an enclosure
/// of `x`. Fails when the enclosure straddles a factorial.
pub fn factorial_index(x: &Enclosure) -> Result<u64> {
    if x.lo < Rat::one() {
        return Err(Error::Domain(format!("{x} is below 1")));
    }
    let mut n = 1u64;
    let mut f_prev = BigUint::one(); // (n-1)!
    let mut f = BigUint::one(); // n!
    loop {
        let fr = Rat::from_integer(BigInt::from(f.clone()));
        if x.hi <= fr {
            let pr = Rat::from_integer(BigInt::from(f_prev.clone()));
            return if pr <= x.lo {
                Ok(n)
            } else {
                Err(Error::Inconsistent(format!("{x} straddles {}!", n - 1)))
            };
        }
        if x.lo <= fr {
            return Err(Error::Inconsistent(format!("{x} straddles {n}!")));
        }
        n += 1;
        f_prev = f.clone();
        f *= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn dec(digits: &str) -> Rat {
        // "d.ddd" with a leading integer part, parsed exactly.
        let (i, f) = digits.split_once('.').unwrap();
        let n: BigInt = format!("{i}{f}").parse().unwrap();
        Rat::new(n, BigInt::from(10u32).pow(f.len() as u32))
    }

    fn ulp(k: u32) -> Rat {
        Rat::new(BigInt::one(), BigInt::from(10u32).pow(k))
    }

    // Reference decimals are truncated toward zero.
    fn brackets(e: &Enclosure, d: &str, k: u32) -> bool {
        let t = dec(d);
        let (lo, hi) = if t.is_negative() {
            (&t - ulp(k), t)
        } else {
            (t.clone(), &t + ulp(k))
        };
        e.overlaps(&Enclosure::new(lo, hi)) && e.width() < ulp(k)
    }

    #[test]
    fn euler_number() {
        let e = e(PREC);
        assert!(
            brackets(&e, "2.718281828459045235360287471352662497757", 39),
            "{e}"
        );
    }

    #[test]
    fn logs() {
        assert!(brackets(
            &ln2(PREC),
            "0.693147180559945309417232121458176568075",
            39
        ));
        assert!(brackets(
            &ln(&rat(10, 1), PREC).unwrap(),
            "2.302585092994045684017991454684364207601",
            39
        ));
        assert!(brackets(
            &ln(&rat(1, 3), PREC).unwrap(),
            "-1.098612288668109691395245236922525704647",
            39
        ));
        assert_eq!(ln(&rat(1, 1), PREC).unwrap(), Enclosure::exact(rat(0, 1)));
        assert!(ln(&rat(0, 1), PREC).is_err());
    }

    #[test]
    fn exps() {
        assert!(brackets(
            &exp(&rat(10, 1), PREC),
            "22026.465794806716516957900645284244366353",
            36
        ));
        assert!(brackets(
            &exp(&rat(-1, 2), PREC),
            "0.606530659712633423603799534991180453441",
            39
        ));
        assert_eq!(exp(&rat(0, 1), PREC), Enclosure::exact(rat(1, 1)));
    }

    #[test]
    fn exp_and_ln_are_inverse() {
        for (p, q) in [(7, 3), (1, 9), (40, 1)] {
            let x = rat(p, q);
            let back = ln_enc(&exp(&x, PREC), 120).unwrap();
            assert!(back.contains(&x), "{back}");
        }
    }

    #[test]
    fn rational_powers() {
        let r = pow_rat(&BigUint::from(2u32), &rat(1, 2), 100).unwrap();
        assert!(brackets(
            &r,
            "1.414213562373095048801688724209698078569",
            28
        ));
        assert_eq!(
            pow_rat(&BigUint::from(8u32), &rat(2, 3), 50).unwrap(),
            Enclosure::exact(rat(4, 1))
        );
        let inv = pow_rat(&BigUint::from(4u32), &rat(-3, 2), 50).unwrap();
        assert!(inv.contains(&rat(1, 8)));
        assert_eq!(
            pow_rat(&BigUint::from(9u32), &rat(0, 1), 50).unwrap(),
            Enclosure::exact(rat(1, 1))
        );
    }

    #[test]
    fn rounding_is_outward() {
        let x = rat(1, 3);
        assert!(round_down(&x, 10) < x && x < round_up(&x, 10));
        let y = rat(-1, 3);
        assert!(round_down(&y, 10) < y && y < round_up(&y, 10));
        assert_eq!(round_up(&rat(1, 4), 10), rat(1, 4));
    }

    #[test]
    fn factorial_indices() {
        let idx = |x: i64| factorial_index(&Enclosure::exact(rat(x, 1))).unwrap();
        assert_eq!(idx(1), 1);
        assert_eq!(idx(3), 3);
        assert_eq!(idx(5), 3);
        assert_eq!(idx(7), 4);
        // e^10 ~ 22026 lies between 7! = 5040 and 8! = 40320.
        assert_eq!(factorial_index(&exp(&rat(10, 1), PREC)).unwrap(), 8);
        assert!(factorial_index(&Enclosure::new(rat(5, 1), rat(7, 1))).is_err());
    }
}
