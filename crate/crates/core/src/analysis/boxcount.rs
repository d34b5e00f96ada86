//! Empirical box counting on the closed graph of `E`.
//!
//! The samples are the points `(phi(σ), E*(σ))` for finite `σ` whose digit
//! product is at most `C/ε`. Any other point of the closed graph lies within
//! `1/P` horizontally and `k/P` vertically of such a sample, where `P > C/ε`
//! is the first product past the bound and `k` its length.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};

/// Default calibration constant `C` in the product bound `C/ε`.
pub const SAMPLE_CONSTANT: u64 = 16;

/// Upper limit on `C/ε`, to keep the enumeration bounded.
pub const MAX_PRODUCT: u128 = 1 << 26;

struct Grid {
    // ε = num/den; cell index of a/p is floor(a den / (p num)).
    num: i128,
    den: i128,
    max_product: u128,
}

impl Grid {
    fn cell(&self, a: i128, p: i128) -> i128 {
        (a * self.den).div_euclid(p * self.num)
    }

    fn key(&self, a: i128, b: i128, p: i128) -> u64 {
        let x = self.cell(a, p) as u64;
        let y = (-self.cell(b, p)) as u64;
        (x << 32) | y
    }

    /// Depth-first over increasing continuations of a prefix with `m` digits,
    /// last digit `last`, product `p`, `phi = a/p` and `E* = b/p`.
    fn walk(&self, m: u32, last: u128, p: u128, a: i128, b: i128, out: &mut HashSet<u64>) {
        out.insert(self.key(a, b, p as i128));
        let sign: i128 = if m % 2 == 0 { 1 } else { -1 };
        let mut j = last + 1;
        while p * j <= self.max_product {
            let ji = j as i128;
            self.walk(
                m + 1,
                j,
                p * j,
                a * ji + sign,
                b * ji + sign * m as i128,
                out,
            );
            j += 1;
        }
    }
}

fn grid(epsilon: &Rat, sample_constant: u64) -> Result<Grid> {
    if !epsilon.is_positive() || *epsilon >= Rat::from_integer(BigInt::from(1)) {
        return Err(Error::Domain(format!(
            "epsilon {} is outside (0, 1)",
            fmt_rat(epsilon)
        )));
    }
    if sample_constant == 0 {
        return Err(Error::Precondition(
            "sample constant must be positive".into(),
        ));
    }
    let num = epsilon.numer().to_i128();
    let den = epsilon.denom().to_i128();
    let (num, den) = match (num, den) {
        (Some(n), Some(d)) if d < (1 << 40) => (n, d),
        _ => {
            return Err(Error::ResourceCap(format!(
                "epsilon {} is too fine",
                fmt_rat(epsilon)
            )))
        }
    };
    let max_product = (sample_constant as u128 * den as u128) / num as u128;
    if max_product > MAX_PRODUCT {
        return Err(Error::ResourceCap(format!(
            "product bound {max_product} exceeds {MAX_PRODUCT}"
        )));
    }
    Ok(Grid {
        num,
        den,
        max_product,
    })
}

/// Number of `ε`-grid squares met by the samples with product `<= C/ε`.
pub fn box_count_empirical(epsilon: &Rat, sample_constant: u64) -> Result<u64> {
    let g = grid(epsilon, sample_constant)?;
    // The empty sequence is the point (0, 0); its children split by first digit.
    let cells = (1..=g.max_product)
        .into_par_iter()
        .fold(HashSet::new, |mut set, d| {
            g.walk(1, d, d, 1, 0, &mut set);
            set
        })
        .reduce(HashSet::new, |mut x, y| {
            if x.len() < y.len() {
                return merge(y, x);
            }
            x.extend(y);
            x
        });
    let origin = g.key(0, 0, 1);
    Ok(cells.len() as u64 + u64::from(!cells.contains(&origin)))
}

fn merge(mut big: HashSet<u64>, small: HashSet<u64>) -> HashSet<u64> {
    big.extend(small);
    big
}

/// Counts at `ε = 2^-j` for each `j` in the range.
pub fn dimension_sweep(from: u32, to: u32, sample_constant: u64) -> Result<Vec<(Rat, u64)>> {
    if from == 0 || from > to {
        return Err(Error::Precondition(format!("bad sweep 2^-{from}..2^-{to}")));
    }
    let dyadic = |j: u32| Rat::new(BigInt::from(1), BigInt::from(1u64) << j as usize);
    // Fail on the finest scale before spending time on the coarser ones.
    grid(&dyadic(to.min(63)), sample_constant)?;
    (from..=to)
        .map(|j| {
            let eps = dyadic(j);
            box_count_empirical(&eps, sample_constant).map(|c| (eps, c))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SlopeFit {
    /// `(log 1/ε, log N_ε)`.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares line through `(log 1/ε, log N_ε)`.
pub fn dimension_slope(points: &[(Rat, u64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::Precondition(
            "a slope fit needs at least 3 points".into(),
        ));
    }
    if points.windows(2).any(|w| w[1].0 >= w[0].0) {
        return Err(Error::Precondition(
            "epsilons must be strictly decreasing".into(),
        ));
    }
    if points.iter().any(|(e, c)| !e.is_positive() || *c == 0) {
        return Err(Error::Precondition(
            "epsilons and counts must be positive".into(),
        ));
    }
    if points.iter().all(|p| p.1 == points[0].1) {
        return Err(Error::DegenerateFit("all counts are equal".into()));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|(e, c)| (-crate::rat::to_f64(e).ln(), (*c as f64).ln()))
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    if !slope.is_finite() {
        return Err(Error::DegenerateFit("non-finite slope".into()));
    }
    Ok(SlopeFit {
        points: xy,
        slope,
        intercept: my - slope * mx,
    })
}
