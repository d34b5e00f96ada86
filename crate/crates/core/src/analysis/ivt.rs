//! Intermediate-value root finding by branch-and-bound over cylinders.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::esum::{cylinder_extrema, estar_finite, esum};
use crate::intervals::{fundamental_interval, FundInterval};
use crate::rat::{check_unit, fmt_rat, rat, Rat};
use crate::seq::{CylinderId, MAX_DEPTH};

/// Default limit on the number of cylinders examined.
pub const NODE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct RootBracket {
    pub interval: FundInterval,
    /// `[min, max]` of `E*` over the final cylinder.
    pub value_range: (String, String),
    #[serde(serialize_with = "crate::rat::ser_rat")]
    pub target: Rat,
    /// The chain of intervals refined into, coarsest first.
    #[serde(skip)]
    pub trail: Vec<FundInterval>,
    pub nodes: usize,
    #[serde(skip)]
    range: (Rat, Rat),
}

impl RootBracket {
    pub fn min(&self) -> &Rat {
        &self.range.0
    }

    pub fn max(&self) -> &Rat {
        &self.range.1
    }

    pub fn width(&self) -> Rat {
        self.interval.length()
    }
}

struct Node {
    cyl: CylinderId,
    interval: FundInterval,
    min: Rat,
    max: Rat,
}

fn node(cyl: CylinderId) -> Node {
    let ext = cylinder_extrema(&cyl);
    let interval = fundamental_interval(&cyl);
    Node {
        cyl,
        interval,
        min: ext.min,
        max: ext.max,
    }
}

pub fn ivt_root(a: &Rat, b: &Rat, y: &Rat, width_tol: &Rat) -> Result<RootBracket> {
    ivt_root_with_budget(a, b, y, width_tol, NODE_BUDGET)
}

/// Depth-first search, leftmost candidate first. A child `σj` can only
/// contain `y` in its range when `j <= n / (σ_1 ... σ_n |y - E*(σ)|)`, and
/// those that do form a short run of consecutive `j` just below that bound.
pub fn ivt_root_with_budget(
    a: &Rat,
    b: &Rat,
    y: &Rat,
    width_tol: &Rat,
    budget: usize,
) -> Result<RootBracket> {
    check_unit(a)?;
    check_unit(b)?;
    if a >= b {
        return Err(Error::Precondition(format!(
            "need a < b, got {} and {}",
            fmt_rat(a),
            fmt_rat(b)
        )));
    }
    if !width_tol.is_positive() {
        return Err(Error::Precondition(
            "width tolerance must be positive".into(),
        ));
    }
    if *y <= rat(-1, 2) || y.is_positive() {
        return Err(Error::Precondition(format!(
            "target {} is outside (-1/2, 0]",
            fmt_rat(y)
        )));
    }
    let (ea, eb) = (esum(a)?, esum(b)?);
    if !(ea < *y && *y < eb) {
        return Err(Error::Precondition(format!(
            "need E(a) < y < E(b), got E(a) = {}, y = {}, E(b) = {}",
            fmt_rat(&ea),
            fmt_rat(y),
            fmt_rat(&eb)
        )));
    }

    let keep = |n: &Node| n.min <= *y && *y <= n.max && n.interval.meets_open(a, b);
    let mut nodes = 0usize;
    let mut stack: Vec<(Node, usize)> = Vec::new();
    let mut path: Vec<FundInterval> = Vec::new();

    // Order one: E*((j)) = 0 and the range is [-1/(j(j+1)), 0].
    let y_abs = -y.clone();
    let mut roots = Vec::new();
    let mut j = 1u64;
    // (1/(j+1), 1/j] must also reach past a.
    while Rat::new(BigInt::one(), BigInt::from(j * (j + 1))) >= y_abs
        && Rat::new(BigInt::one(), BigInt::from(j)) > *a
    {
        let n = node(CylinderId::from_u64_unchecked(&[j]));
        nodes += 1;
        if keep(&n) {
            roots.push(n);
        }
        j += 1;
    }
    push_sorted(&mut stack, roots, 1);

    while let Some((n, depth)) = stack.pop() {
        path.truncate(depth - 1);
        path.push(n.interval.clone());
        if n.interval.length() < *width_tol {
            let range = (n.min.clone(), n.max.clone());
            return Ok(RootBracket {
                value_range: (fmt_rat(&range.0), fmt_rat(&range.1)),
                interval: n.interval,
                target: y.clone(),
                trail: path,
                nodes,
                range,
            });
        }
        if depth >= MAX_DEPTH {
            continue;
        }
        let kids = children(&n.cyl, y, &mut nodes)?;
        let kids: Vec<Node> = kids.into_iter().filter(|k| keep(k)).collect();
        push_sorted(&mut stack, kids, depth + 1);
        if nodes > budget {
            return Err(Error::ResourceCap(format!(
                "no bracket narrower than {} within {budget} cylinders",
                fmt_rat(width_tol)
            )));
        }
    }
    Err(Error::SearchFailed(format!(
        "no cylinder in ({}, {}) reaches {}",
        fmt_rat(a),
        fmt_rat(b),
        fmt_rat(y)
    )))
}

fn push_sorted(stack: &mut Vec<(Node, usize)>, mut kids: Vec<Node>, depth: usize) {
    // Rightmost pushed first so the leftmost is popped first.
    kids.sort_by(|p, q| q.interval.left.cmp(&p.interval.left));
    stack.extend(kids.into_iter().map(|k| (k, depth)));
}

fn children(cyl: &CylinderId, y: &Rat, nodes: &mut usize) -> Result<Vec<Node>> {
    let n = cyl.order();
    let p: BigUint = cyl.product();
    let gap = y - estar_finite(cyl.prefix());
    // The new term of E* has sign (-1)^n; a gap of the other sign (or zero)
    // cannot be closed by any child.
    let sign_ok = if n % 2 == 0 {
        gap.is_positive()
    } else {
        gap.is_negative()
    };
    if !sign_ok {
        return Ok(Vec::new());
    }
    let v = gap.abs();
    let bound = Rat::from_integer(BigInt::from(n)) / (Rat::from_integer(BigInt::from(p)) * v);
    let first = cyl.last() + 1u32;
    let j_hi = bound.numer().div_floor(bound.denom());
    let j_hi = match j_hi.to_biguint() {
        Some(j) if j >= first => j,
        _ => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    let mut j = j_hi.clone();
    loop {
        let kid = node(cyl.child(j.clone())?);
        *nodes += 1;
        let hit = kid.min <= *y && *y <= kid.max;
        if hit {
            out.push(kid);
        } else if !out.is_empty() {
            break;
        }
        if j == first {
            break;
        }
        // Without a hit in a handful of steps below the bound there is none.
        if out.is_empty() && (&j_hi - &j).to_u64().is_some_and(|d| d > 4) {
            break;
        }
        j -= 1u32;
    }
    Ok(out)
}
