//! Fundamental intervals, a capped partition and point location.

use pierce_esum::intervals::omitted_mass;
use pierce_esum::{fmt_rat, fundamental_interval, locate, parse_rat, partition, CylinderId};

fn main() -> pierce_esum::Result<()> {
    for d in [&[1u64][..], &[2], &[2, 3], &[2, 4], &[1, 3, 7]] {
        let c = CylinderId::from_u64(d)?;
        let iv = fundamental_interval(&c);
        println!("I{c} = {iv}  length {}", fmt_rat(&iv.length()));
    }

    let p = partition(3, 10)?;
    println!(
        "order 3, digits <= 10: {} intervals, covered {}, residual {} (DP: {})",
        p.intervals.len(),
        fmt_rat(&p.covered_mass()),
        fmt_rat(&p.residual),
        fmt_rat(&omitted_mass(3, 10)?)
    );

    let x = parse_rat("5/17")?;
    for n in 1..=3 {
        println!("5/17 lies in I{}", locate(&x, n)?);
    }
    Ok(())
}
