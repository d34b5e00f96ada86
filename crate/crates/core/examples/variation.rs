//! The oscillation of E summed over all order-n intervals is exactly n,
//! so E has unbounded variation.

use pierce_esum::analysis::variation_over_partition;
use pierce_esum::fmt_rat;

fn main() -> pierce_esum::Result<()> {
    for n in 1..=6 {
        let r = variation_over_partition(n, n as u64 + 10)?;
        println!(
            "n = {n}: {} intervals, capped {:.6}, omitted mass {:.6}, total {}",
            r.intervals,
            pierce_esum::rat::to_f64(&r.capped_sum),
            pierce_esum::rat::to_f64(&r.omitted_mass),
            fmt_rat(&r.analytic_total)
        );
    }
    Ok(())
}
