//! Box counts of the graph of E and the fitted log-log slope, next to the
//! theoretical square counts at the same scales.

use pierce_esum::analysis::{
    boxcount::SAMPLE_CONSTANT, dimension_slope, dimension_sweep, lambda_cover_for_epsilon,
};
use pierce_esum::fmt_rat;

fn main() -> pierce_esum::Result<()> {
    let pts = dimension_sweep(6, 14, SAMPLE_CONSTANT)?;
    for (eps, n) in &pts {
        let cover = lambda_cover_for_epsilon(eps)?;
        println!(
            "eps {:>8}  N = {n:>6}  bound {}",
            fmt_rat(eps),
            cover.total_bound
        );
    }
    let fit = dimension_slope(&pts)?;
    println!("slope {:.4}", fit.slope);
    Ok(())
}
