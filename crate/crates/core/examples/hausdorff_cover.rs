//! Cover sums with exponent s over order-n intervals. For s > 1 they tend
//! to 0, though close to 1 only after a rise.

use pierce_esum::analysis::cover::per_k_f64;
use pierce_esum::analysis::{hausdorff_cover_sum, lambda_cover_counts};
use pierce_esum::rat::{rat, to_f64};

fn main() -> pierce_esum::Result<()> {
    for s in [rat(3, 2), rat(11, 10)] {
        print!("s = {s}:");
        for n in 1..=8 {
            let c = hausdorff_cover_sum(n, &s, 100)?;
            print!(" {:.5}", to_f64(&c.total.hi));
        }
        println!();
    }

    let r = lambda_cover_counts(&rat(10, 1))?;
    println!("M = 10: n = {}, a_k = {:?}", r.n_of_m, per_k_f64(&r));
    Ok(())
}
