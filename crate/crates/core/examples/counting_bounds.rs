//! Sequences with bounded digit product, counted exhaustively against
//! p (2 + ln p)^(m-1), and the factorial inequalities.

use pierce_esum::analysis::counting::{count_bounded_products, factorial_bounds_all};
use pierce_esum::rat::to_f64;

fn main() -> pierce_esum::Result<()> {
    for p in [10, 100, 1000, 10_000] {
        for m in [2, 4, 6] {
            let all = count_bounded_products(p, m, false)?;
            let inc = count_bounded_products(p, m, true)?;
            println!(
                "p {p:>5} m {m}: {:>9} <= {:>12.1}   increasing {:>6} <= {:>10.1}",
                all.count,
                to_f64(&all.bound.lo),
                inc.count,
                to_f64(&inc.bound.lo)
            );
        }
    }
    println!(
        "n^n/e^(n-1) <= n! <= n^(n+1)/e^(n-1) for n <= 50: {}",
        factorial_bounds_all(50)?
    );
    Ok(())
}
