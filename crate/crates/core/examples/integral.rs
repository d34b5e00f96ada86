//! Riemann sum of E on [0, 1]; the exact value is -1/8.

use pierce_esum::analysis::integrate_esum;
use pierce_esum::rat::to_f64;

fn main() -> pierce_esum::Result<()> {
    for k in [8, 12, 16, 20] {
        let t = std::time::Instant::now();
        let r = integrate_esum(1 << k)?;
        println!(
            "grid 2^{k:<2}  {:.10}  |error| <= {:.2e}  ({:.2?})",
            r.estimate_f64(),
            to_f64(&r.error_bound),
            t.elapsed()
        );
    }
    Ok(())
}
