//! Bracketing a solution of E(x) = y between two points.

use pierce_esum::analysis::ivt_root;
use pierce_esum::rat::to_f64;
use pierce_esum::{esum, fmt_rat, parse_rat};

fn main() -> pierce_esum::Result<()> {
    let tol = parse_rat("1/1000000000000")?;
    for (a, b, y) in [
        ("36/100", "39/100", "-1/10"),
        ("2/5", "1/2", "-1/20"),
        ("500001/1000000", "1/1", "-499/1000"),
    ] {
        let (a, b, y) = (parse_rat(a)?, parse_rat(b)?, parse_rat(y)?);
        println!(
            "E(a) = {:.6}, E(b) = {:.6}, y = {}",
            to_f64(&esum(&a)?),
            to_f64(&esum(&b)?),
            fmt_rat(&y)
        );
        let r = ivt_root(&a, &b, &y, &tol)?;
        println!(
            "  x in {} (width {:.1e}), {} cylinders",
            r.interval,
            to_f64(&r.width()),
            r.nodes
        );
        for iv in r.trail.iter().take(4) {
            println!("    {} {}", iv.sigma, iv);
        }
    }
    Ok(())
}
