//! Digits, convergents and residuals of a few rationals.

use pierce_esum::digits::residual_via_shift;
use pierce_esum::{convergent, expand, fmt_rat, parse_rat};

fn main() -> pierce_esum::Result<()> {
    for s in ["3/8", "0/1", "1/1", "355/1000", "999999/1000000"] {
        let x = parse_rat(s)?;
        let seq = expand(&x)?;
        println!("{s} = {seq}");
        for n in 1..=seq.prefix().len() {
            let s_n = convergent(&x, n)?;
            println!(
                "  s_{n} = {:<16} x - s_{n} = {}",
                fmt_rat(&s_n),
                fmt_rat(&residual_via_shift(&x, n)?)
            );
        }
    }
    Ok(())
}
