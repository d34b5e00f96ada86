//! One-sided limits of E at rationals: a jump on one side only.

use pierce_esum::{fmt_rat, jumps_at, parse_rat};

fn main() -> pierce_esum::Result<()> {
    for s in ["1/2", "1/3", "3/8", "2/5", "7/11"] {
        let j = jumps_at(&parse_rat(s)?)?;
        println!(
            "{s:>5}: left {:>8}  value {:>8}  right {:>8}  jump {:>6} ({:?} side)  preimages {} {}",
            fmt_rat(j.left_limit()),
            fmt_rat(&j.interior_value),
            fmt_rat(j.right_limit()),
            fmt_rat(&j.jump_magnitude),
            j.side,
            j.preimages.0,
            j.preimages.1,
        );
    }
    Ok(())
}
