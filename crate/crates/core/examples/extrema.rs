//! Extrema of E* over a cylinder and the oscillation n * length.

use pierce_esum::esum::oscillation;
use pierce_esum::{cylinder_extrema, fmt_rat, CylinderId};

fn main() -> pierce_esum::Result<()> {
    for d in [&[1u64][..], &[2], &[1, 2], &[2, 5], &[1, 3, 4]] {
        let c = CylinderId::from_u64(d)?;
        let m = cylinder_extrema(&c);
        println!(
            "{c:<8} max {:>10} at {:<10} min {:>10} at {:<10} oscillation {}",
            fmt_rat(&m.max),
            m.argmax.to_string(),
            fmt_rat(&m.min),
            m.argmin.to_string(),
            fmt_rat(&oscillation(&c))
        );
    }
    Ok(())
}
