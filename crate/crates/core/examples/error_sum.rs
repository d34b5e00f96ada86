//! E at rationals (exact) and at digit streams (enclosures).

use pierce_esum::esum::{estar_by_definition, esum_stream};
use pierce_esum::{esum, fmt_rat, parse_rat, PierceSeq};

fn main() -> pierce_esum::Result<()> {
    for s in ["3/8", "1/2", "1/3", "2/7", "5/17"] {
        println!("E({s}) = {}", fmt_rat(&esum(&parse_rat(s)?)?));
    }

    // 1 - 1/e has digits 1, 2, 3, ...
    let seq = PierceSeq::parse("const:one-minus-inv-e")?;
    for depth in [5, 10, 20] {
        let e = esum_stream(&seq, depth)?;
        println!(
            "E(1 - 1/e) at depth {depth}: {:.15} +- {:.1e}",
            pierce_esum::rat::to_f64(&e.mid()),
            pierce_esum::rat::to_f64(&e.width())
        );
    }
    println!(
        "2/e - 1           = {:.15}",
        2.0 / std::f64::consts::E - 1.0
    );

    // The defining double series agrees with the closed form.
    let by_def = estar_by_definition(&seq, 20)?;
    println!("by definition, depth 20: {}", by_def);
    Ok(())
}
