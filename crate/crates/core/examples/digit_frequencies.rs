//! Certified frequencies of the digits 1, 2, 3 for Lebesgue-typical points.

use ergodic_cert::{digit_frequency_bounds, PrecisionConfig};
use rug::Float;

fn main() -> ergodic_cert::Result<()> {
    let cfg = PrecisionConfig::desk();
    let mut lo = Float::new(512);
    let mut hi = Float::new(512);
    for i in 1..=3 {
        let f = digit_frequency_bounds(i, &cfg)?;
        println!("f_{i} = {}… ({} places)", f.digits, f.places);
        lo += f.lo();
        hi += f.hi();
    }
    println!("f_1 + f_2 + f_3 ∈ [{:.25}, {:.25}]", lo, hi);
    Ok(())
}
