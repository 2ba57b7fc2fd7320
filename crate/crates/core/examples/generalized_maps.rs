//! Entropy of x ↦ (x + 1)^m - 1 mod 1, which has 2^m - 1 branches.
//! Degrees come from the command line, default 3 and 4.

use ergodic_cert::{generalized_entropy_bounds, PrecisionConfig};

fn main() -> ergodic_cert::Result<()> {
    let mut degrees: Vec<u32> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    if degrees.is_empty() {
        degrees = vec![3, 4];
    }
    for m in degrees {
        let start = std::time::Instant::now();
        let h = generalized_entropy_bounds(&PrecisionConfig::desk(), m)?;
        println!("m = {m}: h = {}… ({} places, {:.1?})", h.digits, h.places, start.elapsed());
    }
    Ok(())
}
