//! Certified metric entropy. Pass `paper` for the 50-digit run.

use ergodic_cert::quantities::entropy_bounds_detailed;
use ergodic_cert::{OperatorFamily, PrecisionConfig};

fn main() -> ergodic_cert::Result<()> {
    let cfg = match std::env::args().nth(1).as_deref() {
        Some("paper") => PrecisionConfig::paper(),
        _ => PrecisionConfig::desk(),
    };
    let start = std::time::Instant::now();
    let s = entropy_bounds_detailed(&cfg, &OperatorFamily::bolyai_full(0.0))?;
    println!("h   = {}… ({} places)", s.value.digits, s.value.places);
    println!("α/ε = {:.60}", s.alpha_over_eps);
    println!("β/ε = {:.60}", s.beta_over_eps);
    println!("error term / sup|P_n ψ| = {:.1e}, {:.1e}", s.minus.error_ratio(), s.plus.error_ratio());
    println!("{:.1?}", start.elapsed());
    Ok(())
}
