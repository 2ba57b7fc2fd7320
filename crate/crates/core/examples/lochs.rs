//! log 3 / h: how many base-3 digits one radical digit determines.

use ergodic_cert::{entropy_bounds, lochs_constant, OperatorFamily, PrecisionConfig};

fn main() -> ergodic_cert::Result<()> {
    let h = entropy_bounds(&PrecisionConfig::desk(), &OperatorFamily::bolyai_full(0.0))?;
    let l = lochs_constant(&h)?;
    println!("h     = {}…", h.digits);
    println!("log3/h = {}… ({} places)", l.digits, l.places);
    Ok(())
}
