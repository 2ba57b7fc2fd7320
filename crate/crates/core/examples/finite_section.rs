//! The finite-section entropy estimate h_m. Fast and very accurate, but
//! without an error bound; compare with the certified interval.

use ergodic_cert::{entropy_bounds, finite_section_entropy, OperatorFamily, PrecisionConfig};

fn main() -> ergodic_cert::Result<()> {
    for m in [20, 40, 60, 100] {
        let fs = finite_section_entropy(m, 384)?;
        println!("h_{m:<3} = {:.95}", fs.value);
    }
    let h = entropy_bounds(&PrecisionConfig::desk(), &OperatorFamily::bolyai_full(0.0))?;
    let fs = finite_section_entropy(100, 384)?;
    println!("certified {}…, contains h_100: {}", h.digits, h.bounds.contains(&fs.value));
    Ok(())
}
