//! Dimension of the set of points whose expansions avoid the digit 2,
//! by certified bisection on the sign of the pressure of M_t.

use ergodic_cert::{dimension_bounds, PrecisionConfig};

fn main() -> ergodic_cert::Result<()> {
    let delta = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1e-15);
    let cfg = PrecisionConfig { delta, ..PrecisionConfig::desk_dimension() };
    let b = dimension_bounds(0.5, 0.8, &cfg, 200)?;
    for s in b.steps.iter().step_by(8) {
        println!("t = {:.18}  rank {:>3}  {:?}", s.t.to_f64(), s.rank, s.sign);
    }
    let d = b.to_decimal()?;
    println!("dim ∈ [{}, {}]", &d.lower[..20], &d.upper[..20]);
    println!("dim = {}… final rank {}, {} undecided checks", d.digits, b.final_m, b.retries);
    Ok(())
}
