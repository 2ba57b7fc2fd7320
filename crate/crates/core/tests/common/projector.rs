//! Projector and derivative properties on random instances.

use ergodic_cert::cheb::{cheb_nodes, interpolate, interpolate_with, CosTable};
use ergodic_cert::{Ball, ChebSeries, ScaledInterval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const P: u32 = 256;

fn random_interval(rng: &mut impl Rng) -> ScaledInterval {
    let lo = rng.random_range(-2.0..2.0);
    ScaledInterval::from_endpoints(lo, lo + rng.random_range(0.1..3.0)).unwrap()
}

fn random_series(rng: &mut impl Rng, rank: usize, gamma: ScaledInterval, decay: f64) -> ChebSeries {
    let coeffs = (0..rank)
        .map(|l| Ball::from_f64(rng.random_range(-1.0..1.0) * decay.powi(l as i32), P))
        .collect();
    ChebSeries::new(gamma, coeffs).unwrap()
}

/// Interpolating the node samples of a series returns its coefficients.
pub fn idempotence(seed: u64, count: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let m = rng.random_range(1..40);
        let gamma = random_interval(&mut rng);
        let s = random_series(&mut rng, m, gamma, 1.0);
        let table = CosTable::new(m, P);
        let back = interpolate_with(&table, &s.sample_nodes(&table).unwrap(), s.gamma()).unwrap();
        for (a, b) in s.coeffs().iter().zip(back.coeffs()) {
            if !b.contains(a) {
                return Err(format!("{a} not in {b} at rank {m}"));
            }
        }
    }
    Ok(())
}

/// Polynomials of degree below the rank are reproduced up to ball radii.
pub fn polynomial_exactness(seed: u64, count: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let m = rng.random_range(1..30);
        let gamma = random_interval(&mut rng);
        // monomial coefficients in the interval variable u
        let mono: Vec<Ball> = (0..m).map(|_| Ball::from_f64(rng.random_range(-1.0..1.0), P)).collect();
        let horner = |x: &Ball| -> Ball {
            let u = gamma.gamma_inv(x).unwrap();
            mono.iter().rev().fold(Ball::zero(P), |acc, c| acc.mul(&u).add(c))
        };
        let values: Vec<Ball> = cheb_nodes(m, &gamma, P).iter().map(&horner).collect();
        let p = interpolate(&values, &gamma).unwrap();
        let width = Float::with_val(P, gamma.radius() * 2u32);
        for i in 0..100 {
            let x = Float::with_val(P, gamma.lower()) + Float::with_val(P, i as f64 / 99.0) * &width;
            let x = Ball::exact(x).clamp(&gamma.lower(), &gamma.upper()).unwrap();
            let (a, b) = (p.eval_within(&x).unwrap(), horner(&x));
            if !a.overlaps(&b) || a.sub(&b).abs().upper() > 1e-50 {
                return Err(format!("rank {m}: {a} vs {b}"));
            }
        }
    }
    Ok(())
}

/// The derivative series against central differences at 20 points each,
/// within the truncation estimate `h²/6 · sup|s'''|`.
pub fn derivative_vs_differences(seed: u64, count: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = Float::with_val(P, 2f64.powi(-40));
    let two_h = Ball::exact(Float::with_val(P, &h * 2u32));
    for _ in 0..count {
        let m = rng.random_range(2..30);
        let gamma = random_interval(&mut rng);
        let s = random_series(&mut rng, m, gamma.clone(), 0.7);
        let ds = s.derivative();
        // |T_l'''| ≤ l²(l²-1)(l²-4)/15 on [-1, 1], and d/dx = (1/r) d/du
        let r = gamma.radius().to_f64();
        let third: f64 = s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(l, c)| {
                let l2 = (l * l) as f64;
                c.to_f64().abs() * l2 * (l2 - 1.0).max(0.0) * (l2 - 4.0).max(0.0) / 15.0
            })
            .sum::<f64>()
            / r.powi(3);
        let truncation = h.to_f64().powi(2) / 6.0 * third;
        for _ in 0..20 {
            let t = rng.random_range(-0.95..0.95);
            let x = gamma.gamma(&Ball::from_f64(t, P));
            let xp = Ball::exact(Float::with_val(P, x.mid() + &h));
            let xm = Ball::exact(Float::with_val(P, x.mid() - &h));
            let fd = s.eval_within(&xp).unwrap().sub(&s.eval_within(&xm).unwrap()).div(&two_h).unwrap();
            let d = ds.eval_within(&Ball::exact(x.mid().clone())).unwrap();
            let gap = d.sub(&fd).abs().lower().to_f64();
            if gap > truncation * 1.01 + 1e-60 {
                return Err(format!("rank {m}: gap {gap:e} > {truncation:e}"));
            }
        }
    }
    Ok(())
}
