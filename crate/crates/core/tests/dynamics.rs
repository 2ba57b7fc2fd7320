//! Inverse branches and transfer operators.

use ergodic_cert::certify::{compute_matrix, power_method};
use ergodic_cert::config::holomorphy_limit;
use ergodic_cert::dynsys::{bolyai_branch, BranchSpec};
use ergodic_cert::{make_operator, Ball, ChebSeries, ComplexBall, OperatorFamily, ScaledInterval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

const P: u32 = 192;

#[test]
fn branches_are_increasing_contractions_into_their_cylinders() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for degree in 2..=4u32 {
        let count = (1u32 << degree) - 1;
        for digit in 1..=count {
            let b = BranchSpec::new(digit, degree).unwrap();
            // cylinder [(digit)^{1/d} - 1, (digit+1)^{1/d} - 1]
            let lo = (digit as f64).powf(1.0 / degree as f64) - 1.0;
            let hi = (digit as f64 + 1.0).powf(1.0 / degree as f64) - 1.0;
            for _ in 0..50 {
                let x = Ball::from_f64(rng.random_range(0.0..=1.0), P);
                let y = b.apply(&x).unwrap();
                assert!(y.lower() >= -1e-40 && y.upper() <= 1.0 + 1e-40);
                assert!(y.to_f64() >= lo - 1e-12 && y.to_f64() <= hi + 1e-12);
                let d = b.deriv(&x).unwrap();
                assert!(d.is_positive() && d.upper() < 1.0, "S_{digit}' = {d}");
            }
        }
    }
}

#[test]
fn markov_endpoints_are_exact() {
    let zero = Ball::zero(P);
    let one = Ball::one(P);
    let s1 = bolyai_branch(1).unwrap().apply(&zero).unwrap();
    let s3 = bolyai_branch(3).unwrap().apply(&one).unwrap();
    assert!(s1.contains_point(&Float::with_val(P, 0)) && s1.rad().is_zero());
    assert!(s3.contains_point(&Float::with_val(P, 1)) && s3.rad().is_zero());
}

#[test]
fn positive_functions_stay_positive() {
    let gamma = ScaledInterval::unit_interval();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    // 2 + T_1 - T_2/2 > 0 on [-1, 1]
    let f = ChebSeries::new(
        gamma.clone(),
        vec![Ball::from_f64(2.0, P), Ball::from_f64(1.0, P), Ball::from_f64(-0.5, P)],
    )
    .unwrap();
    let inf = ergodic_cert::ball::inf_ball(|x| f.eval_within(x), &gamma, 32, P).unwrap();
    assert!(inf.is_positive());
    for family in [
        OperatorFamily::bolyai_full(0.0),
        OperatorFamily::bolyai_full(0.7),
        OperatorFamily::bolyai_digit(2, -0.3),
        OperatorFamily::bolyai_deleted(0.64),
        OperatorFamily::generalized(4, 0.1),
    ] {
        let op = make_operator(&family, P).unwrap();
        for _ in 0..50 {
            let x = Ball::from_f64(rng.random_range(0.0..=1.0), P);
            let v = op.apply(&f, &x).unwrap();
            assert!(v.is_positive(), "{family:?} at {x}: {v}");
        }
    }
}

fn ellipse_points(r: f64, count: usize, seed: u64) -> Vec<ComplexBall> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = ((r + 1.0 / r) / 2.0, (r - 1.0 / r) / 2.0);
    let gamma = ScaledInterval::unit_interval();
    (0..count)
        .map(|_| {
            let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let u = ComplexBall::new(Ball::from_f64(a * phi.cos(), P), Ball::from_f64(b * phi.sin(), P));
            gamma.gamma(&u)
        })
        .collect()
}

#[test]
fn branches_are_holomorphic_on_the_working_ellipse() {
    for z in ellipse_points(5.5, 200, 13) {
        for i in 1..=3 {
            let b = bolyai_branch(i).unwrap();
            b.apply(&z).unwrap_or_else(|e| panic!("S_{i} at ({}, {}): {e}", z.re(), z.im()));
            b.deriv(&z).unwrap();
        }
    }
}

#[test]
fn holomorphy_fails_beyond_the_limit() {
    // (x + 1) hits 0 at u = -3, whose ellipse parameter is 3 + √8
    assert!(holomorphy_limit() < 5.9);
    let gamma = ScaledInterval::unit_interval();
    let r: f64 = 6.0;
    let a = (r + 1.0 / r) / 2.0;
    let z = gamma.gamma(&ComplexBall::from_real(Ball::from_f64(-a, P)));
    assert!(bolyai_branch(1).unwrap().apply(&z).is_err());
}

#[test]
fn zero_temperature_operator_preserves_mass() {
    // the leading eigenvalue of the t = 0 operator is 1
    let op = make_operator(&OperatorFamily::bolyai_full(0.0), P).unwrap();
    let m = compute_matrix(&op, 30, &ScaledInterval::unit_interval(), P).unwrap();
    let eig = power_method(&m).unwrap();
    assert!((eig.value.to_f64() - 1.0).abs() < 1e-20);
}
