//! Random containment trials shared by the integration tests and the
//! acceptance runner.
//!
//! Each trial draws a ball (or a pair), picks an exact point inside it,
//! evaluates the same function at that point with four times the working
//! precision and checks the result lies in the working-precision ball.

#![allow(dead_code)]

pub mod analytic;
pub mod projector;

use ergodic_cert::{Ball, ComplexBall, Mag};
use rand::Rng;
use rug::Float;

pub const OPS: [&str; 21] = [
    "add", "sub", "mul", "div", "sqr", "sqrt", "ln", "exp", "pow", "atan", "sinh", "cosh", "cos", "sin", "acos", "cmul",
    "cdiv", "cexp", "cln", "csqrt", "cpowr",
];

/// A random ball with midpoint in `[lo, hi]` and a radius that is zero, tiny
/// or moderate, plus an exact point inside it.
fn sample(rng: &mut impl Rng, lo: f64, hi: f64, prec: u32) -> (Ball, Float) {
    let mut mid = Float::with_val(prec, rng.random_range(lo..hi));
    mid += Float::with_val(prec, rng.random_range(-1.0..1.0)) >> 60u32;
    let rad = match rng.random_range(0..4) {
        0 => 0.0,
        1 => 2f64.powi(-rng.random_range(40..200)),
        _ => 2f64.powi(-rng.random_range(4..30)) * (hi - lo).abs().min(1.0),
    };
    let t: f64 = rng.random_range(-1.0..=1.0);
    let mut point = Float::with_val(4 * prec, &mid);
    point += Float::with_val(4 * prec, t) * Float::with_val(60, rad);
    (Ball::new(mid, Mag::new(rad)), point)
}

fn check(name: &str, got: &Ball, want: &Float) -> Result<(), String> {
    if got.contains_point(want) {
        Ok(())
    } else {
        Err(format!("{name}: {want:.30} not in {got}"))
    }
}

fn check_c(name: &str, got: &ComplexBall, want: &(Float, Float)) -> Result<(), String> {
    if got.contains_point(&want.0, &want.1) {
        Ok(())
    } else {
        Err(format!("{name}: ({:.30}, {:.30}) not in ({}, {})", want.0, want.1, got.re(), got.im()))
    }
}

fn c_mul(a: &(Float, Float), b: &(Float, Float)) -> (Float, Float) {
    let p = a.0.prec();
    (
        Float::with_val(p, &a.0 * &b.0) - Float::with_val(p, &a.1 * &b.1),
        Float::with_val(p, &a.0 * &b.1) + Float::with_val(p, &a.1 * &b.0),
    )
}

fn c_ln(a: &(Float, Float)) -> (Float, Float) {
    let p = a.0.prec();
    (Float::with_val(p, a.0.hypot_ref(&a.1)).ln(), Float::with_val(p, a.1.atan2_ref(&a.0)))
}

fn c_exp(a: &(Float, Float)) -> (Float, Float) {
    let p = a.0.prec();
    let m = Float::with_val(p, a.0.exp_ref());
    (Float::with_val(p, &m * Float::with_val(p, a.1.cos_ref())), m * Float::with_val(p, a.1.sin_ref()))
}

/// One random trial at working precision `prec`. Returns the operation name
/// and an error message when containment fails.
pub fn trial(rng: &mut impl Rng, prec: u32) -> (&'static str, Result<(), String>) {
    let op = OPS[rng.random_range(0..OPS.len())];
    let hi = 4 * prec;
    let res = match op {
        "add" | "sub" | "mul" | "div" => {
            let (a, x) = sample(rng, -8.0, 8.0, prec);
            let (b, y) = if op == "div" {
                let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                let (b, y) = sample(rng, 0.25, 6.0, prec);
                (b.mul(&Ball::from_f64(s, prec)), y * s)
            } else {
                sample(rng, -8.0, 8.0, prec)
            };
            let (got, want) = match op {
                "add" => (a.add(&b), Float::with_val(hi, &x + &y)),
                "sub" => (a.sub(&b), Float::with_val(hi, &x - &y)),
                "mul" => (a.mul(&b), Float::with_val(hi, &x * &y)),
                _ => (a.div(&b).expect("denominator excludes 0"), Float::with_val(hi, &x / &y)),
            };
            check(op, &got, &want)
        }
        "sqr" => {
            let (a, x) = sample(rng, -3.0, 3.0, prec);
            check(op, &a.sqr(), &Float::with_val(hi, x.square_ref()))
        }
        "sqrt" | "ln" => {
            let (a, x) = sample(rng, 0.05, 50.0, prec);
            if op == "sqrt" {
                check(op, &a.sqrt().unwrap(), &x.sqrt())
            } else {
                check(op, &a.ln().unwrap(), &x.ln())
            }
        }
        "exp" | "atan" | "sinh" | "cosh" | "cos" | "sin" => {
            let (a, x) = sample(rng, -6.0, 6.0, prec);
            let (got, want) = match op {
                "exp" => (a.exp(), x.exp()),
                "atan" => (a.atan(), x.atan()),
                "sinh" => (a.sinh(), x.sinh()),
                "cosh" => (a.cosh(), x.cosh()),
                "cos" => (a.cos(), x.cos()),
                _ => (a.sin(), x.sin()),
            };
            check(op, &got, &want)
        }
        "pow" => {
            let (a, x) = sample(rng, 0.1, 4.0, prec);
            let (e, y) = sample(rng, -3.0, 3.0, prec);
            let want = Float::with_val(hi, x.ln_ref()) * &y;
            check(op, &a.pow(&e).unwrap(), &want.exp())
        }
        "acos" => {
            let (a, x) = sample(rng, -0.9, 0.9, prec);
            check(op, &a.acos().unwrap(), &x.acos())
        }
        _ => {
            let (ar, xr) = sample(rng, -4.0, 4.0, prec);
            let (ai, xi) = sample(rng, -4.0, 4.0, prec);
            let a = ComplexBall::new(ar, ai);
            let z = (xr, xi);
            match op {
                "cmul" | "cdiv" => {
                    let (br, yr) = sample(rng, 0.3, 3.0, prec);
                    let (bi, yi) = sample(rng, -3.0, 3.0, prec);
                    let b = ComplexBall::new(br, bi);
                    let w = (yr, yi);
                    if op == "cmul" {
                        check_c(op, &a.mul(&b), &c_mul(&z, &w))
                    } else {
                        let n = Float::with_val(hi, w.0.square_ref()) + Float::with_val(hi, w.1.square_ref());
                        let conj = (w.0.clone(), Float::with_val(hi, -&w.1));
                        let (re, im) = c_mul(&z, &conj);
                        check_c(op, &a.div(&b).unwrap(), &(re / &n, im / &n))
                    }
                }
                "cexp" => check_c(op, &a.exp(), &c_exp(&z)),
                _ => {
                    // principal branch: keep away from the negative real axis
                    let (ar, xr) = sample(rng, 0.2, 4.0, prec);
                    let a = ComplexBall::new(ar, a.im().clone());
                    let z = (xr, z.1);
                    match op {
                        "cln" => check_c(op, &a.ln().unwrap(), &c_ln(&z)),
                        "csqrt" => {
                            let l = c_ln(&z);
                            check_c(op, &a.sqrt().unwrap(), &c_exp(&(l.0 / 2u32, l.1 / 2u32)))
                        }
                        _ => {
                            let (e, y) = sample(rng, -2.0, 2.0, prec);
                            let l = c_ln(&z);
                            check_c(op, &a.powr(&e).unwrap(), &c_exp(&(l.0 * &y, l.1 * &y)))
                        }
                    }
                }
            }
        }
    };
    (op, res)
}

/// `count` trials from a fixed seed; returns the failures.
pub fn containment_run(seed: u64, count: usize, prec: u32) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).filter_map(|_| trial(&mut rng, prec).1.err()).collect()
}
