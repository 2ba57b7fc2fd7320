//! Directed decimal rendering of enclosures.
//!
//! Lower endpoints are rounded toward −∞ and upper endpoints toward +∞, so
//! the printed pair is still an enclosure. The certified digits are the
//! longest common prefix of the two strings; the last digit is truncated,
//! never rounded.

use rug::float::Round;
use rug::{Float, Integer};

/// `x` with `places` digits after the point, rounded down or up.
pub fn to_decimal(x: &Float, places: usize, round_up: bool) -> String {
    assert!(x.is_finite(), "cannot render a non-finite endpoint");
    let scale = Integer::from(Integer::u_pow_u(10, places as u32));
    let bits = x.prec() + (places as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    let rounding = if round_up { Round::Up } else { Round::Down };
    let scaled = Float::with_val_round(bits, x * &scale, rounding).0;
    let int = if round_up { scaled.ceil() } else { scaled.floor() };
    let n = int.to_integer().expect("finite");
    render_fixed(&n, places)
}

fn render_fixed(n: &Integer, places: usize) -> String {
    let negative = n.cmp0() == std::cmp::Ordering::Less;
    let digits = n.clone().abs().to_string();
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - places;
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{padded}")
    } else {
        format!("{sign}{}.{}", &padded[..split], &padded[split..])
    }
}

/// Longest common prefix of two renderings and the number of digits after
/// the point that it contains.
pub fn common_prefix(lower: &str, upper: &str) -> (String, usize) {
    let prefix: String = lower
        .chars()
        .zip(upper.chars())
        .take_while(|(a, b)| a == b)
        .map(|(a, _)| a)
        .collect();
    let places = match prefix.find('.') {
        Some(dot) => prefix.len() - dot - 1,
        None => 0,
    };
    (prefix, places)
}

/// Default number of rendered places for a precision.
pub fn places_for_prec(prec: u32) -> usize {
    (f64::from(prec) * std::f64::consts::LOG10_2).floor() as usize
}
