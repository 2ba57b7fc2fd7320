//! Working precision and method parameters.

use serde::{Deserialize, Serialize};

use crate::ball::MIN_PREC;
use crate::error::{Error, Result};

/// Everything a certified run depends on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Working precision in bits.
    pub prec: u32,
    /// Pressure-probe offset; used as the exact binary value of the `f64`.
    pub eps: f64,
    /// Rank of the operator approximation.
    pub m: usize,
    /// Rank of the projection of `ψ`.
    pub n: usize,
    /// Number of subintervals for suprema and infima.
    pub k: usize,
    /// Inner ellipse parameter.
    pub rho: f64,
    /// Outer ellipse parameter.
    #[serde(rename = "R")]
    pub big_r: f64,
    /// Stopping width of the dimension search.
    pub delta: f64,
}

/// Largest outer ellipse parameter for which the Bolyai-Rényi branches stay
/// holomorphic: `exp(arccosh 3) = 3 + √8`.
pub fn holomorphy_limit() -> f64 {
    3.0 + 8f64.sqrt()
}

impl PrecisionConfig {
    /// Full-scale entropy parameters: 50 certified digits.
    pub fn paper() -> PrecisionConfig {
        PrecisionConfig {
            prec: 512,
            eps: 1e-50,
            m: 160,
            n: 200,
            k: 250,
            rho: 1.001,
            big_r: 5.5,
            delta: 1e-50,
        }
    }

    /// Laptop-scale entropy parameters: about 16 digits in seconds.
    pub fn desk() -> PrecisionConfig {
        PrecisionConfig {
            prec: 384,
            eps: 1e-20,
            m: 100,
            n: 120,
            k: 128,
            rho: 1.001,
            big_r: 5.5,
            delta: 1e-15,
        }
    }

    /// Laptop-scale dimension search; `m` is the starting rank.
    pub fn desk_dimension() -> PrecisionConfig {
        PrecisionConfig {
            m: 10,
            n: 100,
            k: 128,
            delta: 1e-15,
            ..PrecisionConfig::desk()
        }
    }

    /// Full-scale dimension search.
    pub fn paper_dimension() -> PrecisionConfig {
        PrecisionConfig {
            m: 10,
            n: 100,
            k: 250,
            delta: 1e-50,
            ..PrecisionConfig::paper()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Parameter(msg));
        if self.prec < MIN_PREC {
            return fail(format!("prec must be at least {MIN_PREC}, got {}", self.prec));
        }
        if self.m < 2 {
            return fail(format!("m must be at least 2, got {}", self.m));
        }
        if self.n < 2 {
            return fail(format!("n must be at least 2, got {}", self.n));
        }
        if self.k < 1 {
            return fail("k must be at least 1".into());
        }
        if !(self.rho > 1.0 && self.rho < self.big_r && self.big_r.is_finite()) {
            return fail(format!("need 1 < rho < R, got rho = {}, R = {}", self.rho, self.big_r));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return fail(format!("eps must be positive, got {}", self.eps));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return fail(format!("delta must be positive, got {}", self.delta));
        }
        Ok(())
    }

    /// Bits needed so that `ε²`-sized pressure differences survive.
    pub fn required_prec(&self) -> u32 {
        (2.0 * (1.0 / self.eps).log2()).ceil().max(0.0) as u32 + 64
    }

    pub fn check_entropy_precision(&self) -> Result<()> {
        let required = self.required_prec();
        if self.prec < required {
            return Err(Error::PrecisionInsufficient {
                prec: self.prec,
                required,
            });
        }
        Ok(())
    }
}
