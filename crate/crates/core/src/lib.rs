//! Certified enclosures of ergodic quantities for the Bolyai-Rényi map
//! `T(x) = (x + 1)² - 1 mod 1` and its degree-`d` generalizations.
//!
//! The pipeline: transfer operators on `[0, 1]` ([`dynsys`]) are compressed
//! to finite rank in a Chebyshev basis ([`cheb`]), a candidate eigenfunction
//! comes from the power method, and the min-max principle turns rigorous
//! bounds on `ℒf/f` into bounds on the leading eigenvalue ([`certify`]).
//! Everything above the matrix is computed in midpoint-radius ball
//! arithmetic over MPFR ([`ball`]). [`quantities`] assembles entropy, digit
//! frequencies, the Lochs constant and the dimension of the deleted-digit
//! set; [`cli`] is the front end of the `ergodic` binary.
//!
//! ```no_run
//! use ergodic_cert::{entropy_bounds, OperatorFamily, PrecisionConfig};
//!
//! let h = entropy_bounds(&PrecisionConfig::desk(), &OperatorFamily::bolyai_full(0.0)).unwrap();
//! assert!(h.digits.starts_with("1.05631307407297"));
//! ```

pub mod ball;
pub mod certify;
pub mod cheb;
pub mod cli;
pub mod config;
pub mod decimal;
pub mod dynsys;
pub mod error;
pub mod quantities;

pub use ball::{Ball, ComplexBall, Enclosure, Mag};
pub use certify::{compute_bounds, CertifiedBounds, MinMaxBounds};
pub use cheb::{ChebSeries, ScaledInterval};
pub use config::PrecisionConfig;
pub use dynsys::{make_operator, OperatorFamily, OperatorSpec};
pub use error::{Error, Result};
pub use quantities::{
    digit_frequency_bounds, dimension_bounds, entropy_bounds, finite_section_entropy, generalized_entropy_bounds,
    lochs_constant, CertifiedDecimal,
};
