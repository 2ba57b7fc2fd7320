//! End-to-end certified pipelines.
//!
//! Entropy and digit frequencies come from the slope at `0` of a convex
//! pressure function `P`: with rigorous upper bounds `P(-ε) ≤ β` and
//! `P(ε) ≤ -α`, convexity gives `α/ε ≤ -P'(0) ≤ β/ε`. The dimension of the
//! deleted-digit set is the zero of `Q(t) = log spectral radius of M_t`,
//! found by certified bisection.

use rug::float::Round;
use rug::Float;
use serde::Serialize;

use crate::ball::Ball;
use crate::certify::{compute_bounds, compute_matrix, power_method, CertifiedBounds, MinMaxBounds};
use crate::cheb::{interpolate_with, ChebSeries, CosTable, ScaledInterval};
use crate::config::PrecisionConfig;
use crate::decimal::{common_prefix, places_for_prec, to_decimal};
use crate::dynsys::{log_expansion, make_operator, OperatorFamily};
use crate::error::{Error, Result};

/// A certified enclosure with its directed decimal rendering.
#[derive(Clone, Debug)]
pub struct CertifiedDecimal {
    pub bounds: CertifiedBounds,
    /// Lower endpoint rounded toward −∞.
    pub lower: String,
    /// Upper endpoint rounded toward +∞.
    pub upper: String,
    /// Common prefix of `lower` and `upper`.
    pub digits: String,
    /// Digits after the point in `digits`.
    pub places: usize,
}

impl CertifiedDecimal {
    pub fn new(bounds: CertifiedBounds) -> CertifiedDecimal {
        let prec = bounds.lower.prec().max(bounds.upper.prec());
        let places = places_for_prec(prec);
        let lower = to_decimal(&bounds.lo(), places, false);
        let upper = to_decimal(&bounds.hi(), places, true);
        let (digits, places) = common_prefix(&lower, &upper);
        CertifiedDecimal {
            bounds,
            lower,
            upper,
            digits,
            places,
        }
    }

    pub fn lo(&self) -> Float {
        self.bounds.lo()
    }

    pub fn hi(&self) -> Float {
        self.bounds.hi()
    }

    pub fn width(&self) -> Float {
        self.bounds.width()
    }

    pub fn hull(&self) -> Ball {
        self.bounds.hull()
    }

    /// Whether the decimal literal lies certainly inside the enclosure.
    pub fn contains_decimal(&self, literal: &str) -> bool {
        let p = 4 * self.bounds.lower.prec().max(64);
        let (Ok(down), Ok(up)) = (Float::parse(literal), Float::parse(literal)) else {
            return false;
        };
        let lo = Float::with_val_round(p, down, Round::Down).0;
        let hi = Float::with_val_round(p, up, Round::Up).0;
        self.lo() <= lo && hi <= self.hi()
    }

    /// Whether `digits` starts with `prefix`.
    pub fn digits_start_with(&self, prefix: &str) -> bool {
        self.digits.starts_with(prefix)
    }
}

/// Both probe runs behind a slope enclosure.
#[derive(Clone, Debug)]
pub struct SlopeBounds {
    pub value: CertifiedDecimal,
    /// The run at `-ε`, whose upper bound gives `β`.
    pub minus: MinMaxBounds,
    /// The run at `+ε`, whose upper bound gives `α`.
    pub plus: MinMaxBounds,
    /// `α/ε`, rounded down.
    pub alpha_over_eps: Float,
    /// `β/ε`, rounded up.
    pub beta_over_eps: Float,
}

fn slope_bounds(cfg: &PrecisionConfig, family: &OperatorFamily) -> Result<SlopeBounds> {
    cfg.validate()?;
    cfg.check_entropy_precision()?;
    let prec = cfg.prec;
    let eps = Float::with_val(prec, cfg.eps);
    let gamma = ScaledInterval::unit_interval();
    let run = |t: Float| -> Result<MinMaxBounds> {
        let op = make_operator(&family.with_t(t), prec)?;
        compute_bounds(&op, cfg, &gamma)
    };
    let (minus, plus) = rayon::join(|| run(Float::with_val(prec, -&eps)), || run(eps.clone()));
    let (minus, plus) = (minus?, plus?);
    let eps_ball = Ball::exact(eps);
    // β = log(b_max), α = -log(a_max)
    let beta = Ball::exact(minus.bounds.hi()).ln()?;
    let alpha = Ball::exact(plus.bounds.hi()).ln()?.neg();
    let beta_over_eps = beta.div(&eps_ball)?.upper();
    let alpha_over_eps = alpha.div(&eps_ball)?.lower();
    if alpha_over_eps > beta_over_eps {
        return Err(Error::PrecisionInsufficient {
            prec,
            required: cfg.required_prec().max(prec + 64),
        });
    }
    let bounds = CertifiedBounds::new(Ball::exact(alpha_over_eps.clone()), Ball::exact(beta_over_eps.clone()))?;
    Ok(SlopeBounds {
        value: CertifiedDecimal::new(bounds),
        minus,
        plus,
        alpha_over_eps,
        beta_over_eps,
    })
}

/// Entropy with diagnostics; `family` is `BolyaiFull` or `Generalized`
/// (its `t` is ignored).
pub fn entropy_bounds_detailed(cfg: &PrecisionConfig, family: &OperatorFamily) -> Result<SlopeBounds> {
    match family {
        OperatorFamily::BolyaiFull { .. } | OperatorFamily::Generalized { .. } => slope_bounds(cfg, family),
        other => Err(Error::Parameter(format!("entropy needs a full map, got {other:?}"))),
    }
}

/// Certified `h(μ)` for the classical map or a generalized one.
pub fn entropy_bounds(cfg: &PrecisionConfig, family: &OperatorFamily) -> Result<CertifiedDecimal> {
    Ok(entropy_bounds_detailed(cfg, family)?.value)
}

/// Certified `h(μ)` for the degree-`degree` map.
pub fn generalized_entropy_bounds(cfg: &PrecisionConfig, degree: u32) -> Result<CertifiedDecimal> {
    entropy_bounds(cfg, &OperatorFamily::generalized(degree, 0.0))
}

/// Certified frequency of digit `i` in the expansion of a typical point,
/// with diagnostics.
pub fn digit_frequency_bounds_detailed(i: u32, cfg: &PrecisionConfig) -> Result<SlopeBounds> {
    if !(1..=3).contains(&i) {
        return Err(Error::Parameter(format!("digit must be 1, 2 or 3, got {i}")));
    }
    slope_bounds(cfg, &OperatorFamily::bolyai_digit(i, 0.0))
}

/// Certified frequency of digit `i`.
pub fn digit_frequency_bounds(i: u32, cfg: &PrecisionConfig) -> Result<CertifiedDecimal> {
    Ok(digit_frequency_bounds_detailed(i, cfg)?.value)
}

/// `log 3 / h`, the number of base-3 digits determined per radical digit.
pub fn lochs_constant(h: &CertifiedDecimal) -> Result<CertifiedDecimal> {
    if !(h.lo() > 0) {
        return Err(Error::Parameter("entropy enclosure must be positive".into()));
    }
    let prec = h.bounds.lower.prec().max(h.bounds.upper.prec());
    let value = Ball::from_i64(3, prec).ln()?.div(&h.hull())?;
    Ok(CertifiedDecimal::new(CertifiedBounds::from_ball(&value)?))
}

/// Outcome of one certified sign check of `Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    /// `Q(t) > 0`: the eigenvalue bound is above 1.
    Positive,
    /// `Q(t) < 0`.
    Negative,
}

/// One decided point of the bisection.
#[derive(Clone, Debug)]
pub struct DimensionStep {
    pub t: Float,
    pub rank: usize,
    pub sign: Sign,
    pub bounds: CertifiedBounds,
}

/// `t0 < dim_H < t1` together with the path that certified it.
#[derive(Clone, Debug)]
pub struct DimensionBracket {
    pub t0: Float,
    pub t1: Float,
    pub final_m: usize,
    pub steps: Vec<DimensionStep>,
    /// Number of `compute_bounds` calls that did not decide a sign.
    pub retries: usize,
}

impl DimensionBracket {
    pub fn width(&self) -> Float {
        Float::with_val_round(self.t1.prec(), &self.t1 - &self.t0, Round::Up).0
    }

    pub fn to_decimal(&self) -> Result<CertifiedDecimal> {
        CertifiedBounds::new(Ball::exact(self.t0.clone()), Ball::exact(self.t1.clone())).map(CertifiedDecimal::new)
    }
}

/// The certified sign of `Q(t)` at rank `m`, or `None` when it cannot be
/// decided there.
pub fn dimension_sign(t: &Float, cfg: &PrecisionConfig) -> Result<Option<(Sign, CertifiedBounds)>> {
    let op = make_operator(&OperatorFamily::BolyaiDeleted { t: t.clone() }, cfg.prec)?;
    match compute_bounds(&op, cfg, &ScaledInterval::unit_interval()) {
        Ok(r) => {
            if r.bounds.lo() > 1 {
                Ok(Some((Sign::Positive, r.bounds)))
            } else if r.bounds.hi() < 1 {
                Ok(Some((Sign::Negative, r.bounds)))
            } else {
                Ok(None)
            }
        }
        Err(Error::NonPositiveEigenfunction { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Certified bisection for the Hausdorff dimension of the set of points
/// whose expansions only use the digits 1 and 3.
///
/// `cfg.m` is the starting rank; it grows by one whenever a sign cannot be
/// decided, up to `m_max`.
pub fn dimension_bounds(t0: f64, t1: f64, cfg: &PrecisionConfig, m_max: usize) -> Result<DimensionBracket> {
    cfg.validate()?;
    if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::Bracket(format!("need t0 < t1, got {t0} and {t1}")));
    }
    let prec = cfg.prec;
    let mut cfg = cfg.clone();
    let mut steps = Vec::new();
    let mut retries = 0;
    let mut decide = |t: &Float, cfg: &mut PrecisionConfig| -> Result<DimensionStep> {
        loop {
            if cfg.m > m_max {
                return Err(Error::RankExhausted { max_rank: m_max });
            }
            if let Some((sign, bounds)) = dimension_sign(t, cfg)? {
                return Ok(DimensionStep {
                    t: t.clone(),
                    rank: cfg.m,
                    sign,
                    bounds,
                });
            }
            retries += 1;
            cfg.m += 1;
        }
    };
    let mut lo = Float::with_val(prec, t0);
    let mut hi = Float::with_val(prec, t1);
    let first = decide(&lo, &mut cfg)?;
    if first.sign != Sign::Positive {
        return Err(Error::Bracket(format!("Q({t0}) is not positive")));
    }
    steps.push(first);
    let last = decide(&hi, &mut cfg)?;
    if last.sign != Sign::Negative {
        return Err(Error::Bracket(format!("Q({t1}) is not negative")));
    }
    steps.push(last);
    let delta = Float::with_val(prec, cfg.delta);
    while Float::with_val_round(prec, &hi - &lo, Round::Up).0 > delta {
        let mut t = Float::with_val(prec, &lo + &hi);
        t >>= 1;
        if t <= lo || t >= hi {
            return Err(Error::PrecisionInsufficient {
                prec,
                required: prec + 64,
            });
        }
        let step = decide(&t, &mut cfg)?;
        match step.sign {
            Sign::Positive => lo = t,
            Sign::Negative => hi = t,
        }
        steps.push(step);
    }
    Ok(DimensionBracket {
        t0: lo,
        t1: hi,
        final_m: cfg.m,
        steps,
        retries,
    })
}

/// The non-rigorous finite-section estimate `h_m` and its ingredients.
#[derive(Clone, Debug)]
pub struct FiniteSection {
    pub value: Float,
    pub rank: usize,
    pub eigenvalue: Float,
}

/// `h_m = Σ b_l w_l / Σ v_l w_l` for the classical map; heuristic only.
pub fn finite_section_entropy(m: usize, prec: u32) -> Result<FiniteSection> {
    finite_section_entropy_degree(2, m, prec)
}

/// As [`finite_section_entropy`], for the degree-`degree` map.
pub fn finite_section_entropy_degree(degree: u32, m: usize, prec: u32) -> Result<FiniteSection> {
    let family = if degree == 2 {
        OperatorFamily::bolyai_full(0.0)
    } else {
        OperatorFamily::generalized(degree, 0.0)
    };
    let op = make_operator(&family, prec)?;
    let gamma = ScaledInterval::unit_interval();
    let matrix = compute_matrix(&op, m, &gamma, prec)?;
    let right = power_method(&matrix)?;
    let left = power_method(&matrix.transpose())?;
    let table = CosTable::new(m, prec);
    let rho = ChebSeries::new(gamma.clone(), right.vector.iter().map(|v| Ball::exact(v.clone())).collect())?;
    let samples = (0..m)
        .map(|j| {
            let x = gamma.gamma(table.node(j));
            Ok(log_expansion(degree, &x)?.mul(&rho.eval_within(&x)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let b = interpolate_with(&table, &samples, &gamma)?;
    let mids = |v: &[Ball]| v.iter().map(|c| c.mid().clone()).collect::<Vec<_>>();
    let b = mids(b.coeffs());
    let num = Float::with_val(prec, Float::dot(b.iter().zip(&left.vector)));
    let den = Float::with_val(prec, Float::dot(right.vector.iter().zip(&left.vector)));
    if den.is_zero() {
        return Err(Error::Convergence {
            iterations: left.iterations,
            residual: f64::INFINITY,
        });
    }
    Ok(FiniteSection {
        value: num / den,
        rank: m,
        eigenvalue: right.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> PrecisionConfig {
        PrecisionConfig {
            prec: 256,
            eps: 1e-10,
            m: 40,
            n: 60,
            k: 64,
            rho: 1.001,
            big_r: 5.5,
            delta: 1e-6,
        }
    }

    #[test]
    fn entropy_at_low_resolution() {
        let h = entropy_bounds(&quick(), &OperatorFamily::bolyai_full(0.0)).unwrap();
        assert!(h.contains_decimal("1.0563130740729705520"), "{} {}", h.lower, h.upper);
        assert!(h.lo() <= h.hi());
        assert!(h.digits_start_with("1.05631307"), "{}", h.digits);
    }

    #[test]
    fn entropy_rejects_other_families() {
        assert!(entropy_bounds(&quick(), &OperatorFamily::bolyai_deleted(0.5)).is_err());
    }

    #[test]
    fn insufficient_precision() {
        let cfg = PrecisionConfig { prec: 128, ..PrecisionConfig::desk() };
        assert!(matches!(
            entropy_bounds(&cfg, &OperatorFamily::bolyai_full(0.0)),
            Err(Error::PrecisionInsufficient { .. })
        ));
    }

    #[test]
    fn lochs_of_log_three_is_one() {
        let l3 = Ball::from_i64(3, 256).ln().unwrap();
        let h = CertifiedDecimal::new(CertifiedBounds::from_ball(&l3).unwrap());
        let one = lochs_constant(&h).unwrap();
        assert!(one.contains_decimal("1"));
        let bad = CertifiedDecimal::new(CertifiedBounds::from_ball(&Ball::from_f64(-1.0, 256)).unwrap());
        assert!(lochs_constant(&bad).is_err());
    }

    #[test]
    fn lochs_widens_with_input() {
        let mid = Float::with_val(256, 1.05);
        let narrow = Ball::new(mid.clone(), crate::ball::Mag::new(1e-10));
        let wide = Ball::new(mid, crate::ball::Mag::new(1e-5));
        let a = lochs_constant(&CertifiedDecimal::new(CertifiedBounds::from_ball(&narrow).unwrap())).unwrap();
        let b = lochs_constant(&CertifiedDecimal::new(CertifiedBounds::from_ball(&wide).unwrap())).unwrap();
        assert!(b.width() > a.width());
        assert!(b.lo() <= a.lo() && a.hi() <= b.hi());
    }

    #[test]
    fn digit_is_validated() {
        assert!(digit_frequency_bounds(0, &quick()).is_err());
        assert!(digit_frequency_bounds(4, &quick()).is_err());
    }

    #[test]
    fn coarse_dimension_bracket() {
        let cfg = PrecisionConfig {
            m: 10,
            delta: 1e-3,
            ..quick()
        };
        let b = dimension_bounds(0.5, 0.8, &cfg, 60).unwrap();
        assert!(b.width() <= 1e-3);
        assert!(b.t0 < 0.643_913_120_470_729_5 && b.t1 > 0.643_913_120_470_729_4);
    }

    #[test]
    fn invalid_bracket() {
        let cfg = PrecisionConfig { delta: 1e-3, ..quick() };
        assert!(matches!(dimension_bounds(0.7, 0.8, &cfg, 60), Err(Error::Bracket(_))));
        assert!(matches!(dimension_bounds(0.8, 0.5, &cfg, 60), Err(Error::Bracket(_))));
    }

    #[test]
    fn rank_cap() {
        let cfg = PrecisionConfig { m: 2, delta: 1e-12, ..quick() };
        assert!(matches!(dimension_bounds(0.5, 0.8, &cfg, 3), Err(Error::RankExhausted { max_rank: 3 })));
    }

    #[test]
    fn finite_section_low_rank() {
        let h = finite_section_entropy(30, 256).unwrap();
        assert!((h.value.to_f64() - 1.056_313_074_072_970_6).abs() < 1e-12);
        assert!((h.eigenvalue.to_f64() - 1.0).abs() < 1e-12);
    }
}
