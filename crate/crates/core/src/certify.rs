//! Min-max certification of transfer-operator eigenvalues.
//!
//! For a positive `f`, `inf ℒf/f ≤ e^{P} ≤ sup ℒf/f`. The candidate `f`
//! comes from the leading eigenvector of the Lagrange-Chebyshev matrix of
//! `ℒ`, computed without rigor. The two one-sided bounds are then certified
//! in ball arithmetic through
//!
//! ```text
//! sup ℒf/f ≤ ℒf(c)/f(c) + r · sup|ψ| / inf f²,   ψ = (ℒf)' f - f' ℒf,
//! ```
//!
//! with `sup|ψ|` bounded by the sup of its degree-`n` interpolant plus an
//! analytic interpolation error bound on a Bernstein ellipse.

use rayon::prelude::*;
use rug::float::Round;
use rug::Float;

use crate::ball::{inf_over, split_interval, sup_over, Ball, ComplexBall};
use crate::cheb::{interpolate_with, ChebSeries, CosTable, ScaledInterval};
use crate::config::PrecisionConfig;
use crate::dynsys::OperatorSpec;
use crate::error::{Error, Result};

/// Rank-`m` matrix `M_kl = e_k*(ℒ ê_l)` at working precision, row-major.
#[derive(Clone, Debug)]
pub struct FiniteRankMatrix {
    m: usize,
    entries: Vec<Float>,
}

impl FiniteRankMatrix {
    pub fn new(m: usize, entries: Vec<Float>) -> Result<FiniteRankMatrix> {
        if m == 0 || entries.len() != m * m {
            return Err(Error::Parameter(format!("need {} entries for rank {m}, got {}", m * m, entries.len())));
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::Parameter("matrix entries must be finite".into()));
        }
        Ok(FiniteRankMatrix { m, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>], prec: u32) -> Result<FiniteRankMatrix> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Parameter("matrix must be square".into()));
        }
        let entries = rows.iter().flatten().map(|&x| Float::with_val(prec, x)).collect();
        FiniteRankMatrix::new(m, entries)
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn get(&self, k: usize, l: usize) -> &Float {
        &self.entries[k * self.m + l]
    }

    pub fn row(&self, k: usize) -> &[Float] {
        &self.entries[k * self.m..(k + 1) * self.m]
    }

    pub fn prec(&self) -> u32 {
        self.entries[0].prec()
    }

    pub fn transpose(&self) -> FiniteRankMatrix {
        let m = self.m;
        let entries = (0..m * m).map(|i| self.get(i % m, i / m).clone()).collect();
        FiniteRankMatrix { m, entries }
    }

    pub fn mul_vec(&self, v: &[Float]) -> Vec<Float> {
        let prec = self.prec();
        (0..self.m)
            .into_par_iter()
            .map(|k| Float::with_val(prec, Float::dot(self.row(k).iter().zip(v))))
            .collect()
    }
}

/// `M_kl = ((2 - δ_k0)/m) Σ_j (ℒ ê_l)(x̂_j) ê_k(x̂_j)`, at ball midpoints.
pub fn compute_matrix(op: &OperatorSpec, m: usize, gamma: &ScaledInterval, prec: u32) -> Result<FiniteRankMatrix> {
    if m < 2 {
        return Err(Error::Parameter(format!("matrix rank must be at least 2, got {m}")));
    }
    let table = CosTable::new(m, prec);
    // images[j][l] = (ℒ ê_l)(x̂_j)
    let images: Vec<Vec<Float>> = (0..m)
        .into_par_iter()
        .map(|j| {
            let x = gamma.gamma(table.node(j));
            let row = op.basis_images(&x, gamma, m)?;
            Ok(row.into_iter().map(|b| b.mid().clone()).collect())
        })
        .collect::<Result<_>>()?;
    let entries: Vec<Vec<Float>> = (0..m)
        .into_par_iter()
        .map(|k| {
            let basis: Vec<Float> = (0..m).map(|j| table.basis(k, j).mid().clone()).collect();
            let scale = Float::with_val(prec, if k == 0 { 1 } else { 2 }) / m as u32;
            (0..m)
                .map(|l| {
                    let column = images.iter().map(|row| &row[l]);
                    let s = Float::with_val(prec, Float::dot(basis.iter().zip(column)));
                    s * &scale
                })
                .collect()
        })
        .collect();
    FiniteRankMatrix::new(m, entries.into_iter().flatten().collect())
}

/// Result of [`power_method`].
#[derive(Clone, Debug)]
pub struct Eigenpair {
    pub value: Float,
    /// Normalized so its largest-magnitude entry is `1`.
    pub vector: Vec<Float>,
    pub iterations: usize,
    /// Sup-norm difference of the last two iterates.
    pub step: f64,
}

/// Dominant eigenpair by power iteration from `e_0`.
///
/// Iterates until successive normalized vectors differ by less than
/// `2^{-(prec - 32)}`. After `10·prec` iterations a step below `2^{-prec/2}`
/// is still accepted; otherwise a convergence error is returned.
pub fn power_method(mat: &FiniteRankMatrix) -> Result<Eigenpair> {
    let prec = mat.prec();
    let m = mat.rank();
    let tight = Float::with_val(64, Float::i_exp(1, -(prec as i32 - 32)));
    let loose = Float::with_val(64, Float::i_exp(1, -(prec as i32 / 2)));
    let cap = 10 * prec as usize;
    let mut v = vec![Float::new(prec); m];
    v[0] = Float::with_val(prec, 1);
    let mut value = Float::new(prec);
    let mut step = Float::with_val(64, f64::INFINITY);
    for iteration in 1..=cap {
        let w = mat.mul_vec(&v);
        let lead = w
            .iter()
            .enumerate()
            .fold(0, |best, (i, x)| if x.as_abs().gt(&*w[best].as_abs()) { i } else { best });
        if w[lead].is_zero() || !w[lead].is_finite() {
            return Err(Error::Convergence {
                iterations: iteration,
                residual: f64::INFINITY,
            });
        }
        value = w[lead].clone();
        let next: Vec<Float> = w.iter().map(|x| Float::with_val(prec, x / &value)).collect();
        step = next
            .iter()
            .zip(&v)
            .map(|(a, b)| Float::with_val_round(64, a - b, Round::Up).0.abs())
            .fold(Float::new(64), |acc, d| if d > acc { d } else { acc });
        v = next;
        if step < tight {
            return Ok(Eigenpair {
                value,
                vector: v,
                iterations: iteration,
                step: step.to_f64(),
            });
        }
    }
    if step < loose {
        return Ok(Eigenpair {
            value,
            vector: v,
            iterations: cap,
            step: step.to_f64(),
        });
    }
    Err(Error::Convergence {
        iterations: cap,
        residual: step.to_f64(),
    })
}

/// `c_{ρ,R} = sinh(log R) / (cosh(log R) - cosh(log ρ))`.
pub fn ellipse_constant(rho: &Ball, big_r: &Ball) -> Result<Ball> {
    let lr = big_r.ln()?;
    let denom = lr.cosh().sub(&rho.ln()?.cosh());
    lr.sinh().div(&denom)
}

/// The enclosing parameters as balls, checking `1 < ρ < R`.
fn ellipse_params(rho: f64, big_r: f64, prec: u32) -> Result<(Ball, Ball)> {
    if !(rho > 1.0 && rho < big_r && big_r.is_finite()) {
        return Err(Error::Parameter(format!("need 1 < rho < R, got rho = {rho}, R = {big_r}")));
    }
    Ok((Ball::from_f64(rho, prec), Ball::from_f64(big_r, prec)))
}

/// Upper bound for `|ψ|` on the boundary of the scaled Bernstein ellipse
/// `γ(E_R)`, from `k` angle pieces of the upper half circle. `ψ` must be
/// real on the real axis, so the lower half is its mirror image.
pub fn ellipse_sup<F>(psi: F, big_r: &Ball, gamma: &ScaledInterval, k: usize, prec: u32) -> Result<Ball>
where
    F: Fn(&ComplexBall) -> Result<ComplexBall> + Sync,
{
    let lr = big_r.ln()?;
    let (a, b) = (lr.cosh(), lr.sinh());
    let pi = Ball::pi(prec);
    let pieces = split_interval(&Float::new(prec), &Float::with_val(prec, 1), k, prec);
    sup_over(&pieces, |theta| {
        // φ = π·θ covers [0, π]
        let phi = theta.mul(&pi);
        let u = ComplexBall::new(a.mul(&phi.cos()), b.mul(&phi.sin()));
        psi(&gamma.gamma(&u))?.abs()
    })
}

/// `δ_{n,ρ,R}(ψ)`: a bound on `sup|ψ - P_{n,γ}ψ|` over `γ([-1, 1])`,
///
/// ```text
/// c_{ρ,R} · cosh(n log ρ) / sinh(n log R) · sup_{∂γ(E_R)} |ψ|.
/// ```
pub fn interp_error_bound<F>(
    psi: F,
    n: usize,
    rho: f64,
    big_r: f64,
    gamma: &ScaledInterval,
    k: usize,
    prec: u32,
) -> Result<Ball>
where
    F: Fn(&ComplexBall) -> Result<ComplexBall> + Sync,
{
    let (rho, big_r) = ellipse_params(rho, big_r, prec)?;
    let sup = ellipse_sup(psi, &big_r, gamma, k, prec)?;
    Ok(Ball::exact(decay_factor(n, &rho, &big_r)?.mul(&sup).upper()))
}

/// `c_{ρ,R} · cosh(n log ρ) / sinh(n log R)`.
pub fn decay_factor(n: usize, rho: &Ball, big_r: &Ball) -> Result<Ball> {
    let p = rho.prec();
    let nb = Ball::from_i64(n as i64, p);
    let ratio = nb.mul(&rho.ln()?).cosh().div(&nb.mul(&big_r.ln()?).sinh())?;
    Ok(ellipse_constant(rho, big_r)?.mul(&ratio))
}

/// Two balls whose hull provably contains a target quantity.
#[derive(Clone, Debug)]
pub struct CertifiedBounds {
    pub lower: Ball,
    pub upper: Ball,
}

impl CertifiedBounds {
    pub fn new(lower: Ball, upper: Ball) -> Result<CertifiedBounds> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::InvalidBall("unbounded certified bounds".into()));
        }
        if lower.lower() > upper.upper() {
            return Err(Error::InvalidBall("lower bound exceeds upper bound".into()));
        }
        Ok(CertifiedBounds { lower, upper })
    }

    pub fn from_ball(b: &Ball) -> Result<CertifiedBounds> {
        CertifiedBounds::new(Ball::exact(b.lower()), Ball::exact(b.upper()))
    }

    /// Rigorous lower end of the enclosure.
    pub fn lo(&self) -> Float {
        self.lower.lower()
    }

    /// Rigorous upper end of the enclosure.
    pub fn hi(&self) -> Float {
        self.upper.upper()
    }

    /// The enclosure as a single ball.
    pub fn hull(&self) -> Ball {
        Ball::from_endpoints(&self.lo(), &self.hi(), self.lower.prec().max(self.upper.prec()))
    }

    pub fn width(&self) -> Float {
        let p = self.lower.prec().max(self.upper.prec());
        Float::with_val_round(p, self.hi() - self.lo(), Round::Up).0
    }

    pub fn contains(&self, x: &Float) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    pub fn overlaps(&self, other: &CertifiedBounds) -> bool {
        self.lo() <= other.hi() && other.lo() <= self.hi()
    }
}

/// Output of [`compute_bounds`]: certified `inf` and `sup` of `ℒf/f` and
/// the diagnostics behind them.
#[derive(Clone, Debug)]
pub struct MinMaxBounds {
    /// `lower ≤ inf ℒf/f` and `sup ℒf/f ≤ upper`.
    pub bounds: CertifiedBounds,
    /// Non-rigorous eigenvalue from the power method.
    pub eigenvalue_estimate: Float,
    /// `ℒf(c)/f(c)`.
    pub center_ratio: Ball,
    /// Certified lower bound for `inf f`.
    pub f_min: Ball,
    /// Upper bound for `sup|P_{n,γ}ψ|`.
    pub projection_sup: Ball,
    /// Upper bound for `sup|ψ - P_{n,γ}ψ|`.
    pub projection_error: Ball,
    pub rank: usize,
    pub power_iterations: usize,
    /// The candidate eigenfunction.
    pub eigenfunction: ChebSeries,
}

impl MinMaxBounds {
    /// `δ / sup|P_nψ|`, the relative size of the interpolation error term.
    pub fn error_ratio(&self) -> f64 {
        let s = self.projection_sup.mid().to_f64();
        if s == 0.0 {
            f64::INFINITY
        } else {
            self.projection_error.mid().to_f64() / s
        }
    }
}

/// Certified bounds on `inf` and `sup` of `ℒf/f` over the interval, using
/// the parameters `m, n, k, ρ, R` and precision of `cfg`.
pub fn compute_bounds(op: &OperatorSpec, cfg: &PrecisionConfig, gamma: &ScaledInterval) -> Result<MinMaxBounds> {
    cfg.validate()?;
    let prec = cfg.prec;
    let matrix = compute_matrix(op, cfg.m, gamma, prec)?;
    let eig = power_method(&matrix)?;
    let coeffs = eig.vector.iter().map(|v| Ball::exact(v.clone())).collect();
    let f = ChebSeries::new(gamma.clone(), coeffs)?;
    let df = f.derivative();

    let pieces = gamma.subintervals(cfg.k, prec);
    let f_min = inf_over(&pieces, |x| f.eval_within(x))?;
    if !f_min.is_positive() {
        return Err(Error::NonPositiveEigenfunction { rank: cfg.m });
    }

    // ψ at the nodes, then its interpolant
    let table = CosTable::new(cfg.n, prec);
    let samples: Vec<Ball> = (0..cfg.n)
        .into_par_iter()
        .map(|j| {
            let x = gamma.gamma(table.node(j));
            let (lf, dlf) = op.apply_pair(&f, &df, &x)?;
            let (fx, dfx) = f.eval_pair_within(&df, &x)?;
            Ok(dlf.mul(&fx).sub(&dfx.mul(&lf)))
        })
        .collect::<Result<_>>()?;
    let p_psi = interpolate_with(&table, &samples, gamma)?;
    let projection_sup = sup_over(&pieces, |x| Ok(p_psi.eval_within(x)?.abs()))?;

    let psi_complex = |z: &ComplexBall| -> Result<ComplexBall> {
        let (lf, dlf) = op.apply_pair(&f, &df, z)?;
        let fz = f.eval_complex(z)?;
        let dfz = df.eval_complex(z)?;
        Ok(dlf.mul(&fz).sub(&dfz.mul(&lf)))
    };
    let projection_error = interp_error_bound(psi_complex, cfg.n, cfg.rho, cfg.big_r, gamma, cfg.k, prec)?;

    let c = gamma.center_ball(prec);
    let center_ratio = op.apply(&f, &c)?.div(&f.eval_within(&c)?)?;
    let s = projection_sup.add(&projection_error);
    let spread = s
        .mul(&gamma.radius_ball(prec))
        .div(&f_min.sqr())
        .map(|b| Ball::exact(b.upper()))?;
    let bounds = CertifiedBounds::new(center_ratio.sub(&spread), center_ratio.add(&spread))?;
    Ok(MinMaxBounds {
        bounds,
        eigenvalue_estimate: eig.value,
        center_ratio,
        f_min,
        projection_sup,
        projection_error,
        rank: cfg.m,
        power_iterations: eig.iterations,
        eigenfunction: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::{make_operator, OperatorFamily};

    const P: u32 = 256;

    fn small_cfg(m: usize) -> PrecisionConfig {
        PrecisionConfig {
            prec: P,
            eps: 1e-20,
            m,
            n: 60,
            k: 64,
            rho: 1.001,
            big_r: 5.5,
            delta: 1e-15,
        }
    }

    #[test]
    fn power_method_diagonal() {
        let mat = FiniteRankMatrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 1.0]], P).unwrap();
        let e = power_method(&mat).unwrap();
        assert_eq!(e.value, 2);
        assert_eq!(e.vector[0], 1);
        assert!(e.vector[1].is_zero());
    }

    #[test]
    fn power_method_rank_one() {
        // v wᵀ with v = (1, 2, 3), w = (0.5, 0.25, 1)
        let v = [1.0, 2.0, 3.0];
        let w = [0.5, 0.25, 1.0];
        let rows: Vec<Vec<f64>> = v.iter().map(|a| w.iter().map(|b| a * b).collect()).collect();
        let mat = FiniteRankMatrix::from_rows(&rows, P).unwrap();
        let e = power_method(&mat).unwrap();
        assert_eq!(e.value, 4.0);
        assert!(e.iterations <= 2);
        assert!((e.vector[0].to_f64() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn power_method_on_nilpotent_fails() {
        let mat = FiniteRankMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]], P).unwrap();
        assert!(matches!(power_method(&mat), Err(Error::Convergence { .. })));
    }

    #[test]
    fn identity_operator_matrix() {
        let op = make_operator(&OperatorFamily::Identity, P).unwrap();
        let mat = compute_matrix(&op, 2, &ScaledInterval::unit_interval(), P).unwrap();
        for k in 0..2 {
            for l in 0..2 {
                let expect = if k == l { 1.0 } else { 0.0 };
                assert!((mat.get(k, l).to_f64() - expect).abs() < 1e-60);
            }
        }
        let mat = compute_matrix(&op, 5, &ScaledInterval::unit_interval(), P).unwrap();
        assert_eq!(mat.rank(), 5);
    }

    #[test]
    fn transfer_matrix_soft_eigenvalue() {
        let op = make_operator(&OperatorFamily::bolyai_full(0.0), P).unwrap();
        let mat = compute_matrix(&op, 40, &ScaledInterval::unit_interval(), P).unwrap();
        assert_eq!(mat.rank(), 40);
        let e = power_method(&mat).unwrap();
        assert!((e.value.to_f64() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ellipse_constant_value() {
        // sinh(log 5.5)/(cosh(log 5.5) - cosh(log 1.001)), by mpmath
        let c = ellipse_constant(&Ball::parse_decimal("1.001", P).unwrap(), &Ball::from_f64(5.5, P)).unwrap();
        assert!((c.to_f64() - 1.444_444_836_370_868_6).abs() < 1e-13, "{c}");
    }

    #[test]
    fn error_bound_for_constant_decays() {
        let gamma = ScaledInterval::unit_interval();
        let three = ComplexBall::from_real(Ball::from_i64(3, P));
        let mut last = f64::INFINITY;
        for n in [5usize, 10, 20] {
            let b = interp_error_bound(|_| Ok(three.clone()), n, 1.001, 5.5, &gamma, 8, P).unwrap();
            let v = b.to_f64();
            assert!(v > 0.0 && v < last);
            last = v;
        }
    }

    #[test]
    fn p_zero_is_zero() {
        let op = make_operator(&OperatorFamily::bolyai_full(0.0), P).unwrap();
        let r = compute_bounds(&op, &small_cfg(40), &ScaledInterval::unit_interval()).unwrap();
        let one = Float::with_val(P, 1);
        assert!(r.bounds.contains(&one), "{:?}", r.bounds);
        assert!(r.bounds.width() < 1e-10);
        assert!(r.f_min.is_positive());
    }

    #[test]
    fn positive_eps_gives_contraction() {
        let op = make_operator(&OperatorFamily::bolyai_full(1e-20), P).unwrap();
        let r = compute_bounds(&op, &small_cfg(40), &ScaledInterval::unit_interval()).unwrap();
        assert!(r.bounds.hi() < 1);
    }

    #[test]
    fn invalid_ellipse_parameters() {
        let gamma = ScaledInterval::unit_interval();
        let one = ComplexBall::from_real(Ball::one(P));
        assert!(interp_error_bound(|_| Ok(one.clone()), 10, 2.0, 1.5, &gamma, 4, P).is_err());
    }

    #[test]
    fn wide_ellipse_meets_branch_cut() {
        let op = make_operator(&OperatorFamily::bolyai_full(0.0), P).unwrap();
        let cfg = PrecisionConfig { big_r: 7.0, ..small_cfg(20) };
        assert!(matches!(
            compute_bounds(&op, &cfg, &ScaledInterval::unit_interval()),
            Err(Error::BranchCut) | Err(Error::InvalidBall(_))
        ));
    }
}
