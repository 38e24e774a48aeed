//! Error curves over `n`, decay-rate fits, the weighted residual of the
//! second-order theory, and Monte Carlo maxima.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::approx::{evaluate, exact_max_cdf, gumbel_cdf, ApproximantKind};
use crate::error::{Error, Result};
use crate::gamma::gamma_exact;
use crate::norming::{norming_exact, norming_exact_with, Centering, NormingOptions, NormingPair, ScaleRule};
use crate::numeric::linspace;
use crate::scalar::{log_n, Real};
use crate::tails::DistributionSpec;

/// Name of the generator behind [`simulate_max`].
pub const RNG_ALGORITHM: &str = "chacha8";

/// Margin above the `B_n` cutoff `γ = -log n` kept by guarded grids.
pub const CUTOFF_MARGIN: f64 = 0.5;

/// Where an error curve measures `|exact - approximant|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric<T> {
    /// Maximum over the guarded grid of `steps` points on `[lo, hi]`.
    SupOnGrid { lo: T, hi: T, steps: usize },
    AtPoint(T),
}

impl<T: Real> Metric<T> {
    /// `x ∈ [-2, 6]`, 161 points.
    pub fn default_sup() -> Self {
        Metric::SupOnGrid { lo: T::lit(-2.0), hi: T::lit(6.0), steps: 161 }
    }
}

#[derive(Debug, Clone)]
pub struct ErrorCurve<T> {
    pub dist_label: String,
    pub approximant: ApproximantKind<T>,
    pub metric: Metric<T>,
    /// `(n, error)` with `n` strictly increasing.
    pub points: Vec<(u64, T)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RateModel {
    /// `error ≈ K n^θ`.
    PowerInN,
    /// `error ≈ K (log n)^θ`.
    PowerInLogN,
}

impl RateModel {
    pub fn name(&self) -> &'static str {
        match self {
            RateModel::PowerInN => "power_in_n",
            RateModel::PowerInLogN => "power_in_log_n",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit<T> {
    pub model: RateModel,
    pub exponent: T,
    pub r_squared: T,
    pub n_min: u64,
    pub n_max: u64,
    pub points: usize,
}

/// Points of `linspace(lo, hi, steps)` where every approximant is defined:
/// `b_n + a_n x ≥ x0`, `γ_n(x) ≥ -log n + 1/2`, and `x > 0` for the
/// second-order kind.
pub fn guarded_grid<T: Real>(
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    kind: &ApproximantKind<T>,
    lo: T,
    hi: T,
    steps: usize,
) -> Result<Vec<T>> {
    let floor = -log_n::<T>(pair.n) + T::lit(CUTOFF_MARGIN);
    let positive_only = matches!(kind, ApproximantKind::SecondOrder { .. });
    let mut out = Vec::with_capacity(steps);
    for x in linspace(lo, hi, steps) {
        if positive_only && !(x > T::zero()) {
            continue;
        }
        if pair.point(x) < dist.x0() {
            continue;
        }
        let gamma = gamma_exact(dist, pair, x).map_err(|e| e.at(pair.n, x.as_f64()))?;
        if gamma.value >= floor {
            out.push(x);
        }
    }
    Ok(out)
}

fn check_n_grid(n_grid: &[u64]) -> Result<()> {
    if n_grid.is_empty() {
        return Err(Error::domain("n grid is empty"));
    }
    if n_grid[0] < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {}", n_grid[0])));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("n grid must be strictly increasing"));
    }
    Ok(())
}

fn point_error<T: Real>(
    kind: &ApproximantKind<T>,
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<T> {
    let exact = exact_max_cdf(dist, pair, x)?;
    let approx = evaluate(kind, dist, pair, x)?;
    Ok((exact - approx).abs())
}

/// Error of `approximant` against the exact law at each `n` (exact norming).
pub fn error_curve<T: Real>(
    dist: &DistributionSpec<T>,
    approximant: &ApproximantKind<T>,
    metric: Metric<T>,
    n_grid: &[u64],
) -> Result<ErrorCurve<T>> {
    error_curve_with(dist, approximant, metric, n_grid, NormingOptions::default())
}

/// [`error_curve`] with explicit norming options. The `n` values are
/// evaluated in parallel and reassembled in grid order.
pub fn error_curve_with<T: Real>(
    dist: &DistributionSpec<T>,
    approximant: &ApproximantKind<T>,
    metric: Metric<T>,
    n_grid: &[u64],
    options: NormingOptions,
) -> Result<ErrorCurve<T>> {
    check_n_grid(n_grid)?;
    if let Metric::SupOnGrid { lo, hi, steps } = metric {
        if !(lo < hi) || steps < 2 {
            return Err(Error::domain(format!(
                "sup grid needs lo < hi and at least 2 steps, got {lo}:{hi}:{steps}"
            )));
        }
    }
    let points = n_grid
        .par_iter()
        .map(|&n| -> Result<(u64, T)> {
            let pair = norming_exact_with(dist, n, options).map_err(|e| e.at(n, f64::NAN))?;
            let error = match metric {
                Metric::AtPoint(x) => {
                    point_error(approximant, dist, &pair, x).map_err(|e| e.at(n, x.as_f64()))?
                }
                Metric::SupOnGrid { lo, hi, steps } => {
                    let grid = guarded_grid(dist, &pair, approximant, lo, hi, steps)?;
                    if grid.is_empty() {
                        return Err(Error::domain(format!("guarded grid is empty at n={n}")));
                    }
                    let mut sup = T::zero();
                    for x in grid {
                        let e = point_error(approximant, dist, &pair, x).map_err(|e| e.at(n, x.as_f64()))?;
                        sup = sup.max(e);
                    }
                    sup
                }
            };
            Ok((n, error))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ErrorCurve {
        dist_label: dist.label(),
        approximant: approximant.clone(),
        metric,
        points,
    })
}

/// Ordinary least squares of `log error` on `log n` or `log log n`.
pub fn fit_rate<T: Real>(curve: &ErrorCurve<T>, model: RateModel) -> Result<RateFit<T>> {
    fit_rate_points(&curve.points, model)
}

pub fn fit_rate_points<T: Real>(points: &[(u64, T)], model: RateModel) -> Result<RateFit<T>> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!(
            "a rate fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(n, err) in points {
        if !(err > T::zero()) || !err.is_finite() {
            return Err(Error::Degenerate(format!("error at n={n} is {err}; need a positive finite value")));
        }
        let ln = log_n::<T>(n);
        let x = match model {
            RateModel::PowerInN => ln,
            RateModel::PowerInLogN => {
                if !(ln > T::zero()) {
                    return Err(Error::Degenerate(format!("log log n undefined at n={n}")));
                }
                ln.ln()
            }
        };
        xs.push(x);
        ys.push(err.ln());
    }
    let count = T::lit(xs.len() as f64);
    let mean_x = xs.iter().copied().sum::<T>() / count;
    let mean_y = ys.iter().copied().sum::<T>() / count;
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(&ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if !(sxx > T::zero()) {
        return Err(Error::Degenerate("all n values coincide".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy > T::zero() {
        (sxy * sxy / (sxx * syy)).min(T::one()).max(T::zero())
    } else {
        T::one()
    };
    let n_min = points.iter().map(|p| p.0).min().unwrap_or(0);
    let n_max = points.iter().map(|p| p.0).max().unwrap_or(0);
    Ok(RateFit { model, exponent: slope, r_squared, n_min, n_max, points: points.len() })
}

/// `sup_x e^{(1-ε)x} |(F^n(a_n x + b_n) - Λ(x))/A + (1/ρ) e^{-x+ρx} Λ(x)|`
/// over the default guarded grid, with `b_n = F^←(e^{-1/n})` and `a_n = f(b_n)`.
///
/// The supremum is taken over a finite grid ("grid-sup"), so it bounds the
/// true supremum from below.
pub fn weighted_residual<T: Real>(dist: &DistributionSpec<T>, n: u64, rho: T, a_value: T, eps: T) -> Result<T> {
    weighted_residual_on(dist, n, rho, a_value, eps, T::lit(-2.0), T::lit(6.0), 161)
}

#[allow(clippy::too_many_arguments)]
pub fn weighted_residual_on<T: Real>(
    dist: &DistributionSpec<T>,
    n: u64,
    rho: T,
    a_value: T,
    eps: T,
    lo: T,
    hi: T,
    steps: usize,
) -> Result<T> {
    if !(rho < T::zero()) {
        return Err(Error::domain(format!("the weighted residual needs rho < 0, got {rho}")));
    }
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::domain(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    if !(a_value != T::zero()) || !a_value.is_finite() {
        return Err(Error::domain(format!("A(n) must be finite and nonzero, got {a_value}")));
    }
    let options = NormingOptions { centering: Centering::ExpMinusOneOverN, scale: ScaleRule::Auxiliary };
    let pair = norming_exact_with(dist, n, options)?;
    let grid = guarded_grid(dist, &pair, &ApproximantKind::Gumbel, lo, hi, steps)?;
    let mut sup = T::zero();
    for x in grid {
        let exact = exact_max_cdf(dist, &pair, x).map_err(|e| e.at(n, x.as_f64()))?;
        let lambda = gumbel_cdf(x);
        let residual = (exact - lambda) / a_value + ((rho - T::one()) * x).exp() * lambda / rho;
        sup = sup.max(((T::one() - eps) * x).exp() * residual.abs());
    }
    Ok(sup)
}

/// Scaled maxima `(M - b_n)/a_n` of `n` draws, one value per replication.
///
/// Replication `r` uses ChaCha8 seeded with `seed` on stream `r`, so results
/// do not depend on thread count. Draws are inverse-transform samples with
/// the atom at `x0`: the maximum corresponds to the smallest `1 - U`.
pub fn simulate_max<T: Real>(dist: &DistributionSpec<T>, n: u64, replications: usize, seed: u64) -> Result<Vec<T>> {
    if replications == 0 {
        return Err(Error::domain("replications must be at least 1"));
    }
    let pair = norming_exact(dist, n)?;
    let top = dist.log_tail(dist.x0())?;
    (0..replications)
        .into_par_iter()
        .map(|rep| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(rep as u64);
            let mut q_min = 1.0f64;
            for _ in 0..n {
                let q = 1.0 - rng.gen::<f64>();
                if q < q_min {
                    q_min = q;
                }
            }
            let log_q = T::lit(q_min.ln());
            let max = if log_q >= top { dist.x0() } else { dist.quantile_log_tail(log_q)? };
            Ok((max - pair.b) / pair.a)
        })
        .collect()
}

/// Fraction of `samples` at or below `x`.
pub fn empirical_cdf<T: Real>(samples: &[T], x: T) -> T {
    if samples.is_empty() {
        return T::nan();
    }
    let below = samples.iter().filter(|&&s| s <= x).count();
    T::lit(below as f64 / samples.len() as f64)
}
