//! `P(M_n ≤ a_n x + b_n)` and its approximations.
//!
//! With `γ = γ_n(x)` and `1 - F(b_n) = 1/n`,
//! `F^n = exp(-e^{-γ}) · exp(-Σ/n)` where `Σ = Σ_k e^{-(k+2)γ} / ((k+2) n^k)`.
//! Dropping the second factor gives the accompanying law `B_n`; replacing `γ`
//! by `x` gives the Gumbel law `Λ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gamma::gamma_exact;
use crate::norming::NormingPair;
use crate::numeric::log1mexp;
use crate::scalar::{log_n, Real, ScalarFn};
use crate::tails::DistributionSpec;

/// Which approximation of `P(M_n ≤ a_n x + b_n)` to evaluate.
#[derive(Clone)]
pub enum ApproximantKind<T> {
    /// The exact law itself; its error curve is identically zero.
    Exact,
    Gumbel,
    Accompanying,
    TwoTerm,
    FirstOrderCorrected,
    /// `exp(-e^{-x} - A(n) H(x)) · exp(-Σ/n)` with `ρ ≤ 0`; `A` is called with `n` as a real.
    SecondOrder { rho: T, a_n: ScalarFn<T> },
}

impl<T> ApproximantKind<T> {
    /// Short name used in tables and on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            ApproximantKind::Exact => "exact",
            ApproximantKind::Gumbel => "gumbel",
            ApproximantKind::Accompanying => "accompanying",
            ApproximantKind::TwoTerm => "two_term",
            ApproximantKind::FirstOrderCorrected => "first_order",
            ApproximantKind::SecondOrder { .. } => "second_order",
        }
    }
}

impl<T: Real> ApproximantKind<T> {
    /// Second-order kind with a checked `ρ ≤ 0`.
    pub fn second_order(rho: T, a_n: ScalarFn<T>) -> Result<Self> {
        if !(rho <= T::zero()) {
            return Err(Error::domain(format!("rho must be ≤ 0, got {rho}")));
        }
        Ok(ApproximantKind::SecondOrder { rho, a_n })
    }

    /// Weibull-like preset: `ρ = 0`, `A(n) = 1/(p log n)`.
    pub fn weibull_second_order(p: T) -> Result<Self> {
        if !(p > T::zero()) {
            return Err(Error::domain(format!("p must be positive, got {p}")));
        }
        Self::second_order(T::zero(), std::sync::Arc::new(move |n: T| T::one() / (p * n.ln())))
    }
}

impl<T: fmt::Debug> fmt::Debug for ApproximantKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproximantKind::SecondOrder { rho, .. } => write!(f, "SecondOrder {{ rho: {rho:?}, .. }}"),
            other => f.write_str(other.name()),
        }
    }
}

/// One evaluation of an approximant against the exact law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T> {
    pub x: T,
    pub exact: T,
    pub approx: T,
    /// `exact - approx`.
    pub signed_error: T,
}

/// `F^n(a_n x + b_n)`; below `x0` the atom gives `F(x0)^n`.
pub fn exact_max_cdf<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<T> {
    let y = pair.point(x).max(dist.x0());
    let n = T::lit(pair.n as f64);
    Ok((n * log1mexp(dist.log_tail(y)?)).exp())
}

/// `Λ(x) = exp(-e^{-x})`.
pub fn gumbel_cdf<T: Real>(x: T) -> T {
    (-(-x).exp()).exp()
}

/// `B_n(x) = exp(-e^{-γ_n(x)})` for `γ_n(x) ≥ -log n`, else 0.
pub fn accompanying_law<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<T> {
    let gamma = gamma_exact(dist, pair, x)?.value;
    Ok(accompanying_from_gamma(gamma, pair.n))
}

fn accompanying_from_gamma<T: Real>(gamma: T, n: u64) -> T {
    if gamma >= -log_n::<T>(n) {
        gumbel_cdf(gamma)
    } else {
        T::zero()
    }
}

/// `Σ = Σ_{k≥0} e^{-(k+2)γ} / ((k+2) n^k)` given `γ > -log n`.
///
/// Partial sums stop once the next term falls below `1e-16` of the sum
/// (floored at half an ulp for `f32`); more than 200 terms is a divergence.
pub fn sigma_from_gamma<T: Real>(gamma: T, n: u64) -> Result<T> {
    let ln = log_n::<T>(n);
    if !(gamma > -ln) {
        return Err(Error::Divergence(format!(
            "γ = {gamma} ≤ -log n = {}: the Σ series does not converge",
            -ln
        )));
    }
    let lead = (-T::lit(2.0) * gamma).exp();
    if lead == T::zero() {
        return Ok(T::zero());
    }
    // Terms are lead · t^k/(k+2) with t = e^{-γ}/n < 1.
    let t = (-gamma - ln).exp();
    let rel = T::tol(1e-16, 0.5);
    let mut sum = T::zero();
    let mut power = T::one();
    for k in 0..200u32 {
        let term = power / T::lit(f64::from(k + 2));
        sum = sum + term;
        power = power * t;
        let next = power / T::lit(f64::from(k + 3));
        if next < rel * sum {
            return Ok(lead * sum);
        }
    }
    Err(Error::Divergence(format!(
        "Σ series did not settle within 200 terms (e^-γ/n = {t})"
    )))
}

/// Σ-series at `(n, x)` using the exact `γ_n(x)`.
pub fn sigma_series<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<T> {
    sigma_from_gamma(gamma_exact(dist, pair, x)?.value, pair.n)
}

/// `exp(-e^{-γ}) · exp(-Σ/n)`, equal to `F^n(a_n x + b_n)` when `1 - F(b_n) = 1/n`.
pub fn two_term<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<T> {
    let gamma = gamma_exact(dist, pair, x)?.value;
    two_term_from_gamma(gamma, pair.n)
}

fn two_term_from_gamma<T: Real>(gamma: T, n: u64) -> Result<T> {
    let sigma = sigma_from_gamma(gamma, n)?;
    Ok((-(-gamma).exp() - sigma / T::lit(n as f64)).exp())
}

/// `Λ(x) (1 + e^{-x} (γ - x))`, not clamped to `[0, 1]`.
pub fn first_order_corrected<T: Real>(x: T, gamma: T) -> T {
    gumbel_cdf(x) * (T::one() + (-x).exp() * (gamma - x))
}

/// `H(x) = (1/ρ)((x^ρ - 1)/ρ - log x)` for `ρ < 0` and `½ log² x` at `ρ = 0`.
///
/// Near `ρ = 0` the series `Σ_{k≥2} ρ^{k-2} log^k x / k!` replaces the
/// cancelling closed form, so `H` is continuous in `ρ`.
pub fn h_function<T: Real>(x: T, rho: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain(format!("H(x) needs x > 0, got {x}")));
    }
    if !(rho <= T::zero()) {
        return Err(Error::domain(format!("rho must be ≤ 0, got {rho}")));
    }
    let l = x.ln();
    let z = rho * l;
    if z.abs() < T::lit(0.1) {
        // l²/2 · Σ_{j≥0} z^j · 2/(j+2)!
        let mut term = l * l / T::lit(2.0);
        let mut sum = term;
        for j in 1..40u32 {
            term = term * z / T::lit(f64::from(j + 2));
            sum = sum + term;
            if term.abs() <= T::epsilon() * sum.abs() {
                break;
            }
        }
        Ok(sum)
    } else {
        Ok((z.exp_m1() / rho - l) / rho)
    }
}

/// `exp(-e^{-x} - A H(x)) · exp(-Σ/n)` for `x > 0`.
pub fn second_order_approx<T: Real>(
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    x: T,
    rho: T,
    a_value: T,
) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::domain(format!(
            "the second-order approximant needs x > 0 (H involves log x), got {x}"
        )));
    }
    let h = h_function(x, rho)?;
    let sigma = sigma_series(dist, pair, x)?;
    Ok((-(-x).exp() - a_value * h - sigma / T::lit(pair.n as f64)).exp())
}

/// Value of `kind` at `(pair.n, x)`.
pub fn evaluate<T: Real>(
    kind: &ApproximantKind<T>,
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<T> {
    match kind {
        ApproximantKind::Exact => exact_max_cdf(dist, pair, x),
        ApproximantKind::Gumbel => Ok(gumbel_cdf(x)),
        ApproximantKind::Accompanying => accompanying_law(dist, pair, x),
        ApproximantKind::TwoTerm => two_term(dist, pair, x),
        ApproximantKind::FirstOrderCorrected => {
            Ok(first_order_corrected(x, gamma_exact(dist, pair, x)?.value))
        }
        ApproximantKind::SecondOrder { rho, a_n } => {
            let a_value = a_n(T::lit(pair.n as f64));
            second_order_approx(dist, pair, x, *rho, a_value)
        }
    }
}

/// Exact value, approximant value and their signed difference.
pub fn eval_point<T: Real>(
    kind: &ApproximantKind<T>,
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<EvalPoint<T>> {
    let exact = exact_max_cdf(dist, pair, x)?;
    let approx = evaluate(kind, dist, pair, x)?;
    Ok(EvalPoint { x, exact, approx, signed_error: exact - approx })
}
