//! The exponent `γ_n(x) = -log[(1 - F(b_n + a_n x)) / (1 - F(b_n))]` and the
//! leading terms of `γ_n(x) - x` for the Weibull-like and log-Weibull-like
//! classes.

use crate::error::{Error, Result};
use crate::norming::NormingPair;
use crate::numeric::Simpson;
use crate::scalar::{log_n, Real, ScalarFn};
use crate::tails::DistributionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaRoute {
    ExactTailRatio,
    Quadrature,
    ClosedFormWeibull,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue<T> {
    pub x: T,
    pub n: u64,
    pub value: T,
    pub route: GammaRoute,
}

fn check_point<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<()> {
    let y = pair.point(x);
    if y >= dist.x0() {
        Ok(())
    } else {
        let threshold = (dist.x0() - pair.b) / pair.a;
        Err(Error::domain(format!(
            "b_n + a_n x = {y} lies below x0 = {}; need x ≥ {threshold}",
            dist.x0()
        )))
    }
}

/// `γ_n(x)` from the log-tail ratio; the ground truth for every other route.
pub fn gamma_exact<T: Real>(dist: &DistributionSpec<T>, pair: &NormingPair<T>, x: T) -> Result<GammaValue<T>> {
    check_point(dist, pair, x)?;
    let value = if x == T::zero() {
        T::zero()
    } else {
        dist.log_tail_increment(pair.b, pair.a * x)?
    };
    Ok(GammaValue { x, n: pair.n, value, route: GammaRoute::ExactTailRatio })
}

/// `γ_n(x) = ∫_0^x (a g(b + av)/f(b + av) - 1) dv + x - log(c(b + ax)/c(b))`.
///
/// With `a = f(b)/g(b)` the integrand is the familiar
/// `g(b+av) f(b) / (f(b+av) g(b)) - 1`; any positive `a` is accepted.
pub fn gamma_quadrature<T: Real>(
    dist: &DistributionSpec<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<GammaValue<T>> {
    check_point(dist, pair, x)?;
    let (a, b) = (pair.a, pair.b);
    let integrand = |v: T| match dist.von_mises_components(b + a * v) {
        Ok(vm) => a * vm.g / vm.f - T::one(),
        Err(_) => T::nan(),
    };
    let integral = Simpson::default().integrate(integrand, T::zero(), x)?;
    let c_term = dist.log_c_ratio(b, b + a * x)?;
    Ok(GammaValue { x, n: pair.n, value: integral + x - c_term, route: GammaRoute::Quadrature })
}

/// `γ_n(x) = log n ((1 + x/(p log n))^p - 1)`, exact for `e^{-x^p}` under
/// exact norming; `p = 1` returns `x` itself.
pub fn gamma_closed_weibull<T: Real>(p: T, n: u64, x: T) -> Result<GammaValue<T>> {
    if !(p > T::zero()) {
        return Err(Error::domain(format!("p must be positive, got {p}")));
    }
    let ln = log_n::<T>(n);
    let step = x / (p * ln);
    if !(step > -T::one()) {
        return Err(Error::domain(format!(
            "1 + x/(p log n) must be positive; x = {x} is below {}",
            -p * ln
        )));
    }
    let value = if p == T::one() { x } else { ln * (p * step.ln_1p()).exp_m1() };
    Ok(GammaValue { x, n, value, route: GammaRoute::ClosedFormWeibull })
}

fn taylor_guard<T: Real>(p: T, ln: T, x: T) -> Result<()> {
    let limit = p * ln / T::lit(2.0);
    if x.abs() > limit {
        Err(Error::domain(format!(
            "|x| = {} exceeds p log n / 2 = {limit}, outside the expansion regime",
            x.abs()
        )))
    } else {
        Ok(())
    }
}

/// Predicted `γ_n(x) - x` for `f(t) = C t^{1-p}`, `g = 1 + α(t)`:
/// `(p-1) x²/(2p log n) + ∫_0^x α(b_n + C b_n^{1-p} v) dv`.
pub fn correction_generalized_weibull<T: Real>(
    scale: T,
    p: T,
    alpha_fn: &ScalarFn<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<T> {
    if !(scale > T::zero()) || !(p > T::zero()) {
        return Err(Error::domain(format!("C and p must be positive, got C={scale}, p={p}")));
    }
    if !(pair.b > T::zero()) {
        return Err(Error::domain(format!("b_n must be positive, got {}", pair.b)));
    }
    let ln = pair.log_n();
    taylor_guard(p, ln, x)?;
    let quadratic = (p - T::one()) * x * x / (T::lit(2.0) * p * ln);
    let step = scale * pair.b.powf(T::one() - p);
    let integral = Simpson::default().integrate(|v: T| alpha_fn(pair.b + step * v), T::zero(), x)?;
    Ok(quadratic + integral)
}

/// Leading `γ_n(x) - x` for the classical Weibull-like class:
/// `((p-1) x²/2 - α x) / (p log n)`.
pub fn correction_weibull_like<T: Real>(p: T, alpha: T, n: u64, x: T) -> Result<T> {
    if n < 3 {
        return Err(Error::domain(format!("n must be at least 3, got {n}")));
    }
    if !(p > T::zero()) || !alpha.is_finite() {
        return Err(Error::domain(format!("need p > 0 and finite alpha, got p={p}, alpha={alpha}")));
    }
    let ln = log_n::<T>(n);
    taylor_guard(p, ln, x)?;
    let two = T::lit(2.0);
    Ok(((p - T::one()) * x * x / two - alpha * x) / (p * ln))
}

/// Predicted `γ_n(x) - x` for `f(t) = C t log^{1-p} t`, `g = 1 + α(t)`, `p > 1`:
/// `-½ C^{1/p} p^{(1-p)/p} x² log^{1/p-1} n + ∫_0^x α(b_n + C b_n log^{1-p} b_n · v) dv`.
pub fn correction_logweibull<T: Real>(
    scale: T,
    p: T,
    alpha_fn: &ScalarFn<T>,
    pair: &NormingPair<T>,
    x: T,
) -> Result<T> {
    if !(p > T::one()) {
        return Err(Error::domain(format!(
            "p = {p} ≤ 1: such tails are not in the Gumbel domain"
        )));
    }
    if !(scale > T::zero()) {
        return Err(Error::domain(format!("C must be positive, got {scale}")));
    }
    if !(pair.b > T::one()) {
        return Err(Error::domain(format!("b_n must exceed 1, got {}", pair.b)));
    }
    let ln = pair.log_n();
    taylor_guard(p, ln, x)?;
    let one = T::one();
    let half = T::lit(0.5);
    let quadratic = -half * scale.powf(one / p) * p.powf((one - p) / p) * x * x * ln.powf(one / p - one);
    let step = scale * pair.b * pair.b.ln().powf(one - p);
    let integral = Simpson::default().integrate(|v: T| alpha_fn(pair.b + step * v), T::zero(), x)?;
    Ok(quadratic + integral)
}
