//! Norming constants `(a_n, b_n)`: exact quantile inversion, closed-form
//! asymptotics for the Weibull-like and log-Weibull-like classes, and the
//! fixed-point iteration that produces those asymptotics.

use crate::error::{Error, Result};
use crate::numeric::{self, Simpson};
use crate::scalar::{log_n, Real, ScalarFn};
use crate::tails::{DistributionSpec, Family, SlowlyVarying};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormingMethod {
    ExactQuantile,
    ClosedForm,
}

/// Scale `a_n > 0` and location `b_n` for sample size `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormingPair<T> {
    pub n: u64,
    pub a: T,
    pub b: T,
    pub method: NormingMethod,
}

impl<T: Real> NormingPair<T> {
    pub fn new(n: u64, a: T, b: T, method: NormingMethod) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("n must be at least 2, got {n}")));
        }
        if !(a > T::zero()) || !a.is_finite() {
            return Err(Error::domain(format!("scale a_n must be positive and finite, got {a}")));
        }
        if !b.is_finite() {
            return Err(Error::domain(format!("location b_n must be finite, got {b}")));
        }
        Ok(NormingPair { n, a, b, method })
    }

    /// `log n` as a real.
    pub fn log_n(&self) -> T {
        log_n(self.n)
    }

    /// `b_n + a_n x`.
    pub fn point(&self, x: T) -> T {
        self.b + self.a * x
    }
}

/// Tail level defining `b_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Centering {
    /// `1 - F(b_n) = 1/n`.
    #[default]
    OneOverN,
    /// `F(b_n) = e^{-1/n}`.
    ExpMinusOneOverN,
}

/// Scale rule applied at `b_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScaleRule {
    /// `a_n = f(b_n)/g(b_n)`, the auxiliary function of the full tail.
    #[default]
    VonMises,
    /// `a_n = f(b_n)`, ignoring the `g` factor.
    Auxiliary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NormingOptions {
    pub centering: Centering,
    pub scale: ScaleRule,
}

/// `b_n = F^←(1 - 1/n)`, `a_n = f(b_n)/g(b_n)`.
pub fn norming_exact<T: Real>(dist: &DistributionSpec<T>, n: u64) -> Result<NormingPair<T>> {
    norming_exact_with(dist, n, NormingOptions::default())
}

pub fn norming_exact_with<T: Real>(
    dist: &DistributionSpec<T>,
    n: u64,
    options: NormingOptions,
) -> Result<NormingPair<T>> {
    if n < 2 {
        return Err(Error::domain(format!("n must be at least 2, got {n}")));
    }
    let log_q = match options.centering {
        Centering::OneOverN => -log_n::<T>(n),
        Centering::ExpMinusOneOverN => numeric::log1mexp(-T::lit(1.0 / n as f64)),
    };
    let b = dist.quantile_log_tail(log_q)?;
    let vm = dist.von_mises_components(b)?;
    let a = match options.scale {
        ScaleRule::VonMises => vm.f / vm.g,
        ScaleRule::Auxiliary => vm.f,
    };
    NormingPair::new(n, a, b, NormingMethod::ExactQuantile)
}

/// Closed-form norming for `ℓ(x) x^α e^{-c x^p}` with `u = log n / c`:
///
/// `a = u^{1/p-1}/(cp)` and
/// `b = u^{1/p} + u^{1/p-1}/p · ((α/(pc)) log u + (1/c) log ℓ(u^{1/p}))`,
/// which at `p = 1` is `a = 1/c`, `b = u + (α/c) log u + (1/c) log ℓ(u)`.
pub fn norming_weibull_closed<T: Real>(
    c: T,
    p: T,
    alpha: T,
    ell: &SlowlyVarying<T>,
    n: u64,
) -> Result<NormingPair<T>> {
    if !(c > T::zero()) || !(p > T::zero()) {
        return Err(Error::domain(format!("c and p must be positive, got c={c}, p={p}")));
    }
    let u = log_n::<T>(n) / c;
    if !(u > T::one()) {
        return Err(Error::domain(format!("log n / c = {u} must exceed 1")));
    }
    let one = T::one();
    let lead = u.powf(one / p);
    let slope = u.powf(one / p - one) / p;
    let shift = alpha / (p * c) * u.ln() + ell.log_value(lead) / c;
    let a = u.powf(one / p - one) / (c * p);
    NormingPair::new(n, a, lead + slope * shift, NormingMethod::ClosedForm)
}

/// Correction in `y = x^p`, `y - (α/(pc)) log y - (1/c) log ℓ(y^{1/p}) = u`.
pub fn weibull_correction<T: Real>(
    c: T,
    p: T,
    alpha: T,
    ell: SlowlyVarying<T>,
) -> impl Fn(T, T) -> Result<T> {
    move |y: T, _u: T| {
        if !(y > T::zero()) {
            return Err(Error::domain(format!("iterate y={y} left the positive axis")));
        }
        Ok(alpha / (p * c) * y.ln() + ell.log_value(y.powf(T::one() / p)) / c)
    }
}

/// Correction in `y = log^p x` for `ℓ(x) x^α e^{-c log^p x}`:
/// `y = u + (α/c) y^{1/p} + (1/c) log ℓ(exp(y^{1/p}))` with `u = log n / c`.
pub fn log_weibull_correction<T: Real>(
    c: T,
    p: T,
    alpha: T,
    ell: SlowlyVarying<T>,
) -> impl Fn(T, T) -> Result<T> {
    move |y: T, _u: T| {
        if !(y > T::zero()) {
            return Err(Error::domain(format!("iterate y={y} left the positive axis")));
        }
        let s = y.powf(T::one() / p);
        Ok(alpha / c * s + log_ell_at_log(&ell, s) / c)
    }
}

/// `log ℓ(e^s)` without forming `e^s`.
fn log_ell_at_log<T: Real>(ell: &SlowlyVarying<T>, s: T) -> T {
    match *ell {
        SlowlyVarying::Const { ell0 } => ell0.ln(),
        SlowlyVarying::LogPower { ell0, beta } => {
            if beta == T::zero() {
                ell0.ln()
            } else {
                ell0.ln() + beta * s.ln()
            }
        }
    }
}

/// Correction for a generalized log-Weibull-like tail with `g = 1 + α(t)` and
/// `f(t) = C t log^{1-p} t`: `y = u - p ∫_0^{y^{1/p}} α(e^s) s^{p-1} ds`.
/// `α(e^s) s^{p-1}` must stay finite at `s = 0`.
pub fn log_weibull_correction_generic<T: Real>(
    p: T,
    alpha_fn: ScalarFn<T>,
) -> impl Fn(T, T) -> Result<T> {
    move |y: T, _u: T| {
        if !(y > T::zero()) {
            return Err(Error::domain(format!("iterate y={y} left the positive axis")));
        }
        let upper = y.powf(T::one() / p);
        let integral = Simpson::default().integrate(
            |s: T| alpha_fn(s.exp()) * s.powf(p - T::one()),
            T::zero(),
            upper,
        )?;
        Ok(-p * integral)
    }
}

/// Closed-form norming for `ℓ(x) x^α e^{-c log^p x}`: one step of the
/// fixed-point iteration in `y = log^p b` from `y = u = log n / c`, then
/// `b = exp(y^{1/p})`, `a = f(b)/g(b)`.
pub fn norming_logweibull_closed<T: Real>(
    c: T,
    p: T,
    alpha: T,
    ell: &SlowlyVarying<T>,
    n: u64,
) -> Result<NormingPair<T>> {
    if !(p > T::one()) {
        return Err(Error::domain(format!(
            "log-Weibull-like tails need p > 1, got p={p}"
        )));
    }
    if !(c > T::zero()) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    let u = log_n::<T>(n) / c;
    if !(u > T::one()) {
        return Err(Error::domain(format!("log n / c = {u} must exceed 1")));
    }
    let y = asymptotic_iterate(log_weibull_correction(c, p, alpha, *ell), u, 1)?;
    if !(y > T::zero()) {
        return Err(Error::domain(format!("centering equation gave log^p b = {y} ≤ 0")));
    }
    let log_b = y.powf(T::one() / p);
    let b = log_b.exp();
    let cp = c * p;
    let f = b * log_b.powf(T::one() - p) / cp;
    let g = T::one() - (alpha + ell.delta(b)) / (cp * log_b.powf(p - T::one()));
    if !(g > T::zero()) {
        return Err(Error::domain(format!("g(b_n) = {g} is not positive at b_n = {b}")));
    }
    NormingPair::new(n, f / g, b, NormingMethod::ClosedForm)
}

/// Closed-form norming for the built-in families that have one.
pub fn norming_closed<T: Real>(dist: &DistributionSpec<T>, n: u64) -> Option<Result<NormingPair<T>>> {
    match dist.family() {
        Family::ExponentialUnit => Some(NormingPair::new(n, T::one(), log_n(n), NormingMethod::ClosedForm)),
        Family::WeibullLike { c, p, alpha, ell } => Some(norming_weibull_closed(*c, *p, *alpha, ell, n)),
        Family::LogWeibullLike { c, p, alpha, ell } => {
            Some(norming_logweibull_closed(*c, *p, *alpha, ell, n))
        }
        Family::GeneralizedVonMises { .. } | Family::IteratedLogScale { .. } => None,
    }
}

/// Fixed-point iteration `y_0 = u`, `y_{j+1} = u + correction(y_j, u)`.
///
/// Fails with a divergence error if the defect `|y - u - correction(y, u)|`
/// grows on two consecutive steps.
pub fn asymptotic_iterate<T: Real, F>(correction: F, u: T, iterations: usize) -> Result<T>
where
    F: Fn(T, T) -> Result<T>,
{
    if iterations == 0 {
        return Err(Error::domain("iterations must be at least 1"));
    }
    let defect = |y: T| -> Result<T> { Ok((y - u - correction(y, u)?).abs()) };
    let mut y = u;
    let mut last = defect(y)?;
    let mut growth = 0;
    for _ in 0..iterations {
        y = u + correction(y, u)?;
        if !y.is_finite() {
            return Err(Error::Divergence(format!("iterate is not finite (u={u})")));
        }
        let d = defect(y)?;
        if d > last {
            growth += 1;
            if growth >= 2 {
                return Err(Error::Divergence(format!(
                    "defect grew twice in a row, now {d} at y={y} (u={u})"
                )));
            }
        } else {
            growth = 0;
        }
        last = d;
    }
    Ok(y)
}

/// `(|a/ã - 1|, |b - b̃|/a)` for two pairs with the same `n`.
pub fn types_equivalence_gap<T: Real>(pair: &NormingPair<T>, other: &NormingPair<T>) -> Result<(T, T)> {
    if pair.n != other.n {
        return Err(Error::Mismatch(format!(
            "norming pairs have different n: {} and {}",
            pair.n, other.n
        )));
    }
    Ok(((pair.a / other.a - T::one()).abs(), (pair.b - other.b).abs() / pair.a))
}

/// Location of the pure Weibull tail `e^{-c x^p}` written as
/// `u^{1/p} + (1/(pc)) log(1/c) u^{1/p-1}` and as
/// `u^{1/p} + (1/(pc)) log((1/c) u^{1/p-1})`, with `u = log n / c`.
///
/// Neither is the exact quantile `u^{1/p}` when `c ≠ 1`; kept as a diagnostic.
pub fn weibull_example_locations<T: Real>(c: T, p: T, n: u64) -> (T, T) {
    let one = T::one();
    let u = log_n::<T>(n) / c;
    let lead = u.powf(one / p);
    let tail = u.powf(one / p - one);
    let k = one / (p * c);
    (lead + k * (one / c).ln() * tail, lead + k * (tail / c).ln())
}
