//! Tail families in the Gumbel max-domain of attraction.
//!
//! Every family is evaluated on the log scale. Closed-form families
//! (exponential, Weibull-like, log-Weibull-like) use their explicit tails;
//! families given through a von Mises representation
//! `1 - F(x) = c(x) exp(-∫_{x0}^x g(t)/f(t) dt)` are integrated numerically.
//!
//! Below `x0` a distribution is completed by an atom at `x0` carrying mass
//! `F(x0)`. Only the upper tail is ever evaluated by the maxima machinery; the
//! atom matters for sampling and for `F^n` below `x0`.

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{self, Simpson};
use crate::scalar::{Real, ScalarFn};

/// Slowly varying factor `ℓ(x)` with an exact `δ(t) = t (log ℓ)'(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlowlyVarying<T> {
    /// `ℓ(x) = ℓ0`.
    Const { ell0: T },
    /// `ℓ(x) = ℓ0 (log x)^β` for `x > 1`.
    LogPower { ell0: T, beta: T },
}

impl<T: Real> SlowlyVarying<T> {
    pub fn constant(ell0: T) -> Result<Self> {
        if !(ell0 > T::zero()) || !ell0.is_finite() {
            return Err(Error::domain(format!("ell0 must be positive and finite, got {ell0}")));
        }
        Ok(SlowlyVarying::Const { ell0 })
    }

    pub fn log_power(ell0: T, beta: T) -> Result<Self> {
        if !(ell0 > T::zero()) || !ell0.is_finite() {
            return Err(Error::domain(format!("ell0 must be positive and finite, got {ell0}")));
        }
        if !beta.is_finite() {
            return Err(Error::domain(format!("beta must be finite, got {beta}")));
        }
        Ok(SlowlyVarying::LogPower { ell0, beta })
    }

    pub fn one() -> Self {
        SlowlyVarying::Const { ell0: T::one() }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, SlowlyVarying::Const { ell0 } if *ell0 == T::one())
    }

    /// Smallest admissible argument (exclusive for `LogPower`).
    fn lower_bound(&self) -> T {
        match self {
            SlowlyVarying::Const { .. } => T::zero(),
            SlowlyVarying::LogPower { .. } => T::one(),
        }
    }

    pub fn log_value(&self, x: T) -> T {
        match *self {
            SlowlyVarying::Const { ell0 } => ell0.ln(),
            SlowlyVarying::LogPower { ell0, beta } => {
                if beta == T::zero() {
                    ell0.ln()
                } else {
                    ell0.ln() + beta * x.ln().ln()
                }
            }
        }
    }

    pub fn value(&self, x: T) -> T {
        self.log_value(x).exp()
    }

    /// `δ(t)` in `ℓ(x) = ℓ0 exp(∫ δ(t)/t dt)`.
    pub fn delta(&self, t: T) -> T {
        match *self {
            SlowlyVarying::Const { .. } => T::zero(),
            SlowlyVarying::LogPower { beta, .. } => beta / t.ln(),
        }
    }

    /// `log ℓ(x(1 + r)) - log ℓ(x)`, accurate for small `r`.
    fn log_ratio(&self, x: T, r: T) -> T {
        match *self {
            SlowlyVarying::Const { .. } => T::zero(),
            SlowlyVarying::LogPower { beta, .. } => {
                if beta == T::zero() {
                    T::zero()
                } else {
                    beta * (r.ln_1p() / x.ln()).ln_1p()
                }
            }
        }
    }
}

/// The tail family of a [`DistributionSpec`].
#[derive(Clone)]
pub enum Family<T> {
    /// `1 - F(x) = e^{-x}`, `x0 = 0`.
    ExponentialUnit,
    /// `1 - F(x) = ℓ(x) x^α e^{-c x^p}`.
    WeibullLike {
        c: T,
        p: T,
        alpha: T,
        ell: SlowlyVarying<T>,
    },
    /// `1 - F(x) = ℓ(x) x^α e^{-c log^p x}`, `p > 1`.
    LogWeibullLike {
        c: T,
        p: T,
        alpha: T,
        ell: SlowlyVarying<T>,
    },
    /// Caller supplied von Mises representation. The handles must be pure,
    /// `f, g > 0` on `[x0, ∞)`, and `f² c'' → 0` is the caller's obligation.
    GeneralizedVonMises {
        f: ScalarFn<T>,
        g: ScalarFn<T>,
        c: ScalarFn<T>,
    },
    /// Von Mises function with `f(t) = C t (log_(k) t)^{-a}`, `g ≡ 1`, `c ≡ 1`.
    IteratedLogScale { k: u32, a: T, scale: T },
}

impl<T: fmt::Debug> fmt::Debug for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::ExponentialUnit => write!(f, "ExponentialUnit"),
            Family::WeibullLike { c, p, alpha, ell } => f
                .debug_struct("WeibullLike")
                .field("c", c)
                .field("p", p)
                .field("alpha", alpha)
                .field("ell", ell)
                .finish(),
            Family::LogWeibullLike { c, p, alpha, ell } => f
                .debug_struct("LogWeibullLike")
                .field("c", c)
                .field("p", p)
                .field("alpha", alpha)
                .field("ell", ell)
                .finish(),
            Family::GeneralizedVonMises { .. } => write!(f, "GeneralizedVonMises(..)"),
            Family::IteratedLogScale { k, a, scale } => f
                .debug_struct("IteratedLogScale")
                .field("k", k)
                .field("a", a)
                .field("C", scale)
                .finish(),
        }
    }
}

/// Components `(f, g, c)` of the von Mises representation at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonMises<T> {
    pub f: T,
    pub g: T,
    pub c: T,
}

/// A tail family together with the left end `x0` of its tail region.
#[derive(Clone, Debug)]
pub struct DistributionSpec<T> {
    family: Family<T>,
    x0: T,
    x0_explicit: bool,
}

/// `log_(k) t`; every intermediate logarithm must be positive.
pub fn iterated_log<T: Real>(t: T, k: u32) -> Result<T> {
    let mut v = t;
    for i in 0..k {
        if !(v > T::zero()) {
            return Err(Error::domain(format!(
                "log_({k}) undefined at {t}: intermediate log {i} is {v}"
            )));
        }
        v = v.ln();
    }
    if !(v > T::zero()) {
        return Err(Error::domain(format!("log_({k}) {t} = {v} is not positive")));
    }
    Ok(v)
}

/// `exp` applied `k` times to 1: the point where `log_(k)` equals 1.
pub fn exp_tower<T: Real>(k: u32) -> T {
    (0..k).fold(T::one(), |v, _| v.exp())
}

fn check_positive<T: Real>(name: &str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

fn check_finite<T: Real>(name: &str, v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

impl<T: Real> DistributionSpec<T> {
    /// Standard exponential tail `e^{-x}` on `[0, ∞)`.
    pub fn exponential() -> Self {
        DistributionSpec {
            family: Family::ExponentialUnit,
            x0: T::zero(),
            x0_explicit: false,
        }
    }

    /// Weibull-like tail `ℓ(x) x^α e^{-c x^p}` for `x ≥ x0`.
    ///
    /// Without `x0`, the tail start is the first point of `e, 2e, 4e, …` where
    /// the tail is at most one and strictly decreasing from there on; if `e`
    /// itself qualifies, the start moves down along `e·0.9^k` while it still does.
    pub fn weibull_like(c: T, p: T, alpha: T, ell: SlowlyVarying<T>, x0: Option<T>) -> Result<Self> {
        check_positive("c", c)?;
        check_positive("p", p)?;
        check_finite("alpha", alpha)?;
        let family = Family::WeibullLike { c, p, alpha, ell };
        Self::with_closed_form(family, x0)
    }

    /// Log-Weibull-like tail `ℓ(x) x^α e^{-c log^p x}` for `x ≥ x0 ≥ e`.
    pub fn log_weibull_like(
        c: T,
        p: T,
        alpha: T,
        ell: SlowlyVarying<T>,
        x0: Option<T>,
    ) -> Result<Self> {
        check_positive("c", c)?;
        check_finite("p", p)?;
        if !(p > T::one()) {
            return Err(Error::domain(format!(
                "log-Weibull-like tails need p > 1 to lie in the Gumbel domain, got p={p}"
            )));
        }
        check_finite("alpha", alpha)?;
        let family = Family::LogWeibullLike { c, p, alpha, ell };
        Self::with_closed_form(family, x0)
    }

    /// Tail given by von Mises handles `1 - F(x) = c(x) exp(-∫_{x0}^x g/f)`.
    pub fn generalized_von_mises(f: ScalarFn<T>, g: ScalarFn<T>, c: ScalarFn<T>, x0: T) -> Result<Self> {
        check_finite("x0", x0)?;
        let (f0, g0, c0) = (f(x0), g(x0), c(x0));
        check_positive("f(x0)", f0)?;
        check_positive("g(x0)", g0)?;
        check_positive("c(x0)", c0)?;
        if c0 > T::one() {
            return Err(Error::domain(format!("tail at x0 must be at most 1, got c(x0)={c0}")));
        }
        Ok(DistributionSpec {
            family: Family::GeneralizedVonMises { f, g, c },
            x0,
            x0_explicit: true,
        })
    }

    /// Iterated-logarithm scale `f(t) = C t (log_(k) t)^{-a}`; `x0` defaults to
    /// the `k`-fold exponential tower of one and may not lie below it.
    pub fn iterated_log_scale(k: u32, a: T, scale: T, x0: Option<T>) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain(format!("k must be at least 2, got {k}")));
        }
        check_positive("a", a)?;
        check_positive("C", scale)?;
        let tower: T = exp_tower(k);
        if !tower.is_finite() {
            return Err(Error::domain(format!("k={k}: the exponential tower overflows")));
        }
        let x0_value = x0.unwrap_or(tower);
        check_finite("x0", x0_value)?;
        if x0_value < tower * (T::one() - T::tol(1e-12, 8.0)) {
            return Err(Error::domain(format!(
                "x0={x0_value} must not lie below the {k}-fold exponential tower {tower}"
            )));
        }
        iterated_log(x0_value, k)?;
        Ok(DistributionSpec {
            family: Family::IteratedLogScale { k, a, scale },
            x0: x0_value,
            x0_explicit: x0.is_some(),
        })
    }

    fn with_closed_form(family: Family<T>, x0: Option<T>) -> Result<Self> {
        let mut spec = DistributionSpec {
            family,
            x0: T::zero(),
            x0_explicit: x0.is_some(),
        };
        match x0 {
            Some(x0) => {
                check_finite("x0", x0)?;
                spec.check_tail_start(x0)?;
                spec.x0 = x0;
            }
            None => {
                let mut candidate = T::E();
                let two = T::lit(2.0);
                loop {
                    if !candidate.is_finite() {
                        return Err(Error::domain(
                            "no admissible tail start found on the doubling grid",
                        ));
                    }
                    if spec.check_tail_start(candidate).is_ok() {
                        spec.x0 = candidate;
                        break;
                    }
                    candidate = candidate * two;
                }
                if spec.x0 == T::E() {
                    // Walk down while admissible so the tail keeps as much mass as possible.
                    let shrink = T::lit(0.9);
                    for _ in 0..64 {
                        let lower = spec.x0 * shrink;
                        if spec.check_tail_start(lower).is_err() {
                            break;
                        }
                        spec.x0 = lower;
                    }
                }
            }
        }
        Ok(spec)
    }

    /// Tail start admissibility: in-domain, tail ≤ 1, strictly decreasing beyond.
    fn check_tail_start(&self, x0: T) -> Result<()> {
        let (c, p, alpha, ell, log_family) = match self.family {
            Family::WeibullLike { c, p, alpha, ell } => (c, p, alpha, ell, false),
            Family::LogWeibullLike { c, p, alpha, ell } => (c, p, alpha, ell, true),
            _ => unreachable!("closed-form families only"),
        };
        if log_family && x0 < T::E() {
            return Err(Error::domain(format!("x0 must be at least e for log-Weibull-like tails, got {x0}")));
        }
        if x0 < T::zero() {
            return Err(Error::domain(format!("x0 must be non-negative, got {x0}")));
        }
        if !(x0 > ell.lower_bound()) && !matches!(ell, SlowlyVarying::Const { .. }) {
            return Err(Error::domain(format!("x0 must exceed 1 for a log-power slowly varying factor, got {x0}")));
        }
        if x0 == T::zero() && alpha != T::zero() {
            return Err(Error::domain("x0 = 0 requires alpha = 0"));
        }
        let lt = self.closed_log_tail(x0);
        if !(lt <= T::zero()) {
            return Err(Error::domain(format!("tail at x0={x0} exceeds one (log tail {lt})")));
        }
        if x0 == T::zero() {
            // α = 0 and constant ℓ: g ≡ 1.
            return Ok(());
        }
        // g(t) > 0 for all t ≥ x0. Beyond `t_safe` the leading term dominates
        // |α + δ(t)| for good, so a geometric grid up to there suffices.
        let bound = |t: T| alpha.abs() + ell.delta(t).abs();
        let lead = |t: T| {
            if log_family {
                c * p * t.ln().powf(p - T::one())
            } else {
                c * p * t.powf(p)
            }
        };
        let ratio = T::lit(1.02);
        let mut t = x0;
        for _ in 0..100_000 {
            let g = T::one() - (alpha + ell.delta(t)) / lead(t);
            if !(g > T::zero()) {
                return Err(Error::domain(format!(
                    "tail is not strictly decreasing beyond x0={x0}: g({t}) = {g}"
                )));
            }
            if lead(t) > bound(t) && t > T::E() {
                return Ok(());
            }
            t = t * ratio;
        }
        Err(Error::domain(format!("could not certify monotone tail beyond x0={x0}")))
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    /// Left end of the tail region.
    pub fn x0(&self) -> T {
        self.x0
    }

    fn check_domain(&self, x: T) -> Result<()> {
        if x >= self.x0 {
            Ok(())
        } else if x.is_nan() {
            Err(Error::domain("argument is NaN"))
        } else {
            Err(Error::domain(format!("x={x} lies below the tail start x0={}", self.x0)))
        }
    }

    fn closed_log_tail(&self, x: T) -> T {
        match self.family {
            Family::ExponentialUnit => -x,
            Family::WeibullLike { c, p, alpha, ell } => {
                let pow_term = c * x.powf(p);
                let alpha_term = if alpha == T::zero() { T::zero() } else { alpha * x.ln() };
                ell.log_value(x) + alpha_term - pow_term
            }
            Family::LogWeibullLike { c, p, alpha, ell } => {
                let lx = x.ln();
                ell.log_value(x) + alpha * lx - c * lx.powf(p)
            }
            _ => unreachable!("closed-form families only"),
        }
    }

    /// `∫_{lo}^{hi} g(t)/f(t) dt` for the numerically integrated families.
    fn hazard_integral(&self, lo: T, hi: T) -> Result<T> {
        let quad = Simpson::<T>::default();
        match &self.family {
            Family::GeneralizedVonMises { f, g, .. } => quad.integrate(|t| g(t) / f(t), lo, hi),
            Family::IteratedLogScale { k, a, scale } => {
                // t = e^s: ∫ dt/(C t (log_k t)^{-a}) = C^{-1} ∫ (log_(k-1) s)^a ds.
                let (k, a, scale) = (*k, *a, *scale);
                let integrand = |s: T| match iterated_log(s, k - 1) {
                    Ok(v) => v.powf(a),
                    Err(_) => T::nan(),
                };
                quad.integrate(integrand, lo.ln(), hi.ln()).map(|v| v / scale)
            }
            _ => unreachable!("quadrature families only"),
        }
    }

    /// `log(1 - F(x))` for `x ≥ x0`.
    pub fn log_tail(&self, x: T) -> Result<T> {
        self.check_domain(x)?;
        match &self.family {
            Family::GeneralizedVonMises { c, .. } => {
                let cx = c(x);
                check_positive("c(x)", cx)?;
                Ok(cx.ln() - self.hazard_integral(self.x0, x)?)
            }
            Family::IteratedLogScale { .. } => Ok(-self.hazard_integral(self.x0, x)?),
            _ => Ok(self.closed_log_tail(x)),
        }
    }

    /// `1 - F(x)` for `x ≥ x0`.
    pub fn tail(&self, x: T) -> Result<T> {
        self.log_tail(x).map(T::exp)
    }

    /// `log(1 - F(x)) - log(1 - F(y))`, evaluated without forming either term
    /// when possible. Positive for `y > x`.
    pub fn log_tail_drop(&self, x: T, y: T) -> Result<T> {
        self.log_tail_increment(x, y - x)
    }

    /// `log(1 - F(x)) - log(1 - F(x + h))`; the step `h` enters without being
    /// recovered from a difference of nearby abscissae.
    pub fn log_tail_increment(&self, x: T, h: T) -> Result<T> {
        let y = x + h;
        self.check_domain(x)?;
        self.check_domain(y)?;
        if h == T::zero() {
            return Ok(T::zero());
        }
        match &self.family {
            Family::ExponentialUnit => Ok(h),
            Family::WeibullLike { c, p, alpha, ell } => {
                if x == T::zero() {
                    return Ok(self.closed_log_tail(x) - self.closed_log_tail(y));
                }
                let r = h / x;
                let lr = r.ln_1p();
                let pow_part = *c * x.powf(*p) * (*p * lr).exp_m1();
                let alpha_part = if *alpha == T::zero() { T::zero() } else { *alpha * lr };
                Ok(pow_part - alpha_part - ell.log_ratio(x, r))
            }
            Family::LogWeibullLike { c, p, alpha, ell } => {
                let lx = x.ln();
                let r = h / x;
                let d = r.ln_1p();
                let pow_part = *c * lx.powf(*p) * (*p * (d / lx).ln_1p()).exp_m1();
                Ok(pow_part - *alpha * d - ell.log_ratio(x, r))
            }
            Family::GeneralizedVonMises { c, .. } => {
                let (cx, cy) = (c(x), c(y));
                check_positive("c(x)", cx)?;
                check_positive("c(y)", cy)?;
                Ok(self.hazard_integral(x, y)? - (cy / cx).ln())
            }
            Family::IteratedLogScale { .. } => self.hazard_integral(x, y),
        }
    }

    /// Upper-tail quantile: the `x ≥ x0` with `1 - F(x) = q`.
    pub fn quantile_tail(&self, q: T) -> Result<T> {
        if !(q > T::zero()) || q > T::one() {
            return Err(Error::domain(format!("tail probability must lie in (0, 1], got {q}")));
        }
        self.quantile_log_tail(q.ln())
    }

    /// Upper-tail quantile from a log-probability `log q ≤ log(1 - F(x0))`.
    ///
    /// The bracket `[x0, x0 + 2^j]` is grown until it contains the root, which
    /// is then polished by Brent's method to `|log_tail(x) - log q| ≤ 1e-12 max(1, |log q|)`.
    pub fn quantile_log_tail(&self, log_q: T) -> Result<T> {
        if !(log_q <= T::zero()) {
            return Err(Error::domain(format!("log tail probability must be ≤ 0, got {log_q}")));
        }
        let top = self.log_tail(self.x0)?;
        if log_q > top {
            return Err(Error::domain(format!(
                "tail probability e^{log_q} exceeds the tail mass {} at x0={}",
                top.exp(),
                self.x0
            )));
        }
        if log_q == top {
            return Ok(self.x0);
        }
        if let Family::ExponentialUnit = self.family {
            return Ok(-log_q);
        }
        let h = |x: T| -> Result<T> { Ok(self.log_tail(x)? - log_q) };
        let two = T::lit(2.0);
        let mut step = T::one().max(self.x0.abs());
        let mut lo = self.x0;
        let mut hi = self.x0 + step;
        let mut expansions = 0usize;
        while h(hi)? > T::zero() {
            lo = hi;
            step = step * two;
            hi = self.x0 + step;
            expansions += 1;
            if !hi.is_finite() || expansions > 4096 {
                return Err(Error::Convergence {
                    iterations: expansions,
                    reason: format!("could not bracket the tail quantile for log q = {log_q}"),
                });
            }
        }
        let ftol = T::tol(1e-12, 8.0) * T::one().max(log_q.abs());
        let root = numeric::brent(h, lo, hi, ftol, 400)?;
        if root.residual.abs() > ftol * T::lit(100.0) {
            return Err(Error::Convergence {
                iterations: root.iterations,
                reason: format!(
                    "tail quantile residual {} above tolerance {ftol}",
                    root.residual
                ),
            });
        }
        Ok(root.x)
    }

    /// `(f(t), g(t), c(t))` of the von Mises representation.
    ///
    /// For the closed-form families `c` is the constant `1 - F(x0)` so that
    /// `1 - F(t) = c exp(-∫_{x0}^t g/f)` holds exactly.
    pub fn von_mises_components(&self, t: T) -> Result<VonMises<T>> {
        self.check_domain(t)?;
        let one = T::one();
        Ok(match &self.family {
            Family::ExponentialUnit => VonMises { f: one, g: one, c: one },
            Family::WeibullLike { c, p, alpha, ell } => {
                let cp = *c * *p;
                let delta = if t == T::zero() { T::zero() } else { ell.delta(t) };
                let g = if *alpha == T::zero() && delta == T::zero() {
                    one
                } else {
                    one - (*alpha + delta) / (cp * t.powf(*p))
                };
                VonMises {
                    f: t.powf(one - *p) / cp,
                    g,
                    c: self.closed_log_tail(self.x0).exp(),
                }
            }
            Family::LogWeibullLike { c, p, alpha, ell } => {
                let cp = *c * *p;
                let lt = t.ln();
                VonMises {
                    f: t * lt.powf(one - *p) / cp,
                    g: one - (*alpha + ell.delta(t)) / (cp * lt.powf(*p - one)),
                    c: self.closed_log_tail(self.x0).exp(),
                }
            }
            Family::GeneralizedVonMises { f, g, c } => VonMises { f: f(t), g: g(t), c: c(t) },
            Family::IteratedLogScale { k, a, scale } => VonMises {
                f: *scale * t * iterated_log(t, *k)?.powf(-*a),
                g: one,
                c: one,
            },
        })
    }

    /// `log c(y) - log c(x)`; zero for every built-in family.
    pub fn log_c_ratio(&self, x: T, y: T) -> Result<T> {
        match &self.family {
            Family::GeneralizedVonMises { c, .. } => {
                let (cx, cy) = (c(x), c(y));
                check_positive("c(x)", cx)?;
                check_positive("c(y)", cy)?;
                Ok((cy / cx).ln())
            }
            _ => Ok(T::zero()),
        }
    }

    /// `α(t) = g(t) - 1` for the built-in families.
    pub fn alpha_fn(&self) -> Option<ScalarFn<T>> {
        let spec = self.clone();
        match self.family {
            Family::GeneralizedVonMises { .. } => None,
            _ => Some(std::sync::Arc::new(move |t: T| {
                spec.von_mises_components(t).map(|v| v.g - T::one()).unwrap_or(T::nan())
            })),
        }
    }

    /// Canonical spec string in the grammar accepted by [`str::parse`].
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl<T: Real> fmt::Display for DistributionSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ell_str = |ell: &SlowlyVarying<T>| match ell {
            SlowlyVarying::Const { ell0 } => format!("const:{ell0}"),
            SlowlyVarying::LogPower { ell0, beta } => format!("logpow:{ell0}:{beta}"),
        };
        match &self.family {
            Family::ExponentialUnit => return write!(f, "exp"),
            Family::WeibullLike { c, p, alpha, ell } => {
                write!(f, "weibull:c={c},p={p},alpha={alpha},ell={}", ell_str(ell))?
            }
            Family::LogWeibullLike { c, p, alpha, ell } => {
                write!(f, "logweibull:c={c},p={p},alpha={alpha},ell={}", ell_str(ell))?
            }
            Family::GeneralizedVonMises { .. } => return write!(f, "vonmises:x0={}", self.x0),
            Family::IteratedLogScale { k, a, scale } => write!(f, "iterlog:k={k},a={a},C={scale}")?,
        }
        if self.x0_explicit {
            write!(f, ",x0={}", self.x0)?;
        }
        Ok(())
    }
}
