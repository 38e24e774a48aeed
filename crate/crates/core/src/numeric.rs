//! Numerical building blocks: stable log-scale helpers, adaptive Simpson
//! quadrature, a bracketing root finder and grid constructors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `log(1 - e^x)` for `x <= 0`, accurate at both ends.
pub fn log1mexp<T: Real>(x: T) -> T {
    if x > T::zero() {
        return T::nan();
    }
    if x > -T::LN_2() {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `log(1 - s)` for small `s`.
#[inline]
pub fn log1m<T: Real>(s: T) -> T {
    (-s).ln_1p()
}

/// Adaptive Simpson quadrature settings.
#[derive(Debug, Clone, Copy)]
pub struct Simpson<T> {
    pub abs_tol: T,
    pub max_depth: u32,
    pub max_evals: usize,
}

impl<T: Real> Default for Simpson<T> {
    fn default() -> Self {
        Simpson {
            abs_tol: T::tol(1e-12, 64.0),
            max_depth: 60,
            max_evals: 4_000_000,
        }
    }
}

struct Segment<T> {
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: u32,
}

impl<T: Real> Simpson<T> {
    /// Integrates `f` over `[a, b]` (either orientation).
    pub fn integrate<F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> Result<T> {
        if a == b {
            return Ok(T::zero());
        }
        if b < a {
            return self.integrate(f, b, a).map(|v| -v);
        }
        let fail = |reason: &str| Error::Quadrature {
            lo: a.as_f64(),
            hi: b.as_f64(),
            reason: reason.to_string(),
        };
        let eval = |x: T| -> Result<T> {
            let y = f(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Quadrature {
                    lo: a.as_f64(),
                    hi: b.as_f64(),
                    reason: format!("integrand not finite at {x}"),
                })
            }
        };

        let two = T::lit(2.0);
        let six = T::lit(6.0);
        let four = T::lit(4.0);
        let fifteen = T::lit(15.0);
        let floor = T::epsilon() * T::lit(64.0);

        // Four initial panels so a single lucky Simpson estimate cannot end the search.
        let panels = 4usize;
        let width = (b - a) / T::lit(panels as f64);
        let mut stack: Vec<Segment<T>> = Vec::with_capacity(64);
        let mut evals = 0usize;
        let mut left = a;
        let mut f_left = eval(a)?;
        evals += 1;
        for i in 0..panels {
            let right = if i + 1 == panels { b } else { a + width * T::lit((i + 1) as f64) };
            let mid = (left + right) / two;
            let fm = eval(mid)?;
            let fr = eval(right)?;
            evals += 2;
            let whole = (right - left) / six * (f_left + four * fm + fr);
            stack.push(Segment {
                a: left,
                b: right,
                fa: f_left,
                fm,
                fb: fr,
                whole,
                tol: self.abs_tol / T::lit(panels as f64),
                depth: 0,
            });
            left = right;
            f_left = fr;
        }

        let mut total = T::zero();
        while let Some(seg) = stack.pop() {
            let m = (seg.a + seg.b) / two;
            let lm = (seg.a + m) / two;
            let rm = (m + seg.b) / two;
            let flm = eval(lm)?;
            let frm = eval(rm)?;
            evals += 2;
            let left = (m - seg.a) / six * (seg.fa + four * flm + seg.fm);
            let right = (seg.b - m) / six * (seg.fm + four * frm + seg.fb);
            let delta = left + right - seg.whole;
            let scale = left.abs() + right.abs();
            if delta.abs() <= fifteen * seg.tol || delta.abs() <= floor * scale {
                total = total + left + right + delta / fifteen;
                continue;
            }
            if seg.depth >= self.max_depth {
                return Err(fail("depth cap reached"));
            }
            if evals > self.max_evals {
                return Err(fail("evaluation budget exhausted"));
            }
            let tol = seg.tol / two;
            stack.push(Segment {
                a: seg.a,
                b: m,
                fa: seg.fa,
                fm: flm,
                fb: seg.fm,
                whole: left,
                tol,
                depth: seg.depth + 1,
            });
            stack.push(Segment {
                a: m,
                b: seg.b,
                fa: seg.fm,
                fm: frm,
                fb: seg.fb,
                whole: right,
                tol,
                depth: seg.depth + 1,
            });
        }
        Ok(total)
    }
}

/// Integrates with the default settings (absolute tolerance `1e-12`, depth cap 60).
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T) -> Result<T> {
    Simpson::default().integrate(f, a, b)
}

/// Result of a bracketed root search.
#[derive(Debug, Clone, Copy)]
pub struct Root<T> {
    pub x: T,
    pub residual: T,
    pub iterations: usize,
}

/// Brent's method on a sign-changing bracket `[lo, hi]`.
///
/// Stops once `|h(x)| <= ftol`, or when the bracket has shrunk to a few ulps
/// of `x` (the residual is then the best the arithmetic allows).
pub fn brent<T: Real, F: FnMut(T) -> Result<T>>(
    mut h: F,
    lo: T,
    hi: T,
    ftol: T,
    max_iter: usize,
) -> Result<Root<T>> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = h(a)?;
    let mut fb = h(b)?;
    if fa == T::zero() {
        return Ok(Root { x: a, residual: fa, iterations: 0 });
    }
    if fb == T::zero() {
        return Ok(Root { x: b, residual: fb, iterations: 0 });
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Err(Error::domain(format!(
            "root not bracketed by [{lo}, {hi}] (values {fa}, {fb})"
        )));
    }
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let half = T::lit(0.5);
    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=max_iter {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + T::min_positive_value();
        let xm = half * (c - b);
        if fb.abs() <= ftol || xm.abs() <= tol1 {
            return Ok(Root { x: b, residual: fb, iterations: iter });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = three * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1.copysign(xm) };
        fb = h(b)?;
    }
    Err(Error::Convergence {
        iterations: max_iter,
        reason: format!("Brent iteration cap reached near x={b}, residual {fb}"),
    })
}

/// `steps` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace<T: Real>(lo: T, hi: T, steps: usize) -> Vec<T> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = T::lit((steps - 1) as f64);
            (0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        hi
                    } else {
                        lo + (hi - lo) * T::lit(i as f64) / last
                    }
                })
                .collect()
        }
    }
}

/// Logarithmically spaced integers from `start` to `stop` inclusive,
/// rounded to the nearest integer and deduplicated.
pub fn geometric_n(start: u64, stop: u64, count: usize) -> Vec<u64> {
    if count == 0 || start > stop {
        return Vec::new();
    }
    if count == 1 || start == stop {
        return vec![start];
    }
    let (ls, le) = ((start as f64).ln(), (stop as f64).ln());
    let mut out: Vec<u64> = (0..count)
        .map(|i| {
            if i == 0 {
                start
            } else if i + 1 == count {
                stop
            } else {
                let t = i as f64 / (count - 1) as f64;
                (ls + (le - ls) * t).exp().round() as u64
            }
        })
        .collect();
    out.dedup();
    out
}
