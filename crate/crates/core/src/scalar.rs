//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::sync::Arc;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
///
/// All tolerances in the crate are pinned for binary64; `f32` runs use the
/// same algorithms with tolerances floored at a small multiple of its epsilon.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// `max(tol, k * epsilon)`: a requested tolerance that the type can honour.
    #[inline]
    fn tol(tol: f64, k: f64) -> Self {
        Self::lit(tol).max(Self::epsilon() * Self::lit(k))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shared, pure scalar function handle (von Mises components, `α(t)`, `A(n)`).
pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Wraps a closure into a [`ScalarFn`].
pub fn scalar_fn<T, F>(f: F) -> ScalarFn<T>
where
    F: Fn(T) -> T + Send + Sync + 'static,
{
    Arc::new(f)
}

/// `log n` computed in floating point; `n` may be as large as `2^63 - 1`.
#[inline]
pub fn log_n<T: Real>(n: u64) -> T {
    T::lit((n as f64).ln())
}
