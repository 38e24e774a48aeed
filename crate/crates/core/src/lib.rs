//! Exact distribution of normalized maxima in the Gumbel domain of
//! attraction, accompanying laws with a power rate of convergence, and the
//! tools to measure those rates.
//!
//! Every routine is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.

pub mod analysis;
pub mod approx;
pub mod error;
pub mod gamma;
pub mod norming;
pub mod numeric;
pub mod scalar;
pub mod tails;

pub use analysis::{Metric, RateModel};
pub use approx::ApproximantKind;
pub use error::{Error, ErrorClass, Result};
pub use gamma::GammaRoute;
pub use norming::{Centering, NormingMethod, NormingOptions, ScaleRule};
pub use scalar::{scalar_fn, Real, ScalarFn};
pub use tails::{DistributionSpec, Family, SlowlyVarying, VonMises};

/// Distribution over `f64`.
pub type Distribution = DistributionSpec<f64>;
/// Norming pair over `f64`.
pub type Norming = norming::NormingPair<f64>;
pub type Approximant = ApproximantKind<f64>;
pub type EvalPoint = approx::EvalPoint<f64>;
pub type GammaValue = gamma::GammaValue<f64>;
pub type ErrorCurve = analysis::ErrorCurve<f64>;
pub type RateFit = analysis::RateFit<f64>;
