//! Scalar abstraction: the whole library is generic over the floating-point
//! type through [`Real`], with `f32` and `f64` as the two implementors.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerics run over.
///
/// The associated constants are the validation tolerances used throughout the
/// crate. They are scaled to the precision of the type: the `f64` values are
/// the contractual ones, the `f32` values are loosened so that single
/// precision remains usable.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive {
    /// Entries smaller than this in magnitude are treated as exact zeros;
    /// anything below `-EPS_PROB` is rejected as a negative probability.
    const EPS_PROB: Self;
    /// Slack allowed on normalization sums (probability vectors, traces).
    const EPS_SUM: Self;
    /// Slack when comparing prefix sums of two vectors.
    const EPS_PREFIX: Self;
    /// Eigenvalue positivity slack.
    const EPS_PSD: Self;
    /// Largest tolerated entrywise Hermiticity defect `max |A - A†|`.
    const EPS_HERM: Self;

    /// Lossy conversion for error reporting.
    fn approx_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const EPS_PROB: f64 = 1e-12;
    const EPS_SUM: f64 = 1e-9;
    const EPS_PREFIX: f64 = 1e-9;
    const EPS_PSD: f64 = 1e-9;
    const EPS_HERM: f64 = 1e-10;
}

impl Real for f32 {
    const EPS_PROB: f32 = 1e-6;
    const EPS_SUM: f32 = 1e-4;
    const EPS_PREFIX: f32 = 1e-4;
    const EPS_PSD: f32 = 1e-4;
    const EPS_HERM: f32 = 1e-5;
}
