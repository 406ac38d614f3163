//! # majorant
//!
//! Majorization-based uncertainty analysis for quantum measurements.
//!
//! The crate has three layers:
//!
//! - [`majorization`] — the partial order `a ≺ b` on probability vectors,
//!   with the infimum/supremum construction over sets (prefix-sum envelopes
//!   plus pool-adjacent-violators flattening) and the Shannon/Tsallis
//!   entropies that respect the order.
//! - [`quantum`] — density matrices, POVMs, Born-rule statistics,
//!   post-measurement updates, and JSON wire formats for all of them.
//! - the applications: [`bounds`] computes state-independent uncertainty
//!   bounds for arbitrary finite measurement sets by multistart search over
//!   states and extracts scalar (quasi-entropic) bounds from them;
//!   [`conjugate`] solves the sinc-kernel eigenproblem governing joint
//!   position–momentum bin statistics; [`optimal`] builds the least
//!   uncertain rank-1 measurement of a state and verifies the spectral
//!   bound it saturates.
//!
//! All numerics are generic over the scalar type through [`Real`]
//! (`f32` or `f64`); the `*64` aliases below fix the scalar to `f64`, which
//! is what the CLI uses.
//!
//! ```
//! use majorant::{compare, MajorizationOrder, ProbVec64};
//!
//! let uniform = ProbVec64::new(vec![0.5, 0.5]).unwrap();
//! let certain = ProbVec64::new(vec![1.0, 0.0]).unwrap();
//! assert_eq!(compare(&uniform, &certain), MajorizationOrder::StrictlyBelow);
//! ```

pub mod bounds;
pub mod conjugate;
pub mod error;
pub mod majorization;
pub mod optimal;
pub mod quadrature;
pub mod quantum;
pub mod random;
pub mod real;

pub use error::{Error, Result};
pub use majorization::{
    compare, flatten, infimum, is_uncertain, outer_product, shannon_entropy, supremum,
    tsallis_entropy, MajorizationOrder, PrefixEnvelope, ProbVec,
};
pub use quantum::{
    bloch_to_density, born_probabilities, joint_distribution, post_measurement_state,
    spin_component_measurement, validate_state, ComplexMatrix, DensityMatrix, Measurement,
    MeasurementOperator, PovmElement, SpinAxis, StateDiagnostics,
};
pub use real::Real;

/// Double-precision aliases for the main domain types.
pub type ProbVec64 = ProbVec<f64>;
pub type PrefixEnvelope64 = PrefixEnvelope<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type Measurement64 = Measurement<f64>;
pub type BoundResult64 = bounds::BoundResult<f64>;
pub type SearchConfig64 = bounds::SearchConfig<f64>;
pub type ConcaveMeasure64 = bounds::ConcaveMeasure<f64>;
pub type KernelSpectrum64 = conjugate::KernelSpectrum<f64>;
pub type PhaseSpaceParams64 = conjugate::PhaseSpaceParams<f64>;
pub type Spectrum64 = optimal::Spectrum<f64>;
