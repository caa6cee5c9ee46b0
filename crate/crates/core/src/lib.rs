//! Resonances of a quantum particle scattered by a spherical generalized
//! point interaction of radius `R`.
//!
//! The crate is organised bottom-up:
//!
//! * [`gpi`]: the `(α, β, γ)` interaction data, its unitary (`U`) and
//!   transfer-matrix (`Λ`) encodings, class and separation predicates.
//! * [`riccati`]: Riccati–Bessel `S_l` and Riccati–Hankel `ξ_l` functions of
//!   complex argument.
//! * [`krein`]: boundary values of the deficiency solutions, the Krein
//!   coefficients and the pole determinant `det λ(k)`.
//! * [`polefinder`]: argument-principle counting, Newton refinement and
//!   indexing of the zeros of `det λ` in the fourth quadrant.
//! * [`asymptotics`]: class-wise high-energy pole formulas and the comparison
//!   of found poles against them.

pub mod asymptotics;
pub mod error;
pub mod gpi;
pub mod krein;
pub mod polefinder;
pub mod riccati;

pub use num_complex::Complex64;

pub use asymptotics::{
    compare, predict, predict_delta, predict_delta_prime, predict_intermediate,
    AsymptoticPrediction, ComparisonRow, Prediction, PredictionOrder,
};
pub use error::{Error, Result};
pub use gpi::{
    boundary_basis, boundary_residual, canonical_real_gamma, classify, classify_unitary,
    from_scale_invariant, is_separated, to_transfer, to_unitary, BoundaryCondition, BoundaryData,
    GpiClass, GpiParams, TransferForm, UnitaryForm,
};
pub use krein::{
    det_lambda, det_lambda_balanced, krein_coefficients, krein_numerators, phi_boundary,
    real_axis_roots, KreinCoefficients, PhiBoundaryValues,
};
pub use polefinder::{
    count_zeros, default_im_min, find_poles, find_poles_in, index_poles, refine, PoleCandidate,
    PoleSearch, Resonance, SearchRegion,
};
pub use riccati::{riccati_s, riccati_xi, wronskian, Channel, ValueAndDerivative};
