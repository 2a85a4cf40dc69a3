//! Non-linear traces of Choquet and Sugeno type on matrix algebras and on
//! a step-operator model of semifinite factors.
//!
//! The library has three layers:
//!
//! - commutative prototypes: Choquet and Sugeno integrals over finite
//!   monotone measures ([`fuzzy`]);
//! - the matrix model: Hermitian spectra ([`spectral`]), the Choquet
//!   trace φ_α and its weighted p-(quasi-)norms ([`choquet`]), and the
//!   Sugeno trace ψ_α with its induced metric ([`sugeno`]);
//! - the semifinite model: positive simple functions with generalized
//!   eigenvalues, Stieltjes evaluation, Lorentz norms, and partition
//!   approximation ([`stepops`]).
//!
//! Weight functions α drive everything ([`weights`]); the [`harness`]
//! module provides seeded generators, counterexample searches, and the
//! property suites that check the norm, quasi-norm, and metric theorems
//! at desk scale.

pub mod choquet;
pub mod error;
pub mod fuzzy;
pub mod harness;
pub mod report;
pub mod spectral;
pub mod stepops;
pub mod sugeno;
pub mod tolerances;
pub mod weights;

pub use error::{Error, Result};
pub use report::Report;
