//! Numerical tolerances used across the crate.
//!
//! Three regimes, kept separate so algebraic identities are not hidden
//! behind eigensolver slack:
//!
//! - lattice / min-max identities evaluated on rational inputs are exact
//!   (tolerance 0, plain `==`),
//! - pure spectral arithmetic (sums and differences of given sequence
//!   values) is held to 1e-12 relative,
//! - anything that passes through the iterative eigensolver gets 1e-9.

/// Relative tolerance for arithmetic on already-known spectra.
pub const SPECTRAL_REL: f64 = 1e-12;

/// Absolute slack for quantities derived from the Jacobi eigensolver.
pub const EIGEN_ABS: f64 = 1e-9;

/// Hermitian deviation allowed before an eigensolve: max |A - A*| must be
/// at most `HERMITIAN_REL * max(1, ||A||_F)`.
pub const HERMITIAN_REL: f64 = 1e-10;

/// Off-diagonal Frobenius target for Jacobi convergence, relative to
/// `max(1, ||A||_F)`.
pub const JACOBI_OFF_REL: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues within `SNAP_REL * ||A||_F` of zero are snapped to exactly 0
/// so zero-padding and rank conventions stay stable in the traces.
pub const SNAP_REL: f64 = 1e-12;

/// Eigenvalue floor for the positive-semidefinite check: anything below
/// `-PSD_REL * max(1, ||A||_F)` rejects the input.
pub const PSD_REL: f64 = 1e-9;

/// Relative agreement required between the two Choquet summation routes.
pub const ABEL_REL: f64 = 1e-12;

/// Returns true when `x` and `y` agree to `rel` relative accuracy
/// (with an absolute floor of `rel` near zero).
pub fn close_rel(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
}
