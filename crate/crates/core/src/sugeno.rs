//! Sugeno-type non-linear traces on matrices, the metric they induce,
//! and the extension from positive to arbitrary elements.
//!
//! The matrix model evaluates α at integer ranks: for a positive matrix
//! with descending eigenvalues λ_i, ψ_α(a) = max_i ( λ_i ∧ α(i) ), the
//! finite-spectrum instance of the sup-formula.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{hermitian_eigenvalues, psd_eigenvalues, singular_values, ComplexMatrix, SpectrumDesc};
use crate::weights::DiscreteWeight;

/// Sugeno trace parameters for the matrix model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SugenoTrace {
    pub weight: DiscreteWeight,
}

impl SugenoTrace {
    pub fn new(weight: DiscreteWeight) -> Result<Self> {
        weight.validate()?;
        Ok(SugenoTrace { weight })
    }
}

/// ψ_α of a nonnegative descending spectrum: max_i ( λ_i ∧ α(i) ).
pub fn psi_of_spectrum(spec: &SpectrumDesc, weight: &DiscreteWeight) -> f64 {
    let mut best = 0.0f64;
    for i in 1..=spec.len() {
        best = best.max(spec.lambda(i).max(0.0).min(weight.eval(i as u64)));
    }
    best
}

/// ψ_α(a) for positive semidefinite a.
pub fn sugeno_trace(a: &ComplexMatrix, st: &SugenoTrace) -> Result<f64> {
    let eigs = psd_eigenvalues(a)?;
    Ok(psi_of_spectrum(&eigs, &st.weight))
}

/// d(a, b) = ψ_α(|a - b|), the metric induced by a concave weight.
pub fn sugeno_metric(a: &ComplexMatrix, b: &ComplexMatrix, st: &SugenoTrace) -> Result<f64> {
    let horizon = (a.dim() as u64).max(2);
    if !st.weight.is_concave(horizon) {
        return Err(Error::Hypothesis(
            "the sugeno metric requires a concave weight (override with sugeno_metric_unchecked)".into(),
        ));
    }
    sugeno_metric_unchecked(a, b, st)
}

/// The metric evaluation without the concavity hypothesis, for
/// falsification runs hunting triangle violations.
pub fn sugeno_metric_unchecked(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    st: &SugenoTrace,
) -> Result<f64> {
    let sv = singular_values(&a.sub(b)?)?;
    Ok(psi_of_spectrum(&sv, &st.weight))
}

/// Splits a Hermitian spectrum into the spectra of its positive and
/// negative parts (both descending, orthogonal by construction).
fn split_parts(eigs: &SpectrumDesc) -> (SpectrumDesc, SpectrumDesc) {
    let pos: Vec<f64> = eigs.values().iter().copied().filter(|&v| v > 0.0).collect();
    let mut neg: Vec<f64> = eigs.values().iter().map(|&v| -v).filter(|&v| v > 0.0).collect();
    neg.sort_by(|a, b| b.partial_cmp(a).unwrap());
    (
        SpectrumDesc::new(pos).expect("filtered descending stays descending"),
        SpectrumDesc::new(neg).expect("negated ascending tail is descending"),
    )
}

/// ψ_α extended to arbitrary matrices through
/// a = a1 - a2 + i (a3 - a4) with a1 a2 = a3 a4 = 0:
/// returns ψ(a1) - ψ(a2) + i (ψ(a3) - ψ(a4)).
pub fn sugeno_extend(a: &ComplexMatrix, st: &SugenoTrace) -> Result<Complex64> {
    let half = Complex64::new(0.5, 0.0);
    let herm = a.add(&a.adjoint())?.scale(half);
    // (a - a*) / (2i) = -i/2 (a - a*)
    let skew = a.sub(&a.adjoint())?.scale(Complex64::new(0.0, -0.5));

    let (re_pos, re_neg) = split_parts(&hermitian_eigenvalues(&herm)?);
    let (im_pos, im_neg) = split_parts(&hermitian_eigenvalues(&skew)?);

    let w = &st.weight;
    Ok(Complex64::new(
        psi_of_spectrum(&re_pos, w) - psi_of_spectrum(&re_neg, w),
        psi_of_spectrum(&im_pos, w) - psi_of_spectrum(&im_neg, w),
    ))
}
