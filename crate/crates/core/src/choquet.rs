//! Choquet-type non-linear traces φ_α on descending spectra and the
//! weighted Schatten p-(quasi-)norms they induce on matrices.
//!
//! φ_α consumes a [`SpectrumDesc`] rather than a matrix, so the matrix
//! and step-operator paths share one implementation; the matrix entry
//! points compose `singular_values` with `choquet_trace`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{singular_values, ComplexMatrix, SpectrumDesc};
use crate::tolerances;
use crate::weights::DiscreteWeight;

/// Weighted Schatten p-norm parameters: |||a||| = φ_α(|a|^p)^{1/p}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedPNorm {
    pub weight: DiscreteWeight,
    pub p: f64,
}

impl WeightedPNorm {
    pub fn new(weight: DiscreteWeight, p: f64) -> Result<Self> {
        weight.validate()?;
        if !(p.is_finite() && p > 0.0) {
            return Err(Error::Invalid(format!("p must be positive, got {p}")));
        }
        Ok(WeightedPNorm { weight, p })
    }
}

/// φ_α of a nonnegative descending spectrum.
///
/// Evaluates both Σ (λ_i - λ_{i+1}) α(i) and Σ λ_i c_i independently; the
/// two are the same Abel rearrangement and must agree to 1e-12 relative,
/// otherwise the weight or the sequence is corrupted and a consistency
/// error is raised.
pub fn choquet_trace(spec: &SpectrumDesc, w: &DiscreteWeight) -> Result<f64> {
    if !spec.all_nonnegative() {
        return Err(Error::Domain("choquet trace needs a nonnegative spectrum".into()));
    }
    let n = spec.len();

    let mut by_gaps = 0.0;
    let mut by_increments = 0.0;
    for i in 1..=n {
        by_gaps += (spec.lambda(i) - spec.lambda(i + 1)) * w.eval(i as u64);
        by_increments += spec.lambda(i) * w.increment(i as u64)?;
    }

    if !tolerances::close_rel(by_gaps, by_increments, tolerances::ABEL_REL) {
        return Err(Error::Consistency(format!(
            "choquet summation routes disagree: {by_gaps} vs {by_increments}"
        )));
    }
    Ok(by_increments)
}

/// |||a|||_{α,p} = φ_α(|a|^p)^{1/p}, with |a|^p realized on the singular
/// value sequence (s_i^p), never as a matrix power.
pub fn weighted_p_norm(a: &ComplexMatrix, norm: &WeightedPNorm) -> Result<f64> {
    let sv = singular_values(a)?;
    let powered = sv.powered(norm.p);
    Ok(choquet_trace(&powered, &norm.weight)?.powf(1.0 / norm.p))
}

/// |||a+b||| / (|||a||| + |||b|||).
pub fn triangle_ratio(a: &ComplexMatrix, b: &ComplexMatrix, norm: &WeightedPNorm) -> Result<f64> {
    let sum_norm = weighted_p_norm(&a.add(b)?, norm)?;
    let denom = weighted_p_norm(a, norm)? + weighted_p_norm(b, norm)?;
    if denom == 0.0 {
        return Err(Error::UndefinedRatio("both operands have zero norm".into()));
    }
    Ok(sum_norm / denom)
}
