//! Step-operator model of a semifinite factor.
//!
//! A [`StepOperator`] is a positive simple function over a measure space,
//! stored as ordered (value, mass) segments on [0, T) with T the total
//! mass. It models a τ-finite-rank positive element: segment masses play
//! the role of projection traces. Every identity the theory states for
//! finite-spectrum positive elements is exact in this skeleton; the
//! non-commuting phenomena are exercised by the matrix modules instead.
//!
//! Rearranging the segments by value gives the generalized eigenvalue
//! function t ↦ λ_t, a decreasing right-continuous step function, against
//! which the Choquet and Sugeno traces are evaluated in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::weights::ContinuousWeight;

/// One constant piece of a simple function: `value` on a set of measure `mass`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub value: f64,
    pub mass: f64,
}

/// Positive simple function over a semifinite measure space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepOperator {
    pub segments: Vec<Segment>,
    /// Total-mass bound; `Some(1.0)` selects the normalized (II_1) model.
    pub cap: Option<f64>,
}

impl StepOperator {
    pub fn new(segments: Vec<Segment>, cap: Option<f64>) -> Result<Self> {
        let op = StepOperator { segments, cap };
        op.validate()?;
        Ok(op)
    }

    /// Projection-like operator: constant `value` on mass `mass`.
    pub fn scaled_projection(value: f64, mass: f64) -> Result<Self> {
        Self::new(vec![Segment { value, mass }], None)
    }

    pub fn zero() -> Self {
        StepOperator { segments: vec![], cap: None }
    }

    pub fn validate(&self) -> Result<()> {
        for s in &self.segments {
            if !(s.mass.is_finite() && s.mass > 0.0) {
                return Err(Error::Invalid(format!("segment mass must be > 0, got {}", s.mass)));
            }
            if !(s.value.is_finite() && s.value >= 0.0) {
                return Err(Error::Invalid(format!("segment value must be ≥ 0, got {}", s.value)));
            }
        }
        if let Some(cap) = self.cap {
            if self.total_mass() > cap {
                return Err(Error::Invalid(format!(
                    "total mass {} exceeds cap {cap}",
                    self.total_mass()
                )));
            }
        }
        Ok(())
    }

    pub fn total_mass(&self) -> f64 {
        self.segments.iter().map(|s| s.mass).sum()
    }

    /// Mass of the support, i.e. where the function is strictly positive.
    pub fn support_mass(&self) -> f64 {
        self.segments.iter().filter(|s| s.value > 0.0).map(|s| s.mass).sum()
    }

    pub fn max_value(&self) -> f64 {
        self.segments.iter().map(|s| s.value).fold(0.0, f64::max)
    }

    /// Decreasing rearrangement: sort by value, merge equal values,
    /// drop zero segments.
    pub fn rearrange(&self) -> RearrangedSpectrum {
        let mut positive: Vec<Segment> =
            self.segments.iter().copied().filter(|s| s.value > 0.0).collect();
        positive.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap());
        let mut plateaus: Vec<Plateau> = Vec::with_capacity(positive.len());
        for seg in positive {
            match plateaus.last_mut() {
                Some(p) if p.value == seg.value => p.width += seg.mass,
                _ => plateaus.push(Plateau { value: seg.value, width: seg.mass }),
            }
        }
        RearrangedSpectrum { plateaus }
    }

    /// Generalized t-th eigenvalue λ_t = inf { s ≥ 0 : m(s) ≤ t } where
    /// m(s) is the mass strictly above s. Zero past the support.
    pub fn lambda_t(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(Error::Domain(format!("λ_t needs t ≥ 0, got {t}")));
        }
        Ok(self.rearrange().lambda(t))
    }

    /// Pointwise sum on the common refinement; the shorter operator is
    /// zero-extended, which models orthogonal direct sums.
    pub fn add(&self, other: &StepOperator) -> StepOperator {
        let mut segments = Vec::new();
        let (a, b) = (&self.segments, &other.segments);
        let (mut ia, mut ib) = (0usize, 0usize);
        let mut ra = a.first().map_or(0.0, |s| s.mass);
        let mut rb = b.first().map_or(0.0, |s| s.mass);
        while ia < a.len() && ib < b.len() {
            let step = ra.min(rb);
            if step > 0.0 {
                segments.push(Segment { value: a[ia].value + b[ib].value, mass: step });
            }
            ra -= step;
            rb -= step;
            if ra <= 0.0 {
                ia += 1;
                ra = a.get(ia).map_or(0.0, |s| s.mass);
            }
            if rb <= 0.0 {
                ib += 1;
                rb = b.get(ib).map_or(0.0, |s| s.mass);
            }
        }
        while ia < a.len() {
            if ra > 0.0 {
                segments.push(Segment { value: a[ia].value, mass: ra });
            }
            ia += 1;
            ra = a.get(ia).map_or(0.0, |s| s.mass);
        }
        while ib < b.len() {
            if rb > 0.0 {
                segments.push(Segment { value: b[ib].value, mass: rb });
            }
            ib += 1;
            rb = b.get(ib).map_or(0.0, |s| s.mass);
        }
        let cap = match (self.cap, other.cap) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
        StepOperator { segments, cap }
    }

    /// Functional calculus on the commuting model: applies `f` to every
    /// segment value, keeping the partition. The result is validated, so
    /// `f` must map the values into [0, ∞).
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<StepOperator> {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { value: f(s.value), mass: s.mass })
            .collect();
        StepOperator::new(segments, self.cap)
    }

    pub fn scale(&self, k: f64) -> Result<StepOperator> {
        if !(k.is_finite() && k >= 0.0) {
            return Err(Error::Domain(format!("scale factor must be ≥ 0, got {k}")));
        }
        self.map_values(|v| k * v)
    }
}

/// True when a ≤ b pointwise on the common refinement (zero-extended).
pub fn pointwise_le(a: &StepOperator, b: &StepOperator) -> bool {
    // b - a must stay ≥ 0 on every refined piece; reuse the refinement walk
    // by comparing values directly.
    let (sa, sb) = (&a.segments, &b.segments);
    let (mut ia, mut ib) = (0usize, 0usize);
    let mut ra = sa.first().map_or(0.0, |s| s.mass);
    let mut rb = sb.first().map_or(0.0, |s| s.mass);
    loop {
        let va = sa.get(ia).map_or(0.0, |s| s.value);
        let vb = sb.get(ib).map_or(0.0, |s| s.value);
        if ia >= sa.len() && ib >= sb.len() {
            return true;
        }
        if va > vb {
            return false;
        }
        if ia >= sa.len() {
            ib += 1;
            rb = sb.get(ib).map_or(0.0, |s| s.mass);
            continue;
        }
        if ib >= sb.len() {
            ia += 1;
            ra = sa.get(ia).map_or(0.0, |s| s.mass);
            continue;
        }
        let step = ra.min(rb);
        ra -= step;
        rb -= step;
        if ra <= 0.0 {
            ia += 1;
            ra = sa.get(ia).map_or(0.0, |s| s.mass);
        }
        if rb <= 0.0 {
            ib += 1;
            rb = sb.get(ib).map_or(0.0, |s| s.mass);
        }
    }
}

/// Plateau of the decreasing rearrangement: `value` held over `width`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Plateau {
    pub value: f64,
    pub width: f64,
}

/// The decreasing right-continuous step function t ↦ λ_t, as strictly
/// decreasing plateaus of positive width. The zero tail is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RearrangedSpectrum {
    plateaus: Vec<Plateau>,
}

impl RearrangedSpectrum {
    pub fn plateaus(&self) -> &[Plateau] {
        &self.plateaus
    }

    /// Value at t: right-continuous lookup, 0 past the support.
    pub fn lambda(&self, t: f64) -> f64 {
        let mut cum = 0.0;
        for p in &self.plateaus {
            cum += p.width;
            if t < cum {
                return p.value;
            }
        }
        0.0
    }

    /// Plateaus annotated with cumulative mass: (value, start, end).
    fn with_cumulative(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.plateaus.len());
        let mut cum = 0.0;
        for p in &self.plateaus {
            let start = cum;
            cum += p.width;
            out.push((p.value, start, cum));
        }
        out
    }
}

/// φ_α(a) by the finite-spectrum display:
/// Σ_{i<n} (a_i - a_{i+1}) α(τ(p_1+...+p_i)) + a_n α(τ(p_1+...+p_n)).
pub fn choquet_spectral(a: &StepOperator, w: &ContinuousWeight) -> Result<f64> {
    let rows = a.rearrange().with_cumulative();
    let n = rows.len();
    let mut phi = 0.0;
    for (i, &(value, _, end)) in rows.iter().enumerate() {
        let next = if i + 1 < n { rows[i + 1].0 } else { 0.0 };
        phi += (value - next) * w.eval(end)?;
    }
    Ok(phi)
}

/// φ_α(a) by the dual Stieltjes route: Σ over plateaus of
/// value · ν_α([start, end)). Exact for the closed-form weight kinds.
pub fn choquet_stieltjes(a: &StepOperator, w: &ContinuousWeight) -> Result<f64> {
    let rows = a.rearrange().with_cumulative();
    let mut phi = 0.0;
    for &(value, start, end) in &rows {
        phi += value * w.stieltjes_mass(start, end)?;
    }
    Ok(phi)
}

/// Lorentz norm ∫ μ_t(a) dν_α(t) for concave α; an alias of the Stieltjes
/// route once the concavity hypothesis is checked.
pub fn lorentz_norm(a: &StepOperator, w: &ContinuousWeight) -> Result<f64> {
    if !w.is_concave() {
        return Err(Error::Hypothesis("lorentz norm requires a concave weight".into()));
    }
    choquet_stieltjes(a, w)
}

/// Partition upper sum Σ_{i=1}^M λ_{(i-1)/M}(a) (α(i/M) - α((i-1)/M)) in
/// the normalized model. Always ≥ φ_α(a) because λ is decreasing.
pub fn partition_approx(a: &StepOperator, w: &ContinuousWeight, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("partition count M must be ≥ 1".into()));
    }
    if !w.is_continuous() {
        return Err(Error::Hypothesis("partition approximation requires a continuous weight".into()));
    }
    if a.total_mass() > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "normalized model requires total mass ≤ 1, got {}",
            a.total_mass()
        )));
    }
    let sp = a.rearrange();
    let mf = m as f64;
    let mut sum = 0.0;
    let mut alpha_prev = w.eval(0.0)?;
    for i in 1..=m {
        let alpha_i = w.eval(i as f64 / mf)?;
        sum += sp.lambda((i - 1) as f64 / mf) * (alpha_i - alpha_prev);
        alpha_prev = alpha_i;
    }
    Ok(sum)
}

/// ψ_α(a) = sup_{s ≥ 0} s ∧ α(m(s)), where m(s) is the mass strictly
/// above s. On the interval of s where m(s) = τ(p_k) is constant the sup
/// sits at the plateau value or at the crossing s* = α(τ(p_k)), whichever
/// the interval admits; both are explicit, so no iteration is needed.
pub fn sugeno_trace_step(a: &StepOperator, w: &ContinuousWeight) -> Result<f64> {
    if !w.is_continuous() {
        return Err(Error::Hypothesis("sugeno trace requires a continuous weight".into()));
    }
    let rows = a.rearrange().with_cumulative();
    let n = rows.len();
    let mut best = 0.0f64;
    for (k, &(value, _, end)) in rows.iter().enumerate() {
        // s ∈ [v_{k+1}, v_k): here α(m(s)) = α(T_k) =: level
        let level = w.eval(end)?;
        let v_lo = if k + 1 < n { rows[k + 1].0 } else { 0.0 };
        let sup_k = if level >= value {
            // s ∧ level = s throughout; sup approached at s → v_k
            value
        } else if level >= v_lo {
            // the line s crosses level inside the interval at s* = level
            level
        } else {
            // s ∧ level = level throughout
            level
        };
        best = best.max(sup_k);
    }
    Ok(best)
}

/// ψ_α(a) through the projection characterization: brute force over the
/// spectral tail projections p_k (top-k plateaus), each admitting
/// λ = value_k ∧ α(τ(p_k)); interior sub-projections are dominated since
/// α is monotone. Must agree with [`sugeno_trace_step`] exactly.
pub fn max_type_value(a: &StepOperator, w: &ContinuousWeight) -> Result<f64> {
    if !w.is_continuous() {
        return Err(Error::Hypothesis("max-type value requires a continuous weight".into()));
    }
    let rows = a.rearrange().with_cumulative();
    let mut best = 0.0f64;
    for &(value, _, end) in &rows {
        best = best.max(value.min(w.eval(end)?));
    }
    Ok(best)
}

/// Witness for the tail-cut lemma: with μ = ψ_α(a) + ε and
/// q = e_{(μ,∞)}(a), checks α(τ(q)) < μ and that everything outside q
/// sits at or below μ. Returns (τ(q), report).
pub fn min_witness(a: &StepOperator, w: &ContinuousWeight, eps: f64) -> Result<(f64, Report)> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Domain(format!("ε must be > 0, got {eps}")));
    }
    let psi = sugeno_trace_step(a, w)?;
    let mu = psi + eps;
    let sp = a.rearrange();
    let q_mass: f64 =
        sp.plateaus().iter().filter(|p| p.value > mu).map(|p| p.width).sum();
    let alpha_q = w.eval(q_mass)?;
    let cut_ok = alpha_q < mu;
    let remainder_ok = sp.plateaus().iter().filter(|p| p.value <= mu).all(|p| p.value <= mu);

    let mut report = Report::new("min-witness", 0);
    report.trials = 1;
    report.passed = cut_ok && remainder_ok;
    report.worst = alpha_q - mu;
    if !report.passed {
        report.witness = Some(serde_json::json!({ "a": a, "eps": eps }));
    }
    Ok((q_mass, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::two_step_example_weight;

    fn projection(mass: f64) -> StepOperator {
        StepOperator::scaled_projection(1.0, mass).unwrap()
    }

    /// Projection of mass `mass` supported after a zero stretch of `offset`.
    fn shifted_projection(offset: f64, mass: f64) -> StepOperator {
        StepOperator::new(
            vec![Segment { value: 0.0, mass: offset }, Segment { value: 1.0, mass }],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rearrange_sorts_and_merges() {
        let a = StepOperator::new(
            vec![Segment { value: 1.0, mass: 0.5 }, Segment { value: 3.0, mass: 0.25 }],
            None,
        )
        .unwrap();
        let sp = a.rearrange();
        assert_eq!(sp.plateaus(), &[Plateau { value: 3.0, width: 0.25 }, Plateau { value: 1.0, width: 0.5 }]);

        let b = StepOperator::new(
            vec![Segment { value: 2.0, mass: 1.0 }, Segment { value: 2.0, mass: 1.0 }],
            None,
        )
        .unwrap();
        assert_eq!(b.rearrange().plateaus(), &[Plateau { value: 2.0, width: 2.0 }]);

        // idempotence under an already-sorted input
        assert_eq!(a.rearrange(), a.rearrange());
    }

    #[test]
    fn lambda_t_of_projection() {
        let p = projection(4.0 / 3.0);
        assert_eq!(p.lambda_t(0.0).unwrap(), 1.0);
        assert_eq!(p.lambda_t(1.0).unwrap(), 1.0);
        assert_eq!(p.lambda_t(2.0).unwrap(), 0.0);
        assert!(p.lambda_t(-0.5).is_err());
    }

    #[test]
    fn lambda_zero_is_max_value() {
        let a = StepOperator::new(
            vec![Segment { value: 0.5, mass: 1.0 }, Segment { value: 2.5, mass: 0.1 }],
            None,
        )
        .unwrap();
        assert_eq!(a.lambda_t(0.0).unwrap(), a.max_value());
    }

    #[test]
    fn add_orthogonal_projections() {
        let p = projection(4.0 / 3.0);
        let q = shifted_projection(4.0 / 3.0, 4.0 / 3.0);
        let sum = p.add(&q);
        assert_eq!(
            sum.rearrange().plateaus(),
            &[Plateau { value: 1.0, width: 8.0 / 3.0 }]
        );
        assert_eq!(sum.lambda_t(2.0).unwrap(), 1.0);
    }

    #[test]
    fn add_zero_and_self() {
        let a = StepOperator::new(
            vec![Segment { value: 2.0, mass: 0.5 }, Segment { value: 1.0, mass: 0.5 }],
            None,
        )
        .unwrap();
        assert_eq!(a.add(&StepOperator::zero()).rearrange(), a.rearrange());
        let doubled = a.add(&a);
        assert_eq!(
            doubled.rearrange().plateaus(),
            &[Plateau { value: 4.0, width: 0.5 }, Plateau { value: 2.0, width: 0.5 }]
        );
    }

    #[test]
    fn paper_two_step_example_exact() {
        let w = two_step_example_weight();
        let p = projection(4.0 / 3.0);
        let q = shifted_projection(4.0 / 3.0, 4.0 / 3.0);
        assert_eq!(choquet_spectral(&p, &w).unwrap(), 1.0);
        assert_eq!(choquet_spectral(&q, &w).unwrap(), 1.0);
        assert_eq!(choquet_spectral(&p.add(&q), &w).unwrap(), 4.0);
        assert_eq!(choquet_stieltjes(&p.add(&q), &w).unwrap(), 4.0);
    }

    #[test]
    fn identity_weight_recovers_mass_integral() {
        let a = StepOperator::new(
            vec![Segment { value: 3.0, mass: 0.5 }, Segment { value: 1.0, mass: 2.0 }],
            None,
        )
        .unwrap();
        let w = ContinuousWeight::power(1.0);
        let expected = 3.0 * 0.5 + 1.0 * 2.0;
        assert_eq!(choquet_spectral(&a, &w).unwrap(), expected);
        assert_eq!(choquet_stieltjes(&a, &w).unwrap(), expected);
    }

    #[test]
    fn ky_fan_cap_weight() {
        // cap(1) integrates λ over [0, 1): projection of mass 4/3 gives 1
        let p = projection(4.0 / 3.0);
        let w = ContinuousWeight::cap(1.0);
        assert_eq!(choquet_stieltjes(&p, &w).unwrap(), 1.0);
    }

    #[test]
    fn zero_operator_traces() {
        let w = ContinuousWeight::power(1.0);
        assert_eq!(choquet_stieltjes(&StepOperator::zero(), &w).unwrap(), 0.0);
        assert_eq!(sugeno_trace_step(&StepOperator::zero(), &w).unwrap(), 0.0);
        assert_eq!(max_type_value(&StepOperator::zero(), &w).unwrap(), 0.0);
    }

    #[test]
    fn lorentz_requires_concave() {
        let a = projection(1.0);
        assert!(lorentz_norm(&a, &ContinuousWeight::power(2.0)).is_err());
        let w = ContinuousWeight::power(0.5);
        assert_eq!(
            lorentz_norm(&a, &w).unwrap(),
            choquet_stieltjes(&a, &w).unwrap()
        );
    }

    #[test]
    fn sugeno_projection_formula() {
        let w = ContinuousWeight::power(1.0);
        let cp = StepOperator::scaled_projection(3.0, 0.5).unwrap();
        assert_eq!(sugeno_trace_step(&cp, &w).unwrap(), 0.5);
        let cp2 = StepOperator::scaled_projection(0.25, 2.0).unwrap();
        assert_eq!(sugeno_trace_step(&cp2, &w).unwrap(), 0.25);
    }

    #[test]
    fn sugeno_rejects_discontinuous_weight() {
        let p = projection(1.0);
        assert!(matches!(
            sugeno_trace_step(&p, &two_step_example_weight()),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            sugeno_trace_step(&p, &ContinuousWeight::indicator()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn partition_approx_constant_function() {
        let a = StepOperator::new(vec![Segment { value: 2.5, mass: 1.0 }], Some(1.0)).unwrap();
        let w = ContinuousWeight::power(1.0).on_unit();
        for m in [1u32, 2, 7, 64] {
            assert!((partition_approx(&a, &w, m).unwrap() - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn partition_approx_rejects_bad_inputs() {
        let a = StepOperator::new(vec![Segment { value: 1.0, mass: 0.5 }], Some(1.0)).unwrap();
        let w = ContinuousWeight::power(1.0).on_unit();
        assert!(matches!(partition_approx(&a, &w, 0), Err(Error::Domain(_))));
        assert!(matches!(
            partition_approx(&a, &ContinuousWeight::indicator(), 4),
            Err(Error::Hypothesis(_))
        ));
        let heavy = StepOperator::new(vec![Segment { value: 1.0, mass: 2.0 }], None).unwrap();
        assert!(matches!(partition_approx(&heavy, &w, 4), Err(Error::Domain(_))));
    }

    #[test]
    fn min_witness_trivial_and_projection() {
        let w = ContinuousWeight::power(1.0);
        // max value ≤ ψ + ε: the cut is empty
        let small = StepOperator::scaled_projection(0.1, 3.0).unwrap();
        let (mass, report) = min_witness(&small, &w, 1.0).unwrap();
        assert_eq!(mass, 0.0);
        assert!(report.passed);

        // c > ψ + ε: the cut is the whole projection
        let cp = StepOperator::scaled_projection(5.0, 0.5).unwrap();
        let eps = 1e-3;
        let (mass, report) = min_witness(&cp, &w, eps).unwrap();
        assert_eq!(mass, 0.5);
        assert!(report.passed);
    }

    #[test]
    fn min_witness_rejects_nonpositive_eps() {
        let w = ContinuousWeight::power(1.0);
        assert!(min_witness(&StepOperator::zero(), &w, 0.0).is_err());
    }

    #[test]
    fn pointwise_le_on_refinement() {
        let a = StepOperator::new(vec![Segment { value: 1.0, mass: 1.0 }], None).unwrap();
        let b = StepOperator::new(
            vec![Segment { value: 1.0, mass: 0.5 }, Segment { value: 2.0, mass: 1.0 }],
            None,
        )
        .unwrap();
        assert!(pointwise_le(&a, &b));
        assert!(!pointwise_le(&b, &a));
        assert!(pointwise_le(&StepOperator::zero(), &a));
    }

    #[test]
    fn invalid_segments_rejected() {
        assert!(StepOperator::new(vec![Segment { value: 1.0, mass: 0.0 }], None).is_err());
        assert!(StepOperator::new(vec![Segment { value: -1.0, mass: 1.0 }], None).is_err());
        assert!(StepOperator::new(vec![Segment { value: 1.0, mass: 2.0 }], Some(1.0)).is_err());
    }

    #[test]
    fn step_operator_json_round_trip() {
        let json = r#"{"segments":[{"value":1.0,"mass":1.3333333333333333}],"cap":null}"#;
        let a: StepOperator = serde_json::from_str(json).unwrap();
        assert_eq!(a.segments.len(), 1);
        let text = serde_json::to_string(&a).unwrap();
        let back: StepOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(a, back);
    }
}
