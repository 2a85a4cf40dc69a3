//! Weight functions α: the "weighted dimension" that turns projection
//! traces into a monotone measure on spectra.
//!
//! Two families live here. [`DiscreteWeight`] is α: ℕ₀ → [0,∞) for the
//! matrix / compact-operator model, where α is consumed at integer ranks
//! and its increments `c_n = α(n) - α(n-1)` weight the descending
//! eigenvalue sequence. [`ContinuousWeight`] is α: [0,∞) → [0,∞) (or
//! [0,1] in the finite-trace model) for step operators, where the
//! Lebesgue-Stieltjes masses `ν_α([a,b)) = α(b) - α(a)` integrate the
//! generalized eigenvalue function.
//!
//! Both families are restricted to closed-form kinds plus piecewise-linear
//! and piecewise-constant, so every integral against a step function is
//! exact — no quadrature enters the equality tests downstream.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tail rule extending an explicit value list to all of ℕ₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Tail {
    /// α(n) = `value` for every n past the list.
    Constant { value: f64 },
    /// α grows by `increment` per step past the list.
    Arithmetic { increment: f64 },
}

/// Monotone weight on ℕ₀ with α(0) = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscreteWeight {
    /// α(n) = n^θ, θ > 0.
    Power { theta: f64 },
    /// α listed explicitly on 0..len, then extended by `tail`.
    Explicit { values: Vec<f64>, tail: Tail },
}

impl DiscreteWeight {
    pub fn power(theta: f64) -> Self {
        DiscreteWeight::Power { theta }
    }

    /// Explicit list then constant tail: `values` gives α(0), α(1), ...,
    /// and α(n) = `tail_value` once the list is exhausted.
    pub fn explicit_constant(values: &[f64], tail_value: f64) -> Self {
        DiscreteWeight::Explicit {
            values: values.to_vec(),
            tail: Tail::Constant { value: tail_value },
        }
    }

    pub fn explicit_arithmetic(values: &[f64], increment: f64) -> Self {
        DiscreteWeight::Explicit {
            values: values.to_vec(),
            tail: Tail::Arithmetic { increment },
        }
    }

    /// Checks α(0) = 0, monotonicity, and parameter positivity.
    pub fn validate(&self) -> Result<()> {
        match self {
            DiscreteWeight::Power { theta } => {
                if !theta.is_finite() || *theta <= 0.0 {
                    return Err(Error::Invalid(format!("power weight needs theta > 0, got {theta}")));
                }
            }
            DiscreteWeight::Explicit { values, tail } => {
                if values.is_empty() {
                    return Err(Error::Invalid("explicit weight needs at least the value α(0)".into()));
                }
                if values[0] != 0.0 {
                    return Err(Error::Invalid(format!("α(0) must be 0, got {}", values[0])));
                }
                for w in values.windows(2) {
                    if !(w[1].is_finite() && w[1] >= w[0]) {
                        return Err(Error::Invalid(format!(
                            "explicit weight values must be finite and non-decreasing, got {} then {}",
                            w[0], w[1]
                        )));
                    }
                }
                let last = *values.last().unwrap();
                match tail {
                    Tail::Constant { value } => {
                        if !(value.is_finite() && *value >= last) {
                            return Err(Error::Invalid(format!(
                                "constant tail {value} below last listed value {last}"
                            )));
                        }
                    }
                    Tail::Arithmetic { increment } => {
                        if !(increment.is_finite() && *increment >= 0.0) {
                            return Err(Error::Invalid(format!(
                                "arithmetic tail increment must be ≥ 0, got {increment}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// α(n).
    pub fn eval(&self, n: u64) -> f64 {
        match self {
            DiscreteWeight::Power { theta } => (n as f64).powf(*theta),
            DiscreteWeight::Explicit { values, tail } => {
                let len = values.len() as u64;
                if n < len {
                    values[n as usize]
                } else {
                    let last = *values.last().unwrap();
                    match tail {
                        Tail::Constant { value } => *value,
                        Tail::Arithmetic { increment } => {
                            last + increment * (n - (len - 1)) as f64
                        }
                    }
                }
            }
        }
    }

    /// α(∞) = lim α(n), possibly +∞.
    pub fn limit_at_infinity(&self) -> f64 {
        match self {
            DiscreteWeight::Power { .. } => f64::INFINITY,
            DiscreteWeight::Explicit { values, tail } => match tail {
                Tail::Constant { value } => *value,
                Tail::Arithmetic { increment } => {
                    if *increment > 0.0 {
                        f64::INFINITY
                    } else {
                        *values.last().unwrap()
                    }
                }
            },
        }
    }

    /// Increment c_n = α(n) - α(n-1), n ≥ 1.
    pub fn increment(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("increment c_n is defined for n ≥ 1".into()));
        }
        Ok(self.eval(n) - self.eval(n - 1))
    }

    /// True when α(1) > 0 (hypothesis of the norm/quasi-norm theorems).
    pub fn alpha1_positive(&self) -> bool {
        self.eval(1) > 0.0
    }

    /// Concavity in the increment sense: c_1 ≥ c_2 ≥ ... ≥ c_horizon.
    ///
    /// Power weights reduce to θ ≤ 1 in closed form; explicit weights are
    /// scanned, which needs only `len + 2` terms since the increments are
    /// constant once the tail rule takes over.
    pub fn is_concave(&self, horizon: u64) -> bool {
        match self {
            DiscreteWeight::Power { theta } => *theta <= 1.0,
            DiscreteWeight::Explicit { values, .. } => {
                let effective = horizon.min(values.len() as u64 + 2).max(2);
                let mut prev = self.increment(1).unwrap();
                for n in 2..=effective {
                    let c = self.increment(n).unwrap();
                    if c > prev {
                        return false;
                    }
                    prev = c;
                }
                true
            }
        }
    }

    /// sup over n in 1..=horizon with α(n) > 0 of α(2n)/α(n).
    ///
    /// For explicit weights only n up to the list length can carry an
    /// interior maximum: past the list both α(n) and α(2n) follow the tail
    /// rule and the ratio is monotone in n, so the endpoint n = horizon
    /// covers the rest.
    pub fn doubling_sup(&self, horizon: u64) -> Result<f64> {
        if horizon == 0 {
            return Err(Error::Domain("doubling horizon must be ≥ 1".into()));
        }
        match self {
            DiscreteWeight::Power { theta } => Ok(2f64.powf(*theta)),
            DiscreteWeight::Explicit { values, .. } => {
                let len = values.len() as u64;
                let mut candidates: Vec<u64> = (1..=horizon.min(len)).collect();
                if horizon > len {
                    candidates.push(horizon);
                }
                let mut sup: Option<f64> = None;
                for n in candidates {
                    let denom = self.eval(n);
                    if denom > 0.0 {
                        let ratio = self.eval(2 * n) / denom;
                        sup = Some(sup.map_or(ratio, |s: f64| s.max(ratio)));
                    }
                }
                sup.ok_or_else(|| {
                    Error::UndefinedRatio("α vanishes on the whole doubling range".into())
                })
            }
        }
    }
}

/// Declared domain of a continuous weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// [0, ∞): the semifinite model.
    #[default]
    HalfLine,
    /// [0, 1]: the finite-trace (normalized) model.
    Unit,
}

/// Shape of a continuous weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContinuousKind {
    /// α(x) = x^θ, θ > 0.
    Power { theta: f64 },
    /// α(x) = min(x, t): the continuous Ky Fan weight.
    Cap { t: f64 },
    /// α(0) = 0, α(x) = 1 for x > 0: the operator-norm weight.
    Indicator,
    /// Continuous piecewise-linear through (x_j, y_j), slope `final_slope`
    /// past the last breakpoint.
    Pwl { x: Vec<f64>, y: Vec<f64>, final_slope: f64 },
    /// Left-continuous step function: α(x) = values[k] on (t_{k-1}, t_k],
    /// with t_0 = 0 and the last value extending past the last threshold.
    Step { thresholds: Vec<f64>, values: Vec<f64> },
}

/// Monotone weight on [0,∞) or [0,1] with α(0) = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousWeight {
    #[serde(flatten)]
    pub kind: ContinuousKind,
    #[serde(default)]
    pub domain: Domain,
}

/// Result of a doubling-condition scan.
///
/// `exact` is false only for piecewise-linear weights, where the candidate
/// set is supplemented by a fixed per-segment refinement rather than a
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Doubling {
    pub sup: f64,
    pub exact: bool,
}

impl ContinuousWeight {
    pub fn power(theta: f64) -> Self {
        ContinuousKind::Power { theta }.into()
    }

    pub fn cap(t: f64) -> Self {
        ContinuousKind::Cap { t }.into()
    }

    pub fn indicator() -> Self {
        ContinuousKind::Indicator.into()
    }

    pub fn pwl(x: &[f64], y: &[f64], final_slope: f64) -> Self {
        ContinuousKind::Pwl { x: x.to_vec(), y: y.to_vec(), final_slope }.into()
    }

    pub fn step(thresholds: &[f64], values: &[f64]) -> Self {
        ContinuousKind::Step { thresholds: thresholds.to_vec(), values: values.to_vec() }.into()
    }

    pub fn on_unit(mut self) -> Self {
        self.domain = Domain::Unit;
        self
    }

    pub fn validate(&self) -> Result<()> {
        match &self.kind {
            ContinuousKind::Power { theta } => {
                if !theta.is_finite() || *theta <= 0.0 {
                    return Err(Error::Invalid(format!("power weight needs theta > 0, got {theta}")));
                }
            }
            ContinuousKind::Cap { t } => {
                if !t.is_finite() || *t <= 0.0 {
                    return Err(Error::Invalid(format!("cap weight needs t > 0, got {t}")));
                }
            }
            ContinuousKind::Indicator => {}
            ContinuousKind::Pwl { x, y, final_slope } => {
                if x.len() != y.len() || x.is_empty() {
                    return Err(Error::Invalid("pwl weight needs equal-length non-empty x and y".into()));
                }
                if x[0] != 0.0 || y[0] != 0.0 {
                    return Err(Error::Invalid("pwl weight must start at (0, 0)".into()));
                }
                for w in x.windows(2) {
                    if !(w[1].is_finite() && w[1] > w[0]) {
                        return Err(Error::Invalid("pwl breakpoints must be strictly increasing".into()));
                    }
                }
                for w in y.windows(2) {
                    if !(w[1].is_finite() && w[1] >= w[0]) {
                        return Err(Error::Invalid("pwl values must be non-decreasing".into()));
                    }
                }
                if !(final_slope.is_finite() && *final_slope >= 0.0) {
                    return Err(Error::Invalid(format!("pwl final slope must be ≥ 0, got {final_slope}")));
                }
            }
            ContinuousKind::Step { thresholds, values } => {
                if values.len() != thresholds.len() + 1 {
                    return Err(Error::Invalid(
                        "step weight needs one more value than thresholds".into(),
                    ));
                }
                for w in thresholds.windows(2) {
                    if !(w[1].is_finite() && w[1] > w[0]) {
                        return Err(Error::Invalid("step thresholds must be strictly increasing".into()));
                    }
                }
                if let Some(first) = thresholds.first() {
                    if !(first.is_finite() && *first > 0.0) {
                        return Err(Error::Invalid("step thresholds must be positive".into()));
                    }
                }
                for w in values.windows(2) {
                    if !(w[1].is_finite() && w[1] >= w[0]) {
                        return Err(Error::Invalid("step values must be non-decreasing".into()));
                    }
                }
                if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                    return Err(Error::Invalid("step values must be finite and ≥ 0".into()));
                }
            }
        }
        Ok(())
    }

    /// True for kinds continuous on the whole domain. The indicator and
    /// step kinds are left-continuous only; Sugeno-side operations and the
    /// partition lemma refuse them.
    pub fn is_continuous(&self) -> bool {
        !matches!(self.kind, ContinuousKind::Indicator | ContinuousKind::Step { .. })
    }

    /// α(x). Accepts `f64::INFINITY` and returns the declared limit.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain(format!("weight argument must be ≥ 0, got {x}")));
        }
        if x == f64::INFINITY {
            return Ok(self.limit_at_infinity());
        }
        if self.domain == Domain::Unit && x > 1.0 {
            return Err(Error::Domain(format!("weight is declared on [0,1], got {x}")));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        match &self.kind {
            ContinuousKind::Power { theta } => x.powf(*theta),
            ContinuousKind::Cap { t } => x.min(*t),
            ContinuousKind::Indicator => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            ContinuousKind::Pwl { x: xs, y: ys, final_slope } => {
                let last = xs.len() - 1;
                if x >= xs[last] {
                    return ys[last] + final_slope * (x - xs[last]);
                }
                // partition_point: first j with xs[j] > x; x lies in [xs[j-1], xs[j]).
                let j = xs.partition_point(|&b| b <= x);
                let (x0, x1, y0, y1) = (xs[j - 1], xs[j], ys[j - 1], ys[j]);
                y0 + (y1 - y0) / (x1 - x0) * (x - x0)
            }
            ContinuousKind::Step { thresholds, values } => {
                if x == 0.0 {
                    return 0.0;
                }
                // left-continuous: value k applies on (t_{k-1}, t_k]
                let k = thresholds.partition_point(|&t| t < x);
                values[k]
            }
        }
    }

    /// Evaluation under the finite-model doubling convention: on the unit
    /// domain, α(s) = α(1) for s > 1.
    fn eval_capped(&self, x: f64) -> f64 {
        match self.domain {
            Domain::Unit => self.eval_unchecked(x.min(1.0)),
            Domain::HalfLine => self.eval_unchecked(x),
        }
    }

    /// α(∞) = lim α(x), possibly +∞ (α(1) on the unit domain).
    pub fn limit_at_infinity(&self) -> f64 {
        if self.domain == Domain::Unit {
            return self.eval_unchecked(1.0);
        }
        match &self.kind {
            ContinuousKind::Power { .. } => f64::INFINITY,
            ContinuousKind::Cap { t } => *t,
            ContinuousKind::Indicator => 1.0,
            ContinuousKind::Pwl { y, final_slope, .. } => {
                if *final_slope > 0.0 {
                    f64::INFINITY
                } else {
                    *y.last().unwrap()
                }
            }
            ContinuousKind::Step { values, .. } => *values.last().unwrap(),
        }
    }

    /// Concavity: non-increasing slopes. Power reduces to θ ≤ 1, cap is
    /// always concave, a step function with interior jumps never is.
    pub fn is_concave(&self) -> bool {
        match &self.kind {
            ContinuousKind::Power { theta } => *theta <= 1.0,
            ContinuousKind::Cap { .. } => true,
            ContinuousKind::Indicator => true,
            ContinuousKind::Pwl { x, y, final_slope } => {
                let mut prev = f64::INFINITY;
                for j in 1..x.len() {
                    let slope = (y[j] - y[j - 1]) / (x[j] - x[j - 1]);
                    if slope > prev {
                        return false;
                    }
                    prev = slope;
                }
                *final_slope <= prev
            }
            ContinuousKind::Step { thresholds, .. } => thresholds.is_empty(),
        }
    }

    /// ν_α([a, b)) = α(b) - α(a).
    pub fn stieltjes_mass(&self, a: f64, b: f64) -> Result<f64> {
        if a > b {
            return Err(Error::Domain(format!("stieltjes interval needs a ≤ b, got [{a}, {b})")));
        }
        Ok(self.eval(b)? - self.eval(a)?)
    }

    /// sup of α(2s)/α(s) over s ∈ (0, horizon] with α(s) > 0.
    ///
    /// Closed form for power (2^θ), cap (2), indicator (1). Step kinds are
    /// scanned exactly over their breakpoints and half-breakpoints, where
    /// the ratio is piecewise constant. Piecewise-linear kinds use the
    /// breakpoint/half-breakpoint candidate set plus a 64-point refinement
    /// per gap; the ratio of two monotone piecewise-linear functions is
    /// monotone between candidates, but the result is reported `exact: false`.
    pub fn doubling_sup(&self, horizon: f64) -> Result<Doubling> {
        if !(horizon > 0.0) {
            return Err(Error::Domain(format!("doubling horizon must be > 0, got {horizon}")));
        }
        let horizon = match self.domain {
            Domain::Unit => horizon.min(1.0),
            Domain::HalfLine => horizon,
        };
        match &self.kind {
            ContinuousKind::Power { theta } => Ok(Doubling { sup: 2f64.powf(*theta), exact: true }),
            ContinuousKind::Cap { .. } => Ok(Doubling { sup: 2.0, exact: true }),
            ContinuousKind::Indicator => Ok(Doubling { sup: 1.0, exact: true }),
            ContinuousKind::Step { thresholds, .. } => {
                let mut candidates: Vec<f64> = Vec::with_capacity(2 * thresholds.len() + 1);
                for &t in thresholds {
                    candidates.push(t);
                    candidates.push(t / 2.0);
                }
                candidates.push(horizon);
                let sup = self.scan_candidates(&candidates, horizon)?;
                Ok(Doubling { sup, exact: true })
            }
            ContinuousKind::Pwl { x, .. } => {
                let mut base: Vec<f64> = Vec::new();
                for &b in x.iter() {
                    base.push(b);
                    base.push(b / 2.0);
                    base.push(2.0 * b);
                }
                base.push(horizon);
                base.retain(|&s| s > 0.0 && s <= horizon);
                base.sort_by(|p, q| p.partial_cmp(q).unwrap());
                base.dedup();
                let mut candidates = Vec::with_capacity(base.len() * 65 + 1);
                let mut lo = 0.0;
                for &hi in &base {
                    for k in 1..=64 {
                        candidates.push(lo + (hi - lo) * k as f64 / 64.0);
                    }
                    lo = hi;
                }
                let sup = self.scan_candidates(&candidates, horizon)?;
                Ok(Doubling { sup, exact: false })
            }
        }
    }

    fn scan_candidates(&self, candidates: &[f64], horizon: f64) -> Result<f64> {
        let mut sup: Option<f64> = None;
        for &s in candidates {
            if !(s > 0.0 && s <= horizon) {
                continue;
            }
            let denom = self.eval_capped(s);
            if denom > 0.0 {
                let ratio = self.eval_capped(2.0 * s) / denom;
                sup = Some(sup.map_or(ratio, |v: f64| v.max(ratio)));
            }
        }
        sup.ok_or_else(|| Error::UndefinedRatio("α vanishes on the whole doubling range".into()))
    }
}

impl From<ContinuousKind> for ContinuousWeight {
    fn from(kind: ContinuousKind) -> Self {
        ContinuousWeight { kind, domain: Domain::HalfLine }
    }
}

/// The worked discontinuous weight from the semifinite examples:
/// α(0) = 0, α(x) = 1 on (0, 2], α(x) = 4 beyond.
pub fn two_step_example_weight() -> ContinuousWeight {
    ContinuousWeight::step(&[2.0], &[1.0, 4.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_identity_weight() {
        let w = DiscreteWeight::power(1.0);
        assert_eq!(w.eval(7), 7.0);
        assert_eq!(w.increment(4).unwrap(), 1.0);
    }

    #[test]
    fn eval_explicit_constant_tail() {
        // α = (0, 1, 1, 3, 3, ...)
        let w = DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0);
        w.validate().unwrap();
        assert_eq!(w.eval(0), 0.0);
        assert_eq!(w.eval(2), 1.0);
        assert_eq!(w.eval(3), 3.0);
        assert_eq!(w.eval(5), 3.0);
        assert_eq!(w.increment(3).unwrap(), 2.0);
        assert_eq!(w.increment(2).unwrap(), 0.0);
        assert_eq!(w.increment(1).unwrap(), 1.0);
    }

    #[test]
    fn eval_explicit_arithmetic_tail() {
        let w = DiscreteWeight::explicit_arithmetic(&[0.0, 2.0], 0.5);
        w.validate().unwrap();
        assert_eq!(w.eval(1), 2.0);
        assert_eq!(w.eval(2), 2.5);
        assert_eq!(w.eval(4), 3.5);
        assert_eq!(w.limit_at_infinity(), f64::INFINITY);
    }

    #[test]
    fn increment_rejects_zero() {
        let w = DiscreteWeight::power(1.0);
        assert!(matches!(w.increment(0), Err(Error::Domain(_))));
    }

    #[test]
    fn concavity_matches_worked_examples() {
        assert!(DiscreteWeight::power(0.5).is_concave(1000));
        assert!(!DiscreteWeight::power(2.0).is_concave(1000));
        assert!(!DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0).is_concave(1000));
        // discrete Ky Fan: α(n) = min(n, 3)
        assert!(DiscreteWeight::explicit_constant(&[0.0, 1.0, 2.0, 3.0], 3.0).is_concave(1000));
    }

    #[test]
    fn doubling_sup_discrete() {
        assert_eq!(DiscreteWeight::power(2.0).doubling_sup(100).unwrap(), 4.0);
        let w = DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0);
        assert_eq!(w.doubling_sup(100).unwrap(), 3.0);
    }

    #[test]
    fn doubling_sup_all_zero_is_undefined() {
        let w = DiscreteWeight::explicit_constant(&[0.0, 0.0], 0.0);
        assert!(matches!(w.doubling_sup(50), Err(Error::UndefinedRatio(_))));
    }

    #[test]
    fn continuous_cap_eval_and_doubling() {
        let w = ContinuousWeight::cap(2.0);
        assert_eq!(w.eval(5.0).unwrap(), 2.0);
        assert_eq!(w.eval(1.5).unwrap(), 1.5);
        let d = ContinuousWeight::cap(1.0).doubling_sup(1e6).unwrap();
        assert_eq!(d.sup, 2.0);
        assert!(d.exact);
    }

    #[test]
    fn continuous_eval_rejects_negative() {
        let w = ContinuousWeight::power(1.0);
        assert!(matches!(w.eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn unit_domain_rejects_large_argument() {
        let w = ContinuousWeight::power(1.0).on_unit();
        assert!(w.eval(0.5).is_ok());
        assert!(matches!(w.eval(1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn stieltjes_mass_examples() {
        let w = ContinuousWeight::power(1.0);
        assert_eq!(w.stieltjes_mass(2.0, 5.0).unwrap(), 3.0);
        assert_eq!(w.stieltjes_mass(3.0, 3.0).unwrap(), 0.0);
        let cap = ContinuousWeight::cap(2.0);
        assert_eq!(cap.stieltjes_mass(1.0, 3.0).unwrap(), 1.0);
        assert!(matches!(cap.stieltjes_mass(3.0, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn two_step_weight_values() {
        let w = two_step_example_weight();
        w.validate().unwrap();
        assert_eq!(w.eval(0.0).unwrap(), 0.0);
        assert_eq!(w.eval(4.0 / 3.0).unwrap(), 1.0);
        assert_eq!(w.eval(2.0).unwrap(), 1.0);
        assert_eq!(w.eval(8.0 / 3.0).unwrap(), 4.0);
        assert!(!w.is_continuous());
        assert!(!w.is_concave());
    }

    #[test]
    fn two_step_weight_doubling_exact() {
        // ratio jumps to 4 when s ≤ 2 < 2s, e.g. s slightly above 1;
        // candidate s = 2 catches α(4)/α(2) = 4.
        let d = two_step_example_weight().doubling_sup(100.0).unwrap();
        assert_eq!(d.sup, 4.0);
        assert!(d.exact);
    }

    #[test]
    fn unit_domain_doubling_uses_capped_convention() {
        // α(s) = α(1) for s > 1: candidates past 1 are clamped, so the
        // ratio never consults values outside the declared domain
        let w = ContinuousWeight::pwl(&[0.0, 0.5, 1.0], &[0.0, 0.25, 1.0], 0.0).on_unit();
        let d = w.doubling_sup(1e6).unwrap();
        // at s = 1/2 the ratio is α(1)/α(1/2) = 4, the sup
        assert!((d.sup - 4.0).abs() < 1e-9, "sup {}", d.sup);
        assert_eq!(ContinuousWeight::power(1.0).on_unit().doubling_sup(10.0).unwrap().sup, 2.0);
    }

    #[test]
    fn pwl_eval_and_concavity() {
        let w = ContinuousWeight::pwl(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.5], 0.0);
        w.validate().unwrap();
        assert_eq!(w.eval(0.5).unwrap(), 0.5);
        assert_eq!(w.eval(1.5).unwrap(), 1.25);
        assert_eq!(w.eval(10.0).unwrap(), 1.5);
        assert!(w.is_concave());
        let steep = ContinuousWeight::pwl(&[0.0, 1.0, 2.0], &[0.0, 0.5, 2.0], 0.0);
        assert!(!steep.is_concave());
    }

    #[test]
    fn indicator_flags() {
        let w = ContinuousWeight::indicator();
        assert_eq!(w.eval(0.0).unwrap(), 0.0);
        assert_eq!(w.eval(1e-12).unwrap(), 1.0);
        assert!(!w.is_continuous());
        assert_eq!(w.doubling_sup(100.0).unwrap().sup, 1.0);
    }

    #[test]
    fn weight_json_round_trip() {
        let w: DiscreteWeight = serde_json::from_str(r#"{"kind":"power","theta":0.5}"#).unwrap();
        assert_eq!(w, DiscreteWeight::power(0.5));
        let w: DiscreteWeight = serde_json::from_str(
            r#"{"kind":"explicit","values":[0,1,1],"tail":{"mode":"constant","value":3}}"#,
        )
        .unwrap();
        assert_eq!(w.eval(5), 3.0);
        let c: ContinuousWeight = serde_json::from_str(r#"{"kind":"cap","t":2.0}"#).unwrap();
        assert_eq!(c, ContinuousWeight::cap(2.0));
        let c: ContinuousWeight = serde_json::from_str(
            r#"{"kind":"pwl","x":[0,1,2],"y":[0,1,1.5],"final_slope":0.0}"#,
        )
        .unwrap();
        assert_eq!(c.eval(2.0).unwrap(), 1.5);
        let c: ContinuousWeight =
            serde_json::from_str(r#"{"kind":"power","theta":1.0,"domain":"unit"}"#).unwrap();
        assert_eq!(c.domain, Domain::Unit);
    }
}
