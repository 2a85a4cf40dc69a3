//! Classical Choquet and Sugeno integrals over finite monotone measures:
//! the commutative prototypes of the operator traces.
//!
//! Ground sets are capped at 20 points and subsets are bitmasks. A
//! measure may be partial (only the subsets a computation touches need to
//! be present); integrals report a missing subset as an input error.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_GROUND: usize = 20;

/// Largest ground size for which monotonicity is validated exhaustively
/// over all present subset pairs; larger measures are chain-sampled.
const EXHAUSTIVE_VALIDATION_KEYS: usize = 1 << 12;

/// Set function on subsets of {0, ..., n-1} with μ(∅) = 0, monotone
/// under inclusion, values in [0, ∞].
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMeasure {
    n: usize,
    mu: HashMap<u32, f64>,
}

impl MonotoneMeasure {
    pub fn new(n: usize, mu: HashMap<u32, f64>) -> Result<Self> {
        let m = MonotoneMeasure { n, mu };
        m.validate()?;
        Ok(m)
    }

    /// Additive measure from point weights (the Lebesgue case).
    pub fn additive(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        if n > MAX_GROUND {
            return Err(Error::Invalid(format!("ground set capped at {MAX_GROUND} points")));
        }
        let mut mu = HashMap::new();
        for mask in 1u32..(1 << n) {
            let total = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| weights[i]).sum();
            mu.insert(mask, total);
        }
        Self::new(n, mu)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// μ(mask); ∅ is always 0, anything else must be present.
    pub fn get(&self, mask: u32) -> Result<f64> {
        if mask == 0 {
            return Ok(0.0);
        }
        self.mu
            .get(&mask)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("measure is missing subset 0b{mask:b}")))
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_GROUND {
            return Err(Error::Invalid(format!(
                "ground size must be in 1..={MAX_GROUND}, got {}",
                self.n
            )));
        }
        let full = self.full_mask();
        for (&mask, &v) in &self.mu {
            if mask > full {
                return Err(Error::Invalid(format!("subset 0b{mask:b} outside the ground set")));
            }
            if v.is_nan() || v < 0.0 {
                return Err(Error::Invalid(format!("measure values must be in [0, ∞], got {v}")));
            }
        }
        if let Some(&empty) = self.mu.get(&0) {
            if empty != 0.0 {
                return Err(Error::Invalid(format!("μ(∅) must be 0, got {empty}")));
            }
        }
        self.check_monotone()
    }

    fn check_monotone(&self) -> Result<()> {
        let mut keys: Vec<u32> = self.mu.keys().copied().collect();
        keys.sort_unstable();
        let pair_check = |a: u32, b: u32| -> Result<()> {
            if a & b == a && a != b {
                let (va, vb) = (self.mu[&a], self.mu[&b]);
                if va > vb {
                    return Err(Error::Invalid(format!(
                        "measure not monotone: μ(0b{a:b}) = {va} > μ(0b{b:b}) = {vb}"
                    )));
                }
            }
            Ok(())
        };
        if keys.len() <= EXHAUSTIVE_VALIDATION_KEYS {
            for &a in &keys {
                for &b in &keys {
                    pair_check(a, b)?;
                }
            }
        } else {
            // chain sampling: compare each subset with a spread of unions
            for (i, &a) in keys.iter().enumerate() {
                for step in 1..=32usize {
                    let j = (i * 2654435761 + step * 40503) % keys.len();
                    let b = a | keys[j];
                    if b != a && self.mu.contains_key(&b) {
                        pair_check(a, b)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    n: usize,
    mu: HashMap<String, f64>,
}

impl Serialize for MonotoneMeasure {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mu = self
            .mu
            .iter()
            .map(|(&mask, &v)| (format!("0b{:0width$b}", mask, width = self.n), v))
            .collect();
        MeasureJson { n: self.n, mu }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MonotoneMeasure {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = MeasureJson::deserialize(deserializer)?;
        let mut mu = HashMap::with_capacity(raw.mu.len());
        for (key, v) in raw.mu {
            let digits = key.strip_prefix("0b").unwrap_or(&key);
            let radix = if key.starts_with("0b") { 2 } else { 10 };
            let mask = u32::from_str_radix(digits, radix)
                .map_err(|e| D::Error::custom(format!("bad subset key {key:?}: {e}")))?;
            mu.insert(mask, v);
        }
        MonotoneMeasure::new(raw.n, mu).map_err(D::Error::custom)
    }
}

/// Nonnegative function on the ground set, one value per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimpleFunction {
    pub f: Vec<f64>,
}

impl SimpleFunction {
    pub fn new(f: Vec<f64>) -> Result<Self> {
        if f.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Invalid("function values must be finite and ≥ 0".into()));
        }
        Ok(SimpleFunction { f })
    }

    pub fn len(&self) -> usize {
        self.f.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f.is_empty()
    }
}

/// Indices sorted by value descending; ties keep the original order.
fn descending_order(f: &SimpleFunction) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..f.f.len()).collect();
    idx.sort_by(|&a, &b| f.f[b].partial_cmp(&f.f[a]).unwrap());
    idx
}

fn check_compatible(f: &SimpleFunction, mu: &MonotoneMeasure) -> Result<()> {
    if f.len() != mu.ground_size() {
        return Err(Error::DimensionMismatch(format!(
            "function on {} points vs measure on {}",
            f.len(),
            mu.ground_size()
        )));
    }
    Ok(())
}

/// Product with the 0 · ∞ = 0 convention.
fn weighted(gap: f64, mass: f64) -> f64 {
    if gap == 0.0 {
        0.0
    } else {
        gap * mass
    }
}

/// Choquet integral by the sorted-permutation formula:
/// Σ_{i<n} (a_{σ(i)} - a_{σ(i+1)}) μ(A_i) + a_{σ(n)} μ(A_n).
pub fn choquet_integral(f: &SimpleFunction, mu: &MonotoneMeasure) -> Result<f64> {
    check_compatible(f, mu)?;
    let order = descending_order(f);
    let n = order.len();
    let mut mask = 0u32;
    let mut total = 0.0;
    for (i, &point) in order.iter().enumerate() {
        mask |= 1 << point;
        let next = if i + 1 < n { f.f[order[i + 1]] } else { 0.0 };
        total += weighted(f.f[point] - next, mu.get(mask)?);
    }
    Ok(total)
}

/// Choquet integral by the layer-cake route ∫ μ({f ≥ s}) ds over the
/// breakpoint decomposition; an independent evaluation used to
/// cross-check the permutation formula.
pub fn choquet_integral_layercake(f: &SimpleFunction, mu: &MonotoneMeasure) -> Result<f64> {
    check_compatible(f, mu)?;
    let mut levels: Vec<f64> = f.f.iter().copied().filter(|&v| v > 0.0).collect();
    levels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    levels.dedup();
    let mut total = 0.0;
    for (j, &level) in levels.iter().enumerate() {
        let mask = f
            .f
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= level)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        let next = if j + 1 < levels.len() { levels[j + 1] } else { 0.0 };
        total += weighted(level - next, mu.get(mask)?);
    }
    Ok(total)
}

/// Sugeno integral by the sorted-permutation formula:
/// ∨_i ( a_{σ(i)} ∧ μ(A_i) ).
pub fn sugeno_integral(f: &SimpleFunction, mu: &MonotoneMeasure) -> Result<f64> {
    check_compatible(f, mu)?;
    let order = descending_order(f);
    let mut mask = 0u32;
    let mut best = 0.0f64;
    for &point in &order {
        mask |= 1 << point;
        best = best.max(f.f[point].min(mu.get(mask)?));
    }
    Ok(best)
}

/// Sugeno integral by scanning sup_s ( s ∧ μ({f ≥ s}) ) over the level
/// set decomposition; the independent cross-check route.
pub fn sugeno_integral_supscan(f: &SimpleFunction, mu: &MonotoneMeasure) -> Result<f64> {
    check_compatible(f, mu)?;
    let mut levels: Vec<f64> = f.f.iter().copied().filter(|&v| v > 0.0).collect();
    levels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    levels.dedup();
    let mut best = 0.0f64;
    for &level in &levels {
        let mask = f
            .f
            .iter()
            .enumerate()
            .filter(|(_, &v)| v >= level)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        best = best.max(level.min(mu.get(mask)?));
    }
    Ok(best)
}

/// All-pairs comonotonicity test: (f(s) - f(t))(g(s) - g(t)) ≥ 0, exact.
pub fn is_comonotone(f: &SimpleFunction, g: &SimpleFunction) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", f.len(), g.len())));
    }
    for s in 0..f.len() {
        for t in (s + 1)..f.len() {
            let df = f.f[s] - f.f[t];
            let dg = g.f[s] - g.f[t];
            if (df > 0.0 && dg < 0.0) || (df < 0.0 && dg > 0.0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
