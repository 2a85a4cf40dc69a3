//! Theorem-keyed property suites.
//!
//! Every suite runs `trials` independent trials (sharded when `workers`
//! is set), reduces to the worst observed metric, and reports pass/fail
//! against the suite's threshold. Metrics are exact deviations (0 when an
//! identity holds, +inf when an exact identity breaks), slacks against an
//! inequality bound, or a normalized badness where a suite bundles checks
//! with different tolerances: there 1.0 marks the tolerance boundary.

use serde_json::{json, Value};

use crate::choquet::{choquet_trace, triangle_ratio, weighted_p_norm, WeightedPNorm};
use crate::error::{Error, Result};
use crate::fuzzy::{
    choquet_integral, choquet_integral_layercake, is_comonotone, sugeno_integral,
    sugeno_integral_supscan, MonotoneMeasure, SimpleFunction,
};
use crate::harness::gen::{
    random_comonotone_pair, random_discrete_weight, random_hermitian, random_monotone_measure,
    random_psd, random_step_operator, random_step_operator_rational, random_step_operator_unit,
    random_unitary,
};
use crate::harness::rng::Rng;
use crate::harness::{max_over_indexed, Candidate};
use crate::report::Report;
use crate::spectral::{
    hermitian_eigenvalues, operator_norm, psd_eigenvalues, weyl_check, ComplexMatrix, SpectrumDesc,
};
use crate::stepops::{
    choquet_spectral, choquet_stieltjes, lorentz_norm, max_type_value, min_witness,
    partition_approx, pointwise_le, sugeno_trace_step, StepOperator,
};
use crate::sugeno::{psi_of_spectrum, sugeno_metric, sugeno_trace, SugenoTrace};
use crate::tolerances::{EIGEN_ABS, SPECTRAL_REL};
use crate::weights::{two_step_example_weight, ContinuousWeight, DiscreteWeight};

/// Shared configuration for suite runs.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: u64,
    pub dims: Vec<usize>,
    pub workers: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, trials: 1000, dims: vec![2, 3, 4, 5, 6, 8], workers: None }
    }
}

impl SuiteConfig {
    fn dim_for(&self, trial: u64) -> usize {
        self.dims[(trial % self.dims.len() as u64) as usize]
    }

    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Invalid("dims must not be empty".into()));
        }
        if self.dims.iter().any(|&n| n == 0 || n > 64) {
            return Err(Error::Invalid("dims must lie in 1..=64".into()));
        }
        Ok(())
    }
}

/// All suite identifiers, in catalog order.
pub fn suite_ids() -> &'static [&'static str] {
    &[
        "weights-increments",
        "weights-concave-doubling",
        "weights-stieltjes",
        "spectral-trace",
        "spectral-calculus",
        "spectral-lipschitz",
        "weyl",
        "choquet-homogeneity",
        "choquet-unitary",
        "choquet-monotone",
        "choquet-concave-triangle",
        "choquet-qnorm-constants",
        "choquet-qnorm-general",
        "prop-stieltjes",
        "stepops-paper-example",
        "stepops-qnorm",
        "stepops-concave-triangle",
        "lorentz",
        "lem-series",
        "sugeno-maxtype",
        "prop-min",
        "stepops-monotone",
        "stepops-additive",
        "stepops-f-additive",
        "stepops-f-homogeneous",
        "sugeno-invariants",
        "sugeno-metric",
        "fuzzy-choquet",
        "fuzzy-sugeno",
    ]
}

/// Runs the named suite.
pub fn run_suite(id: &str, cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    match id {
        "weights-increments" => weights_increments(cfg),
        "weights-concave-doubling" => weights_concave_doubling(cfg),
        "weights-stieltjes" => weights_stieltjes(cfg),
        "spectral-trace" => spectral_trace(cfg),
        "spectral-calculus" => spectral_calculus(cfg),
        "spectral-lipschitz" => spectral_lipschitz(cfg),
        "weyl" => weyl_suite(cfg),
        "choquet-homogeneity" => choquet_homogeneity(cfg),
        "choquet-unitary" => choquet_unitary(cfg),
        "choquet-monotone" => choquet_monotone(cfg),
        "choquet-concave-triangle" => choquet_concave_triangle(cfg),
        "choquet-qnorm-constants" => choquet_qnorm_constants(cfg),
        "choquet-qnorm-general" => choquet_qnorm_general(cfg),
        "prop-stieltjes" => prop_stieltjes(cfg),
        "stepops-paper-example" => stepops_paper_example(cfg),
        "stepops-qnorm" => stepops_qnorm(cfg),
        "stepops-concave-triangle" => stepops_concave_triangle(cfg),
        "lorentz" => lorentz_suite(cfg),
        "lem-series" => lem_series(cfg),
        "sugeno-maxtype" => sugeno_maxtype(cfg),
        "prop-min" => prop_min(cfg),
        "stepops-monotone" => stepops_monotone(cfg),
        "stepops-additive" => stepops_additive(cfg),
        "stepops-f-additive" => stepops_f_additive(cfg),
        "stepops-f-homogeneous" => stepops_f_homogeneous(cfg),
        "sugeno-invariants" => sugeno_invariants(cfg),
        "sugeno-metric" => sugeno_metric_suite(cfg),
        "fuzzy-choquet" => fuzzy_choquet(cfg),
        "fuzzy-sugeno" => fuzzy_sugeno(cfg),
        other => Err(Error::UnknownSuite(other.into())),
    }
}

/// Drives a suite: parallel max-reduce of per-trial metrics against a
/// pass threshold.
fn drive<F>(cfg: &SuiteConfig, suite: &str, threshold: f64, eval: F) -> Result<Report>
where
    F: Fn(u64, &mut Rng) -> Result<Option<(f64, Option<Value>)>> + Sync + Send,
{
    let start = std::time::Instant::now();
    let best = max_over_indexed(cfg.workers, cfg.trials, |i| {
        let mut rng = Rng::for_trial(cfg.seed, i);
        eval(i, &mut rng)
    })?;
    let best = best.unwrap_or_else(|| Candidate::new(0, f64::NEG_INFINITY, None));
    let mut report = Report::new(suite, cfg.seed);
    report.trials = cfg.trials;
    report.worst = best.metric;
    report.passed = best.metric <= threshold;
    if !report.passed {
        report.witness = best.witness;
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// 0 when exactly equal, +inf otherwise; for identities that must hold
/// bit-for-bit.
fn exact_dev(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        f64::INFINITY
    }
}

fn rel_dev(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

fn rotate(u: &ComplexMatrix, a: &ComplexMatrix) -> ComplexMatrix {
    u.matmul(a).unwrap().matmul(&u.adjoint()).unwrap()
}

fn sample_continuous_weight(trial: u64, rng: &mut Rng) -> ContinuousWeight {
    match trial % 4 {
        0 => ContinuousWeight::power(0.25 + 1.75 * rng.uniform()),
        1 => ContinuousWeight::cap(0.25 + 2.0 * rng.uniform()),
        2 => {
            let x1 = 0.5 + rng.uniform();
            let x2 = x1 + 0.5 + rng.uniform();
            let y1 = rng.uniform();
            let y2 = y1 + rng.uniform();
            ContinuousWeight::pwl(&[0.0, x1, x2], &[0.0, y1, y2], rng.uniform())
        }
        _ => {
            let t1 = 0.5 + rng.uniform();
            let t2 = t1 + 0.5 + rng.uniform();
            let v1 = 0.5 + rng.uniform();
            let v2 = v1 + rng.uniform();
            ContinuousWeight::step(&[t1, t2], &[v1, v2, v2 + rng.uniform()])
        }
    }
}

/// Continuous weights that are exact on dyadic arguments.
fn sample_dyadic_weight(trial: u64) -> ContinuousWeight {
    match trial % 4 {
        0 => ContinuousWeight::power(1.0),
        1 => ContinuousWeight::cap(1.5),
        2 => ContinuousWeight::pwl(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.5], 0.25),
        _ => two_step_example_weight(),
    }
}

fn sample_concave_continuous_weight(trial: u64, rng: &mut Rng) -> ContinuousWeight {
    match trial % 3 {
        0 => ContinuousWeight::power(1.0),
        1 => ContinuousWeight::power(0.25 + 0.75 * rng.uniform()),
        _ => ContinuousWeight::cap(0.25 + 2.0 * rng.uniform()),
    }
}

// ---------------------------------------------------------------- weights

fn weights_increments(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "weights-increments", SPECTRAL_REL, |i, rng| {
        let w = if i % 3 == 0 {
            DiscreteWeight::power(0.25 + 1.75 * rng.uniform())
        } else {
            random_discrete_weight(i % 2 == 0, rng)
        };
        let mut badness = 0.0f64;
        let mut prefix = 0.0;
        let mut prev = 0.0;
        for n in 1..=512u64 {
            prefix += w.increment(n)?;
            badness = badness.max(rel_dev(prefix, w.eval(n)));
            // monotone grid check
            badness = badness.max(prev - w.eval(n));
            prev = w.eval(n);
        }
        Ok(Some((badness, Some(json!({ "weight": w })))))
    })
}

fn weights_concave_doubling(cfg: &SuiteConfig) -> Result<Report> {
    // concavity with α(1) > 0 forces α(2n) ≤ 2 α(n)
    drive(cfg, "weights-concave-doubling", 2.0 + 1e-12, |_, rng| {
        let w = random_discrete_weight(true, rng);
        debug_assert!(w.is_concave(2048) && w.alpha1_positive());
        let sup = w.doubling_sup(1024)?;
        Ok(Some((sup, Some(json!({ "weight": w })))))
    })
}

fn weights_stieltjes(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "weights-stieltjes", SPECTRAL_REL, |i, rng| {
        let w = sample_continuous_weight(i, rng);
        let mut cuts = [4.0 * rng.uniform(), 4.0 * rng.uniform(), 4.0 * rng.uniform()];
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let [a, b, c] = cuts;
        let joined = w.stieltjes_mass(a, c)?;
        let split = w.stieltjes_mass(a, b)? + w.stieltjes_mass(b, c)?;
        let badness = rel_dev(joined, split);
        Ok(Some((badness, Some(json!({ "weight": w, "cuts": cuts })))))
    })
}

// --------------------------------------------------------------- spectral

fn spectral_trace(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "spectral-trace", EIGEN_ABS, |i, rng| {
        let a = random_hermitian(cfg.dim_for(i), rng);
        let eigs = hermitian_eigenvalues(&a)?;
        let sum: f64 = eigs.values().iter().sum();
        let metric = (sum - a.trace().re).abs() / a.frobenius().max(1.0);
        Ok(Some((metric, Some(json!({ "a": a })))))
    })
}

fn spectral_calculus(cfg: &SuiteConfig) -> Result<Report> {
    // μ_t(f(a)) = f(μ_t(a)) for increasing f(x) = x^p, with f(a) built on
    // the known diagonalization
    drive(cfg, "spectral-calculus", EIGEN_ABS, |i, rng| {
        let n = cfg.dim_for(i);
        let p = if i % 2 == 0 { 0.5 } else { 2.0 };
        let mut diag: Vec<f64> = (0..n).map(|_| rng.normal().abs()).collect();
        diag.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let u = random_unitary(n, rng);
        let a = rotate(&u, &ComplexMatrix::from_diag(&diag));
        let fa = rotate(&u, &ComplexMatrix::from_diag(&diag.iter().map(|&d| d.powf(p)).collect::<Vec<_>>()));

        let lam_a = psd_eigenvalues(&a)?;
        let lam_fa = psd_eigenvalues(&fa)?;
        let scale = fa.frobenius().max(1.0);
        let mut metric = 0.0f64;
        for k in 1..=n {
            metric = metric.max((lam_fa.lambda(k) - lam_a.lambda(k).powf(p)).abs() / scale);
        }
        Ok(Some((metric, Some(json!({ "a": a, "p": p })))))
    })
}

fn spectral_lipschitz(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "spectral-lipschitz", EIGEN_ABS, |i, rng| {
        let n = cfg.dim_for(i);
        let a = random_hermitian(n, rng);
        let b = random_hermitian(n, rng);
        let la = hermitian_eigenvalues(&a)?;
        let lb = hermitian_eigenvalues(&b)?;
        let gap = operator_norm(&a.sub(&b)?)?;
        let mut metric = f64::NEG_INFINITY;
        for k in 1..=n {
            metric = metric.max((la.lambda(k) - lb.lambda(k)).abs() - gap);
        }
        Ok(Some((metric, Some(json!({ "a": a, "b": b })))))
    })
}

fn weyl_suite(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "weyl", EIGEN_ABS, |i, rng| {
        let n = cfg.dim_for(i);
        let a = random_psd(n, rng);
        let b = random_psd(n, rng);
        let check = weyl_check(&a, &b)?;
        Ok(Some((check.worst, Some(json!({ "a": a, "b": b })))))
    })
}

// ---------------------------------------------------------------- choquet

fn choquet_homogeneity(cfg: &SuiteConfig) -> Result<Report> {
    // spectrum-level homogeneity is pure arithmetic (1e-12); the
    // matrix-level route passes through the eigensolver and gets the
    // corresponding slack; normalized so 1.0 is the boundary
    drive(cfg, "choquet-homogeneity", 1.0, |i, rng| {
        let w = random_discrete_weight(i % 2 == 0, rng);
        let p = [0.5, 1.0, 2.0][(i % 3) as usize];
        let k = 0.25 + 4.0 * rng.uniform();

        let mut values: Vec<f64> = (0..6).map(|_| rng.normal().abs()).collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let spec = SpectrumDesc::new(values.clone())?;
        let scaled = SpectrumDesc::new(values.iter().map(|v| k * v).collect())?;
        let spectral_badness =
            rel_dev(choquet_trace(&scaled, &w)?, k * choquet_trace(&spec, &w)?) / SPECTRAL_REL;

        let n = cfg.dim_for(i);
        let a = random_hermitian(n, rng);
        let phase = num_complex::Complex64::from_polar(k, 2.0 * std::f64::consts::PI * rng.uniform());
        let norm = WeightedPNorm::new(w.clone(), p)?;
        let matrix_badness =
            rel_dev(weighted_p_norm(&a.scale(phase), &norm)?, k * weighted_p_norm(&a, &norm)?)
                / EIGEN_ABS;

        let badness = spectral_badness.max(matrix_badness);
        Ok(Some((badness, Some(json!({ "weight": w, "p": p, "k": k, "a": a })))))
    })
}

fn choquet_unitary(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "choquet-unitary", EIGEN_ABS, |i, rng| {
        let n = cfg.dim_for(i);
        let w = random_discrete_weight(i % 2 == 0, rng);
        let p = [1.0, 2.0][(i % 2) as usize];
        let norm = WeightedPNorm::new(w, p)?;
        let a = random_hermitian(n, rng);
        let u = random_unitary(n, rng);
        let metric = rel_dev(weighted_p_norm(&rotate(&u, &a), &norm)?, weighted_p_norm(&a, &norm)?);
        Ok(Some((metric, Some(json!({ "a": a, "u": u })))))
    })
}

fn choquet_monotone(cfg: &SuiteConfig) -> Result<Report> {
    // entrywise domination of spectra is preserved exactly
    drive(cfg, "choquet-monotone", 0.0, |i, rng| {
        let w = random_discrete_weight(i % 2 == 0, rng);
        let len = 2 + rng.below(7) as usize;
        let mut s: Vec<f64> = (0..len).map(|_| rng.normal().abs()).collect();
        let mut t: Vec<f64> = (0..len).map(|_| rng.normal().abs()).collect();
        s.sort_by(|a, b| b.partial_cmp(a).unwrap());
        t.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let top: Vec<f64> = s.iter().zip(&t).map(|(a, b)| a.max(*b)).collect();
        let bottom: Vec<f64> = s.iter().zip(&t).map(|(a, b)| a.min(*b)).collect();
        let hi = choquet_trace(&SpectrumDesc::new(top)?, &w)?;
        let lo = choquet_trace(&SpectrumDesc::new(bottom)?, &w)?;
        Ok(Some((lo - hi, Some(json!({ "weight": w, "s": s, "t": t })))))
    })
}

fn concave_discrete_weight(index: u64) -> DiscreteWeight {
    match index % 3 {
        0 => DiscreteWeight::power(1.0),
        1 => DiscreteWeight::power(0.5),
        // discrete Ky Fan weight: α(n) = min(n, 3)
        _ => DiscreteWeight::explicit_constant(&[0.0, 1.0, 2.0, 3.0], 3.0),
    }
}

fn choquet_concave_triangle(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "choquet-concave-triangle", 1.0 + EIGEN_ABS, |i, rng| {
        let w = concave_discrete_weight(i);
        let p = [1.0, 2.0][(i % 2) as usize];
        let norm = WeightedPNorm::new(w, p)?;
        let n = cfg.dim_for(i);
        let a = random_hermitian(n, rng);
        let b = random_hermitian(n, rng);
        match triangle_ratio(&a, &b, &norm) {
            Ok(ratio) => Ok(Some((ratio, Some(json!({ "a": a, "b": b, "p": p }))))),
            Err(Error::UndefinedRatio(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

fn choquet_qnorm_constants(cfg: &SuiteConfig) -> Result<Report> {
    // α(x) = x² has doubling constant L = 4; the proof yields the bound
    // L^{1/p} for p ≥ 1 and 2^{1/p-1} L^{1/p} for 0 < p < 1
    drive(cfg, "choquet-qnorm-constants", EIGEN_ABS, |i, rng| {
        let w = DiscreteWeight::power(2.0);
        let p: f64 = [0.5, 1.0, 2.0][(i % 3) as usize];
        let bound = 2f64.powf((1.0 / p - 1.0).max(0.0)) * 4f64.powf(1.0 / p);
        let norm = WeightedPNorm::new(w, p)?;
        let n = cfg.dim_for(i);
        let a = random_hermitian(n, rng);
        let b = random_hermitian(n, rng);
        match triangle_ratio(&a, &b, &norm) {
            Ok(ratio) => Ok(Some((ratio - bound, Some(json!({ "a": a, "b": b, "p": p }))))),
            Err(Error::UndefinedRatio(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

fn choquet_qnorm_general(cfg: &SuiteConfig) -> Result<Report> {
    // same proof constants with L read from the weight's own doubling sup
    drive(cfg, "choquet-qnorm-general", EIGEN_ABS, |i, rng| {
        let w = match i % 3 {
            0 => DiscreteWeight::power(2.0),
            1 => DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0),
            _ => DiscreteWeight::explicit_arithmetic(&[0.0, 0.25, 1.5], 1.0),
        };
        let p: f64 = [0.5, 1.0, 2.0][((i / 3) % 3) as usize];
        let doubling = w.doubling_sup(4096)?;
        let bound = 2f64.powf((1.0 / p - 1.0).max(0.0)) * doubling.powf(1.0 / p);
        let norm = WeightedPNorm::new(w.clone(), p)?;
        let n = cfg.dim_for(i);
        let a = random_hermitian(n, rng);
        let b = random_hermitian(n, rng);
        match triangle_ratio(&a, &b, &norm) {
            Ok(ratio) => {
                Ok(Some((ratio - bound, Some(json!({ "a": a, "b": b, "p": p, "weight": w })))))
            }
            Err(Error::UndefinedRatio(_)) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

// ---------------------------------------------------------------- stepops

fn prop_stieltjes(cfg: &SuiteConfig) -> Result<Report> {
    // even trials: small-rational operators and dyadic-exact weights,
    // where the two routes must agree bit-for-bit; odd trials: float
    // operators at 1e-12 relative
    drive(cfg, "prop-stieltjes", SPECTRAL_REL, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let (a, w, exact) = if i % 2 == 0 {
            (random_step_operator_rational(k, rng), sample_dyadic_weight(i / 2), true)
        } else {
            (random_step_operator(k, rng), sample_continuous_weight(i / 2, rng), false)
        };
        let lhs = choquet_spectral(&a, &w)?;
        let rhs = choquet_stieltjes(&a, &w)?;
        let metric = if exact { exact_dev(lhs, rhs) } else { rel_dev(lhs, rhs) };
        Ok(Some((metric, Some(json!({ "a": a, "weight": w, "exact": exact })))))
    })
}

fn stepops_paper_example(cfg: &SuiteConfig) -> Result<Report> {
    // φ(p) = φ(q) = 1 and φ(p+q) = 4 for the two-step weight and
    // orthogonal projections of mass 4/3: a deterministic reproduction
    let cfg = SuiteConfig { trials: 1, ..cfg.clone() };
    drive(&cfg, "stepops-paper-example", 0.0, |_, _| {
        let w = two_step_example_weight();
        let p = StepOperator::scaled_projection(1.0, 4.0 / 3.0)?;
        let q = StepOperator::new(
            vec![
                crate::stepops::Segment { value: 0.0, mass: 4.0 / 3.0 },
                crate::stepops::Segment { value: 1.0, mass: 4.0 / 3.0 },
            ],
            None,
        )?;
        let phi_p = choquet_spectral(&p, &w)?;
        let phi_q = choquet_spectral(&q, &w)?;
        let phi_sum = choquet_spectral(&p.add(&q), &w)?;
        let ratio = phi_sum / (phi_p + phi_q);
        let badness = exact_dev(phi_p, 1.0)
            .max(exact_dev(phi_q, 1.0))
            .max(exact_dev(phi_sum, 4.0))
            .max(exact_dev(ratio, 2.0));
        Ok(Some((badness, Some(json!({ "phi_p": phi_p, "phi_q": phi_q, "phi_sum": phi_sum })))))
    })
}

fn stepops_qnorm(cfg: &SuiteConfig) -> Result<Report> {
    // doubling bound β dominates every sampled ratio φ(a+b)/(φ(a)+φ(b))
    drive(cfg, "stepops-qnorm", EIGEN_ABS, |i, rng| {
        let w = match i % 3 {
            0 => two_step_example_weight(),
            1 => ContinuousWeight::power(2.0),
            _ => ContinuousWeight::pwl(&[0.0, 1.0], &[0.0, 0.25], 2.0),
        };
        let beta = w.doubling_sup(1e6)?.sup;
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let b = random_step_operator(k, rng);
        let denom = choquet_spectral(&a, &w)? + choquet_spectral(&b, &w)?;
        if denom == 0.0 {
            return Ok(None);
        }
        let ratio = choquet_spectral(&a.add(&b), &w)? / denom;
        Ok(Some((ratio - beta, Some(json!({ "a": a, "b": b, "weight": w })))))
    })
}

fn stepops_concave_triangle(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "stepops-concave-triangle", EIGEN_ABS, |i, rng| {
        let w = sample_concave_continuous_weight(i, rng);
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let b = random_step_operator(k, rng);
        let denom = choquet_spectral(&a, &w)? + choquet_spectral(&b, &w)?;
        if denom == 0.0 {
            return Ok(None);
        }
        let ratio = choquet_spectral(&a.add(&b), &w)? / denom;
        Ok(Some((ratio - 1.0, Some(json!({ "a": a, "b": b, "weight": w })))))
    })
}

fn lorentz_suite(cfg: &SuiteConfig) -> Result<Report> {
    // normalized: alias identity (exact), L¹ recovery (1e-12), triangle
    // for the concave root weight (1e-9)
    drive(cfg, "lorentz", 1.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let w = sample_concave_continuous_weight(i, rng);
        let alias = exact_dev(lorentz_norm(&a, &w)?, choquet_stieltjes(&a, &w)?);

        let l1 = lorentz_norm(&a, &ContinuousWeight::power(1.0))?;
        let mass: f64 = a.segments.iter().map(|s| s.value * s.mass).sum();
        let l1_badness = rel_dev(l1, mass) / SPECTRAL_REL;

        let root = ContinuousWeight::power(0.5);
        let b = random_step_operator(k, rng);
        let denom = lorentz_norm(&a, &root)? + lorentz_norm(&b, &root)?;
        let triangle_badness = if denom == 0.0 {
            0.0
        } else {
            (lorentz_norm(&a.add(&b), &root)? / denom - 1.0) / EIGEN_ABS
        };

        let badness = alias.max(l1_badness).max(triangle_badness);
        Ok(Some((badness, Some(json!({ "a": a, "b": b, "weight": w })))))
    })
}

fn lem_series(cfg: &SuiteConfig) -> Result<Report> {
    // upper sums dominate φ (to 1e-12), refine monotonically, and land
    // within 1e-6 of φ at M = 2^10 on dyadic-breakpoint operators
    drive(cfg, "lem-series", 1.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator_unit(k, rng);
        let w = match i % 3 {
            0 => ContinuousWeight::power(1.0).on_unit(),
            1 => ContinuousWeight::power(0.5).on_unit(),
            _ => ContinuousWeight::pwl(&[0.0, 0.5, 1.0], &[0.0, 0.75, 1.0], 0.0).on_unit(),
        };
        let phi = choquet_stieltjes(&a, &w)?;
        let mut badness = 0.0f64;
        let mut prev = f64::INFINITY;
        let mut last = 0.0;
        for exp in 1..=10u32 {
            let m = 1u32 << exp;
            let approx = partition_approx(&a, &w, m)?;
            badness = badness.max((phi - approx) / 1e-12);
            badness = badness.max((approx - prev) / 1e-12);
            prev = approx;
            last = approx;
        }
        badness = badness.max((last - phi) / 1e-6);
        Ok(Some((badness, Some(json!({ "a": a, "weight": w })))))
    })
}

fn sugeno_maxtype(cfg: &SuiteConfig) -> Result<Report> {
    // sup-formula route and projection route agree exactly; ψ(c·p) is
    // c ∧ α(m); ψ never exceeds λ_0
    drive(cfg, "sugeno-maxtype", 0.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = if i % 2 == 0 {
            random_step_operator_rational(k, rng)
        } else {
            random_step_operator(k, rng)
        };
        let w = match i % 3 {
            0 => ContinuousWeight::power(1.0),
            1 => ContinuousWeight::power(0.5),
            _ => ContinuousWeight::cap(1.5),
        };
        let psi = sugeno_trace_step(&a, &w)?;
        let mut badness = exact_dev(psi, max_type_value(&a, &w)?);

        let c = rng.normal().abs();
        let mass = rng.normal().abs().max(1e-6);
        let cp = StepOperator::scaled_projection(c, mass)?;
        badness = badness.max(exact_dev(sugeno_trace_step(&cp, &w)?, c.min(w.eval(mass)?)));

        badness = badness.max((psi - a.lambda_t(0.0)?).max(0.0));
        Ok(Some((badness, Some(json!({ "a": a, "weight": w })))))
    })
}

fn prop_min(cfg: &SuiteConfig) -> Result<Report> {
    drive(cfg, "prop-min", 0.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let w = match i % 2 {
            0 => ContinuousWeight::power(1.0),
            _ => ContinuousWeight::power(0.5),
        };
        let eps = 1e-3 + rng.uniform();
        let (_, report) = min_witness(&a, &w, eps)?;
        let badness = if report.passed { 0.0 } else { f64::INFINITY };
        Ok(Some((badness, Some(json!({ "a": a, "eps": eps, "weight": w })))))
    })
}

fn stepops_monotone(cfg: &SuiteConfig) -> Result<Report> {
    // a ≤ a + c pointwise forces φ(a) ≤ φ(a+c) and ψ(a) ≤ ψ(a+c)
    drive(cfg, "stepops-monotone", SPECTRAL_REL, |i, rng| {
        let k = 1 + rng.below(5) as usize;
        let a = random_step_operator(k, rng);
        let c = random_step_operator(1 + rng.below(4) as usize, rng);
        let b = a.add(&c);
        debug_assert!(pointwise_le(&a, &b));
        let w = sample_concave_continuous_weight(i, rng);
        let phi_gap = choquet_spectral(&a, &w)? - choquet_spectral(&b, &w)?;
        let psi_gap = sugeno_trace_step(&a, &w)? - sugeno_trace_step(&b, &w)?;
        let scale = choquet_spectral(&b, &w)?.max(1.0);
        let badness = (phi_gap / scale).max(psi_gap / scale);
        Ok(Some((badness, Some(json!({ "a": a, "c": c, "weight": w })))))
    })
}

/// Increasing piecewise-linear function with f(0) = 0: a kink at `brk`.
fn increasing_pwl(slope1: f64, slope2: f64, brk: f64) -> impl Fn(f64) -> f64 {
    move |x: f64| slope1 * x + slope2 * (x - brk).max(0.0)
}

fn stepops_additive(cfg: &SuiteConfig) -> Result<Report> {
    // φ(f(a) + g(a)) = φ(f(a)) + φ(g(a)) for increasing f, g on the
    // spectrum of a single operator
    drive(cfg, "stepops-additive", SPECTRAL_REL, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let w = sample_continuous_weight(i, rng);
        let f = increasing_pwl(rng.uniform(), rng.uniform(), rng.uniform());
        let g = increasing_pwl(rng.uniform(), rng.uniform(), rng.uniform());
        let fa = a.map_values(&f)?;
        let ga = a.map_values(&g)?;
        let lhs = choquet_spectral(&fa.add(&ga), &w)?;
        let rhs = choquet_spectral(&fa, &w)? + choquet_spectral(&ga, &w)?;
        Ok(Some((rel_dev(lhs, rhs), Some(json!({ "a": a, "weight": w })))))
    })
}

fn stepops_f_additive(cfg: &SuiteConfig) -> Result<Report> {
    // ψ((f ∨ g)(a)) = ψ(f(a)) ∨ ψ(g(a)) for strictly increasing f, g;
    // lattice selections only, so the identity is exact
    drive(cfg, "stepops-f-additive", 0.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let a = random_step_operator(k, rng);
        let w = match i % 2 {
            0 => ContinuousWeight::power(1.0),
            _ => ContinuousWeight::power(0.5),
        };
        let (a1, b1) = (0.1 + rng.uniform(), rng.uniform());
        let (a2, b2) = (0.1 + rng.uniform(), rng.uniform());
        let f = move |x: f64| a1 * x + b1 * x * x;
        let g = move |x: f64| a2 * x + b2 * x * x;
        let lhs = sugeno_trace_step(&a.map_values(|x| f(x).max(g(x)))?, &w)?;
        let rhs = sugeno_trace_step(&a.map_values(f)?, &w)?
            .max(sugeno_trace_step(&a.map_values(g)?, &w)?);
        Ok(Some((exact_dev(lhs, rhs), Some(json!({ "a": a, "weight": w })))))
    })
}

fn stepops_f_homogeneous(cfg: &SuiteConfig) -> Result<Report> {
    // ψ(k ∧ a) = k ∧ ψ(a). Clipping merges plateaus, so the cumulative
    // masses of the two sides are summed in different orders: exact on
    // rational (dyadic) operators, 1e-12 relative on float ones.
    drive(cfg, "stepops-f-homogeneous", 1.0, |i, rng| {
        let k = 1 + rng.below(6) as usize;
        let exact = i % 2 == 0;
        let a = if exact {
            random_step_operator_rational(k, rng)
        } else {
            random_step_operator(k, rng)
        };
        let w = match i % 2 {
            0 => ContinuousWeight::power(1.0),
            _ => ContinuousWeight::cap(1.25),
        };
        let cut = if exact { rng.below(17) as f64 / 8.0 } else { rng.normal().abs() };
        let lhs = sugeno_trace_step(&a.map_values(|x| x.min(cut))?, &w)?;
        let rhs = cut.min(sugeno_trace_step(&a, &w)?);
        let badness = if exact { exact_dev(lhs, rhs) } else { rel_dev(lhs, rhs) / SPECTRAL_REL };
        Ok(Some((badness, Some(json!({ "a": a, "cut": cut, "weight": w, "exact": exact })))))
    })
}

// ----------------------------------------------------------------- sugeno

fn sugeno_invariants(cfg: &SuiteConfig) -> Result<Report> {
    // unitary invariance (eigensolver slack), monotonicity, exact
    // F-homogeneity on spectra, and metric definiteness; normalized
    drive(cfg, "sugeno-invariants", 1.0, |i, rng| {
        let n = cfg.dim_for(i);
        let st = SugenoTrace::new(if i % 2 == 0 {
            DiscreteWeight::power(0.5)
        } else {
            DiscreteWeight::power(1.0)
        })?;
        let a = random_psd(n, rng);
        let u = random_unitary(n, rng);
        let psi_a = sugeno_trace(&a, &st)?;
        let unitary_badness = rel_dev(sugeno_trace(&rotate(&u, &a), &st)?, psi_a) / EIGEN_ABS;

        let b = a.add(&random_psd(n, rng))?;
        let monotone_badness = (psi_a - sugeno_trace(&b, &st)?) / EIGEN_ABS;

        let spec = psd_eigenvalues(&a)?;
        let cut = rng.normal().abs();
        let clipped = SpectrumDesc::new(spec.values().iter().map(|v| v.min(cut)).collect())?;
        let fhom_badness =
            exact_dev(psi_of_spectrum(&clipped, &st.weight), cut.min(psi_of_spectrum(&spec, &st.weight)));

        // definiteness: far-apart inputs have strictly positive distance
        let c = random_hermitian(n, rng);
        let d = sugeno_metric(&a, &a.add(&c)?, &st)?;
        let definite_badness = if c.frobenius() > 1e-6 && d <= 0.0 { f64::INFINITY } else { 0.0 };
        let identity_badness = exact_dev(sugeno_metric(&a, &a, &st)?, 0.0);

        let badness = unitary_badness
            .max(monotone_badness)
            .max(fhom_badness)
            .max(definite_badness)
            .max(identity_badness);
        Ok(Some((badness, Some(json!({ "a": a, "u": u })))))
    })
}

fn sugeno_metric_suite(cfg: &SuiteConfig) -> Result<Report> {
    // d(a, b) = ψ_√(|a - b|): identity and symmetry exact, triangle to
    // eigensolver slack
    drive(cfg, "sugeno-metric", EIGEN_ABS, |i, rng| {
        let n = cfg.dim_for(i);
        let st = SugenoTrace::new(DiscreteWeight::power(0.5))?;
        let a = random_hermitian(n, rng);
        let b = random_hermitian(n, rng);
        let c = random_hermitian(n, rng);
        let dab = sugeno_metric(&a, &b, &st)?;
        let dba = sugeno_metric(&b, &a, &st)?;
        let dac = sugeno_metric(&a, &c, &st)?;
        let dbc = sugeno_metric(&b, &c, &st)?;
        let metric = exact_dev(sugeno_metric(&a, &a, &st)?, 0.0)
            .max(exact_dev(dab, dba))
            .max(dac - dab - dbc);
        Ok(Some((metric, Some(json!({ "a": a, "b": b, "c": c })))))
    })
}

// ------------------------------------------------------------------ fuzzy

/// Simple function on a coarse value grid, so ties are frequent.
fn grid_function(n: usize, rng: &mut Rng) -> SimpleFunction {
    SimpleFunction::new((0..n).map(|_| rng.below(5) as f64 / 2.0).collect()).unwrap()
}

fn permuted(mu: &MonotoneMeasure, f: &SimpleFunction, perm: &[usize]) -> (MonotoneMeasure, SimpleFunction) {
    let n = perm.len();
    let g = SimpleFunction::new(perm.iter().map(|&p| f.f[p]).collect()).unwrap();
    let mut map = std::collections::HashMap::new();
    for mask in 1u32..(1 << n) {
        let image = (0..n)
            .filter(|&i| mask & (1 << i) != 0)
            .fold(0u32, |m, i| m | (1 << perm[i]));
        map.insert(mask, mu.get(image).unwrap());
    }
    (MonotoneMeasure::new(n, map).unwrap(), g)
}

fn random_permutation(n: usize, rng: &mut Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    perm
}

fn fuzzy_choquet(cfg: &SuiteConfig) -> Result<Report> {
    // comonotone additivity, homogeneity, monotonicity, layer-cake route,
    // and relabeling invariance; normalized to the 1e-12 policy
    drive(cfg, "fuzzy-choquet", 1.0, |_, rng| {
        let n = 2 + rng.below(9) as usize;
        let mu = random_monotone_measure(n, rng);
        let (f, g) = random_comonotone_pair(n, rng);
        debug_assert!(is_comonotone(&f, &g).unwrap());

        let sum = SimpleFunction::new(f.f.iter().zip(&g.f).map(|(a, b)| a + b).collect())?;
        let additivity = rel_dev(
            choquet_integral(&sum, &mu)?,
            choquet_integral(&f, &mu)? + choquet_integral(&g, &mu)?,
        ) / SPECTRAL_REL;

        let k = 4.0 * rng.uniform();
        let kf = SimpleFunction::new(f.f.iter().map(|v| k * v).collect())?;
        let homogeneity =
            rel_dev(choquet_integral(&kf, &mu)?, k * choquet_integral(&f, &mu)?) / SPECTRAL_REL;

        let monotonicity =
            (choquet_integral(&f, &mu)? - choquet_integral(&sum, &mu)?).max(0.0) / SPECTRAL_REL;

        let tied = grid_function(n, rng);
        let layercake = rel_dev(
            choquet_integral(&tied, &mu)?,
            choquet_integral_layercake(&tied, &mu)?,
        ) / SPECTRAL_REL;

        let perm = random_permutation(n, rng);
        let (nu, relabeled) = permuted(&mu, &tied, &perm);
        let relabeling = rel_dev(
            choquet_integral(&relabeled, &nu)?,
            choquet_integral(&tied, &mu)?,
        ) / SPECTRAL_REL;

        let badness = additivity.max(homogeneity).max(monotonicity).max(layercake).max(relabeling);
        Ok(Some((badness, Some(json!({ "mu": mu, "f": f, "g": g })))))
    })
}

fn fuzzy_sugeno(cfg: &SuiteConfig) -> Result<Report> {
    // lattice identities are selections of stored floats: exact
    drive(cfg, "fuzzy-sugeno", 0.0, |_, rng| {
        let n = 2 + rng.below(9) as usize;
        let mu = random_monotone_measure(n, rng);
        let (f, g) = random_comonotone_pair(n, rng);

        let join = SimpleFunction::new(f.f.iter().zip(&g.f).map(|(a, b)| a.max(*b)).collect())?;
        let f_additivity = exact_dev(
            sugeno_integral(&join, &mu)?,
            sugeno_integral(&f, &mu)?.max(sugeno_integral(&g, &mu)?),
        );

        let k = 2.0 * rng.uniform();
        let kf = SimpleFunction::new(f.f.iter().map(|v| v.min(k)).collect())?;
        let f_homogeneity =
            exact_dev(sugeno_integral(&kf, &mu)?, k.min(sugeno_integral(&f, &mu)?));

        let monotonicity = (sugeno_integral(&f, &mu)? - sugeno_integral(&join, &mu)?).max(0.0);

        let tied = grid_function(n, rng);
        let supscan = exact_dev(sugeno_integral(&tied, &mu)?, sugeno_integral_supscan(&tied, &mu)?);

        let badness = f_additivity.max(f_homogeneity).max(monotonicity).max(supscan);
        Ok(Some((badness, Some(json!({ "mu": mu, "f": f, "g": g })))))
    })
}
