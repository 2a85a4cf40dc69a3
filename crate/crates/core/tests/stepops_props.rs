//! Property tests for the step-operator model: rearrangement shape, the
//! Stieltjes duality, the Sugeno sup-formula against an independent
//! scan, and the partition upper sums.

use proptest::prelude::*;

use nltrace_core::stepops::{
    choquet_spectral, choquet_stieltjes, max_type_value, min_witness, partition_approx,
    pointwise_le, sugeno_trace_step, Segment, StepOperator,
};
use nltrace_core::weights::{two_step_example_weight, ContinuousWeight};

fn rational_segments() -> impl Strategy<Value = Vec<Segment>> {
    proptest::collection::vec((0u32..=16, 1u32..=16), 1..7).prop_map(|raw| {
        raw.into_iter()
            .map(|(v, m)| Segment { value: v as f64 / 8.0, mass: m as f64 / 8.0 })
            .collect()
    })
}

fn float_segments() -> impl Strategy<Value = Vec<Segment>> {
    proptest::collection::vec((0.0f64..4.0, 0.01f64..3.0), 1..7).prop_map(|raw| {
        raw.into_iter().map(|(value, mass)| Segment { value, mass }).collect()
    })
}

/// Mass strictly above level s, computed directly on the raw segments —
/// independent of the rearrangement code path.
fn mass_above(op: &StepOperator, s: f64) -> f64 {
    op.segments.iter().filter(|seg| seg.value > s).map(|seg| seg.mass).sum()
}

/// Sup-formula oracle: scans sup_s ( s ∧ α(m(s)) ) over a dense grid
/// joined with the exact candidate levels (plateau values and the α
/// images of their cumulative masses), where the sup is attained.
fn sugeno_scan_oracle(op: &StepOperator, w: &ContinuousWeight) -> f64 {
    let top = op.max_value();
    let mut candidates: Vec<f64> = (0..=2000).map(|k| top * k as f64 / 2000.0).collect();
    for seg in &op.segments {
        candidates.push(seg.value);
        candidates.push(w.eval(mass_above(op, seg.value)).unwrap());
    }
    let mut best = 0.0f64;
    for s in candidates {
        if s.is_finite() && s >= 0.0 {
            best = best.max(s.min(w.eval(mass_above(op, s)).unwrap()));
        }
    }
    best
}

proptest! {
    #[test]
    fn rearrangement_is_strictly_decreasing(segments in float_segments()) {
        let op = StepOperator::new(segments, None).unwrap();
        let sp = op.rearrange();
        for pair in sp.plateaus().windows(2) {
            prop_assert!(pair[0].value > pair[1].value);
        }
        for p in sp.plateaus() {
            prop_assert!(p.width > 0.0 && p.value > 0.0);
        }
        // right continuity: the value at each cumulative boundary is the
        // next plateau's value (or 0 past the support)
        let mut cum = 0.0;
        for (i, p) in sp.plateaus().iter().enumerate() {
            cum += p.width;
            let next = sp.plateaus().get(i + 1).map_or(0.0, |q| q.value);
            prop_assert_eq!(sp.lambda(cum), next);
        }
    }

    #[test]
    fn lambda_is_nonincreasing(segments in float_segments()) {
        let op = StepOperator::new(segments, None).unwrap();
        let total = op.total_mass();
        let mut prev = f64::INFINITY;
        for k in 0..=100 {
            let t = total * 1.05 * k as f64 / 100.0;
            let v = op.lambda_t(t).unwrap();
            prop_assert!(v <= prev);
            prev = v;
        }
        prop_assert_eq!(op.lambda_t(0.0).unwrap(), op.max_value());
    }

    #[test]
    fn stieltjes_duality_exact_on_rationals(segments in rational_segments()) {
        let op = StepOperator::new(segments, None).unwrap();
        for w in [
            ContinuousWeight::power(1.0),
            ContinuousWeight::cap(1.5),
            two_step_example_weight(),
            ContinuousWeight::pwl(&[0.0, 1.0, 2.0], &[0.0, 1.0, 1.5], 0.25),
        ] {
            let spectral = choquet_spectral(&op, &w).unwrap();
            let stieltjes = choquet_stieltjes(&op, &w).unwrap();
            prop_assert_eq!(spectral, stieltjes);
        }
    }

    #[test]
    fn stieltjes_duality_on_floats(segments in float_segments(), theta in 0.25f64..2.0) {
        let op = StepOperator::new(segments, None).unwrap();
        let w = ContinuousWeight::power(theta);
        let spectral = choquet_spectral(&op, &w).unwrap();
        let stieltjes = choquet_stieltjes(&op, &w).unwrap();
        prop_assert!((spectral - stieltjes).abs() <= 1e-12 * spectral.max(1.0));
    }

    #[test]
    fn addition_is_commutative(a in float_segments(), b in float_segments()) {
        let a = StepOperator::new(a, None).unwrap();
        let b = StepOperator::new(b, None).unwrap();
        prop_assert_eq!(a.add(&b).rearrange(), b.add(&a).rearrange());
        prop_assert!(pointwise_le(&a, &a.add(&b)));
    }

    #[test]
    fn sugeno_matches_scan_oracle(segments in float_segments(), theta in 0.25f64..2.0) {
        let op = StepOperator::new(segments, None).unwrap();
        let w = ContinuousWeight::power(theta);
        let psi = sugeno_trace_step(&op, &w).unwrap();
        prop_assert_eq!(psi, max_type_value(&op, &w).unwrap());
        // ψ dominates every sampled value of s ∧ α(m(s)); the scanned
        // function has slope ≤ 1 in s, so a grid of spacing h can trail
        // the supremum (a one-sided limit at plateau edges) by at most h
        let oracle = sugeno_scan_oracle(&op, &w);
        let spacing = op.max_value() / 2000.0;
        prop_assert!(oracle <= psi + 1e-12 * psi.max(1.0), "oracle {oracle} above psi {psi}");
        prop_assert!(psi - oracle <= spacing + 1e-12, "psi {psi} oracle {oracle}");
        prop_assert!(psi <= op.lambda_t(0.0).unwrap() + 1e-15);
    }

    #[test]
    fn min_witness_holds(segments in float_segments(), eps in 1e-3f64..1.0) {
        let op = StepOperator::new(segments, None).unwrap();
        let w = ContinuousWeight::power(0.5);
        let (q_mass, report) = min_witness(&op, &w, eps).unwrap();
        prop_assert!(report.passed);
        // q_mass re-sums the masses in rearranged order; allow round-off
        let total = op.total_mass();
        prop_assert!(q_mass <= total * (1.0 + 1e-12));
    }

    #[test]
    fn partition_upper_sums(raw in proptest::collection::vec((0.0f64..4.0, 1u32..128), 1..6)) {
        // dyadic masses m/1024 keep the breakpoints on the M = 1024 grid
        let segments: Vec<Segment> = raw
            .into_iter()
            .map(|(value, m)| Segment { value, mass: m as f64 / 1024.0 })
            .collect();
        let op = StepOperator::new(segments, Some(1.0));
        prop_assume!(op.is_ok());
        let op = op.unwrap();
        let w = ContinuousWeight::power(0.5).on_unit();
        let phi = choquet_stieltjes(&op, &w).unwrap();
        let mut prev = f64::INFINITY;
        for exp in 1..=10u32 {
            let approx = partition_approx(&op, &w, 1u32 << exp).unwrap();
            prop_assert!(approx >= phi - 1e-12);
            prop_assert!(approx <= prev + 1e-12);
            prev = approx;
        }
        prop_assert!(prev - phi <= 1e-6, "refined sum {prev} vs phi {phi}");
    }
}
