//! Property tests for weight functions: prefix sums, monotonicity,
//! Stieltjes additivity, and the doubling scan against a dense-grid
//! oracle.

use proptest::prelude::*;

use nltrace_core::weights::{ContinuousWeight, DiscreteWeight};

fn explicit_weight_strategy() -> impl Strategy<Value = DiscreteWeight> {
    (
        proptest::collection::vec(0u32..64, 1..8),
        0u32..64,
        proptest::bool::ANY,
    )
        .prop_map(|(raw, tail, constant)| {
            let mut values = vec![0.0];
            for inc in &raw {
                values.push(values.last().unwrap() + *inc as f64 / 16.0);
            }
            if constant {
                DiscreteWeight::explicit_constant(&values, *values.last().unwrap() + tail as f64 / 16.0)
            } else {
                DiscreteWeight::explicit_arithmetic(&values, tail as f64 / 16.0)
            }
        })
}

/// Dense-grid oracle for the continuous doubling sup: a coarse scan over
/// (0, horizon], then a two-level refinement around every local maximum
/// of the sampled ratio. The ratio is continuous and piecewise monotone
/// with few pieces, so each candidate peak is bracketed by some coarse
/// local maximum and the refinement closes in on it.
fn doubling_grid_oracle(w: &ContinuousWeight, horizon: f64, points: usize) -> f64 {
    let ratio_at = |s: f64| -> Option<f64> {
        if s <= 0.0 {
            return None;
        }
        let denom = w.eval(s).unwrap();
        if denom > 0.0 {
            Some(w.eval(2.0 * s).unwrap() / denom)
        } else {
            None
        }
    };
    let scan = |lo: f64, hi: f64, n: usize| -> Vec<(f64, f64)> {
        (1..=n)
            .filter_map(|k| {
                let s = lo + (hi - lo) * k as f64 / n as f64;
                ratio_at(s).map(|r| (s, r))
            })
            .collect()
    };
    // strict-ascent local maxima, best 32 by sampled value; strictness
    // keeps flat plateaus (already sampled exactly) from flooding the list
    let local_maxima = |samples: &[(f64, f64)]| -> Vec<(f64, f64)> {
        let mut peaks: Vec<(f64, f64)> = (0..samples.len())
            .filter(|&k| {
                let up = k == 0 || samples[k].1 > samples[k - 1].1;
                let down = k + 1 == samples.len() || samples[k].1 >= samples[k + 1].1;
                up && down
            })
            .map(|k| samples[k])
            .collect();
        peaks.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        peaks.truncate(32);
        peaks
    };

    let coarse = scan(0.0, horizon, points);
    let mut sup = coarse.iter().map(|&(_, r)| r).fold(0.0f64, f64::max);
    let h = horizon / points as f64;
    for (peak, _) in local_maxima(&coarse) {
        let fine = scan((peak - 2.0 * h).max(0.0), peak + 2.0 * h, 4000);
        sup = fine.iter().map(|&(_, r)| r).fold(sup, f64::max);
        if let Some(&(arg, _)) = fine.iter().max_by(|a, b| a.1.partial_cmp(&b.1).unwrap()) {
            let h2 = 4.0 * h / 4000.0;
            let finest = scan((arg - 2.0 * h2).max(0.0), arg + 2.0 * h2, 2000);
            sup = finest.iter().map(|&(_, r)| r).fold(sup, f64::max);
        }
    }
    sup
}

proptest! {
    #[test]
    fn prefix_sums_reproduce_alpha(w in explicit_weight_strategy(), horizon in 1u64..256) {
        w.validate().unwrap();
        let mut prefix = 0.0;
        for n in 1..=horizon {
            prefix += w.increment(n).unwrap();
            let alpha = w.eval(n);
            prop_assert!((prefix - alpha).abs() <= 1e-12 * alpha.max(1.0));
        }
    }

    #[test]
    fn eval_is_monotone(w in explicit_weight_strategy(), theta in 0.1f64..3.0) {
        for n in 1..256u64 {
            prop_assert!(w.eval(n) >= w.eval(n - 1));
        }
        let p = DiscreteWeight::power(theta);
        for n in 1..256u64 {
            prop_assert!(p.eval(n) >= p.eval(n - 1));
        }
    }

    #[test]
    fn concave_weights_double_at_most_two(w in explicit_weight_strategy()) {
        // force concavity by sorting the increments
        let mut increments: Vec<f64> = (1..=16).map(|n| w.increment(n).unwrap()).collect();
        increments.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut values = vec![0.0];
        for c in &increments {
            values.push(values.last().unwrap() + c);
        }
        let concave = DiscreteWeight::explicit_constant(&values, *values.last().unwrap());
        prop_assert!(concave.is_concave(64));
        if concave.alpha1_positive() {
            prop_assert!(concave.doubling_sup(64).unwrap() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn stieltjes_mass_is_additive(
        theta in 0.25f64..2.0,
        t in 0.25f64..3.0,
        cuts in proptest::collection::vec(0.0f64..5.0, 3),
    ) {
        let mut cuts = cuts;
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for w in [ContinuousWeight::power(theta), ContinuousWeight::cap(t)] {
            let joined = w.stieltjes_mass(cuts[0], cuts[2]).unwrap();
            let split = w.stieltjes_mass(cuts[0], cuts[1]).unwrap()
                + w.stieltjes_mass(cuts[1], cuts[2]).unwrap();
            prop_assert!((joined - split).abs() <= 1e-12 * joined.abs().max(1.0));
        }
    }

    #[test]
    fn power_doubling_closed_form(theta in 0.1f64..3.0) {
        let d = ContinuousWeight::power(theta).doubling_sup(1e6).unwrap();
        prop_assert!((d.sup - 2f64.powf(theta)).abs() < 1e-12);
        prop_assert!(d.exact);
    }

    #[test]
    fn cap_doubling_matches_grid_oracle(t in 0.2f64..4.0) {
        let w = ContinuousWeight::cap(t);
        let d = w.doubling_sup(100.0).unwrap();
        let grid = doubling_grid_oracle(&w, 100.0, 20_000);
        prop_assert!(d.sup == 2.0);
        prop_assert!(grid <= d.sup + 1e-12);
        prop_assert!(d.sup <= grid + 1e-3);
    }

    #[test]
    fn pwl_doubling_dominates_grid_oracle(
        x1 in 0.2f64..1.5,
        dx in 0.2f64..1.5,
        y1 in 0.05f64..1.0,
        dy in 0.0f64..1.0,
        slope in 0.0f64..1.5,
    ) {
        let w = ContinuousWeight::pwl(&[0.0, x1, x1 + dx], &[0.0, y1, y1 + dy], slope);
        w.validate().unwrap();
        let horizon = 50.0;
        let d = w.doubling_sup(horizon).unwrap();
        let grid = doubling_grid_oracle(&w, horizon, 20_000);
        // dominates every sampled ratio and is nearly attained under refinement
        prop_assert!(grid <= d.sup + 1e-9, "grid {grid} vs sup {}", d.sup);
        prop_assert!(d.sup <= grid + 1e-6 * d.sup.max(1.0), "sup {} vs grid {grid}", d.sup);
    }
}

#[test]
fn discrete_doubling_examples() {
    // the worked weight has sup α(2n)/α(n) = 3 at n = 2
    let w = DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0);
    assert_eq!(w.doubling_sup(100).unwrap(), 3.0);
    assert_eq!(DiscreteWeight::power(2.0).doubling_sup(100).unwrap(), 4.0);
}
