//! Every registered suite must pass with its default tolerances, and
//! sharded execution must reproduce the serial verdict bit-for-bit.

use nltrace_core::harness::{run_suite, suite_ids, SuiteConfig};
use nltrace_core::Error;

fn smoke_config() -> SuiteConfig {
    SuiteConfig { seed: 20240817, trials: 200, dims: vec![2, 3, 4, 5, 6, 8], workers: None }
}

#[test]
fn all_suites_pass_smoke_trials() {
    let cfg = smoke_config();
    for id in suite_ids() {
        let report = run_suite(id, &cfg).unwrap_or_else(|e| panic!("suite {id} errored: {e}"));
        assert!(
            report.passed,
            "suite {id} failed: worst = {}, witness = {:?}",
            report.worst, report.witness
        );
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(matches!(
        run_suite("no-such-suite", &smoke_config()),
        Err(Error::UnknownSuite(_))
    ));
}

#[test]
fn sharded_run_matches_serial() {
    for id in ["weyl", "prop-stieltjes", "sugeno-maxtype", "fuzzy-choquet"] {
        let serial = run_suite(id, &SuiteConfig { workers: Some(1), ..smoke_config() }).unwrap();
        let sharded = run_suite(id, &SuiteConfig { workers: Some(4), ..smoke_config() }).unwrap();
        assert_eq!(serial.passed, sharded.passed, "{id}");
        assert_eq!(serial.worst.to_bits(), sharded.worst.to_bits(), "{id}");
        assert_eq!(
            serde_json::to_string(&serial.witness).unwrap(),
            serde_json::to_string(&sharded.witness).unwrap(),
            "{id}"
        );
    }
}

#[test]
fn non_concave_weights_are_falsified() {
    // necessity direction of the norm theorem: every non-concave weight
    // with α(1) > 0 admits a triangle violation at p ≥ 1
    use nltrace_core::harness::falsify_triangle;
    use nltrace_core::weights::DiscreteWeight;

    let non_concave = [
        DiscreteWeight::power(2.0),
        DiscreteWeight::power(1.5),
        DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0),
        DiscreteWeight::explicit_arithmetic(&[0.0, 0.25, 1.5], 1.0),
        DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0, 1.0, 5.0], 5.0),
    ];
    for w in non_concave {
        assert!(!w.is_concave(64), "{w:?} should be non-concave");
        for p in [1.0, 2.0] {
            let report = falsify_triangle(&w, p, &[2, 3, 4, 5, 6, 7, 8], 200, 11, None).unwrap();
            assert!(
                report.worst > 1.0 + 1e-6,
                "no violation found for {w:?} at p={p}: worst {}",
                report.worst
            );
        }
    }
}

#[test]
fn failing_search_embeds_replayable_witness() {
    use nltrace_core::harness::{falsify_triangle, replay_triangle};
    use nltrace_core::weights::DiscreteWeight;

    let w = DiscreteWeight::explicit_constant(&[0.0, 1.0, 1.0], 3.0);
    let report = falsify_triangle(&w, 1.0, &[4, 6], 100, 99, None).unwrap();
    assert!(!report.passed);
    let witness = report.witness.expect("failing report carries a witness");
    let replayed = replay_triangle(&witness, &w, 1.0).unwrap();
    assert_eq!(replayed.to_bits(), report.worst.to_bits());
}
