mod common;

use common::*;
use varlrc::CodeSpec;
use varlrc::simulation::{run_simulation, run_simulation_with_threads, trial_rng, ErasureModel, SimConfig};

fn cfg(erasure: ErasureModel, trials: u64, seed: u64) -> SimConfig {
    SimConfig::new(table2(15), erasure, trials, seed).unwrap()
}

#[test]
fn reports_are_deterministic() {
    let c = cfg(ErasureModel::Iid { rate: 0.25 }, 120, 7);
    let a = run_simulation_with_threads(&c, 1).unwrap();
    assert_eq!(a, run_simulation_with_threads(&c, 3).unwrap());
    assert_eq!(a, run_simulation(&c).unwrap());
    let other = run_simulation(&cfg(ErasureModel::Iid { rate: 0.25 }, 120, 8)).unwrap();
    assert_ne!(a.total_erasures, other.total_erasures);
}

#[test]
fn trial_streams_are_independent_of_order() {
    use rand::RngCore;
    let x = trial_rng(5, 3).next_u64();
    let _ = trial_rng(5, 2).next_u64();
    assert_eq!(trial_rng(5, 3).next_u64(), x);
    assert_ne!(trial_rng(5, 4).next_u64(), x);
}

#[test]
fn trivial_erasure_patterns_always_repair() {
    for model in [
        ErasureModel::Iid { rate: 0.0 },
        ErasureModel::Fixed { count: 1 },
        ErasureModel::LineBurst { direction: 0, count: Some(5) },
        ErasureModel::LineBurst { direction: 0, count: None },
    ] {
        let r = run_simulation(&cfg(model.clone(), 100, 11)).unwrap();
        assert_eq!(r.full_repair_rate, 1.0, "{model:?}");
        assert_eq!(r.false_repairs, 0);
    }
}

#[test]
fn repair_rate_falls_as_erasures_rise() {
    let spec = CodeSpec::full_space(field(7), vec![3, 4], 2).unwrap();
    let rates: Vec<f64> = [0.4, 0.55, 0.7]
        .iter()
        .map(|&rate| {
            let c = SimConfig::new(spec.clone(), ErasureModel::Iid { rate }, 1000, 21).unwrap();
            let r = run_simulation(&c).unwrap();
            assert_eq!(r.false_repairs, 0);
            r.full_repair_rate
        })
        .collect();
    assert!(rates[0] > rates[1] + 0.05 && rates[1] > rates[2] + 0.05, "{rates:?}");
}

#[test]
fn invalid_configs_are_rejected() {
    let spec = table2(5);
    assert!(SimConfig::new(spec.clone(), ErasureModel::Iid { rate: 1.5 }, 10, 0).is_err());
    assert!(SimConfig::new(spec.clone(), ErasureModel::Iid { rate: 0.1 }, 0, 0).is_err());
    assert!(SimConfig::new(spec.clone(), ErasureModel::Fixed { count: 626 }, 10, 0).is_err());
    assert!(SimConfig::new(spec, ErasureModel::LineBurst { direction: 2, count: None }, 10, 0).is_err());
    let text = r#"{"spec": {"field": "7", "subsets": ["full", "full"], "deltas": [3, 4], "d": 2},
                   "erasure": {"model": "fixed", "count": 3}, "trials": 10, "seed": 4}"#;
    let c = SimConfig::from_json(text).unwrap();
    assert_eq!(c.erasure, ErasureModel::Fixed { count: 3 });
    assert!(SimConfig::from_json(&text.replace("fixed", "burst")).is_err());
}
