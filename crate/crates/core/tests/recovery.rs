mod common;

use common::*;
use proptest::prelude::*;
use varlrc::{ErasedWord, Error, LrcCode, RecoveryOutcome};

#[test]
fn whole_line_is_repaired_through_the_other_direction() {
    let spec = table2(15);
    let code = LrcCode::new(spec.clone());
    let mut rng = rng(1);
    let c = code.encode(&random_message(spec.field(), code.dimension(), &mut rng)).unwrap();
    let line = code.recovery_set(123, 0).unwrap().positions;
    assert_eq!(line.len(), 25);
    let mut w = ErasedWord::from(&c);
    for &p in &line {
        w.erase(p);
    }
    for &p in &line {
        assert!(code.recover_entry(&w, p, 0).is_err());
        assert_eq!(code.recover_entry(&w, p, 1).unwrap(), c.entries()[p]);
    }
    let (outcome, report) = code.recover_all(&w).unwrap();
    let RecoveryOutcome::Complete(fixed) = outcome else {
        panic!("line not repaired");
    };
    assert_eq!(fixed, c);
    assert_eq!(report.repaired, 25);
    // once r_0 = 20 entries are back, direction 0 takes over within the pass
    assert_eq!(report.repairs_per_direction, vec![5, 20]);
    assert_eq!(report.passes, 1);
}

#[test]
fn recovery_needs_locality_many_symbols() {
    let spec = table1(10);
    let code = LrcCode::new(spec.clone());
    let mut rng = rng(2);
    let c = code.encode(&random_message(spec.field(), code.dimension(), &mut rng)).unwrap();
    let j = 500;
    for i in 0..3 {
        let set = code.recovery_set(j, i).unwrap();
        assert_eq!(set.locality, spec.locality(i));
        let others: Vec<usize> = set.positions.iter().copied().filter(|&p| p != j).collect();
        let mut w = ErasedWord::from(&c);
        w.erase(j);
        let tolerance = spec.deltas()[i] as usize - 2;
        for &p in &others[..tolerance] {
            w.erase(p);
        }
        assert_eq!(code.recover_entry(&w, j, i).unwrap(), c.entries()[j]);
        w.erase(others[tolerance]);
        assert!(matches!(code.recover_entry(&w, j, i), Err(Error::InsufficientData { .. })));
    }
}

#[test]
fn bad_arguments_are_rejected() {
    let code = LrcCode::new(table2(5));
    let w = ErasedWord::from(&code.encode(&[varlrc::FieldElement::ZERO; 21]).unwrap());
    assert!(matches!(code.recover_entry(&w, 625, 0), Err(Error::PositionOutOfRange { .. })));
    assert!(matches!(code.recover_entry(&w, 0, 2), Err(Error::DirectionOutOfRange { .. })));
    assert!(code.encode(&[]).is_err());
    assert!(code.recover_all(&ErasedWord::new(vec![None; 3])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn peeling_never_touches_known_entries(idx in 0usize..605, seed in any::<u64>(), frac in 0.0f64..0.8) {
        let specs = sweep();
        let spec = &specs[idx % specs.len()];
        let code = LrcCode::new(spec.clone());
        let mut rng = rng(seed);
        let c = code.encode(&random_message(spec.field(), code.dimension(), &mut rng)).unwrap();
        let mut w = ErasedWord::from(&c);
        for j in 0..c.len() {
            if rand::Rng::gen_bool(&mut rng, frac) {
                w.erase(j);
            }
        }
        let (outcome, report) = code.recover_all(&w).unwrap();
        let out = outcome.to_erased_word();
        prop_assert_eq!(report.repaired + out.erasure_count(), w.erasure_count());
        for j in 0..c.len() {
            if let Some(v) = out.get(j) {
                prop_assert_eq!(v, c.entries()[j]);
            }
            if !w.is_erased(j) {
                prop_assert_eq!(out.get(j), w.get(j));
            }
        }
    }

    #[test]
    fn restriction_to_a_line_has_degree_below_locality(idx in 0usize..605, seed in any::<u64>()) {
        // Any r_i entries of a line determine the rest, so r_i of them plus
        // recovery reproduce the whole line.
        let specs = sweep();
        let spec = &specs[idx % specs.len()];
        let code = LrcCode::new(spec.clone());
        let mut rng = rng(seed);
        let c = code.encode(&random_message(spec.field(), code.dimension(), &mut rng)).unwrap();
        let j = (seed % c.len() as u64) as usize;
        for i in 0..spec.availability() {
            let line = code.recovery_set(j, i).unwrap().positions;
            let keep = spec.locality(i) as usize;
            let mut w = ErasedWord::from(&c);
            for &p in line.iter().rev().take(line.len() - keep) {
                w.erase(p);
            }
            for &p in line.iter().rev().take(line.len() - keep) {
                prop_assert_eq!(code.recover_entry(&w, p, i).unwrap(), c.entries()[p]);
            }
        }
    }
}
