use proptest::prelude::*;
use varlrc::{FieldElement, FiniteField};

const SMALL: [(u64, u32); 9] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (11, 1), (2, 4), (5, 2)];

fn all(f: &FiniteField) -> Vec<FieldElement> {
    f.elements().collect()
}

#[test]
fn axioms_hold_exhaustively_on_small_fields() {
    for (p, k) in SMALL {
        let f = FiniteField::new(p, k).unwrap();
        let els = all(&f);
        assert_eq!(els.len() as u64, p.pow(k));
        for &a in &els {
            assert_eq!(f.add(a, FieldElement::ZERO), a);
            assert_eq!(f.mul(a, FieldElement::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                assert_eq!(f.inv(f.inv(a).unwrap()).unwrap(), a);
                assert_eq!(f.pow(a, f.order() as u64 - 1), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn characteristic_sums_vanish() {
    for (p, k) in SMALL {
        let f = FiniteField::new(p, k).unwrap();
        for a in f.elements() {
            let s = (0..p).fold(FieldElement::ZERO, |acc, _| f.add(acc, a));
            assert!(s.is_zero());
        }
    }
}

#[test]
fn modulus_is_irreducible_by_root_and_factor_search() {
    // Degree ≤ 3 polynomials are irreducible iff they have no root in GF(p).
    for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (7, 2), (3, 3)] {
        let f = FiniteField::new(p, k).unwrap();
        let m = f.modulus();
        assert_eq!(m.len(), k as usize + 1);
        assert_eq!(*m.last().unwrap(), 1);
        for x in 0..p {
            let v = m.iter().rev().fold(0u64, |acc, &c| (acc * x + c as u64) % p);
            assert_ne!(v, 0, "x = {x} is a root of the GF({p}^{k}) modulus");
        }
    }
    assert_eq!(FiniteField::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
}

#[test]
fn multiplicative_group_is_cyclic() {
    for (p, k) in SMALL {
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order() as u64;
        let has_generator = f.elements().filter(|a| !a.is_zero()).any(|g| {
            (1..q - 1).all(|e| f.pow(g, e) != FieldElement::ONE)
        });
        assert!(has_generator);
    }
}

fn large_field() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![Just((2, 8)), Just((3, 5)), Just((7, 3)), Just((251, 1)), Just((2, 16)), Just((13, 2))]
}

proptest! {
    #[test]
    fn field_laws_on_sampled_elements((p, k) in large_field(), ra in any::<u32>(), rb in any::<u32>(), rc in any::<u32>()) {
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order();
        let [a, b, c] = [ra, rb, rc].map(|r| f.element((r % q) as u64).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
            prop_assert_eq!(f.pow(b, q as u64 - 1), FieldElement::ONE);
        }
        let text = f.format_element(a, true);
        prop_assert_eq!(f.parse_element(&text).unwrap(), a);
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)).unwrap(), a);
    }
}
