use num_bigint::BigInt;
use proptest::prelude::*;
use qinv_core::ring::{cyclotomic_polynomial, CyclotomicNumber, LaurentPoly, Level};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-12i64..12, -5i64..5), 0..7).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        // no stored zeros
        prop_assert!((&a * &b).terms().all(|(_, c)| *c != BigInt::from(0)));
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent(), k in 2i64..9) {
        let ring = Level::new(k).unwrap().ring();
        prop_assert_eq!((&a * &b).specialize(&ring), &a.specialize(&ring) * &b.specialize(&ring));
        prop_assert_eq!((&a + &b).specialize(&ring), &a.specialize(&ring) + &b.specialize(&ring));
        prop_assert_eq!(a.conj().specialize(&ring), a.specialize(&ring).conj());
    }

    #[test]
    fn exact_and_float_agree(a in laurent(), k in 2i64..9) {
        let level = Level::new(k).unwrap();
        let exact = a.specialize(&level.ring()).complex_approx();
        let float = a.complex_approx(level);
        prop_assert!((exact - float).norm() <= 1e-9 * float.norm().max(1.0));
    }
}

#[test]
fn cyclotomic_degrees_are_totients() {
    // φ(4k) for k = 2..8
    let totients = [4, 4, 8, 8, 8, 12, 16];
    for (k, phi) in (2..=8).zip(totients) {
        let ring = Level::new(k).unwrap().ring();
        assert_eq!(ring.degree(), phi);
        assert_eq!(cyclotomic_polynomial(4 * k as u32).len(), phi + 1);
    }
}

#[test]
fn zeta_is_a_primitive_root() {
    for k in 2..=8i64 {
        let ring = Level::new(k).unwrap().ring();
        let minus_one = CyclotomicNumber::from_integer(&ring, -1);
        assert_eq!(CyclotomicNumber::root_power(&ring, 2 * k), minus_one);
        for e in 1..4 * k {
            assert_ne!(CyclotomicNumber::root_power(&ring, e), CyclotomicNumber::one(&ring));
        }
    }
}

#[test]
fn delta_at_level_three_is_minus_one() {
    // -A^2 - A^-2 = -2 cos(π/3)
    let ring = Level::new(3).unwrap().ring();
    assert_eq!(
        LaurentPoly::delta().specialize(&ring),
        CyclotomicNumber::from_integer(&ring, -1)
    );
}
