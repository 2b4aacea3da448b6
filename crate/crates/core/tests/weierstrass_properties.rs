mod common;

use common::random_v_delta;
use eds_core::algebra::{FunctionField, Poly, PrimeField, RatFunc, Rationals};
use eds_core::weierstrass::local::section_torsion_order;
use eds_core::weierstrass::Weierstrass;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn c4_c6_delta_over_q_t(a in prop::array::uniform5(prop::collection::vec(-9i64..9, 0..4))) {
        let k = FunctionField::new(Rationals);
        let c = Weierstrass::unchecked(&k, a.map(|v| RatFunc::from_poly(Poly::from_ints(&Rationals, &v))));
        let inv = c.invariants();
        let lhs = &inv.c4.pow(3) - &inv.c6.pow(2);
        prop_assert_eq!(lhs, inv.delta.scale(&BigRational::from_integer(BigInt::from(1728))));
    }

    #[test]
    fn c4_c6_delta_over_f101_t(a in prop::array::uniform5(prop::collection::vec(0u64..101, 0..5))) {
        let f = PrimeField::new(101).unwrap();
        let k = FunctionField::new(f);
        let c = Weierstrass::unchecked(&k, a.map(|v| RatFunc::from_poly(Poly::new(f, v))));
        let inv = c.invariants();
        prop_assert_eq!(&inv.c4.pow(3) - &inv.c6.pow(2), inv.delta.scale(&1728u64));
    }
}

#[test]
fn random_sections_are_non_torsion() {
    let f = PrimeField::new(101).unwrap();
    for t in random_v_delta(&f, 1, 20, 77) {
        assert_eq!(section_torsion_order(&t.model(), &t.point()), None);
    }
}
