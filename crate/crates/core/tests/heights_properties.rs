mod common;

use common::{kummer, random_v_delta, witness};
use eds_core::algebra::{PrimeField, Rationals};
use eds_core::heights::{
    class_formula_check, height_irreducible_fibers, height_with_corrections,
    intersection_of_multiples, intersection_with_zero,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[test]
fn kummer_closed_form() {
    let k = kummer(&Rationals);
    for n in 2..=10u64 {
        let n2 = (n * n) as i64;
        let want = if n % 2 == 1 {
            (n2 - 1) / 2
        } else {
            (n2 - 4) / 2
        };
        assert_eq!(
            intersection_with_zero(&k.model, &k.point, n, k.d).unwrap(),
            want
        );
    }
    for n in 1..=4i64 {
        let np = k.model.mul(n, &k.point);
        let h = height_with_corrections(&k.model, &np, k.d).unwrap();
        assert_eq!(h.ht, r(n * n));
        let corr = if n % 2 == 0 { 0 } else { 3 };
        assert_eq!(h.total_correction(), r(corr));
    }
}

#[test]
fn quadraticity_on_irreducible_fibers() {
    let f = PrimeField::new(101).unwrap();
    let mut triples = vec![witness(&f, 1)];
    triples.extend(random_v_delta(&f, 2, 2, 5));
    for t in triples {
        let (model, p, d) = (t.model(), t.point(), t.d as i64);
        let ht = height_irreducible_fibers(&model, &p, d).unwrap();
        assert!(ht.is_positive());
        assert_eq!(ht, r(2 * d));
        for n in 1..=7u64 {
            let deg = intersection_with_zero(&model, &p, n, d).unwrap();
            let predicted = &ht * r((n * n) as i64) / r(2) - r(d);
            assert_eq!(r(deg), predicted);
        }
        assert!(class_formula_check(&model, &p, d, 6).unwrap().holds());
    }
}

#[test]
fn class_formula_example_d2() {
    let f = PrimeField::new(101).unwrap();
    let t = random_v_delta(&f, 2, 1, 8).remove(0);
    let report = class_formula_check(&t.model(), &t.point(), 2, 5).unwrap();
    assert!(report.holds());
    assert_eq!(report.rows[4].computed, 48);
    assert_eq!(report.rows[0].computed, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn intersection_symmetry(seed in any::<u64>(), n in 0u64..6, m in 0u64..6) {
        prop_assume!(n != m);
        let f = PrimeField::new(101).unwrap();
        let t = random_v_delta(&f, 1, 1, seed).remove(0);
        let (model, p) = (t.model(), t.point());
        let a = intersection_of_multiples(&model, &p, n, m, 1).unwrap();
        let b = intersection_of_multiples(&model, &p, m, n, 1).unwrap();
        prop_assert_eq!(a.value, b.value);
        prop_assert!(a.value >= 0);
    }
}
