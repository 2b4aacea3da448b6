mod common;

use common::{kummer, random_v_delta, witness};
use eds_core::algebra::{Field, PrimeField, Rationals};
use eds_core::eds::{compare_routes, divisors_of, new_part, scan_m, Divisor};
use eds_core::weierstrass::local::to_short;
use eds_core::weierstrass::{NormalizedTriple, Point};
use proptest::prelude::*;

fn check_routes<F: Field>(triples: &[NormalizedTriple<F>], n_max: u64) {
    for t in triples {
        for c in compare_routes(t, n_max).unwrap() {
            assert!(
                c.agree_at_good_places,
                "{t:?} n = {}: {} vs {}",
                c.n, c.psi, c.denominator
            );
            assert_eq!(
                c.denominator.degree(),
                t.d as i64 * ((c.n * c.n) as i64 - 1)
            );
        }
    }
}

#[test]
fn route_equivalence_over_f101() {
    let f = PrimeField::new(101).unwrap();
    let mut triples = random_v_delta(&f, 1, 12, 1);
    triples.extend(random_v_delta(&f, 2, 8, 2));
    check_routes(&triples, 8);
}

#[test]
fn route_equivalence_over_q() {
    check_routes(&random_v_delta(&Rationals, 1, 20, 3), 8);
}

fn structure<F: Field>(
    model: &eds_core::weierstrass::WeierstrassModel<F>,
    p: &Point<eds_core::algebra::RatFunc<F>>,
    d: i64,
) {
    let scan = scan_m(model, p, d, 12).unwrap();
    assert!(
        scan.divisibility_failures.is_empty(),
        "{:?}",
        scan.divisibility_failures
    );
    assert!(scan.disjoint(), "{:?}", scan.overlapping);
    let dn = |n: u64| scan.record(n).map(|r| r.dn.clone());
    for r in &scan.records {
        assert!(r.dn.is_effective() && r.dn_prime.is_effective());
        // Σ_{m|n} D′_m = D_n
        let sum = divisors_of(r.n)
            .into_iter()
            .map(|m| scan.record(m).unwrap().dn_prime.clone())
            .fold(Divisor::zero(model.field().base()), |a, b| a.add(&b));
        assert_eq!(sum, r.dn);
        assert_eq!(new_part(r.n, |m| Ok(dn(m).unwrap())).unwrap(), r.dn_prime);
    }
}

#[test]
fn divisibility_on_families() {
    let k = kummer(&Rationals);
    structure(&k.model, &k.point, k.d);
    let w = witness(&Rationals, 1);
    structure(&w.model(), &w.point(), 1);
    let f = PrimeField::new(101).unwrap();
    for t in random_v_delta(&f, 1, 3, 9) {
        structure(&t.model(), &t.point(), 1);
    }
}

#[test]
fn pole_orders_are_even() {
    // x(nP) on the minimal model has even pole order wherever it has a pole
    let f = PrimeField::new(101).unwrap();
    for t in random_v_delta(&f, 1, 4, 11) {
        let model = t.model();
        for (n, q) in model.multiples(&t.point(), 8).iter().enumerate() {
            let Point::Affine { x, .. } = to_short(&model, q) else {
                panic!("torsion")
            };
            let den = Divisor::zeros_of(x.den());
            assert!(
                den.layers().all(|(_, m)| m % 2 == 0),
                "n = {}: {}",
                n + 1,
                den
            );
            let inf = x.ord_infinity().unwrap() + 2 * t.d as i64;
            assert!(inf >= 0 || inf % 2 == 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn degree_law_random_f101(seed in any::<u64>(), d in 1u32..=2) {
        let f = PrimeField::new(101).unwrap();
        let t = random_v_delta(&f, d, 1, seed).remove(0);
        let scan = scan_m(&t.model(), &t.point(), d as i64, 6).unwrap();
        for r in &scan.records {
            prop_assert_eq!(r.dn.degree(), d as i64 * ((r.n * r.n) as i64 - 1));
        }
        prop_assert!(scan.divisibility_failures.is_empty());
    }
}
