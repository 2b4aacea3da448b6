use eds_core::algebra::{Field, Poly, PrimeField, RatFunc, Rationals};
use eds_lab::parse::{parse_poly, parse_ratfunc, print_poly, print_ratfunc};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]
    #[test]
    fn rational_polys(coeffs in prop::collection::vec(rational(), 0..12)) {
        let p = Poly::new(Rationals, coeffs);
        prop_assert_eq!(parse_poly(&Rationals, &print_poly(&p)).unwrap(), p);
    }

    #[test]
    fn prime_field_polys(p in prop::sample::select(vec![5u64, 7, 101, 1_000_003]), coeffs in prop::collection::vec(any::<u64>(), 0..12)) {
        let f = PrimeField::new(p).unwrap();
        let poly = Poly::new(f, coeffs.into_iter().map(|c| c % p).collect());
        prop_assert_eq!(parse_poly(&f, &print_poly(&poly)).unwrap(), poly);
    }

    #[test]
    fn rational_functions(num in prop::collection::vec(rational(), 0..6), den in prop::collection::vec(rational(), 1..6)) {
        let den = Poly::new(Rationals, den);
        prop_assume!(!den.is_zero());
        let r = RatFunc::new(Poly::new(Rationals, num), den).unwrap();
        prop_assert_eq!(parse_ratfunc(&Rationals, &print_ratfunc(&r)).unwrap(), r);
    }

    #[test]
    fn whitespace_is_ignored(coeffs in prop::collection::vec(-50i64..50, 1..8)) {
        let p = Poly::from_ints(&Rationals, &coeffs);
        let spaced: String = print_poly(&p)
            .chars()
            .map(|c| if "+-*^/t".contains(c) { format!("  {c}\t") } else { c.to_string() })
            .collect();
        let tight: String = print_poly(&p).chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(parse_poly(&Rationals, &spaced).unwrap(), p.clone());
        prop_assert_eq!(parse_poly(&Rationals, &tight).unwrap(), p);
    }
}

#[test]
fn literals_reduce_mod_p() {
    let f = PrimeField::new(101).unwrap();
    let p = parse_poly(&f, "-27 - 64*t^12").unwrap();
    assert_eq!(p.coeff(0), f.from_i64(-27));
    assert_eq!(p.coeff(12), 37);
}
