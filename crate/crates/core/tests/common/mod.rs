#![allow(dead_code)]

use eds_core::algebra::{Field, Poly, Rationals};
use eds_core::families::{in_v_delta, kummer_family, witness_family, KummerFamily, KummerInput};
use eds_core::weierstrass::NormalizedTriple;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn qpoly(c: &[i64]) -> Poly<Rationals> {
    Poly::from_ints(&Rationals, c)
}

pub fn random_poly<F: Field>(field: &F, rng: &mut dyn RngCore, deg: u32, height: u64) -> Poly<F> {
    Poly::new(
        field.clone(),
        (0..=deg).map(|_| field.random(rng, height)).collect(),
    )
}

/// `count` triples in V_Δ for bundle degree `d`, drawn deterministically.
pub fn random_v_delta<F: Field>(
    field: &F,
    d: u32,
    count: usize,
    seed: u64,
) -> Vec<NormalizedTriple<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let a2 = random_poly(field, &mut rng, 2 * d, 5);
        let a3 = random_poly(field, &mut rng, 3 * d, 5);
        let a4 = random_poly(field, &mut rng, 4 * d, 5);
        if let Ok(t) = NormalizedTriple::new(a2, a3, a4, d) {
            if in_v_delta(&t) {
                out.push(t);
            }
        }
    }
    out
}

pub fn witness<F: Field>(field: &F, d: u32) -> NormalizedTriple<F> {
    witness_family(field, field.one(), d).unwrap()
}

/// `y² = x³ + (t³ + 1)³` with `P = (t(t³ + 1), (t³ + 1)²)`.
pub fn kummer<F: Field>(field: &F) -> KummerFamily<F> {
    kummer_family(
        field,
        &KummerInput::new(field.zero(), field.zero(), field.one()),
    )
    .unwrap()
}
