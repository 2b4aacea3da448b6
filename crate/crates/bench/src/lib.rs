//! Shared fixtures for the benchmarks.

use eds_core::algebra::{Poly, PrimeField, Rationals};
use eds_core::weierstrass::NormalizedTriple;

/// Dense polynomial over 𝔽_p with deterministic pseudo-random coefficients.
pub fn fp_poly(field: &PrimeField, deg: usize, salt: u64) -> Poly<PrimeField> {
    let p = field.modulus();
    let coeffs = (0..=deg as u64)
        .map(|i| (i * i * 2_654_435_761 + salt * 97 + 1) % p)
        .collect();
    Poly::new(*field, coeffs)
}

/// Integer polynomial over ℚ with small coefficients.
pub fn q_poly(deg: usize, salt: i64) -> Poly<Rationals> {
    let coeffs: Vec<i64> = (0..=deg as i64)
        .map(|i| (i * i * 7 + salt * 13 + 3) % 41 - 20)
        .collect();
    Poly::from_ints(&Rationals, &coeffs)
}

/// `(0, 1, t^{4d})`.
pub fn witness_q(d: u32) -> NormalizedTriple<Rationals> {
    let mut a4 = vec![0i64; 4 * d as usize + 1];
    a4[4 * d as usize] = 1;
    NormalizedTriple::new(
        Poly::zero(&Rationals),
        Poly::one(&Rationals),
        Poly::from_ints(&Rationals, &a4),
        d,
    )
    .expect("the witness triple is nonsingular")
}
