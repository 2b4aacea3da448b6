use crate::algebra::{Field, Poly};
use crate::error::{EdsError, Result};
use crate::weierstrass::NormalizedTriple;

/// `Δ` has `12d` distinct zeros: degree exactly `12d` and squarefree.
pub fn in_v_delta<F: Field>(triple: &NormalizedTriple<F>) -> bool {
    let delta = triple.discriminant();
    delta.deg() == 12 * triple.d as i64 && delta.gcd(&delta.derivative()).is_constant()
}

/// `(a₂, a₃, a₄) = (0, c, t^{4d})`, with `Δ = −27c⁴ − 64t^{12d}`.
pub fn witness_family<F: Field>(field: &F, c: F::Elem, d: u32) -> Result<NormalizedTriple<F>> {
    if field.is_zero(&c) {
        return Err(EdsError::InvalidInput("c must be nonzero".into()));
    }
    if d == 0 {
        return Err(EdsError::InvalidInput("d must be at least 1".into()));
    }
    let triple = NormalizedTriple::new(
        Poly::zero(field),
        Poly::constant(field, c),
        Poly::monomial(field, field.one(), 4 * d as usize),
        d,
    )?;
    if !in_v_delta(&triple) {
        return Err(EdsError::InvalidInput(format!(
            "discriminant {} is not squarefree of degree {}",
            triple.discriminant(),
            12 * d
        )));
    }
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn witness_discriminants() {
        let w = witness_family(&Rationals, Rationals.from_i64(1), 1).unwrap();
        let mut delta = vec![0i64; 13];
        delta[0] = -27;
        delta[12] = -64;
        assert_eq!(w.discriminant(), Poly::from_ints(&Rationals, &delta));
        let w2 = witness_family(&Rationals, Rationals.from_i64(2), 2).unwrap();
        assert_eq!(w2.discriminant().deg(), 24);
        assert!(witness_family(&Rationals, Rationals.from_i64(0), 1).is_err());
    }

    #[test]
    fn witness_over_small_primes() {
        // p | 12d makes Δ inseparable
        let f5 = PrimeField::new(5).unwrap();
        assert!(witness_family(&f5, 1, 5).is_err());
        assert!(witness_family(&f5, 1, 1).is_ok());
    }
}
