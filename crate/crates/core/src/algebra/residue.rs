use num_bigint::{BigInt, BigUint};
use rand::RngCore;

use super::factor::is_irreducible;
use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// The finite field `F[t]/(g)` for an irreducible `g` over a finite field `F`.
/// Used to evaluate at closed points of degree > 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField<F: Field> {
    modulus: Poly<F>,
}

impl<F: Field> ResidueField<F> {
    pub fn new(g: &Poly<F>) -> Result<Self, AlgebraError> {
        if g.field().order().is_none() {
            return Err(AlgebraError::Unsupported(
                "residue fields need a finite base".into(),
            ));
        }
        if !is_irreducible(g) {
            return Err(AlgebraError::NotIrreducible);
        }
        Ok(ResidueField { modulus: g.monic() })
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn base(&self) -> &F {
        self.modulus.field()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// Image of a base-field element.
    pub fn lift(&self, c: &F::Elem) -> Poly<F> {
        Poly::constant(self.base(), c.clone())
    }

    /// The class of `t`.
    pub fn generator(&self) -> Poly<F> {
        Poly::t(self.base()).rem(&self.modulus)
    }

    /// Reduction of a polynomial in `t` at this place.
    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        p.rem(&self.modulus)
    }
}

impl<F: Field> Field for ResidueField<F> {
    type Elem = Poly<F>;

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn order(&self) -> Option<BigUint> {
        Some(self.base().order()?.pow(self.degree() as u32))
    }
    fn zero(&self) -> Poly<F> {
        Poly::zero(self.base())
    }
    fn one(&self) -> Poly<F> {
        Poly::one(self.base())
    }
    fn is_zero(&self, a: &Poly<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a + b
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a - b
    }
    fn neg(&self, a: &Poly<F>) -> Poly<F> {
        -a
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a.mul_mod(b, &self.modulus)
    }
    fn inv(&self, a: &Poly<F>) -> Option<Poly<F>> {
        if a.is_zero() {
            None
        } else {
            a.inv_mod(&self.modulus)
        }
    }
    fn from_bigint(&self, n: &BigInt) -> Poly<F> {
        Poly::constant(self.base(), self.base().from_bigint(n))
    }
    fn is_square(&self, a: &Poly<F>) -> bool {
        if a.is_zero() {
            return true;
        }
        let q = self.order().unwrap();
        let e = (q - 1u32) / 2u32;
        self.pow_big(a, &e).is_one()
    }
    fn random(&self, rng: &mut dyn RngCore, height: u64) -> Poly<F> {
        let b = self.base();
        Poly::new(
            b.clone(),
            (0..self.degree()).map(|_| b.random(rng, height)).collect(),
        )
    }
    fn format(&self, a: &Poly<F>) -> String {
        if a.is_constant() {
            a.to_string()
        } else {
            format!("({})", a.format_with("u"))
        }
    }
    fn descriptor(&self) -> String {
        format!(
            "{}[u]/({})",
            self.base().descriptor(),
            self.modulus.format_with("u")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn f49_arithmetic() {
        let f7 = PrimeField::new(7).unwrap();
        let g = Poly::from_ints(&f7, &[1, 0, 1]);
        let k = ResidueField::new(&g).unwrap();
        assert_eq!(k.order(), Some(BigUint::from(49u32)));
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        // every nonzero element satisfies x^48 = 1
        for a in 0..7 {
            for b in 0..7 {
                let x = Poly::from_ints(&f7, &[a, b]);
                if !x.is_zero() {
                    assert!(k.pow(&x, 48).is_one());
                    assert!(k.mul(&x, &k.inv(&x).unwrap()).is_one());
                }
            }
        }
        // -1 is a square in F49 but not in F7
        assert!(k.is_square(&k.from_i64(-1)));
        assert!(!f7.is_square(&f7.from_i64(-1)));
        assert!(ResidueField::new(&Poly::from_ints(&f7, &[-1, 0, 1])).is_err());
    }
}
