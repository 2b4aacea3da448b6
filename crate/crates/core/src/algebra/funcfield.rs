use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, RngCore};

use super::field::Field;
use super::poly::Poly;
use super::ratfunc::RatFunc;
use super::squarefree::squarefree_decompose;

/// The rational function field `F(t)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FunctionField<F: Field> {
    base: F,
}

impl<F: Field> FunctionField<F> {
    pub fn new(base: F) -> Self {
        FunctionField { base }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn t(&self) -> RatFunc<F> {
        RatFunc::t(&self.base)
    }

    pub fn poly(&self, p: Poly<F>) -> RatFunc<F> {
        RatFunc::from_poly(p)
    }
}

impl<F: Field> PartialOrd for RatFunc<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Field> Ord for RatFunc<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num()
            .cmp(other.num())
            .then_with(|| self.den().cmp(other.den()))
    }
}

impl<F: Field> Field for FunctionField<F> {
    type Elem = RatFunc<F>;

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn zero(&self) -> RatFunc<F> {
        RatFunc::zero(&self.base)
    }
    fn one(&self) -> RatFunc<F> {
        RatFunc::one(&self.base)
    }
    fn is_zero(&self, a: &RatFunc<F>) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a + b
    }
    fn sub(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a - b
    }
    fn neg(&self, a: &RatFunc<F>) -> RatFunc<F> {
        -a
    }
    fn mul(&self, a: &RatFunc<F>, b: &RatFunc<F>) -> RatFunc<F> {
        a * b
    }
    fn inv(&self, a: &RatFunc<F>) -> Option<RatFunc<F>> {
        a.inv().ok()
    }
    fn from_bigint(&self, n: &BigInt) -> RatFunc<F> {
        RatFunc::constant(&self.base, self.base.from_bigint(n))
    }
    fn is_square(&self, a: &RatFunc<F>) -> bool {
        if a.is_zero() {
            return true;
        }
        // num/den is a square iff num·den is
        let s = a.num() * a.den();
        if !self.base.is_square(s.leading().unwrap()) {
            return false;
        }
        squarefree_decompose(&s)
            .map(|d| d.factors.iter().all(|(_, m)| m % 2 == 0))
            .unwrap_or(false)
    }
    fn random(&self, rng: &mut dyn RngCore, height: u64) -> RatFunc<F> {
        let deg = rng.gen_range(0..4);
        let coeffs = (0..=deg).map(|_| self.base.random(rng, height)).collect();
        RatFunc::from_poly(Poly::new(self.base.clone(), coeffs))
    }
    fn format(&self, a: &RatFunc<F>) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> String {
        format!("{}(t)", self.base.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};

    #[test]
    fn squares_in_function_field() {
        let k = FunctionField::new(Rationals);
        let f = Poly::from_ints(&Rationals, &[1, 2, 1]);
        let g = Poly::from_ints(&Rationals, &[0, 0, 4]);
        assert!(k.is_square(&RatFunc::new(f.clone(), g.clone()).unwrap()));
        assert!(
            !k.is_square(&RatFunc::new(f.clone(), Poly::from_ints(&Rationals, &[0, 1])).unwrap())
        );
        assert!(!k.is_square(&k.from_i64(-1)));
        let k7 = FunctionField::new(PrimeField::new(7).unwrap());
        assert!(k7.is_square(&k7.from_i64(2)));
        assert!(!k7.is_square(&k7.t()));
    }
}
