use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};

use super::poly::{self, Poly};
use super::AlgebraError;

/// A field together with the arithmetic on its elements.
///
/// Elements do not carry their field; the descriptor (`Self`) is passed to
/// every operation. Polynomials and rational functions store the descriptor
/// once alongside their coefficients.
pub trait Field: Clone + Debug + PartialEq + Eq + Hash + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Eq + Ord + Hash + Send + Sync;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Number of elements, or `None` for an infinite field.
    fn order(&self) -> Option<BigUint>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn is_square(&self, a: &Self::Elem) -> bool;
    /// A random element; `height` bounds numerators in characteristic zero.
    fn random(&self, rng: &mut dyn RngCore, height: u64) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn descriptor(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let num = self.from_bigint(q.numer());
        let den = self.inv(&self.from_bigint(q.denom()))?;
        Some(self.mul(&num, &den))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, e: u64) -> Self::Elem {
        self.pow_big(a, &BigUint::from(e))
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// The unique p-th root in a finite field of characteristic p.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self
            .order()
            .expect("p-th roots are only taken in finite fields");
        let p = BigUint::from(self.characteristic());
        self.pow_big(a, &(q / p))
    }

    /// Dense polynomial product kernel.
    fn mul_poly(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Vec<Self::Elem> {
        poly::karatsuba(a, b, poly::KARATSUBA_THRESHOLD, &poly::FieldOps(self))
    }

    /// Monic gcd kernel; both inputs share this field.
    fn gcd_poly(&self, a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self>
    where
        Self: Sized,
    {
        poly::euclid_gcd(a, b)
    }

    /// Splits a squarefree monic polynomial into the places it represents.
    /// Finite fields return the irreducible factors; `None` means the field
    /// keeps squarefree layers unsplit.
    fn split_places(&self, f: &Poly<Self>) -> Option<Vec<Poly<Self>>>
    where
        Self: Sized,
    {
        if self.order().is_some() {
            Some(
                super::factor::factor_squarefree_finite(f)
                    .into_iter()
                    .collect(),
            )
        } else {
            None
        }
    }

    /// Distinct roots of `f` lying in the field, or `None` when they are not
    /// determined.
    fn roots(&self, f: &Poly<Self>) -> Option<Vec<Self::Elem>>
    where
        Self: Sized,
    {
        if f.is_zero() || self.order().is_none() {
            return None;
        }
        let radical = super::squarefree_decompose(f).ok()?.radical(self);
        let mut out: Vec<Self::Elem> = self
            .split_places(&radical)?
            .into_iter()
            .filter(|g| g.deg() == 1)
            .map(|g| self.neg(&g.coeff(0)))
            .collect();
        out.sort();
        Some(out)
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<BigUint> {
        None
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn is_square(&self, a: &BigRational) -> bool {
        if a.is_negative() {
            return false;
        }
        is_perfect_square(a.numer()) && is_perfect_square(a.denom())
    }
    fn random(&self, rng: &mut dyn RngCore, height: u64) -> BigRational {
        let h = height.min(i64::MAX as u64) as i64;
        BigRational::from_integer(BigInt::from(rng.gen_range(-h..=h)))
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn descriptor(&self) -> String {
        "Q".to_string()
    }

    fn mul_poly(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        super::qgcd::mul_rational(a, b)
    }

    fn gcd_poly(&self, a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        super::qgcd::modular_gcd(a, b)
    }
    fn roots(&self, f: &Poly<Self>) -> Option<Vec<BigRational>> {
        super::roots::rational_roots(f)
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// The prime field of order p, with p > 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// Largest modulus accepted; keeps sums inside `u64`.
pub const MAX_PRIME: u64 = 1 << 62;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p <= 3 {
            return Err(AlgebraError::CharacteristicTooSmall(p));
        }
        if p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> Option<BigUint> {
        Some(BigUint::from(self.p))
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let e = (*a as i128).extended_gcd(&(self.p as i128));
        debug_assert_eq!(e.gcd, 1);
        Some(e.x.rem_euclid(self.p as i128) as u64)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    fn pow(&self, a: &u64, mut e: u64) -> u64 {
        let mut base = *a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn is_square(&self, a: &u64) -> bool {
        *a == 0 || self.pow(a, (self.p - 1) / 2) == 1
    }
    fn random(&self, rng: &mut dyn RngCore, _height: u64) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> String {
        format!("Fp:{}", self.p)
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Converts a big integer to a residue in [0, p).
pub(crate) fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let (sign, digits) = n.to_u64_digits();
    let mut r: u128 = 0;
    for d in digits.iter().rev() {
        r = ((r << 64) | *d as u128) % p as u128;
    }
    let r = r as u64;
    if sign == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_small_and_composite() {
        assert!(matches!(
            PrimeField::new(3),
            Err(AlgebraError::CharacteristicTooSmall(3))
        ));
        assert!(matches!(
            PrimeField::new(2),
            Err(AlgebraError::CharacteristicTooSmall(2))
        ));
        assert!(matches!(
            PrimeField::new(91),
            Err(AlgebraError::NotPrime(91))
        ));
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn residues_are_reduced() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_i64(15), 1);
        assert_eq!(
            f.from_rational(&BigRational::new(1.into(), 2.into())),
            Some(4)
        );
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 7.into())), None);
        assert_eq!(bigint_mod(&BigInt::from(-15), 7), 6);
    }

    #[test]
    fn squares() {
        let f = PrimeField::new(7).unwrap();
        assert!(!f.is_square(&6));
        assert!(f.is_square(&2));
        let q = Rationals;
        assert!(q.is_square(&BigRational::new(9.into(), 4.into())));
        assert!(!q.is_square(&BigRational::from_integer(2.into())));
        assert!(!q.is_square(&BigRational::from_integer((-4).into())));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0u64..5000 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), trial, "n = {n}");
        }
        assert!(is_prime_u64(2305843009213693951));
    }
}
