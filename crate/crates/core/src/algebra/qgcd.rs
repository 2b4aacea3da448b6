//! Kernels specific to ℚ[t]: integer-vector multiplication and a modular gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{bigint_mod, is_prime_u64, Field, PrimeField, Rationals};
use super::poly::{self, karatsuba, IntOps, Poly};

/// Multiplies rational coefficient vectors by clearing denominators first.
pub fn mul_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (ai, da) = clear_denominators(a);
    let (bi, db) = clear_denominators(b);
    let prod = karatsuba(&ai, &bi, poly::KARATSUBA_THRESHOLD, &IntOps);
    let den = da * db;
    prod.into_iter()
        .map(|c| BigRational::new(c, den.clone()))
        .collect()
}

/// Returns integer coefficients and the common denominator `L` with `a = A/L`.
pub fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    (ints, l)
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Primitive integer polynomial with positive leading coefficient.
pub fn primitive_part(a: &Poly<Rationals>) -> Vec<BigInt> {
    let (mut ints, _) = clear_denominators(a.coeffs());
    let c = content(&ints);
    let sign = if ints.last().is_some_and(|x| x.is_negative()) {
        -1
    } else {
        1
    };
    let c = c * sign;
    for x in ints.iter_mut() {
        *x = &*x / &c;
    }
    ints
}

fn primes_below_2_61() -> impl Iterator<Item = u64> {
    let start = (1u64 << 61) - 1;
    (0u64..)
        .map(move |k| start - 2 * k)
        .filter(|&p| is_prime_u64(p))
}

fn to_rational_poly(ints: &[BigInt]) -> Poly<Rationals> {
    Poly::new(
        Rationals,
        ints.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

fn symmetric(c: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    if c > half {
        c - m
    } else {
        c.clone()
    }
}

/// Monic gcd over ℚ via images modulo large primes and CRT.
pub fn modular_gcd(a: &Poly<Rationals>, b: &Poly<Rationals>) -> Poly<Rationals> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(&Rationals);
    }
    let aa = primitive_part(a);
    let bb = primitive_part(b);
    let la = aa.last().unwrap().clone();
    let lb = bb.last().unwrap().clone();
    let l = la.gcd(&lb);

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg: Option<usize> = None;
    let mut last_image: Option<Vec<BigInt>> = None;

    for p in primes_below_2_61() {
        if bigint_mod(&la, p) == 0 || bigint_mod(&lb, p) == 0 {
            continue;
        }
        let fp = PrimeField::new(p).expect("generated prime");
        let ap = Poly::new(fp, aa.iter().map(|c| bigint_mod(c, p)).collect());
        let bp = Poly::new(fp, bb.iter().map(|c| bigint_mod(c, p)).collect());
        let g = poly::euclid_gcd(&ap, &bp);
        let gd = g.degree().unwrap_or(0);
        if gd == 0 {
            return Poly::one(&Rationals);
        }
        let g = g.scale(&bigint_mod(&l, p));
        match deg {
            Some(d) if gd > d => continue,
            Some(d) if gd == d => {
                let pb = BigInt::from(p);
                let inv = BigInt::from(fp.inv(&bigint_mod(&modulus, p)).unwrap());
                for (i, c) in acc.iter_mut().enumerate() {
                    let r = BigInt::from(g.coeff(i));
                    let diff = (r - bigint_mod(c, p)).mod_floor(&pb);
                    let k = (diff * &inv).mod_floor(&pb);
                    *c += &modulus * k;
                }
                modulus *= &pb;
            }
            _ => {
                deg = Some(gd);
                acc = g.coeffs().iter().map(|&c| BigInt::from(c)).collect();
                modulus = BigInt::from(p);
                last_image = None;
                continue;
            }
        }
        let half = &modulus / 2;
        let image: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        if last_image.as_ref() == Some(&image) {
            let c = content(&image);
            let cand: Vec<BigInt> = image.iter().map(|x| x / &c).collect();
            let h = to_rational_poly(&cand);
            let a_ok = to_rational_poly(&aa).exact_div(&h).is_some();
            if a_ok && to_rational_poly(&bb).exact_div(&h).is_some() {
                return h.monic();
            }
        }
        last_image = Some(image);
    }
    unreachable!("prime supply exhausted")
}
