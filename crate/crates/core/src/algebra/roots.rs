//! Rational roots of polynomials over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Rationals;
use super::poly::Poly;
use super::qgcd::primitive_part;

const TRIAL_BOUND: u64 = 1 << 20;
const CANDIDATE_LIMIT: usize = 1 << 16;

/// Prime factorization by trial division, or `None` if a cofactor above
/// `TRIAL_BOUND²` remains.
fn factor(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        let b = BigInt::from(TRIAL_BOUND);
        if n > &b * &b {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut ds = vec![BigInt::one()];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for d in &ds {
            let mut pk = d.clone();
            for _ in 0..=e {
                next.push(pk.clone());
                pk *= &p;
            }
        }
        ds = next;
        if ds.len() > CANDIDATE_LIMIT {
            return None;
        }
    }
    Some(ds)
}

fn eval_int(c: &[BigInt], num: &BigInt, den: &BigInt) -> bool {
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    let n = c.len() - 1;
    let mut pows = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        pows.push(den_pow.clone());
        den_pow *= den;
    }
    let mut num_pow = BigInt::one();
    for (i, ci) in c.iter().enumerate() {
        acc += ci * &num_pow * &pows[n - i];
        num_pow *= num;
    }
    acc.is_zero()
}

/// Distinct rational roots in increasing order, or `None` when the
/// candidate set is too large to enumerate.
pub fn rational_roots(f: &Poly<Rationals>) -> Option<Vec<BigRational>> {
    if f.is_zero() {
        return None;
    }
    let mut c = primitive_part(f);
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(BigRational::zero());
        c.drain(..lead_zeros);
    }
    if c.len() > 1 {
        let a0 = c[0].clone();
        let an = c[c.len() - 1].clone();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        if ps.len().saturating_mul(qs.len()) > CANDIDATE_LIMIT * 4 {
            return None;
        }
        for p in &ps {
            for q in &qs {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for s in [p.clone(), -p.clone()] {
                    if eval_int(&c, &s, q) {
                        roots.push(BigRational::new(s, q.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn finds_rational_roots() {
        // (2t − 3)(t + 5) t
        let f = &(&q(&[-3, 2]) * &q(&[5, 1])) * &q(&[0, 1]);
        assert_eq!(
            rational_roots(&f).unwrap(),
            vec![r(-5, 1), r(0, 1), r(3, 2)]
        );
        assert!(rational_roots(&q(&[1, 0, 1])).unwrap().is_empty());
        assert!(
            rational_roots(&q(&[-27, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -64]))
                .unwrap()
                .is_empty()
        );
    }
}
