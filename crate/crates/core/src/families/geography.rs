use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EdsError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeographyReport {
    pub g: u64,
    pub d: u64,
    pub n: u64,
    /// `a = dn² − 1`, minus the self-intersection of `C₀` and `Cₙ`.
    pub a: BigInt,
    /// `b = (a − 2)/(a − 1)`.
    pub b: BigRational,
    pub kx2: BigRational,
    /// Discrepancy `α₀ = αₙ = −b`.
    pub alpha: BigRational,
    pub pg: u64,
    /// The singularity is of type `1/(a² − 1)(1, a)`: `(a² − 1, a)`.
    pub singularity: (BigInt, BigInt),
    pub ample_certified: bool,
    /// Sufficient conditions that failed; empty when certified.
    pub reasons: Vec<String>,
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

/// Invariants of the contraction of `C₀ ∪ Cₙ` on the blow-up of a height-d
/// surface with `d = g + 1`.
pub fn geography(g: u64, n: u64) -> Result<GeographyReport> {
    if n <= 1 {
        return Err(EdsError::InvalidInput(format!("n = {n} must exceed 1")));
    }
    let d = g + 1;
    let a: BigInt = int(d) * int(n) * int(n) - 1;
    let ar = BigRational::from_integer(a.clone());
    let one = BigRational::one();
    let b = (&ar - BigRational::from_integer(2.into())) / (&ar - &one);
    let r = |v: i64| BigRational::from_integer(v.into());
    let dn2 = BigRational::from_integer(int(d) * int(n) * int(n));
    let kx2 = &dn2 * (r(4) * &b - r(2) * &b * &b - &one)
        + BigRational::from_integer(int(d) + 1)
        + r(4) * &b * &b
        - r(12) * &b;
    let alpha = -b.clone();
    let mut reasons = Vec::new();
    if !kx2.is_positive() {
        reasons.push(format!("K_X^2 = {kx2} is not positive"));
    }
    if !(d > 1 || n > 2) {
        reasons.push("E_i.K_X > 0 needs d > 1 or n > 2".to_string());
    }
    if n < 5 {
        reasons.push("multisection check through P needs n >= 5".to_string());
    }
    let singularity = (&a * &a - BigInt::one(), a.clone());
    Ok(GeographyReport {
        g,
        d,
        n,
        a,
        b,
        kx2,
        alpha,
        pg: g,
        singularity,
        ample_certified: reasons.is_empty(),
        reasons,
    })
}

/// Least certified `n` with `K_X² > N`.
pub fn geography_search(g: u64, big_n: &BigInt) -> Result<(u64, GeographyReport)> {
    let target = BigRational::from_integer(big_n.clone());
    let mut n = 5;
    loop {
        let r = geography(g, n)?;
        if r.ample_certified && r.kx2 > target {
            return Ok((n, r));
        }
        n += 1;
    }
}

impl GeographyReport {
    /// `α ∈ (−1, 0]`.
    pub fn log_terminal(&self) -> bool {
        let minus_one = -BigRational::one();
        self.alpha > minus_one && self.alpha <= BigRational::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_cases() {
        let r = geography(0, 2).unwrap();
        assert_eq!(r.a, BigInt::from(3));
        assert_eq!(r.b, q(1, 2));
        assert_eq!(r.kx2, q(-1, 1));
        assert_eq!(r.alpha, q(-1, 2));
        assert!(!r.ample_certified);
        let r5 = geography(0, 5).unwrap();
        assert_eq!(r5.b, q(22, 23));
        assert!(r5.kx2.is_positive());
        assert!(r5.ample_certified);
        assert!(geography(0, 1).is_err());
    }

    #[test]
    fn search_is_minimal() {
        let (n, r) = geography_search(1, &BigInt::from(1000)).unwrap();
        assert!(r.kx2 > q(1000, 1));
        assert!(n == 5 || geography(1, n - 1).unwrap().kx2 <= q(1000, 1));
        assert!((20..=26).contains(&n));
    }
}
