//! Division polynomials ψₙ of `y² + a₃y = x³ + a₂x² + a₄x` evaluated at
//! the point (0, 0), as polynomials in (a₂, a₃, a₄).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Field, Poly};
use crate::error::{EdsError, Result};

/// A polynomial in a₂, a₃, a₄ with integer coefficients, keyed by exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymPoly {
    terms: BTreeMap<[u32; 3], BigInt>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, [0, 0, 0])
    }

    pub fn monomial(c: i64, e: [u32; 3]) -> Self {
        let mut s = SymPoly::zero();
        if c != 0 {
            s.terms.insert(e, BigInt::from(c));
        }
        s
    }

    pub fn from_terms(terms: &[(i64, [u32; 3])]) -> Self {
        terms.iter().fold(SymPoly::zero(), |acc, &(c, e)| {
            acc.add(&SymPoly::monomial(c, e))
        })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let v = out.terms.entry(*e).or_default();
            *v += c;
            if v.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        SymPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<[u32; 3], BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                *terms.entry(e).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        SymPoly { terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(SymPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact division by a₃, or `None` if some term lacks the factor.
    pub fn div_a3(&self) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[1] == 0 {
                return None;
            }
            terms.insert([e[0], e[1] - 1, e[2]], c.clone());
        }
        Some(SymPoly { terms })
    }

    /// `Some(w)` if every term has weight `2i + 3j + 4k = w`.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|e| 2 * e[0] + 3 * e[1] + 4 * e[2]);
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    pub fn eval<K: Field>(&self, k: &K, a2: &K::Elem, a3: &K::Elem, a4: &K::Elem) -> K::Elem {
        let mut acc = k.zero();
        for (e, c) in &self.terms {
            let m = k.mul(
                &k.mul(&k.pow(a2, e[0] as u64), &k.pow(a3, e[1] as u64)),
                &k.pow(a4, e[2] as u64),
            );
            acc = k.add(&acc, &k.mul(&k.from_bigint(c), &m));
        }
        acc
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mut parts = Vec::new();
            if !a.is_one() || e.iter().all(|&x| x == 0) {
                parts.push(a.to_string());
            }
            for (name, &x) in ["a2", "a3", "a4"].iter().zip(e.iter()) {
                match x {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{x}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// `[ψ₀, ψ₁, …, ψₙ]` as symbolic polynomials.
pub fn psi_symbolic(n: usize) -> Vec<SymPoly> {
    let mut psi = vec![
        SymPoly::zero(),
        SymPoly::one(),
        SymPoly::monomial(1, [0, 1, 0]),
        SymPoly::from_terms(&[(1, [1, 2, 0]), (-1, [0, 0, 2])]),
        SymPoly::from_terms(&[(2, [1, 3, 1]), (-2, [0, 1, 3]), (-1, [0, 5, 0])]),
    ];
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            psi[m + 2]
                .mul(&psi[m].pow(3))
                .sub(&psi[m - 1].mul(&psi[m + 1].pow(3)))
        } else {
            let num = psi[m - 1]
                .pow(2)
                .mul(&psi[m])
                .mul(&psi[m + 2])
                .sub(&psi[m - 2].mul(&psi[m]).mul(&psi[m + 1].pow(2)));
            num.div_a3().expect("even recursion divides by a3 exactly")
        };
        psi.push(next);
    }
    psi.truncate(n + 1);
    psi
}

/// `[ψ₀(a), …, ψₙ(a)]` for a polynomial triple, via the recursion in k[t].
/// Division by ψ₂ = a₃ must be exact; when a₃ ≡ 0 the symbolic forms are
/// substituted instead.
pub fn psi_polys<F: Field>(
    a2: &Poly<F>,
    a3: &Poly<F>,
    a4: &Poly<F>,
    n: usize,
) -> Result<Vec<Poly<F>>> {
    let field = a2.field().clone();
    if a3.is_zero() {
        let k = crate::algebra::FunctionField::new(field.clone());
        let lift = |p: &Poly<F>| crate::algebra::RatFunc::from_poly(p.clone());
        return Ok(psi_symbolic(n)
            .iter()
            .map(|s| s.eval(&k, &lift(a2), &lift(a3), &lift(a4)).num().clone())
            .collect());
    }
    let a3sq = a3 * a3;
    let a4sq = a4 * a4;
    let mut psi = vec![
        Poly::zero(&field),
        Poly::one(&field),
        a3.clone(),
        &(a2 * &a3sq) - &a4sq,
        &(&(&(a2 * &(&a3sq * a3)) * a4).scale(&field.from_i64(2))
            - &(a3 * &(&a4sq * a4)).scale(&field.from_i64(2)))
            - &(&a3sq * &(&a3sq * a3)),
    ];
    for k in 5..=n {
        let m = k / 2;
        let next = if k % 2 == 1 {
            &(&psi[m + 2] * &psi[m].pow(3)) - &(&psi[m - 1] * &psi[m + 1].pow(3))
        } else {
            let num = &(&(&psi[m - 1].pow(2) * &psi[m]) * &psi[m + 2])
                - &(&(&psi[m - 2] * &psi[m]) * &psi[m + 1].pow(2));
            num.exact_div(a3).ok_or_else(|| {
                EdsError::Algebra(crate::algebra::AlgebraError::InternalInconsistency(
                    format!("psi_{k}: division by a3 is not exact"),
                ))
            })?
        };
        psi.push(next);
    }
    psi.truncate(n + 1);
    Ok(psi)
}

/// `[ψ₀, …, ψₙ]` evaluated at field elements.
pub fn psi_values<K: Field>(
    k: &K,
    a2: &K::Elem,
    a3: &K::Elem,
    a4: &K::Elem,
    n: usize,
) -> Vec<K::Elem> {
    if k.is_zero(a3) {
        return psi_symbolic(n)
            .iter()
            .map(|s| s.eval(k, a2, a3, a4))
            .collect();
    }
    let a3inv = k.inv(a3).unwrap();
    let mut psi: Vec<K::Elem> = psi_symbolic(4)
        .iter()
        .map(|s| s.eval(k, a2, a3, a4))
        .collect();
    for j in 5..=n {
        let m = j / 2;
        let next = if j % 2 == 1 {
            k.sub(
                &k.mul(&psi[m + 2], &k.pow(&psi[m], 3)),
                &k.mul(&psi[m - 1], &k.pow(&psi[m + 1], 3)),
            )
        } else {
            let num = k.sub(
                &k.mul(&k.mul(&k.pow(&psi[m - 1], 2), &psi[m]), &psi[m + 2]),
                &k.mul(&k.mul(&psi[m - 2], &psi[m]), &k.pow(&psi[m + 1], 2)),
            );
            k.mul(&num, &a3inv)
        };
        psi.push(next);
    }
    psi.truncate(n + 1);
    psi
}
