//! Factorization over finite fields: squarefree, distinct-degree and
//! equal-degree (Cantor–Zassenhaus) stages.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::poly::Poly;
use super::squarefree::squarefree_decompose;
use super::AlgebraError;

const SPLIT_SEED: u64 = 0x5eed_f00d;

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).
pub fn factor_over_fp<F: Field>(f: &Poly<F>) -> Result<Vec<(Poly<F>, usize)>, AlgebraError> {
    if f.field().order().is_none() {
        return Err(AlgebraError::Unsupported(
            "irreducible factorization is only available over finite fields".into(),
        ));
    }
    let sqf = squarefree_decompose(f)?;
    let mut out = Vec::new();
    for (g, m) in sqf.factors {
        for h in factor_squarefree_finite(&g) {
            out.push((h, m));
        }
    }
    out.sort();
    Ok(out)
}

/// Irreducible factors of a squarefree polynomial over a finite field, made
/// monic and sorted.
pub fn factor_squarefree_finite<F: Field>(f: &Poly<F>) -> Vec<Poly<F>> {
    let q = f.field().order().expect("finite field");
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&f.monic(), &q) {
        equal_degree(&g, d, &q, &mut rng, &mut out);
    }
    out.sort();
    out
}

/// Splits a squarefree monic `f` into products of irreducibles of equal degree.
pub fn distinct_degree<F: Field>(f: &Poly<F>, q: &BigUint) -> Vec<(Poly<F>, usize)> {
    let field = f.field().clone();
    let mut out = Vec::new();
    let x = Poly::t(&field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 0;
    while rest.deg() >= 2 * (i as i64 + 1) {
        i += 1;
        h = h.pow_mod(q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).unwrap();
            h = h.rem(&rest);
            out.push((g, i));
        }
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn equal_degree<F: Field>(
    f: &Poly<F>,
    d: usize,
    q: &BigUint,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly<F>>,
) {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.monic());
        return;
    }
    let field = f.field().clone();
    let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = Poly::new(
            field.clone(),
            (0..n).map(|_| field.random(rng, 1 << 20)).collect(),
        );
        if a.is_constant() {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            let b = &a.pow_mod(&e, f) - &Poly::one(&field);
            g = b.gcd(f);
        }
        if !g.is_constant() && g.deg() < f.deg() {
            let h = f.exact_div(&g).unwrap();
            equal_degree(&g, d, q, rng, out);
            equal_degree(&h, d, q, rng, out);
            return;
        }
    }
}

/// True iff `f` is irreducible over its (finite) field.
pub fn is_irreducible<F: Field>(f: &Poly<F>) -> bool {
    if f.is_constant() {
        return false;
    }
    let df = f.derivative();
    if df.is_zero() || !f.gcd(&df).is_one() {
        return false;
    }
    factor_squarefree_finite(f).len() == 1
}
