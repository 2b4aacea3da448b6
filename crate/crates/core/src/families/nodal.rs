use rand::RngCore;

use crate::algebra::{AlgebraError, Field, QuadElem, QuadExt};
use crate::error::{EdsError, Result};
use crate::weierstrass::invariants_of;

#[derive(Clone, Debug)]
pub struct NodalFiberData<F: Field> {
    pub node_x: F::Elem,
    pub node_y: F::Elem,
    /// `γ² = −c₆/(4c₄)`.
    pub gamma_squared: F::Elem,
    /// `k[γ]`; a split algebra when `γ²` is a square in `k`.
    pub ext: QuadExt<F>,
    /// Image of `P = (0, 0)` in `𝔾ₘ`, using the branch `γ` (not `−γ`).
    pub coordinate: QuadElem<F::Elem>,
}

/// The node `Q` of a nodal chart fiber and the 𝔾ₘ coordinate
/// `(a₃c₄ − γs)/(a₃c₄ + γs)` of `P`, with `s = 16a₂a₄ − 36a₃²`.
pub fn nodal_gm_coordinate<F: Field>(
    k: &F,
    a2: &F::Elem,
    a3: &F::Elem,
    a4: &F::Elem,
) -> Result<NodalFiberData<F>> {
    let inv = invariants_of(k, a2, a3, a4);
    if !k.is_zero(&inv.delta) {
        return Err(EdsError::InvalidInput(
            "the fiber is smooth (discriminant is nonzero)".into(),
        ));
    }
    if k.is_zero(&inv.c4) {
        return Err(EdsError::InvalidInput(
            "c4 vanishes: the fiber is cuspidal".into(),
        ));
    }
    if k.is_zero(a3) && k.is_zero(a4) {
        return Err(EdsError::InvalidInput(
            "(a3, a4) = (0, 0): P is the node".into(),
        ));
    }
    let n = |v: i64| k.from_i64(v);
    let c4_inv = k.inv(&inv.c4).unwrap();
    let node_x = k.mul(
        &k.sub(
            &k.mul(&n(18), &k.mul(a3, a3)),
            &k.mul(&n(8), &k.mul(a2, a4)),
        ),
        &c4_inv,
    );
    let node_y = k.neg(&k.mul(a3, &k.inv(&n(2)).unwrap()));
    let gamma_squared = k.neg(&k.mul(&inv.c6, &k.inv(&k.mul(&n(4), &inv.c4)).unwrap()));
    let ext = QuadExt::algebra(k, gamma_squared.clone());
    let s = k.sub(
        &k.mul(&n(16), &k.mul(a2, a4)),
        &k.mul(&n(36), &k.mul(a3, a3)),
    );
    let u = k.mul(a3, &inv.c4);
    let num = ext.elem(u.clone(), k.neg(&s));
    let den = ext.elem(u, s);
    let coordinate = ext.div(&num, &den).map_err(|e| match e {
        AlgebraError::DivisionByZero => EdsError::InvalidInput(
            "the denominator a3*c4 + gamma*(16a2a4 - 36a3^2) vanishes".into(),
        ),
        e => e.into(),
    })?;
    let flipped = ext.conj(&coordinate);
    if !ext.is_one(&ext.mul(&coordinate, &flipped)) {
        return Err(EdsError::ModelAssumption(
            "gamma -> -gamma does not invert the coordinate".into(),
        ));
    }
    Ok(NodalFiberData {
        node_x,
        node_y,
        gamma_squared,
        ext,
        coordinate,
    })
}

/// Least `k ≤ bound` with `x^k = 1`.
pub fn root_of_unity_order<F: Field>(k: &F, x: &F::Elem, bound: u64) -> Option<u64> {
    if k.is_zero(x) {
        return None;
    }
    let mut acc = x.clone();
    for e in 1..=bound {
        if k.is_one(&acc) {
            return Some(e);
        }
        acc = k.mul(&acc, x);
    }
    None
}

/// Least `k ≤ bound` with `x^k = 1` in a quadratic extension (or split
/// algebra).
pub fn root_of_unity_order_quad<F: Field>(
    ext: &QuadExt<F>,
    x: &QuadElem<F::Elem>,
    bound: u64,
) -> Option<u64> {
    if ext.is_zero(x) {
        return None;
    }
    let mut acc = x.clone();
    for e in 1..=bound {
        if ext.is_one(&acc) {
            return Some(e);
        }
        acc = ext.mul(&acc, x);
    }
    None
}

/// A random chart point `(a₂, a₃, a₄)` with a nodal fiber: the cubic
/// `x³ + a₂x² + a₄x + a₃²/4` is `(x − x₀)²(x − x₁)` with `x₀ ≠ x₁`.
pub fn random_nodal_input<F: Field>(
    k: &F,
    rng: &mut dyn RngCore,
    height: u64,
) -> (F::Elem, F::Elem, F::Elem) {
    loop {
        let x0 = k.random(rng, height);
        let a3 = k.random(rng, height);
        if k.is_zero(&x0) || k.is_zero(&a3) {
            continue;
        }
        let four_x0sq = k.mul(&k.from_i64(4), &k.mul(&x0, &x0));
        let x1 = k.neg(&k.mul(&k.mul(&a3, &a3), &k.inv(&four_x0sq).unwrap()));
        if x0 == x1 {
            continue;
        }
        let a2 = k.neg(&k.add(&k.mul(&k.from_i64(2), &x0), &x1));
        let a4 = k.add(&k.mul(&x0, &x0), &k.mul(&k.from_i64(2), &k.mul(&x0, &x1)));
        return (a2, a3, a4);
    }
}
