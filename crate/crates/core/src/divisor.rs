//! Divisors on ℙ¹ over a field F.
//!
//! A finite place is stored through a monic squarefree *handle*. Over a
//! finite field each handle is irreducible, so handles are closed points.
//! Over ℚ nothing is factored: a handle is a bundle of places, and the
//! canonical form keeps one handle per multiplicity (the product of all
//! places carrying it). In both cases handles are pairwise coprime, so
//! equal divisors have equal representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{squarefree_decompose, Field, Poly};
use crate::error::{EdsError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place<F: Field> {
    Finite(Poly<F>),
    Infinity,
}

impl<F: Field> Place<F> {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(g) => g.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }
}

impl<F: Field> fmt::Display for Place<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(g) => write!(out, "({g} = 0)"),
            Place::Infinity => out.write_str("(t = oo)"),
        }
    }
}

/// Refines squarefree polynomials with integer weights into a pairwise
/// coprime family; weights of overlapping pieces add up.
pub fn coprime_refine<F: Field>(items: Vec<(Poly<F>, i64)>) -> Vec<(Poly<F>, i64)> {
    let mut basis: Vec<(Poly<F>, i64)> = Vec::new();
    let mut work = items;
    'outer: while let Some((g, m)) = work.pop() {
        if g.is_constant() {
            continue;
        }
        let g = g.monic();
        for i in 0..basis.len() {
            let h = basis[i].0.gcd(&g);
            if h.is_constant() {
                continue;
            }
            let (b, e) = basis.swap_remove(i);
            let b_rest = b.exact_div(&h).unwrap();
            let g_rest = g.exact_div(&h).unwrap();
            basis.push((h, e + m));
            if !b_rest.is_constant() {
                basis.push((b_rest, e));
            }
            if !g_rest.is_constant() {
                work.push((g_rest, m));
            }
            continue 'outer;
        }
        basis.push((g, m));
    }
    basis
}

/// Pairwise coprime squarefree handles whose products refine every layer of
/// the given polynomials; over finite fields the handles are irreducible.
pub fn place_basis<F: Field>(field: &F, polys: &[&Poly<F>]) -> Vec<Poly<F>> {
    let mut items = Vec::new();
    for p in polys {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        for (g, _) in squarefree_decompose(p).unwrap().factors {
            items.push((g, 0));
        }
    }
    let mut out: Vec<Poly<F>> = Vec::new();
    for (g, _) in coprime_refine(items) {
        match field.split_places(&g) {
            Some(parts) => out.extend(parts),
            None => out.push(g),
        }
    }
    out.sort();
    out
}

/// Multiplicity of the handle `g` in `p`, requiring every place of `g` to
/// carry the same one.
pub fn uniform_multiplicity<F: Field>(p: &Poly<F>, g: &Poly<F>) -> Result<usize> {
    let k = p.multiplicity_of(g);
    let rest = p.exact_div(&g.pow(k as u32)).unwrap();
    if rest.gcd(g).is_constant() {
        Ok(k)
    } else {
        Err(EdsError::NonUniformPlace(g.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Divisor<F: Field> {
    field: F,
    finite: BTreeMap<Poly<F>, i64>,
    infinity: i64,
}

impl<F: Field> Divisor<F> {
    pub fn zero(field: &F) -> Self {
        Divisor {
            field: field.clone(),
            finite: BTreeMap::new(),
            infinity: 0,
        }
    }

    pub fn infinity(field: &F, m: i64) -> Self {
        Divisor {
            infinity: m,
            ..Self::zero(field)
        }
    }

    /// From squarefree handles with multiplicities (handles may overlap).
    pub fn from_layers(field: &F, layers: Vec<(Poly<F>, i64)>, infinity: i64) -> Self {
        let refined = coprime_refine(layers);
        let mut finite: BTreeMap<Poly<F>, i64> = BTreeMap::new();
        let splits = field.order().is_some();
        if splits {
            for (g, m) in refined {
                if m == 0 {
                    continue;
                }
                for h in field.split_places(&g).unwrap() {
                    *finite.entry(h).or_default() += m;
                }
            }
        } else {
            let mut by_mult: BTreeMap<i64, Poly<F>> = BTreeMap::new();
            for (g, m) in refined {
                if m == 0 {
                    continue;
                }
                let slot = by_mult.entry(m).or_insert_with(|| Poly::one(field));
                *slot = &*slot * &g;
            }
            for (m, g) in by_mult {
                finite.insert(g, m);
            }
        }
        finite.retain(|_, m| *m != 0);
        Divisor {
            field: field.clone(),
            finite,
            infinity,
        }
    }

    /// From arbitrary nonzero polynomial handles.
    pub fn from_parts(field: &F, parts: Vec<(Poly<F>, i64)>, infinity: i64) -> Self {
        let mut layers = Vec::new();
        for (g, m) in parts {
            if g.is_zero() {
                continue;
            }
            for (h, k) in squarefree_decompose(&g).unwrap().factors {
                layers.push((h, m * k as i64));
            }
        }
        Self::from_layers(field, layers, infinity)
    }

    /// Divisor of finite zeros of a nonzero polynomial.
    pub fn zeros_of(p: &Poly<F>) -> Self {
        Self::from_parts(p.field(), vec![(p.clone(), 1)], 0)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Finite part as (handle, multiplicity), ordered by handle.
    pub fn layers(&self) -> impl Iterator<Item = (&Poly<F>, i64)> {
        self.finite.iter().map(|(g, m)| (g, *m))
    }

    pub fn infinity_mult(&self) -> i64 {
        self.infinity
    }

    pub fn degree(&self) -> i64 {
        self.finite.iter().map(|(g, m)| m * g.deg()).sum::<i64>() + self.infinity
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.infinity == 0
    }

    pub fn is_effective(&self) -> bool {
        self.infinity >= 0 && self.finite.values().all(|&m| m >= 0)
    }

    /// Every nonzero multiplicity equals 1.
    pub fn is_reduced(&self) -> bool {
        self.infinity <= 1 && self.infinity >= 0 && self.finite.values().all(|&m| m == 1)
    }

    fn combine(&self, other: &Self, s: i64) -> Self {
        assert!(self.field == other.field, "divisors over different fields");
        let mut layers: Vec<(Poly<F>, i64)> =
            self.finite.iter().map(|(g, m)| (g.clone(), *m)).collect();
        layers.extend(other.finite.iter().map(|(g, m)| (g.clone(), s * m)));
        Self::from_layers(&self.field, layers, self.infinity + s * other.infinity)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(&self.field);
        }
        let layers = self
            .finite
            .iter()
            .map(|(g, m)| (g.clone(), k * m))
            .collect();
        Self::from_layers(&self.field, layers, k * self.infinity)
    }

    /// `self ≤ other`, i.e. `other − self` is effective.
    pub fn divides(&self, other: &Self) -> bool {
        other.sub(self).is_effective()
    }

    /// Product of the finite handles (the reduced finite support).
    pub fn support_poly(&self) -> Poly<F> {
        self.finite
            .keys()
            .fold(Poly::one(&self.field), |acc, g| &acc * g)
    }

    /// `∏ gᵐ` over the finite part with positive multiplicities.
    pub fn finite_poly(&self) -> Poly<F> {
        self.finite
            .iter()
            .filter(|(_, m)| **m > 0)
            .fold(Poly::one(&self.field), |acc, (g, m)| {
                &acc * &g.pow(*m as u32)
            })
    }

    pub fn support_disjoint(&self, other: &Self) -> bool {
        if self.infinity != 0 && other.infinity != 0 {
            return false;
        }
        self.support_poly().gcd(&other.support_poly()).is_constant()
    }

    /// The part supported away from the zeros of `bad` (and away from ∞ when
    /// `drop_infinity`).
    pub fn away_from(&self, bad: &Poly<F>, drop_infinity: bool) -> Self {
        let mut layers = Vec::new();
        for (g, m) in &self.finite {
            let h = g.gcd(bad);
            let rest = if h.is_constant() {
                g.clone()
            } else {
                g.exact_div(&h).unwrap()
            };
            if !rest.is_constant() {
                layers.push((rest, *m));
            }
        }
        let inf = if drop_infinity { 0 } else { self.infinity };
        Self::from_layers(&self.field, layers, inf)
    }

    /// Multiplicity at a single place given by an irreducible (or uniform)
    /// handle.
    pub fn mult_at(&self, place: &Place<F>) -> i64 {
        match place {
            Place::Infinity => self.infinity,
            Place::Finite(p) => self
                .finite
                .iter()
                .find(|(g, _)| !g.gcd(p).is_constant())
                .map(|(_, m)| *m)
                .unwrap_or(0),
        }
    }

    /// Places (handles) with their multiplicities, ∞ last.
    pub fn places(&self) -> Vec<(Place<F>, i64)> {
        let mut out: Vec<(Place<F>, i64)> = self
            .finite
            .iter()
            .map(|(g, m)| (Place::Finite(g.clone()), *m))
            .collect();
        if self.infinity != 0 {
            out.push((Place::Infinity, self.infinity));
        }
        out
    }
}

impl<F: Field> fmt::Display for Divisor<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let parts: Vec<String> = self
            .places()
            .into_iter()
            .map(|(p, m)| {
                if m == 1 {
                    p.to_string()
                } else {
                    format!("{m}*{p}")
                }
            })
            .collect();
        out.write_str(&parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for Divisor<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Divisor[{}]({})", self.field.descriptor(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    #[test]
    fn canonical_over_q() {
        let a = Divisor::from_parts(&Rationals, vec![(q(&[-1, 1]), 1), (q(&[1, 1]), 2)], 0);
        assert!(!a.is_reduced());
        let b = Divisor::from_parts(&Rationals, vec![(q(&[-1, 0, 1]), 1)], 0);
        // (t-1) + 2(t+1) - (t^2-1) = (t+1)
        assert_eq!(a.sub(&b), Divisor::zeros_of(&q(&[1, 1])));
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.degree(), 3);
        assert!(Divisor::zero(&Rationals).is_reduced());
        // same divisor built in two ways
        let c = Divisor::zeros_of(&(&q(&[-1, 0, 1]) * &q(&[1, 1])));
        assert_eq!(a, c);
    }

    #[test]
    fn irreducible_handles_over_fp() {
        let f = PrimeField::new(5).unwrap();
        let d = Divisor::zeros_of(&Poly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(d.layers().count(), 2);
        let f7 = PrimeField::new(7).unwrap();
        let d = Divisor::zeros_of(&Poly::from_ints(&f7, &[1, 0, 1]));
        assert_eq!(d.layers().count(), 1);
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn non_uniform_handle_is_detected() {
        let p = &q(&[-1, 1]).pow(2) * &q(&[1, 1]);
        assert!(uniform_multiplicity(&p, &q(&[-1, 0, 1])).is_err());
        assert_eq!(uniform_multiplicity(&p, &q(&[-1, 1])).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn group_structure(
            a in prop::collection::vec((prop::collection::vec(-4i64..4, 2..4), -3i64..4), 0..4),
            b in prop::collection::vec((prop::collection::vec(-4i64..4, 2..4), -3i64..4), 0..4),
            ia in -3i64..3, ib in -3i64..3,
        ) {
            let mk = |v: &Vec<(Vec<i64>, i64)>, inf| Divisor::from_parts(
                &Rationals,
                v.iter().filter(|(c, _)| !q(c).is_zero()).map(|(c, m)| (q(c), *m)).collect(),
                inf,
            );
            let (da, db) = (mk(&a, ia), mk(&b, ib));
            prop_assert_eq!(da.add(&db).sub(&db), da.clone());
            prop_assert_eq!(da.add(&db).degree(), da.degree() + db.degree());
            prop_assert_eq!(da.add(&db), db.add(&da));
            prop_assert_eq!(da.scale(2), da.add(&da));
            // handles pairwise coprime
            let hs: Vec<_> = da.layers().map(|(g, _)| g.clone()).collect();
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    prop_assert!(hs[i].gcd(&hs[j]).is_one());
                }
            }
        }
    }
}
