//! Local data at places of ℙ¹: valuations, the minimality gap D − D′,
//! fiber types and components met by a section.

use std::fmt;

use num_integer::Integer;

use crate::algebra::{Field, Poly, RatFunc};
use crate::divisor::{place_basis, uniform_multiplicity, Divisor, Place};
use crate::error::{EdsError, Result};

use super::curve::{Point, Weierstrass, WeierstrassModel};

/// Order of vanishing at a place; `None` for the zero function.
pub fn ord<F: Field>(r: &RatFunc<F>, place: &Place<F>) -> Result<Option<i64>> {
    if r.is_zero() {
        return Ok(None);
    }
    match place {
        Place::Infinity => Ok(r.ord_infinity()),
        Place::Finite(g) => {
            let up = uniform_multiplicity(r.num(), g)? as i64;
            let down = uniform_multiplicity(r.den(), g)? as i64;
            Ok(Some(up - down))
        }
    }
}

/// Least `D` with `ord(fᵢ) + wᵢ·D ≥ 0` over the nonzero `fᵢ`.
fn weighted_bound(ords: &[(Option<i64>, i64)]) -> i64 {
    ords.iter()
        .filter_map(|(o, w)| o.map(|o| ceil_div(-o, *w)))
        .max()
        .expect("at least one nonzero coefficient")
}

/// Multiplies by a local uniformizer power: `g^k`, or `t^{-k}` at ∞.
fn twist<F: Field>(r: &RatFunc<F>, place: &Place<F>, k: i64) -> RatFunc<F> {
    let field = r.field();
    let pi = match place {
        Place::Finite(g) => RatFunc::from_poly(g.clone()),
        Place::Infinity => RatFunc::t(field).inv().unwrap(),
    };
    r * &pi.pow(k as i32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityGap<F: Field> {
    pub d: Divisor<F>,
    pub d_prime: Divisor<F>,
    pub gap: Divisor<F>,
}

fn model_polys<F: Field>(model: &WeierstrassModel<F>) -> Vec<Poly<F>> {
    let inv = model.invariants();
    let mut out = Vec::new();
    for r in model
        .coefficients()
        .into_iter()
        .chain([&inv.c4, &inv.c6, &inv.delta])
    {
        out.push(r.num().clone());
        out.push(r.den().clone());
    }
    out
}

const A_WEIGHTS: [i64; 5] = [1, 2, 3, 4, 6];

fn d_at<F: Field>(model: &WeierstrassModel<F>, place: &Place<F>) -> Result<i64> {
    let mut ords = Vec::new();
    for (a, w) in model.coefficients().into_iter().zip(A_WEIGHTS) {
        ords.push((ord(a, place)?, w));
    }
    Ok(weighted_bound(&ords))
}

fn d_prime_at<F: Field>(c4: &RatFunc<F>, c6: &RatFunc<F>, place: &Place<F>) -> Result<i64> {
    Ok(weighted_bound(&[
        (ord(c4, place)?, 4),
        (ord(c6, place)?, 6),
    ]))
}

/// `D` from the aᵢ (weights 1, 2, 3, 4, 6), `D′` from c₄, c₆ (weights 4, 6)
/// and the gap `D − D′`, whose support is the set of non-minimal places.
pub fn minimality_gap<F: Field>(model: &WeierstrassModel<F>) -> Result<MinimalityGap<F>> {
    let field = model.field().base().clone();
    let polys = model_polys(model);
    let refs: Vec<&Poly<F>> = polys.iter().collect();
    let inv = model.invariants();
    let mut dl = Vec::new();
    let mut dpl = Vec::new();
    for g in place_basis(&field, &refs) {
        let place = Place::Finite(g.clone());
        dl.push((g.clone(), d_at(model, &place)?));
        dpl.push((g, d_prime_at(&inv.c4, &inv.c6, &place)?));
    }
    let d_inf = d_at(model, &Place::Infinity)?;
    let dp_inf = d_prime_at(&inv.c4, &inv.c6, &Place::Infinity)?;
    let d = Divisor::from_layers(&field, dl, d_inf);
    let d_prime = Divisor::from_layers(&field, dpl, dp_inf);
    let gap = d.sub(&d_prime);
    if !gap.is_effective() {
        return Err(EdsError::Algebra(
            crate::algebra::AlgebraError::InternalInconsistency(format!(
                "minimality gap {gap} is not effective"
            )),
        ));
    }
    Ok(MinimalityGap { d, d_prime, gap })
}

/// `D′` alone: the twist making (c₄, c₆) integral and minimal everywhere.
pub fn minimal_twist<F: Field>(model: &WeierstrassModel<F>) -> Result<Divisor<F>> {
    Ok(minimality_gap(model)?.d_prime)
}

/// The short model `Y² = X³ − 27c₄X − 54c₆`, whose coefficient divisor equals
/// `D′` of the input.
pub fn minimal_model<F: Field>(model: &WeierstrassModel<F>) -> WeierstrassModel<F> {
    let k = model.field();
    let inv = model.invariants();
    Weierstrass::unchecked(
        k,
        [
            k.zero(),
            k.zero(),
            k.zero(),
            inv.c4.scale(&k.base().from_i64(-27)),
            inv.c6.scale(&k.base().from_i64(-54)),
        ],
    )
}

/// `X = 36x + 3b₂`, `Y = 108(2y + a₁x + a₃)`.
pub fn to_short<F: Field>(model: &WeierstrassModel<F>, p: &Point<RatFunc<F>>) -> Point<RatFunc<F>> {
    let k = model.field();
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => {
            let c = |v: i64| k.from_i64(v);
            let big_x = k.add(&k.mul(&c(36), x), &k.mul(&c(3), &model.b2()));
            let inner = k.add(&k.add(&k.mul(&c(2), y), &k.mul(&model.a1, x)), &model.a3);
            Point::affine(big_x, k.mul(&c(108), &inner))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I0,
    I(u32),
    I0Star,
    UnsupportedOther { ord_delta: i64, ord_c4: Option<i64> },
}

impl KodairaType {
    /// Classification of a minimal model by `(ord Δ, ord c₄)`; `None` means
    /// c₄ vanishes identically.
    pub fn classify(ord_delta: i64, ord_c4: Option<i64>) -> Self {
        match (ord_delta, ord_c4) {
            (0, _) => KodairaType::I0,
            (m, Some(0)) if m >= 1 => KodairaType::I(m as u32),
            (6, None) => KodairaType::I0Star,
            (6, Some(c)) if c >= 2 => KodairaType::I0Star,
            _ => KodairaType::UnsupportedOther { ord_delta, ord_c4 },
        }
    }

    pub fn is_good(&self) -> bool {
        *self == KodairaType::I0
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I0 => f.write_str("I0"),
            KodairaType::I(m) => write!(f, "I{m}"),
            KodairaType::I0Star => f.write_str("I0*"),
            KodairaType::UnsupportedOther { ord_delta, ord_c4 } => match ord_c4 {
                Some(c) => write!(f, "other(ord_delta={ord_delta}, ord_c4={c})"),
                None => write!(f, "other(ord_delta={ord_delta}, c4=0)"),
            },
        }
    }
}

/// Fiber type at a place, read off the minimal twist of (c₄, c₆, Δ).
pub fn fiber_type<F: Field>(model: &WeierstrassModel<F>, place: &Place<F>) -> Result<KodairaType> {
    let inv = model.invariants();
    let e = d_prime_at(&inv.c4, &inv.c6, place)?;
    let od = ord(&inv.delta, place)?.expect("nonzero discriminant") + 12 * e;
    let oc4 = ord(&inv.c4, place)?.map(|o| o + 4 * e);
    Ok(KodairaType::classify(od, oc4))
}

/// All places of bad reduction with their types, finite places first.
pub fn bad_fibers<F: Field>(model: &WeierstrassModel<F>) -> Result<Vec<(Place<F>, KodairaType)>> {
    let field = model.field().base().clone();
    let polys = model_polys(model);
    let refs: Vec<&Poly<F>> = polys.iter().collect();
    let mut out = Vec::new();
    let places = place_basis(&field, &refs)
        .into_iter()
        .map(Place::Finite)
        .chain([Place::Infinity]);
    for place in places {
        let ty = fiber_type(model, &place)?;
        if !ty.is_good() {
            out.push((place, ty));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Identity,
    NonIdentity,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Identity => "identity",
            ComponentKind::NonIdentity => "nonIdentity",
        })
    }
}

/// Whether `r` vanishes at every place of the handle, at none, or neither.
enum Vanishing {
    All,
    None,
}

fn vanishing<F: Field>(r: &RatFunc<F>, place: &Place<F>) -> Result<Vanishing> {
    match place {
        Place::Infinity => Ok(match r.ord_infinity() {
            None => Vanishing::All,
            Some(o) if o > 0 => Vanishing::All,
            _ => Vanishing::None,
        }),
        Place::Finite(g) => {
            let h = r.num().gcd(g);
            if h.is_constant() {
                Ok(Vanishing::None)
            } else if h.deg() == g.deg() {
                Ok(Vanishing::All)
            } else {
                Err(EdsError::NonUniformPlace(g.to_string()))
            }
        }
    }
}

/// Component of the fiber at `place` met by the section `p`: non-identity iff
/// `p` reduces to the singular point of the minimal Weierstrass fiber.
pub fn component_of_section<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    place: &Place<F>,
) -> Result<ComponentKind> {
    let ty = fiber_type(model, place)?;
    match ty {
        KodairaType::I0 => {
            return Err(EdsError::InvalidInput(format!(
                "{place} is a place of good reduction"
            )))
        }
        KodairaType::I(1) => return Ok(ComponentKind::Identity),
        _ => {}
    }
    let Point::Affine { x, y } = to_short(model, p) else {
        return Ok(ComponentKind::Identity);
    };
    let inv = model.invariants();
    let e = d_prime_at(&inv.c4, &inv.c6, place)?;
    let xt = twist(&x, place, 2 * e);
    let yt = twist(&y, place, 3 * e);
    let c4t = twist(&inv.c4, place, 4 * e);
    match ord(&xt, place)? {
        Some(o) if o < 0 => return Ok(ComponentKind::Identity),
        _ => {}
    }
    let k = model.field();
    let dx = k.sub(
        &k.mul(&k.from_i64(3), &k.mul(&xt, &xt)),
        &k.mul(&k.from_i64(27), &c4t),
    );
    match (vanishing(&yt, place)?, vanishing(&dx, place)?) {
        (Vanishing::All, Vanishing::All) => Ok(ComponentKind::NonIdentity),
        (Vanishing::None, _) | (_, Vanishing::None) => {
            if let Place::Finite(g) = place {
                // some places may satisfy both conditions even if neither is uniform
                let h = yt.num().gcd(g).gcd(dx.num());
                if !h.is_constant() {
                    return Err(EdsError::NonUniformPlace(g.to_string()));
                }
            }
            Ok(ComponentKind::Identity)
        }
    }
}

/// Degree `d` of the line bundle: `deg D′`.
pub fn bundle_degree<F: Field>(model: &WeierstrassModel<F>) -> Result<i64> {
    Ok(minimal_twist(model)?.degree())
}

/// Integer helper shared with callers that need ⌈a/b⌉ for b > 0.
pub fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Largest field size for which the specialized order is found by stepping.
const STEP_LIMIT: u64 = 1 << 20;

/// Torsion order of a section, found by specializing at good places of
/// degree one and confirming candidate orders over k(t). In characteristic
/// zero a specialized order above 12 proves the section has infinite order.
pub fn section_torsion_order<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
) -> Option<u64> {
    if p.is_infinity() {
        return Some(1);
    }
    let Point::Affine { x, y } = p else {
        unreachable!()
    };
    let base = model.field().base().clone();
    let q = base.order().map(|o| u64::try_from(o).unwrap_or(u64::MAX));
    if q.is_some_and(|q| q > STEP_LIMIT) {
        return model.torsion_order(p, 12);
    }
    let delta = model.discriminant();
    let mut gcd: Option<u64> = None;
    let mut found = 0;
    let tries = q.map_or(64, |q| q.min(256));
    for i in 0..tries as i64 {
        let t0 = base.from_i64(i);
        let at = |r: &RatFunc<F>| r.eval(&t0);
        let Some(dv) = at(&delta) else { continue };
        if base.is_zero(&dv) {
            continue;
        }
        let vals: Option<Vec<F::Elem>> = model.coefficients().into_iter().map(at).collect();
        let (Some(vals), Some(x0), Some(y0)) = (vals, at(x), at(y)) else {
            continue;
        };
        let fiber = Weierstrass::unchecked(
            &base,
            [
                vals[0].clone(),
                vals[1].clone(),
                vals[2].clone(),
                vals[3].clone(),
                vals[4].clone(),
            ],
        );
        let pt = Point::affine(x0, y0);
        let order = match q {
            None => fiber.torsion_order(&pt, 12)?,
            Some(q) => {
                let bound = q + 1 + 2 * ((q as f64).sqrt() as u64 + 1);
                fiber
                    .torsion_order(&pt, bound as usize)
                    .expect("finite group")
            }
        };
        gcd = Some(gcd.map_or(order, |g| g.gcd(&order)));
        found += 1;
        if q.is_none() || gcd == Some(1) || found >= 8 {
            break;
        }
    }
    match gcd {
        None => model.torsion_order(p, 12),
        Some(g) => (2..=g)
            .filter(|m| g % m == 0)
            .find(|&m| model.mul(m as i64, p).is_infinity()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FunctionField, PrimeField, Rationals};
    use crate::weierstrass::NormalizedTriple;
    use num_rational::BigRational;

    fn q(c: &[i64]) -> Poly<Rationals> {
        Poly::from_ints(&Rationals, c)
    }

    fn t_pow(c: i64, e: i32) -> RatFunc<Rationals> {
        RatFunc::t(&Rationals)
            .pow(e)
            .scale(&BigRational::from_integer(c.into()))
    }

    #[test]
    fn section_five_three_gap() {
        let k = FunctionField::new(Rationals);
        let a4 = &t_pow(3, -4) + &t_pow(1, 2);
        let m = Weierstrass::normalized(&k, t_pow(3, -2), t_pow(2, -3), a4).unwrap();
        let g = minimality_gap(&m).unwrap();
        let t = q(&[0, 1]);
        assert_eq!(
            g.d,
            Divisor::from_layers(&Rationals, vec![(t.clone(), 1)], 1)
        );
        assert_eq!(g.d_prime, Divisor::infinity(&Rationals, 1));
        assert_eq!(g.gap, Divisor::from_layers(&Rationals, vec![(t, 1)], 0));
        // the short model has no gap
        assert!(minimality_gap(&minimal_model(&m)).unwrap().gap.is_zero());
    }

    #[test]
    fn witness_fibers_are_nodal() {
        let mut t4 = vec![0; 5];
        t4[4] = 1;
        let tr = NormalizedTriple::new(q(&[]), q(&[1]), q(&t4), 1).unwrap();
        let m = tr.model();
        assert!(minimality_gap(&m).unwrap().gap.is_zero());
        let bad = bad_fibers(&m).unwrap();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].1, KodairaType::I(1));
        assert_eq!(bad[0].0.degree(), 12);
        assert_eq!(bundle_degree(&m).unwrap(), 1);
    }

    #[test]
    fn classification_table() {
        assert_eq!(KodairaType::classify(0, Some(3)), KodairaType::I0);
        assert_eq!(KodairaType::classify(3, Some(0)), KodairaType::I(3));
        assert_eq!(KodairaType::classify(6, Some(2)), KodairaType::I0Star);
        assert_eq!(KodairaType::classify(6, None), KodairaType::I0Star);
        assert!(matches!(
            KodairaType::classify(2, Some(1)),
            KodairaType::UnsupportedOther { .. }
        ));
    }

    #[test]
    fn kummer_components() {
        for field_is_q in [true, false] {
            if field_is_q {
                check_kummer(Rationals);
            } else {
                check_kummer(PrimeField::new(7).unwrap());
            }
        }
    }

    fn check_kummer<F: Field>(base: F) {
        let k = FunctionField::new(base.clone());
        let f = RatFunc::from_poly(Poly::from_ints(&base, &[1, 0, 0, 1]));
        let z = k.zero();
        let m = Weierstrass::new(&k, [z.clone(), z.clone(), z.clone(), z, f.pow(3)]).unwrap();
        let p = Point::affine(&k.t() * &f, f.pow(2));
        assert!(minimality_gap(&m).unwrap().gap.is_zero());
        let bad = bad_fibers(&m).unwrap();
        assert!(bad.iter().all(|(_, ty)| *ty == KodairaType::I0Star));
        let deg: usize = bad.iter().map(|(pl, _)| pl.degree()).sum();
        assert_eq!(deg, 4);
        let p2 = m.double(&p);
        for (pl, _) in &bad {
            let c = component_of_section(&m, &p, pl).unwrap();
            let expect = if *pl == Place::Infinity {
                ComponentKind::Identity
            } else {
                ComponentKind::NonIdentity
            };
            assert_eq!(c, expect, "{pl}");
            assert_eq!(
                component_of_section(&m, &p2, pl).unwrap(),
                ComponentKind::Identity
            );
        }
        assert!(
            component_of_section(&m, &p, &Place::Finite(Poly::from_ints(&base, &[5, 1]))).is_err()
        );
    }

    #[test]
    fn ord_of_rational_functions() {
        let r = RatFunc::new(&q(&[-1, 1]).pow(3) * &q(&[2, 1]), q(&[0, 0, 1])).unwrap();
        assert_eq!(ord(&r, &Place::Finite(q(&[-1, 1]))).unwrap(), Some(3));
        assert_eq!(ord(&r, &Place::Finite(q(&[0, 1]))).unwrap(), Some(-2));
        assert_eq!(ord(&r, &Place::Infinity).unwrap(), Some(-2));
        assert!(ord(&r, &Place::Finite(q(&[-2, 1, 1]))).is_err());
    }
}
