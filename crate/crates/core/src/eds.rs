//! The divisor-valued elliptic divisibility sequence `Dₙ = O*(nP)`.
//!
//! Two routes compute `Dₙ`: pole orders of `x(nP)` on the minimal short
//! model, and zeros of the division polynomial `ψₙ` in the normalized chart.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::algebra::{Field, Poly, RatFunc};
use crate::divisor::{coprime_refine, place_basis};
use crate::error::{EdsError, Result};
use crate::weierstrass::local::{minimality_gap, ord, to_short};
use crate::weierstrass::{psi_polys, NormalizedTriple, Point, WeierstrassModel};

pub use crate::divisor::{Divisor, Place};

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Positive divisors of `n` in increasing order.
pub fn divisors_of(n: u64) -> Vec<u64> {
    (1..=n).filter(|m| n % m == 0).collect()
}

fn check_index<F: Field>(field: &F, n: u64) -> Result<()> {
    if n == 0 {
        return Err(EdsError::InvalidInput("index must be at least 1".into()));
    }
    let p = field.characteristic();
    if p != 0 && n % p == 0 {
        return Err(EdsError::Characteristic { n, p });
    }
    Ok(())
}

/// `O*(section)`: at each place, `max(0, −ord_v(X)/2)` for the coordinate
/// `X` of the minimal short model, which must be even.
pub fn divisor_of_section<F: Field>(
    model: &WeierstrassModel<F>,
    section: &Point<RatFunc<F>>,
    d: i64,
) -> Result<Divisor<F>> {
    let field = model.field().base().clone();
    let gap = minimality_gap(model)?;
    let dp = &gap.d_prime;
    if dp.degree() != d {
        return Err(EdsError::InvalidInput(format!(
            "bundle degree {d} does not match deg D' = {}",
            dp.degree()
        )));
    }
    let Point::Affine { x, .. } = to_short(model, section) else {
        return Err(EdsError::InvalidInput(
            "the section is the zero section".into(),
        ));
    };
    let support = dp.support_poly();
    let gap_support = gap.gap.support_poly();
    let mut layers = Vec::new();
    for g in place_basis(&field, &[x.den(), &support, &gap_support]) {
        let place = Place::Finite(g.clone());
        if let Some(m) = local_mult(&x, &place, dp.mult_at(&place), gap.gap.mult_at(&place))? {
            layers.push((g, m));
        }
    }
    let inf = local_mult(
        &x,
        &Place::Infinity,
        dp.infinity_mult(),
        gap.gap.infinity_mult(),
    )?
    .unwrap_or(0);
    Ok(Divisor::from_layers(&field, layers, inf))
}

fn local_mult<F: Field>(x: &RatFunc<F>, place: &Place<F>, e: i64, gap: i64) -> Result<Option<i64>> {
    let Some(o) = ord(x, place)? else {
        return Ok(None);
    };
    let v = o + 2 * e;
    if v >= 0 {
        return Ok(None);
    }
    if gap != 0 {
        return Err(EdsError::Minimality(format!(
            "the section meets O at {place}, where the model is not minimal"
        )));
    }
    if v % 2 != 0 {
        return Err(EdsError::ModelAssumption(format!(
            "odd pole order {} of x at {place}",
            -v
        )));
    }
    Ok(Some(-v / 2))
}

/// `Dₙ` as `O*(nP)` with `nP` from the group law.
pub fn dn_denominator_route<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    n: u64,
    d: i64,
) -> Result<Divisor<F>> {
    check_index(model.field().base(), n)?;
    let np = model.mul(n as i64, p);
    if np.is_infinity() {
        let order = model.torsion_order(p, n as usize).unwrap_or(n);
        return Err(EdsError::TorsionSection { order });
    }
    divisor_of_section(model, &np, d)
}

/// `Dₙ` from `ψₙ(a(t))`: its zeros, plus `(n² − 1)d − deg ψₙ` at ∞.
pub fn dn_psi_route<F: Field>(triple: &NormalizedTriple<F>, n: u64) -> Result<Divisor<F>> {
    let field = triple.field().clone();
    check_index(&field, n)?;
    let d = triple.d as i64;
    let gap = minimality_gap(&triple.model())?;
    if !gap.gap.is_zero() || gap.d != Divisor::infinity(&field, d) {
        return Err(EdsError::Minimality(format!(
            "the chart with d = {d} is not minimal: D = {}, D' = {}",
            gap.d, gap.d_prime
        )));
    }
    let psi = psi_polys(&triple.a2, &triple.a3, &triple.a4, n as usize)?;
    let pn = &psi[n as usize];
    if pn.is_zero() {
        let order = (1..=n).find(|&m| psi[m as usize].is_zero()).unwrap();
        return Err(EdsError::TorsionSection { order });
    }
    let inf = (n * n - 1) as i64 * d - pn.deg();
    if inf < 0 {
        return Err(EdsError::ModelAssumption(format!(
            "deg psi_{n} = {} exceeds (n^2-1)d",
            pn.deg()
        )));
    }
    Ok(Divisor::from_parts(&field, vec![(pn.clone(), 1)], inf))
}

/// `D′ₙ = Σ_{m|n} μ(n/m) D_m`.
pub fn new_part<F: Field>(
    n: u64,
    lookup: impl Fn(u64) -> Result<Divisor<F>>,
) -> Result<Divisor<F>> {
    let mut acc: Option<Divisor<F>> = None;
    for m in divisors_of(n) {
        let mu = mobius(n / m);
        if mu == 0 {
            continue;
        }
        let dm = lookup(m)?.scale(mu);
        acc = Some(match acc {
            None => dm,
            Some(a) => a.add(&dm),
        });
    }
    let out = acc.expect("n divides itself");
    if !out.is_effective() {
        return Err(EdsError::Inversion(format!("D'_{n} = {out}")));
    }
    Ok(out)
}

pub fn is_reduced<F: Field>(d: &Divisor<F>) -> bool {
    d.is_reduced()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GcdDegree {
    pub degree: i64,
    /// The derivative vanished identically.
    pub inseparable: bool,
}

/// `deg gcd(f, f′)`.
pub fn gcd_degree<F: Field>(f: &Poly<F>) -> GcdDegree {
    let df = f.derivative();
    if df.is_zero() && !f.is_constant() {
        return GcdDegree {
            degree: f.deg(),
            inseparable: true,
        };
    }
    let g = f.gcd(&df);
    GcdDegree {
        degree: g.deg().max(0),
        inseparable: false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsRecord<F: Field> {
    pub n: u64,
    pub dn: Divisor<F>,
    pub dn_prime: Divisor<F>,
    /// `D′ₙ` is reduced.
    pub reduced: bool,
    /// `deg gcd(fₙ, fₙ′)` for the finite part `fₙ` of `Dₙ`.
    pub gcd_degree: GcdDegree,
}

#[derive(Clone, Debug)]
pub struct ScanReport<F: Field> {
    pub n_max: u64,
    pub records: Vec<EdsRecord<F>>,
    /// Indices with non-reduced `D′ₘ`.
    pub m: BTreeSet<u64>,
    /// Places of multiplicity > 1 in `D′ₘ`, for `m ∈ M`.
    pub witnesses: BTreeMap<u64, Vec<(Place<F>, i64)>>,
    /// Union of the witness places.
    pub t: Vec<Place<F>>,
    /// Pairs `m₁ < m₂` whose new parts share a place.
    pub overlapping: Vec<(u64, u64)>,
    /// Pairs `m | n` with `Dₙ − Dₘ` not effective.
    pub divisibility_failures: Vec<(u64, u64)>,
    /// Indices divisible by the characteristic.
    pub skipped: Vec<u64>,
}

impl<F: Field> ScanReport<F> {
    pub fn disjoint(&self) -> bool {
        self.overlapping.is_empty()
    }

    pub fn record(&self, n: u64) -> Option<&EdsRecord<F>> {
        self.records.iter().find(|r| r.n == n)
    }
}

/// Computes `Dₙ`, `D′ₙ` for `n ≤ n_max` by the denominator route and
/// collects the non-reduced indices.
pub fn scan_m<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    d: i64,
    n_max: u64,
) -> Result<ScanReport<F>> {
    if n_max == 0 {
        return Err(EdsError::InvalidInput("n_max must be at least 1".into()));
    }
    let field = model.field().base().clone();
    let char_p = field.characteristic();
    let multiples = model.multiples(p, n_max as usize);
    if let Some(i) = multiples.iter().position(|q| q.is_infinity()) {
        return Err(EdsError::TorsionSection {
            order: i as u64 + 1,
        });
    }
    let (skipped, indices): (Vec<u64>, Vec<u64>) =
        (1..=n_max).partition(|n| char_p != 0 && n % char_p == 0);
    let computed: Vec<(u64, Divisor<F>)> = indices
        .par_iter()
        .map(|&n| divisor_of_section(model, &multiples[n as usize - 1], d).map(|dn| (n, dn)))
        .collect::<Result<_>>()?;
    let dn: BTreeMap<u64, Divisor<F>> = computed.into_iter().collect();
    let lookup = |m: u64| Ok(dn[&m].clone());

    let mut records = Vec::new();
    let mut m_set = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for &n in &indices {
        let dnp = new_part(n, lookup)?;
        let reduced = dnp.is_reduced();
        if !reduced {
            m_set.insert(n);
            let bad: Vec<(Place<F>, i64)> =
                dnp.places().into_iter().filter(|(_, k)| *k > 1).collect();
            witnesses.insert(n, bad);
        }
        records.push(EdsRecord {
            n,
            dn: dn[&n].clone(),
            dn_prime: dnp,
            reduced,
            gcd_degree: gcd_degree(&dn[&n].finite_poly()),
        });
    }

    let mut overlapping = Vec::new();
    for (i, a) in records.iter().enumerate() {
        for b in &records[i + 1..] {
            if !a.dn_prime.support_disjoint(&b.dn_prime) {
                overlapping.push((a.n, b.n));
            }
        }
    }
    let mut divisibility_failures = Vec::new();
    for &n in &indices {
        for m in divisors_of(n) {
            if m < n && !dn[&m].divides(&dn[&n]) {
                divisibility_failures.push((m, n));
            }
        }
    }

    let t = union_places(&field, witnesses.values().flatten().map(|(pl, _)| pl));
    Ok(ScanReport {
        n_max,
        records,
        m: m_set,
        witnesses,
        t,
        overlapping,
        divisibility_failures,
        skipped,
    })
}

fn union_places<'a, F: Field + 'a>(
    field: &F,
    places: impl Iterator<Item = &'a Place<F>>,
) -> Vec<Place<F>> {
    let mut finite = Vec::new();
    let mut inf = false;
    for pl in places {
        match pl {
            Place::Finite(g) => finite.push((g.clone(), 1)),
            Place::Infinity => inf = true,
        }
    }
    let mut handles: Vec<Poly<F>> = coprime_refine(finite)
        .into_iter()
        .flat_map(|(g, _)| field.split_places(&g).unwrap_or_else(|| vec![g]))
        .collect();
    handles.sort();
    let mut out: Vec<Place<F>> = handles.into_iter().map(Place::Finite).collect();
    if inf {
        out.push(Place::Infinity);
    }
    out
}

/// Outcome of comparing the two routes for one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteComparison<F: Field> {
    pub n: u64,
    pub denominator: Divisor<F>,
    pub psi: Divisor<F>,
    /// Agreement away from the zeros of Δ (and away from ∞ if ∞ is bad).
    pub agree_at_good_places: bool,
    /// Difference `psi − denominator` at bad places; recorded, not judged.
    pub bad_place_difference: Divisor<F>,
}

/// Both routes for `n ≤ n_max` not divisible by the characteristic.
pub fn compare_routes<F: Field>(
    triple: &NormalizedTriple<F>,
    n_max: u64,
) -> Result<Vec<RouteComparison<F>>> {
    let model = triple.model();
    let p = triple.point();
    let d = triple.d as i64;
    let delta = triple.discriminant();
    let inf_bad = delta.deg() < 12 * d;
    let char_p = triple.field().characteristic();
    (1..=n_max)
        .filter(|n| char_p == 0 || n % char_p != 0)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let den = dn_denominator_route(&model, &p, n, d)?;
            let psi = dn_psi_route(triple, n)?;
            let good_den = den.away_from(&delta, inf_bad);
            let good_psi = psi.away_from(&delta, inf_bad);
            let diff = psi.sub(&den);
            let bad = diff.sub(&diff.away_from(&delta, inf_bad));
            Ok(RouteComparison {
                n,
                agree_at_good_places: good_den == good_psi,
                denominator: den,
                psi,
                bad_place_difference: bad,
            })
        })
        .collect()
}
