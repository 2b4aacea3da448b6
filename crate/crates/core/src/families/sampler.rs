use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{Field, Poly, ResidueField};
use crate::divisor::Place;
use crate::eds::scan_m;
use crate::error::{EdsError, Result};
use crate::weierstrass::{psi_polys, NormalizedTriple};

use super::nodal::{nodal_gm_coordinate, root_of_unity_order_quad};
use super::witness::{in_v_delta, witness_family};

/// Coefficient height for random triples over ℚ.
const RATIONAL_HEIGHT: u64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadFiberFinding<F: Field> {
    /// Irreducible factor of Δ over a finite field, or `t − r` for a root
    /// `r ∈ ℚ`.
    pub handle: Poly<F>,
    /// Order of `P` in the smooth locus of the nodal fiber, if at most `n_max`.
    pub order: Option<u64>,
    /// The fiber could not be analysed (e.g. `P` is the node).
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord<F: Field> {
    pub index: usize,
    pub seed: u64,
    pub a2: Poly<F>,
    pub a3: Poly<F>,
    pub a4: Poly<F>,
    pub in_v_delta: bool,
    /// Least `n ≤ n_max` with `ψₙ(a) ≡ 0`.
    pub torsion_order: Option<u64>,
    /// `m ↦` places of multiplicity > 1 in `D′ₘ`.
    pub non_reduced: BTreeMap<u64, Vec<(Place<F>, i64)>>,
    pub bad_fibers: Vec<BadFiberFinding<F>>,
    /// Zeros of Δ not examined (irrational zeros over ℚ).
    pub unexamined_zeros: i64,
    pub error: Option<String>,
}

impl<F: Field> TrialRecord<F> {
    pub fn torsion_at_bad_fiber(&self) -> bool {
        self.bad_fibers.iter().any(|b| b.order.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport<F: Field> {
    pub field: F,
    pub d: u32,
    pub n_max: u64,
    pub seed: u64,
    pub records: Vec<TrialRecord<F>>,
}

impl<F: Field> SampleReport<F> {
    pub fn trials(&self) -> usize {
        self.records.len()
    }

    pub fn v_delta_hits(&self) -> usize {
        self.records.iter().filter(|r| r.in_v_delta).count()
    }

    pub fn torsion_sections(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.torsion_order.is_some())
            .count()
    }

    pub fn torsion_at_bad_fiber(&self) -> usize {
        self.records
            .iter()
            .filter(|r| r.torsion_at_bad_fiber())
            .count()
    }

    pub fn non_reduced_trials(&self) -> usize {
        self.records
            .iter()
            .filter(|r| !r.non_reduced.is_empty())
            .count()
    }

    pub fn unexamined_zeros(&self) -> i64 {
        self.records.iter().map(|r| r.unexamined_zeros).sum()
    }
}

/// Per-trial seed derived from the run seed.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn random_poly<F: Field>(field: &F, rng: &mut dyn RngCore, deg: u32) -> Poly<F> {
    let coeffs = (0..=deg)
        .map(|_| field.random(rng, RATIONAL_HEIGHT))
        .collect();
    Poly::new(field.clone(), coeffs)
}

/// Trial 0 is the witness `(0, 1, t^{4d})`; the others draw `deg aᵢ ≤ i·d`
/// uniformly (over ℚ from a bounded box).
pub fn sample_v_delta<F: Field>(
    field: &F,
    d: u32,
    trials: usize,
    n_max: u64,
    seed: u64,
) -> Result<SampleReport<F>> {
    if trials == 0 {
        return Err(EdsError::InvalidInput("trials must be at least 1".into()));
    }
    if d == 0 || n_max == 0 {
        return Err(EdsError::InvalidInput(
            "d and n_max must be at least 1".into(),
        ));
    }
    let records = (0..trials)
        .into_par_iter()
        .map(|i| run_trial(field, d, n_max, i, trial_seed(seed, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SampleReport {
        field: field.clone(),
        d,
        n_max,
        seed,
        records,
    })
}

fn run_trial<F: Field>(
    field: &F,
    d: u32,
    n_max: u64,
    index: usize,
    seed: u64,
) -> Result<TrialRecord<F>> {
    let (a2, a3, a4) = if index == 0 {
        let w = witness_family(field, field.one(), d)?;
        (w.a2, w.a3, w.a4)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a2 = random_poly(field, &mut rng, 2 * d);
        let a3 = random_poly(field, &mut rng, 3 * d);
        let a4 = random_poly(field, &mut rng, 4 * d);
        (a2, a3, a4)
    };
    let mut rec = TrialRecord {
        index,
        seed,
        a2: a2.clone(),
        a3: a3.clone(),
        a4: a4.clone(),
        in_v_delta: false,
        torsion_order: None,
        non_reduced: BTreeMap::new(),
        bad_fibers: Vec::new(),
        unexamined_zeros: 0,
        error: None,
    };
    let Ok(triple) = NormalizedTriple::new(a2, a3, a4, d) else {
        return Ok(rec);
    };
    rec.in_v_delta = in_v_delta(&triple);
    if !rec.in_v_delta {
        return Ok(rec);
    }
    let psi = psi_polys(&triple.a2, &triple.a3, &triple.a4, n_max as usize)?;
    rec.torsion_order = (1..=n_max).find(|&n| psi[n as usize].is_zero());
    if rec.torsion_order.is_none() {
        match scan_m(&triple.model(), &triple.point(), d as i64, n_max) {
            Ok(scan) => rec.non_reduced = scan.witnesses,
            Err(e) if e.is_internal() => return Err(e),
            Err(e) => rec.error = Some(e.to_string()),
        }
    }
    let (findings, unexamined) = examine_bad_fibers(&triple, n_max)?;
    rec.bad_fibers = findings;
    rec.unexamined_zeros = unexamined;
    Ok(rec)
}

fn examine_bad_fibers<F: Field>(
    triple: &NormalizedTriple<F>,
    n_max: u64,
) -> Result<(Vec<BadFiberFinding<F>>, i64)> {
    let field = triple.field();
    let delta = triple.discriminant().monic();
    let handles: Vec<Poly<F>> = match field.split_places(&delta) {
        Some(places) => places,
        None => match field.roots(&delta) {
            Some(roots) => roots
                .into_iter()
                .map(|r| Poly::new(field.clone(), vec![field.neg(&r), field.one()]))
                .collect(),
            None => Vec::new(),
        },
    };
    let examined: i64 = handles.iter().map(|g| g.deg()).sum();
    let mut out = Vec::new();
    for g in handles {
        let l = ResidueField::new(&g)?;
        let (a2, a3, a4) = (
            l.reduce(&triple.a2),
            l.reduce(&triple.a3),
            l.reduce(&triple.a4),
        );
        let finding = match nodal_gm_coordinate(&l, &a2, &a3, &a4) {
            Ok(data) => BadFiberFinding {
                handle: g,
                order: root_of_unity_order_quad(&data.ext, &data.coordinate, n_max),
                note: None,
            },
            Err(e) if e.is_internal() => return Err(e),
            Err(e) => BadFiberFinding {
                handle: g,
                order: None,
                note: Some(e.to_string()),
            },
        };
        out.push(finding);
    }
    Ok((out, delta.deg() - examined))
}
