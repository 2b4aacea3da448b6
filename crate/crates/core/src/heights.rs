//! Intersection numbers of sections and the height pairing.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{Field, RatFunc};
use crate::eds::{dn_denominator_route, Place};
use crate::error::{EdsError, Result};
use crate::weierstrass::local::{bad_fibers, section_torsion_order};
use crate::weierstrass::{
    component_of_section, ComponentKind, KodairaType, Point, WeierstrassModel,
};

/// `(nP).O = deg Dₙ`.
pub fn intersection_with_zero<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    n: u64,
    d: i64,
) -> Result<i64> {
    Ok(dn_denominator_route(model, p, n, d)?.degree())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntersectionMethod {
    DegreeOfDn,
    Translation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub n: u64,
    pub m: u64,
    pub value: i64,
    pub method: IntersectionMethod,
}

/// `(nP).(mP) = (|n − m|P).O` by translation.
pub fn intersection_of_multiples<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    n: u64,
    m: u64,
    d: i64,
) -> Result<IntersectionReport> {
    if n == m {
        return Err(EdsError::InvalidInput(
            "(nP).(nP) is a self-intersection".into(),
        ));
    }
    let k = n.abs_diff(m);
    let value = intersection_with_zero(model, p, k, d)?;
    let method = if n == 0 || m == 0 {
        IntersectionMethod::DegreeOfDn
    } else {
        IntersectionMethod::Translation
    };
    Ok(IntersectionReport {
        n,
        m,
        value,
        method,
    })
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `ht(P) = 2d + 2(P.O)` when every fiber is irreducible; 0 for torsion.
pub fn height_irreducible_fibers<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    d: i64,
) -> Result<BigRational> {
    if section_torsion_order(model, p).is_some() {
        return Ok(rat(0));
    }
    for (place, ty) in bad_fibers(model)? {
        if !matches!(ty, KodairaType::I(1)) {
            return Err(EdsError::UnsupportedFiber(format!(
                "reducible fiber {ty} at {place}; use the corrected height"
            )));
        }
    }
    let po = intersection_with_zero(model, p, 1, d)?;
    Ok(rat(2 * d + 2 * po))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCorrection<F: Field> {
    pub place: Place<F>,
    pub kind: KodairaType,
    pub component: ComponentKind,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport<F: Field> {
    pub d: i64,
    pub p_dot_o: i64,
    pub corrections: Vec<FiberCorrection<F>>,
    pub ht: BigRational,
    /// Order of `P` when torsion was detected; `ht` is then 0.
    pub torsion_order: Option<u64>,
}

impl<F: Field> HeightReport<F> {
    pub fn total_correction(&self) -> BigRational {
        self.corrections
            .iter()
            .fold(rat(0), |acc, c| acc + &c.value)
    }
}

/// `ht(P) = 2d + 2(P.O) − Σ corr_v` with `corr_v = 1` per geometric place of
/// an I₀* fiber met in a non-identity component.
pub fn height_with_corrections<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    d: i64,
) -> Result<HeightReport<F>> {
    let fibers = bad_fibers(model)?;
    for (place, ty) in &fibers {
        match ty {
            KodairaType::I(1) | KodairaType::I0Star => {}
            _ => return Err(EdsError::UnsupportedFiber(format!("{ty} at {place}"))),
        }
    }
    if let Some(order) = section_torsion_order(model, p) {
        return Ok(HeightReport {
            d,
            p_dot_o: 0,
            corrections: Vec::new(),
            ht: rat(0),
            torsion_order: Some(order),
        });
    }
    let mut corrections = Vec::new();
    for (place, ty) in fibers {
        let component = component_of_section(model, p, &place)?;
        let value = match (&ty, component) {
            (KodairaType::I0Star, ComponentKind::NonIdentity) => rat(place.degree() as i64),
            _ => rat(0),
        };
        corrections.push(FiberCorrection {
            place,
            kind: ty,
            component,
            value,
        });
    }
    let p_dot_o = intersection_with_zero(model, p, 1, d)?;
    let mut report = HeightReport {
        d,
        p_dot_o,
        corrections,
        ht: rat(0),
        torsion_order: None,
    };
    report.ht = rat(2 * d + 2 * p_dot_o) - report.total_correction();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFormulaRow {
    pub n: u64,
    /// `deg Dₙ`.
    pub computed: i64,
    /// `d(n² − 1)`.
    pub predicted: i64,
    /// `(nP).P` via translation and its prediction `d((n−1)² − 1)`, for n ≥ 2.
    pub translated: Option<(i64, i64)>,
}

impl ClassFormulaRow {
    pub fn holds(&self) -> bool {
        self.computed == self.predicted && self.translated.is_none_or(|(a, b)| a == b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFormulaReport {
    pub rows: Vec<ClassFormulaRow>,
    /// Hypotheses that failed (reducible fibers, `P.O ≠ 0`).
    pub violations: Vec<String>,
}

impl ClassFormulaReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.rows.iter().all(ClassFormulaRow::holds)
    }
}

/// Checks `[nP] = n[P] + (1 − n)[O] + d(n² − n)[F]` through `(nP).O`.
pub fn class_formula_check<F: Field>(
    model: &WeierstrassModel<F>,
    p: &Point<RatFunc<F>>,
    d: i64,
    n_max: u64,
) -> Result<ClassFormulaReport> {
    let mut violations = Vec::new();
    for (place, ty) in bad_fibers(model)? {
        if !matches!(ty, KodairaType::I(1)) {
            violations.push(format!("fiber {ty} at {place} is reducible"));
        }
    }
    let po = intersection_with_zero(model, p, 1, d)?;
    if po != 0 {
        violations.push(format!("P.O = {po} is nonzero"));
    }
    let char_p = model.field().characteristic();
    let allowed = |n: u64| char_p == 0 || n % char_p != 0;
    let mut rows = Vec::new();
    for n in (1..=n_max).filter(|&n| allowed(n)) {
        let n_i = n as i64;
        let computed = intersection_with_zero(model, p, n, d)?;
        let translated = if n >= 2 && allowed(n - 1) {
            let v = intersection_of_multiples(model, p, n, 1, d)?.value;
            Some((v, d * ((n_i - 1) * (n_i - 1) - 1)))
        } else {
            None
        };
        rows.push(ClassFormulaRow {
            n,
            computed,
            predicted: d * (n_i * n_i - 1),
            translated,
        });
    }
    Ok(ClassFormulaReport { rows, violations })
}
