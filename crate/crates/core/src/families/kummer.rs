use crate::algebra::{Field, FunctionField, Poly, RatFunc};
use crate::divisor::Place;
use crate::error::{EdsError, Result};
use crate::weierstrass::local::{bad_fibers, minimality_gap};
use crate::weierstrass::{KodairaType, Point, Weierstrass, WeierstrassModel};

/// Coefficients of the monic cubic `x³ + ax² + bx + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerInput<E> {
    pub a: E,
    pub b: E,
    pub c: E,
}

impl<E: Clone> KummerInput<E> {
    pub fn new(a: E, b: E, c: E) -> Self {
        KummerInput { a, b, c }
    }
}

#[derive(Clone, Debug)]
pub struct KummerFamily<F: Field> {
    /// The cubic as a polynomial in `t`.
    pub f: Poly<F>,
    pub model: WeierstrassModel<F>,
    pub point: Point<RatFunc<F>>,
    pub d: i64,
    pub bad_fibers: Vec<(Place<F>, KodairaType)>,
}

/// `a²b² − 4b³ − 4a³c − 27c² + 18abc`.
pub fn cubic_discriminant<F: Field>(k: &F, input: &KummerInput<F::Elem>) -> F::Elem {
    let (a, b, c) = (&input.a, &input.b, &input.c);
    let n = |v: i64| k.from_i64(v);
    let terms = [
        k.mul(&k.mul(a, a), &k.mul(b, b)),
        k.mul(&n(-4), &k.pow(b, 3)),
        k.mul(&n(-4), &k.mul(&k.pow(a, 3), c)),
        k.mul(&n(-27), &k.mul(c, c)),
        k.mul(&n(18), &k.mul(&k.mul(a, b), c)),
    ];
    terms.iter().fold(k.zero(), |acc, t| k.add(&acc, t))
}

/// `y² = x³ + a f x² + b f² x + c f³` with `P = (t f, f²)`, where `f` is the
/// cubic in the variable `t`.
pub fn kummer_family<F: Field>(field: &F, input: &KummerInput<F::Elem>) -> Result<KummerFamily<F>> {
    if field.is_zero(&cubic_discriminant(field, input)) {
        return Err(EdsError::InvalidInput("the cubic is singular".into()));
    }
    let f = Poly::new(
        field.clone(),
        vec![
            input.c.clone(),
            input.b.clone(),
            input.a.clone(),
            field.one(),
        ],
    );
    let k = FunctionField::new(field.clone());
    let fr = RatFunc::from_poly(f.clone());
    let sc = |e: &F::Elem, r: RatFunc<F>| r.scale(e);
    let model = Weierstrass::new(
        &k,
        [
            k.zero(),
            sc(&input.a, fr.clone()),
            k.zero(),
            sc(&input.b, fr.pow(2)),
            sc(&input.c, fr.pow(3)),
        ],
    )?;
    let point = Point::affine(&k.t() * &fr, fr.pow(2));
    if !model.is_on(&point) {
        return Err(EdsError::ModelAssumption(
            "P is not on the Kummer model".into(),
        ));
    }
    if !minimality_gap(&model)?.gap.is_zero() {
        return Err(EdsError::ModelAssumption(
            "the Kummer model is not minimal".into(),
        ));
    }
    let fibers = bad_fibers(&model)?;
    let finite: Poly<F> = fibers.iter().fold(Poly::one(field), |acc, (p, _)| match p {
        Place::Finite(g) => &acc * g,
        Place::Infinity => acc,
    });
    let all_star = fibers.iter().all(|(_, ty)| *ty == KodairaType::I0Star);
    let has_inf = fibers.iter().any(|(p, _)| *p == Place::Infinity);
    if !all_star || !has_inf || finite != f {
        return Err(EdsError::ModelAssumption(format!(
            "unexpected bad fibers: {}",
            fibers
                .iter()
                .map(|(p, t)| format!("{t} at {p}"))
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(KummerFamily {
        f,
        model,
        point,
        d: 2,
        bad_fibers: fibers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use crate::weierstrass::component_of_section;
    use crate::weierstrass::ComponentKind;

    #[test]
    fn kummer_x3_plus_1() {
        let q = Rationals;
        let fam = kummer_family(
            &q,
            &KummerInput::new(q.from_i64(0), q.from_i64(0), q.from_i64(1)),
        )
        .unwrap();
        assert_eq!(fam.f, Poly::from_ints(&q, &[1, 0, 0, 1]));
        // over ℚ the three roots of f form one unsplit handle
        assert_eq!(fam.bad_fibers.len(), 2);
        for (place, _) in &fam.bad_fibers {
            let want = if *place == Place::Infinity {
                ComponentKind::Identity
            } else {
                ComponentKind::NonIdentity
            };
            assert_eq!(
                component_of_section(&fam.model, &fam.point, place).unwrap(),
                want
            );
        }
    }

    #[test]
    fn singular_cubic_rejected() {
        let q = Rationals;
        let input = KummerInput::new(q.from_i64(0), q.from_i64(0), q.from_i64(0));
        assert!(matches!(
            kummer_family(&q, &input),
            Err(EdsError::InvalidInput(_))
        ));
    }

    #[test]
    fn kummer_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let fam = kummer_family(&f, &KummerInput::new(2, 3, 1)).unwrap();
        assert!(fam
            .bad_fibers
            .iter()
            .all(|(_, t)| *t == KodairaType::I0Star));
    }
}
