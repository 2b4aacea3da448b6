use crate::algebra::{Field, FunctionField, Poly, RatFunc};
use crate::error::{EdsError, Result};

/// A point of a Weierstrass curve; `Infinity` is the zero section `O`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Infinity,
    Affine { x: E, y: E },
}

impl<E> Point<E> {
    pub fn affine(x: E, y: E) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&E> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

/// c₄, c₆, Δ and j = c₄³/Δ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants<E> {
    pub c4: E,
    pub c6: E,
    pub delta: E,
    pub j: Option<E>,
}

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` over a field `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weierstrass<K: Field> {
    k: K,
    pub a1: K::Elem,
    pub a2: K::Elem,
    pub a3: K::Elem,
    pub a4: K::Elem,
    pub a6: K::Elem,
}

/// A Weierstrass model of an elliptic surface: a curve over `F(t)`.
pub type WeierstrassModel<F> = Weierstrass<FunctionField<F>>;

impl<K: Field> Weierstrass<K> {
    /// Rejects characteristic 2 and 3 and singular curves.
    pub fn new(k: &K, a: [K::Elem; 5]) -> Result<Self> {
        let c = Self::unchecked(k, a);
        let p = k.characteristic();
        if p == 2 || p == 3 {
            return Err(EdsError::InvalidInput(format!(
                "characteristic {p} is not supported"
            )));
        }
        if k.is_zero(&c.discriminant()) {
            return Err(EdsError::InvalidInput(
                "discriminant vanishes identically".into(),
            ));
        }
        Ok(c)
    }

    /// Builds without the nonsingularity check (reductions at bad places).
    pub fn unchecked(k: &K, a: [K::Elem; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        Weierstrass {
            k: k.clone(),
            a1,
            a2,
            a3,
            a4,
            a6,
        }
    }

    /// The chart `y² + a₃y = x³ + a₂x² + a₄x`.
    pub fn normalized(k: &K, a2: K::Elem, a3: K::Elem, a4: K::Elem) -> Result<Self> {
        Self::new(k, [k.zero(), a2, a3, a4, k.zero()])
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn coefficients(&self) -> [&K::Elem; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_normalized(&self) -> bool {
        self.k.is_zero(&self.a1) && self.k.is_zero(&self.a6)
    }

    pub fn map<L: Field>(&self, target: &L, f: impl Fn(&K::Elem) -> L::Elem) -> Weierstrass<L> {
        Weierstrass::unchecked(target, self.coefficients().map(f))
    }

    fn c(&self, n: i64) -> K::Elem {
        self.k.from_i64(n)
    }

    pub fn b2(&self) -> K::Elem {
        let k = &self.k;
        k.add(&k.mul(&self.a1, &self.a1), &k.mul(&self.c(4), &self.a2))
    }

    pub fn b4(&self) -> K::Elem {
        let k = &self.k;
        k.add(&k.mul(&self.c(2), &self.a4), &k.mul(&self.a1, &self.a3))
    }

    pub fn b6(&self) -> K::Elem {
        let k = &self.k;
        k.add(&k.mul(&self.a3, &self.a3), &k.mul(&self.c(4), &self.a6))
    }

    pub fn b8(&self) -> K::Elem {
        let k = &self.k;
        let a1sq = k.mul(&self.a1, &self.a1);
        let t1 = k.mul(&a1sq, &self.a6);
        let t2 = k.mul(&self.c(4), &k.mul(&self.a2, &self.a6));
        let t3 = k.mul(&self.a1, &k.mul(&self.a3, &self.a4));
        let t4 = k.mul(&self.a2, &k.mul(&self.a3, &self.a3));
        let t5 = k.mul(&self.a4, &self.a4);
        k.sub(&k.add(&k.sub(&k.add(&t1, &t2), &t3), &t4), &t5)
    }

    pub fn c4(&self) -> K::Elem {
        let k = &self.k;
        let b2 = self.b2();
        k.sub(&k.mul(&b2, &b2), &k.mul(&self.c(24), &self.b4()))
    }

    pub fn c6(&self) -> K::Elem {
        let k = &self.k;
        let (b2, b4, b6) = (self.b2(), self.b4(), self.b6());
        let b2cu = k.mul(&b2, &k.mul(&b2, &b2));
        let t = k.sub(&k.mul(&self.c(36), &k.mul(&b2, &b4)), &b2cu);
        k.sub(&t, &k.mul(&self.c(216), &b6))
    }

    pub fn discriminant(&self) -> K::Elem {
        let k = &self.k;
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let t1 = k.neg(&k.mul(&k.mul(&b2, &b2), &b8));
        let t2 = k.mul(&self.c(8), &k.mul(&b4, &k.mul(&b4, &b4)));
        let t3 = k.mul(&self.c(27), &k.mul(&b6, &b6));
        let t4 = k.mul(&self.c(9), &k.mul(&b2, &k.mul(&b4, &b6)));
        k.add(&k.sub(&k.sub(&t1, &t2), &t3), &t4)
    }

    /// General b-formulary invariants.
    pub fn invariants(&self) -> Invariants<K::Elem> {
        let k = &self.k;
        let (c4, c6, delta) = (self.c4(), self.c6(), self.discriminant());
        debug_assert!(
            k.sub(&k.pow(&c4, 3), &k.mul(&c6, &c6)) == k.mul(&self.c(1728), &delta),
            "c4^3 - c6^2 = 1728 disc fails"
        );
        let j = k.div(&k.pow(&c4, 3), &delta);
        Invariants { c4, c6, delta, j }
    }

    pub fn is_on(&self, p: &Point<K::Elem>) -> bool {
        let k = &self.k;
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                let lhs = k.mul(y, &k.add(y, &k.add(&k.mul(&self.a1, x), &self.a3)));
                let rhs = k.add(
                    &k.mul(x, &k.add(&k.mul(x, &k.add(x, &self.a2)), &self.a4)),
                    &self.a6,
                );
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &Point<K::Elem>) -> Point<K::Elem> {
        let k = &self.k;
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let ny = k.sub(&k.neg(y), &k.add(&k.mul(&self.a1, x), &self.a3));
                Point::affine(x.clone(), ny)
            }
        }
    }

    /// Chord–tangent addition.
    pub fn add(&self, p: &Point<K::Elem>, q: &Point<K::Elem>) -> Point<K::Elem> {
        let k = &self.k;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q.clone(),
            (_, Point::Infinity) => return p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (lambda, nu) = if x1 == x2 {
            let s = k.add(&k.add(y1, y2), &k.add(&k.mul(&self.a1, x2), &self.a3));
            if k.is_zero(&s) {
                return Point::Infinity;
            }
            // tangent at p (here y1 = y2)
            let den = k.add(
                &k.add(&k.mul(&self.c(2), y1), &k.mul(&self.a1, x1)),
                &self.a3,
            );
            let x1sq = k.mul(x1, x1);
            let num_l = k.sub(
                &k.add(
                    &k.add(
                        &k.mul(&self.c(3), &x1sq),
                        &k.mul(&self.c(2), &k.mul(&self.a2, x1)),
                    ),
                    &self.a4,
                ),
                &k.mul(&self.a1, y1),
            );
            let num_n = k.sub(
                &k.add(
                    &k.add(&k.neg(&k.mul(&x1sq, x1)), &k.mul(&self.a4, x1)),
                    &k.mul(&self.c(2), &self.a6),
                ),
                &k.mul(&self.a3, y1),
            );
            let inv = k.inv(&den).expect("tangent denominator is nonzero");
            (k.mul(&num_l, &inv), k.mul(&num_n, &inv))
        } else {
            let inv = k.inv(&k.sub(x2, x1)).unwrap();
            let lambda = k.mul(&k.sub(y2, y1), &inv);
            let nu = k.mul(&k.sub(&k.mul(y1, x2), &k.mul(y2, x1)), &inv);
            (lambda, nu)
        };
        let x3 = k.sub(
            &k.sub(
                &k.add(&k.mul(&lambda, &lambda), &k.mul(&self.a1, &lambda)),
                &self.a2,
            ),
            &k.add(x1, x2),
        );
        let y3 = k.sub(
            &k.sub(&k.neg(&k.mul(&k.add(&lambda, &self.a1), &x3)), &nu),
            &self.a3,
        );
        Point::affine(x3, y3)
    }

    pub fn double(&self, p: &Point<K::Elem>) -> Point<K::Elem> {
        self.add(p, p)
    }

    /// `n·p` by double-and-add.
    pub fn mul(&self, n: i64, p: &Point<K::Elem>) -> Point<K::Elem> {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut m = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut pow = base;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            m >>= 1;
            if m > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// `[p, 2p, …, n·p]`, built by repeated addition.
    pub fn multiples(&self, p: &Point<K::Elem>, n: usize) -> Vec<Point<K::Elem>> {
        let mut out = Vec::with_capacity(n);
        let mut cur = Point::Infinity;
        for _ in 0..n {
            cur = self.add(&cur, p);
            out.push(cur.clone());
        }
        out
    }

    /// Least `n ≤ bound` with `n·p = O`.
    pub fn torsion_order(&self, p: &Point<K::Elem>, bound: usize) -> Option<u64> {
        let mut cur = Point::Infinity;
        for n in 1..=bound {
            cur = self.add(&cur, p);
            if cur.is_infinity() {
                return Some(n as u64);
            }
        }
        None
    }
}

/// Invariants of the chart `y² + a₃y = x³ + a₂x² + a₄x` from the closed forms
/// `c₄ = 16a₂² − 48a₄`, `c₆ = 288a₂a₄ − 64a₂³ − 216a₃²` and
/// `Δ = −16a₂³a₃² + 16a₂²a₄² + 72a₂a₃²a₄ − 27a₃⁴ − 64a₄³`.
pub fn invariants_of<K: Field>(
    k: &K,
    a2: &K::Elem,
    a3: &K::Elem,
    a4: &K::Elem,
) -> Invariants<K::Elem> {
    let n = |v: i64| k.from_i64(v);
    let a2sq = k.mul(a2, a2);
    let a3sq = k.mul(a3, a3);
    let c4 = k.sub(&k.mul(&n(16), &a2sq), &k.mul(&n(48), a4));
    let c6 = k.sub(
        &k.sub(
            &k.mul(&n(288), &k.mul(a2, a4)),
            &k.mul(&n(64), &k.mul(&a2sq, a2)),
        ),
        &k.mul(&n(216), &a3sq),
    );
    let terms = [
        k.mul(&n(-16), &k.mul(&k.mul(&a2sq, a2), &a3sq)),
        k.mul(&n(16), &k.mul(&a2sq, &k.mul(a4, a4))),
        k.mul(&n(72), &k.mul(a2, &k.mul(&a3sq, a4))),
        k.mul(&n(-27), &k.mul(&a3sq, &a3sq)),
        k.mul(&n(-64), &k.pow(a4, 3)),
    ];
    let delta = terms.iter().fold(k.zero(), |acc, t| k.add(&acc, t));
    debug_assert!(k.sub(&k.pow(&c4, 3), &k.mul(&c6, &c6)) == k.mul(&n(1728), &delta));
    let j = k.div(&k.pow(&c4, 3), &delta);
    Invariants { c4, c6, delta, j }
}

/// A triple `(a₂, a₃, a₄)` of polynomials with `deg aᵢ ≤ i·d` and `Δ ≠ 0`:
/// the chart model together with `P = (0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedTriple<F: Field> {
    pub a2: Poly<F>,
    pub a3: Poly<F>,
    pub a4: Poly<F>,
    pub d: u32,
}

impl<F: Field> NormalizedTriple<F> {
    pub fn new(a2: Poly<F>, a3: Poly<F>, a4: Poly<F>, d: u32) -> Result<Self> {
        a2.same_field(&a3)?;
        a2.same_field(&a4)?;
        for (name, a, w) in [("a2", &a2, 2), ("a3", &a3, 3), ("a4", &a4, 4)] {
            if a.deg() > (w * d) as i64 {
                return Err(EdsError::InvalidInput(format!(
                    "deg {name} = {} exceeds {w}·d = {}",
                    a.deg(),
                    w * d
                )));
            }
        }
        let t = NormalizedTriple { a2, a3, a4, d };
        if t.discriminant().is_zero() {
            return Err(EdsError::InvalidInput(
                "discriminant vanishes identically".into(),
            ));
        }
        Ok(t)
    }

    pub fn field(&self) -> &F {
        self.a2.field()
    }

    pub fn function_field(&self) -> FunctionField<F> {
        FunctionField::new(self.field().clone())
    }

    pub fn invariants(&self) -> Invariants<Poly<F>> {
        let k = self.function_field();
        let inv = invariants_of(
            &k,
            &RatFunc::from_poly(self.a2.clone()),
            &RatFunc::from_poly(self.a3.clone()),
            &RatFunc::from_poly(self.a4.clone()),
        );
        let p = |r: RatFunc<F>| r.as_poly().expect("polynomial invariants").clone();
        Invariants {
            c4: p(inv.c4),
            c6: p(inv.c6),
            delta: p(inv.delta),
            j: None,
        }
    }

    pub fn discriminant(&self) -> Poly<F> {
        self.invariants().delta
    }

    pub fn model(&self) -> WeierstrassModel<F> {
        let k = self.function_field();
        Weierstrass::normalized(
            &k,
            RatFunc::from_poly(self.a2.clone()),
            RatFunc::from_poly(self.a3.clone()),
            RatFunc::from_poly(self.a4.clone()),
        )
        .expect("validated at construction")
    }

    /// The marked section `P = (0, 0)`.
    pub fn point(&self) -> Point<RatFunc<F>> {
        let z = RatFunc::zero(self.field());
        Point::affine(z.clone(), z)
    }
}
