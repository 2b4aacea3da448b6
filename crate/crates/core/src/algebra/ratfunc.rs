use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// An element of k(t) kept as `num/den` with `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self, AlgebraError> {
        num.same_field(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return Self::zero(num.field());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        if !d.is_monic() {
            let inv = n.field().inv(d.leading().unwrap()).unwrap();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    /// Builds from parts already known to be coprime with monic denominator.
    fn from_reduced(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(den.is_monic());
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &F) -> Self {
        RatFunc {
            num: Poly::zero(field),
            den: Poly::one(field),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::from_poly(Poly::constant(field, c))
    }

    pub fn from_i64(field: &F, c: i64) -> Self {
        Self::constant(field, field.from_i64(c))
    }

    pub fn t(field: &F) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn field(&self) -> &F {
        self.num.field()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.is_polynomial() && self.num.is_constant()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.num.same_field(&other.num)?;
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field().is_zero(c) {
            return Self::zero(self.field());
        }
        Self::from_reduced(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        Self::from_reduced(base.num.pow(k), base.den.pow(k))
    }

    /// `deg den − deg num`; `None` for zero.
    pub fn ord_infinity(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.den.deg() - self.num.deg())
    }

    /// Multiplicity of the handle `g` in `num` minus that in `den`;
    /// `None` for zero.
    pub fn ord_at(&self, g: &Poly<F>) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let up = self.num.multiplicity_of(g) as i64;
        if up > 0 {
            return Some(up);
        }
        Some(-(self.den.multiplicity_of(g) as i64))
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &F::Elem) -> Option<F::Elem> {
        let f = self.field();
        let d = self.den.eval(x);
        f.div(&self.num.eval(x), &d)
    }

    /// Leading coefficient of the Laurent expansion at ∞, i.e. the value of
    /// `t^{ord_∞} · self` at ∞.
    pub fn leading_at_infinity(&self) -> Option<F::Elem> {
        let f = self.field();
        f.div(self.num.leading()?, self.den.leading().unwrap())
    }

    pub fn map_poly<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> G::Elem,
    ) -> Result<RatFunc<G>, AlgebraError> {
        RatFunc::new(
            self.num.map_coeffs(target, &f),
            self.den.map_coeffs(target, &f),
        )
    }

    pub fn format_with(&self, var: &str) -> String {
        if self.is_polynomial() {
            self.num.format_with(var)
        } else {
            format!(
                "({})/({})",
                self.num.format_with(var),
                self.den.format_with(var)
            )
        }
    }
}

impl<F: Field> fmt::Display for RatFunc<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.format_with("t"))
    }
}

impl<F: Field> fmt::Debug for RatFunc<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "RatFunc[{}]({})", self.field().descriptor(), self)
    }
}

impl<F: Field> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            let n = &self.num + &rhs.num;
            return RatFunc::from_poly(n);
        }
        // a/b + c/d with g = gcd(b, d)
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            let d = &self.den * &rhs.den;
            return if n.is_zero() {
                RatFunc::zero(self.field())
            } else {
                RatFunc::from_reduced(n, d)
            };
        }
        let b1 = self.den.exact_div(&g).unwrap();
        let d1 = rhs.den.exact_div(&g).unwrap();
        let n = &(&self.num * &d1) + &(&rhs.num * &b1);
        if n.is_zero() {
            return RatFunc::zero(self.field());
        }
        let h = n.gcd(&g);
        let (n, g) = if h.is_one() {
            (n, g)
        } else {
            (n.exact_div(&h).unwrap(), g.exact_div(&h).unwrap())
        };
        RatFunc::from_reduced(n, &(&b1 * &d1) * &g)
    }
}

impl<F: Field> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc::from_reduced(-&self.num, self.den.clone())
    }
}

impl<F: Field> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &Poly<F>, g: &Poly<F>| {
            if g.is_one() {
                p.clone()
            } else {
                p.exact_div(g).unwrap()
            }
        };
        let n = &cut(&self.num, &g1) * &cut(&rhs.num, &g2);
        let d = &cut(&self.den, &g2) * &cut(&rhs.den, &g1);
        RatFunc::from_reduced(n, d)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: &RatFunc<F>) -> RatFunc<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}
