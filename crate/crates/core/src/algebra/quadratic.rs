use super::field::Field;
use super::AlgebraError;

/// `F[γ]/(γ² − r)`.
///
/// Built with [`QuadExt::field`] the radicand must be a non-square and the
/// result is a field. [`QuadExt::algebra`] accepts any radicand; when `r` is
/// a square the ring splits and some nonzero elements have no inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt<F: Field> {
    base: F,
    r: F::Elem,
    is_field: bool,
}

/// `u + vγ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem<E> {
    pub u: E,
    pub v: E,
}

impl<F: Field> QuadExt<F> {
    pub fn field(base: &F, r: F::Elem) -> Result<Self, AlgebraError> {
        if base.is_square(&r) {
            return Err(AlgebraError::SquareRadicand);
        }
        Ok(QuadExt {
            base: base.clone(),
            r,
            is_field: true,
        })
    }

    pub fn algebra(base: &F, r: F::Elem) -> Self {
        let is_field = !base.is_square(&r);
        QuadExt {
            base: base.clone(),
            r,
            is_field,
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn radicand(&self) -> &F::Elem {
        &self.r
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    pub fn elem(&self, u: F::Elem, v: F::Elem) -> QuadElem<F::Elem> {
        QuadElem { u, v }
    }

    pub fn embed(&self, u: F::Elem) -> QuadElem<F::Elem> {
        QuadElem {
            u,
            v: self.base.zero(),
        }
    }

    pub fn gamma(&self) -> QuadElem<F::Elem> {
        QuadElem {
            u: self.base.zero(),
            v: self.base.one(),
        }
    }

    pub fn zero(&self) -> QuadElem<F::Elem> {
        self.embed(self.base.zero())
    }

    pub fn one(&self) -> QuadElem<F::Elem> {
        self.embed(self.base.one())
    }

    pub fn is_zero(&self, a: &QuadElem<F::Elem>) -> bool {
        self.base.is_zero(&a.u) && self.base.is_zero(&a.v)
    }

    pub fn is_one(&self, a: &QuadElem<F::Elem>) -> bool {
        self.base.is_one(&a.u) && self.base.is_zero(&a.v)
    }

    pub fn add(&self, a: &QuadElem<F::Elem>, b: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        let f = &self.base;
        QuadElem {
            u: f.add(&a.u, &b.u),
            v: f.add(&a.v, &b.v),
        }
    }

    pub fn sub(&self, a: &QuadElem<F::Elem>, b: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        let f = &self.base;
        QuadElem {
            u: f.sub(&a.u, &b.u),
            v: f.sub(&a.v, &b.v),
        }
    }

    pub fn neg(&self, a: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        let f = &self.base;
        QuadElem {
            u: f.neg(&a.u),
            v: f.neg(&a.v),
        }
    }

    pub fn mul(&self, a: &QuadElem<F::Elem>, b: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        let f = &self.base;
        let u = f.add(&f.mul(&a.u, &b.u), &f.mul(&self.r, &f.mul(&a.v, &b.v)));
        let v = f.add(&f.mul(&a.u, &b.v), &f.mul(&a.v, &b.u));
        QuadElem { u, v }
    }

    /// `γ ↦ −γ`.
    pub fn conj(&self, a: &QuadElem<F::Elem>) -> QuadElem<F::Elem> {
        QuadElem {
            u: a.u.clone(),
            v: self.base.neg(&a.v),
        }
    }

    /// `u² − r v²`.
    pub fn norm(&self, a: &QuadElem<F::Elem>) -> F::Elem {
        let f = &self.base;
        f.sub(&f.mul(&a.u, &a.u), &f.mul(&self.r, &f.mul(&a.v, &a.v)))
    }

    pub fn inv(&self, a: &QuadElem<F::Elem>) -> Result<QuadElem<F::Elem>, AlgebraError> {
        if self.is_zero(a) {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm(a);
        let Some(ni) = self.base.inv(&n) else {
            return Err(if self.is_field {
                AlgebraError::InternalInconsistency(
                    "vanishing norm over a non-square radicand".into(),
                )
            } else {
                AlgebraError::DivisionByZero
            });
        };
        let c = self.conj(a);
        Ok(QuadElem {
            u: self.base.mul(&c.u, &ni),
            v: self.base.mul(&c.v, &ni),
        })
    }

    pub fn div(
        &self,
        a: &QuadElem<F::Elem>,
        b: &QuadElem<F::Elem>,
    ) -> Result<QuadElem<F::Elem>, AlgebraError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &QuadElem<F::Elem>, mut e: u64) -> QuadElem<F::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn format(&self, a: &QuadElem<F::Elem>) -> String {
        format!(
            "{} + ({})*gamma",
            self.base.format(&a.u),
            self.base.format(&a.v)
        )
    }
}
