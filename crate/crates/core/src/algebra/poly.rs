use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::field::Field;
use super::AlgebraError;

/// Operand length (in coefficients) below which products fall back to the
/// schoolbook method.
pub const KARATSUBA_THRESHOLD: usize = 32;

/// Minimal ring interface used by the multiplication kernels.
pub trait RingOps<T> {
    fn zero(&self) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn sub(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
}

pub struct FieldOps<'a, F>(pub &'a F);

impl<F: Field> RingOps<F::Elem> for FieldOps<'_, F> {
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
}

pub struct IntOps;

impl RingOps<BigInt> for IntOps {
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

fn schoolbook<T: Clone, R: RingOps<T>>(a: &[T], b: &[T], ops: &R) -> Vec<T> {
    let mut out = vec![ops.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ops.add(&out[i + j], &ops.mul(x, y));
        }
    }
    out
}

fn add_into<T: Clone, R: RingOps<T>>(acc: &mut [T], src: &[T], offset: usize, ops: &R) {
    for (i, v) in src.iter().enumerate() {
        acc[offset + i] = ops.add(&acc[offset + i], v);
    }
}

fn add_slices<T: Clone, R: RingOps<T>>(a: &[T], b: &[T], ops: &R) -> Vec<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ops.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}

/// Karatsuba product of dense coefficient vectors (lowest degree first).
/// The result may carry trailing zeros.
pub fn karatsuba<T: Clone, R: RingOps<T>>(a: &[T], b: &[T], threshold: usize, ops: &R) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let threshold = threshold.max(1);
    if a.len().min(b.len()) <= threshold {
        return schoolbook(a, b, ops);
    }
    let m = a.len().max(b.len()) / 2;
    let mut out = vec![ops.zero(); a.len() + b.len() - 1];
    if a.len() <= m || b.len() <= m {
        // one operand fits in the low half: split the other one only
        let (short, long) = if a.len() <= m { (a, b) } else { (b, a) };
        let (l0, l1) = long.split_at(m);
        add_into(&mut out, &karatsuba(short, l0, threshold, ops), 0, ops);
        add_into(&mut out, &karatsuba(short, l1, threshold, ops), m, ops);
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0, threshold, ops);
    let z2 = karatsuba(a1, b1, threshold, ops);
    let mut z1 = karatsuba(
        &add_slices(a0, a1, ops),
        &add_slices(b0, b1, ops),
        threshold,
        ops,
    );
    for (i, v) in z0.iter().enumerate() {
        z1[i] = ops.sub(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = ops.sub(&z1[i], v);
    }
    add_into(&mut out, &z0, 0, ops);
    add_into(&mut out, &z2, 2 * m, ops);
    // z1 may be one longer than the output window; its top entry is zero
    let room = out.len() - m;
    add_into(&mut out, &z1[..z1.len().min(room)], m, ops);
    out
}

/// Dense univariate polynomial in `t` over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &F) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field.clone(), vec![c])
    }

    /// The variable `t`.
    pub fn t(field: &F) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field.clone(), coeffs)
    }

    pub fn from_ints(field: &F, coeffs: &[i64]) -> Self {
        Self::new(
            field.clone(),
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Coefficients, lowest degree first, without trailing zeros.
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn same_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            })
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(&self.field, c.clone());
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(self.field.clone(), coeffs)
    }

    /// `t^n · self(1/t)`; requires `n >= deg self`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(self.deg() <= n as i64, "reversal length below degree");
        let mut coeffs = vec![self.field.zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Self::new(self.field.clone(), coeffs)
    }

    pub fn checked_div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let f = &self.field;
        let dl = d.leading()?;
        let inv = f.inv(dl)?;
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Some((Self::zero(f), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dn + 1];
        for i in (0..quot.len()).rev() {
            let c = f.mul(&rem[i + dn - 1], &inv);
            if !f.is_zero(&c) {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub(&rem[i + j], &f.mul(&c, dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dn - 1);
        Some((Self::new(f.clone(), quot), Self::new(f.clone(), rem)))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.checked_div_rem(d)
            .expect("polynomial division by zero")
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.checked_div_rem(d)?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "gcd across different fields");
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        self.field.gcd_poly(self, other)
    }

    /// `gcd` that reports a field mismatch instead of panicking.
    pub fn try_gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_field(other)?;
        Ok(self.gcd(other))
    }

    /// Returns `(g, s, u)` with `s·self + u·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = f.inv(lc).unwrap();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if they are coprime.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    /// Largest k with `g^k | self`; `self` must be nonzero and `g` nonconstant.
    pub fn multiplicity_of(&self, g: &Self) -> usize {
        assert!(!self.is_zero() && !g.is_constant());
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(g) {
            cur = q;
            k += 1;
        }
        k
    }

    pub fn map_coeffs<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target.clone(), self.coeffs.iter().map(f).collect())
    }

    /// Formats with a chosen variable name.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format(c);
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&s);
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Monic gcd by the Euclidean algorithm.
pub fn euclid_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_zero() {
        let r = r0.rem(&r1);
        r0 = std::mem::replace(&mut r1, r.monic());
    }
    r0.monic()
}

impl<F: Field> PartialOrd for Poly<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top down.
impl<F: Field> Ord for Poly<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(&self.format_with("t"))
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly[{}]({})", self.field.descriptor(), self)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        assert!(
            self.field == rhs.field,
            "polynomial sum across different fields"
        );
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let f = &self.field;
        Poly {
            field: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        assert!(
            self.field == rhs.field,
            "polynomial product across different fields"
        );
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::new(
            self.field.clone(),
            self.field.mul_poly(&self.coeffs, &rhs.coeffs),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Field> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Field> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}
