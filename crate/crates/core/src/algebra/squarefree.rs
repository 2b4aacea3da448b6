use super::field::Field;
use super::poly::Poly;
use super::AlgebraError;

/// `f = unit · ∏ g^m` over the listed `(g, m)`, each `g` monic, squarefree,
/// pairwise coprime, sorted by multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition<F: Field> {
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> SquarefreeDecomposition<F> {
    pub fn reconstruct(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (g, m)| {
                &acc * &g.pow(*m as u32)
            })
    }

    /// Product of all layers, i.e. the squarefree kernel.
    pub fn radical(&self, field: &F) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::one(field), |acc, (g, _)| &acc * g)
    }
}

pub fn squarefree_decompose<F: Field>(
    f: &Poly<F>,
) -> Result<SquarefreeDecomposition<F>, AlgebraError> {
    let unit = f.leading().cloned().ok_or(AlgebraError::ZeroPolynomial)?;
    let mut factors = sff_monic(&f.monic());
    factors.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(SquarefreeDecomposition { unit, factors })
}

fn pth_root_poly<F: Field>(f: &Poly<F>) -> Poly<F> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| field.pth_root(c))
        .collect();
    Poly::new(field.clone(), coeffs)
}

fn sff_monic<F: Field>(f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let df = f.derivative();
    if df.is_zero() {
        // f is a p-th power
        for (g, m) in sff_monic(&pth_root_poly(f)) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides w");
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        c = c.exact_div(&y).expect("gcd divides c");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        // remaining factors have multiplicity divisible by p
        for (g, m) in sff_monic(&pth_root_poly(&c.monic())) {
            out.push((g, m * p));
        }
    }
    out
}
