//! Binary forms f(u,v), the curve w^d = f(u,v), and its points.
//!
//! Coefficient convention, shared by every module and by all serialized
//! documents: a degree-d form is stored as `coeffs[0..=d]` with
//!
//! ```text
//! f(u,v) = Σ_{i=0}^{d} coeffs[i] · u^{d−i} · v^{i}
//! ```
//!
//! so `coeffs[0]` multiplies u^d and `coeffs[d]` multiplies v^d.

use alloc::vec::Vec;


use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::linalg::ExactMatrix;
use crate::poly;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    field: Field,
    degree: usize,
    coeffs: Vec<FieldElement>,
}

/// A projective point (a : b : c) with c^d = f(a, b), normalized so the first
/// nonzero coordinate among (a, b) equals 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

/// Genus of the smooth plane curve w^d = f(u,v): (d−1)(d−2)/2.
pub fn genus(d: usize) -> Result<usize> {
    if d < 1 {
        return Err(Error::DegreeTooSmall);
    }
    Ok((d - 1) * (d - 2) / 2)
}

impl BinaryForm {
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidForm);
        }
        if !coeffs.iter().all(|c| field.contains(c)) {
            return Err(Error::FieldMismatch);
        }
        if coeffs.iter().all(|c| field.is_zero(c)) {
            return Err(Error::InvalidForm);
        }
        let degree = coeffs.len() - 1;
        Ok(BinaryForm { field, degree, coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_integers(field: &Field, coeffs: &[i64]) -> Result<Self> {
        let elems = coeffs.iter().map(|&c| field.from_integer(c)).collect();
        BinaryForm::new(field.clone(), elems)
    }

    /// The Fermat-type form u^d + v^d.
    pub fn fermat(field: &Field, d: usize) -> Result<Self> {
        let mut coeffs = alloc::vec![field.zero(); d + 1];
        coeffs[0] = field.one();
        coeffs[d] = field.one();
        BinaryForm::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn genus(&self) -> usize {
        genus(self.degree).expect("degree ≥ 2")
    }

    /// f(a, b), by a Horner-style pass keeping one running power of b.
    pub fn evaluate(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        let f = &self.field;
        if !f.contains(a) || !f.contains(b) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.coeffs[0].clone();
        let mut b_pow = f.one();
        for c in &self.coeffs[1..] {
            b_pow = f.mul(&b_pow, b);
            acc = f.add(&f.mul(&acc, a), &f.mul(c, &b_pow));
        }
        Ok(acc)
    }

    /// The dehomogenization f(t, 1) as an ascending coefficient vector.
    fn dehomogenize(&self) -> Vec<FieldElement> {
        let mut g: Vec<FieldElement> = self.coeffs.iter().rev().cloned().collect();
        g = poly::trim(&self.field, g);
        g
    }

    /// Squarefreeness of f as a homogeneous form over the algebraic closure:
    /// gcd(f(t,1), f'(t,1)) is constant and v² does not divide f. Exact
    /// fields only.
    pub fn is_nondegenerate(&self) -> Result<bool> {
        if !self.field.is_exact() {
            return Err(Error::InexactField);
        }
        let f = &self.field;
        // v-multiplicity at least 2 means a repeated factor v
        if f.is_zero(&self.coeffs[0]) && f.is_zero(&self.coeffs[1]) {
            return Ok(false);
        }
        let g = self.dehomogenize();
        let dg = poly::derivative(f, &g);
        let gcd = poly::gcd(f, &g, &dg);
        Ok(gcd.len() == 1)
    }

    /// The curve w^d = f(u,v) is smooth iff f is nondegenerate and the
    /// characteristic does not divide d.
    pub fn curve_is_smooth(&self) -> bool {
        let ch = self.field.characteristic();
        if ch != 0 && self.degree as u64 % ch == 0 {
            return false;
        }
        self.is_nondegenerate().unwrap_or(false)
    }

    /// Substitution f(pu+qv, ru+sv) for g = [[p, q], [r, s]]; requires
    /// det(g) ≠ 0. Degree is unchanged and nondegeneracy is preserved.
    pub fn gl2_transform(&self, g: &ExactMatrix) -> Result<BinaryForm> {
        let f = &self.field;
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::DimensionMismatch);
        }
        if g.field() != f {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero(&g.det()?) {
            return Err(Error::SingularMatrix);
        }
        let d = self.degree;
        let lin1 = [g.entry(0, 0).clone(), g.entry(0, 1).clone()]; // pu + qv
        let lin2 = [g.entry(1, 0).clone(), g.entry(1, 1).clone()]; // ru + sv
        // powers of the two linear forms as homogeneous coefficient vectors
        let mut pow1: Vec<Vec<FieldElement>> = alloc::vec![alloc::vec![f.one()]];
        let mut pow2 = pow1.clone();
        for i in 1..=d {
            pow1.push(hom_mul(f, &pow1[i - 1], &lin1));
            pow2.push(hom_mul(f, &pow2[i - 1], &lin2));
        }
        let mut out = alloc::vec![f.zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let prod = hom_mul_full(f, &pow1[d - i], &pow2[i]);
            for (j, term) in prod.iter().enumerate() {
                out[j] = f.add(&out[j], &f.mul(c, term));
            }
        }
        BinaryForm::new(f.clone(), out)
    }

    /// All normalized projective points of w^d = f(u,v) over a finite field,
    /// in lexicographic order of (a, b, c) under the field's canonical
    /// element order.
    ///
    /// The target field is either the form's own (finite) field, or a prime
    /// field the form's coefficients reduce into (for forms over ℚ or a
    /// cyclotomic field).
    pub fn curve_points(&self, field: &Field) -> Result<Vec<CurvePoint>> {
        if !field.is_finite() {
            return Err(Error::InfiniteField);
        }
        let form = if self.field == *field {
            self.clone()
        } else {
            let map = crate::field::reduce::ReductionMap::to_prime(
                &self.field,
                field.characteristic(),
            )?;
            if map.target() != field {
                return Err(Error::FieldMismatch);
            }
            self.reduce(&map)?
        };
        let f = field;
        let d = form.degree as i64;
        let mut points = Vec::new();
        // (a, b) with a = 1, or (0, 1)
        let mut ab_pairs: Vec<(FieldElement, FieldElement)> = Vec::new();
        for b in f.elements()? {
            ab_pairs.push((f.one(), b));
        }
        ab_pairs.push((f.zero(), f.one()));
        for (a, b) in ab_pairs {
            let value = form.evaluate(&a, &b)?;
            for c in f.elements()? {
                if f.pow(&c, d)? == value {
                    points.push(CurvePoint { a: a.clone(), b: b.clone(), c });
                }
            }
        }
        points.sort_by(|x, y| {
            f.compare(&x.a, &y.a)
                .then_with(|| f.compare(&x.b, &y.b))
                .then_with(|| f.compare(&x.c, &y.c))
        });
        Ok(points)
    }

    /// Apply a reduction map to every coefficient.
    pub fn reduce(&self, map: &crate::field::reduce::ReductionMap) -> Result<BinaryForm> {
        let coeffs: Result<Vec<FieldElement>> = self.coeffs.iter().map(|c| map.map(c)).collect();
        BinaryForm::new(map.target().clone(), coeffs?)
    }
}

impl CurvePoint {
    /// Check membership and normalization for a given form.
    pub fn validate(&self, form: &BinaryForm) -> Result<()> {
        let f = form.field();
        for e in [&self.a, &self.b, &self.c] {
            if !f.contains(e) {
                return Err(Error::FieldMismatch);
            }
        }
        let normalized = if !f.is_zero(&self.a) {
            f.is_one(&self.a)
        } else {
            f.is_one(&self.b)
        };
        let on_curve = f.pow(&self.c, form.degree() as i64)?
            == form.evaluate(&self.a, &self.b)?;
        if !normalized || !on_curve {
            return Err(Error::NotOnCurve(
                f.format_element(&self.a),
                f.format_element(&self.b),
                f.format_element(&self.c),
            ));
        }
        Ok(())
    }
}

/// Product of homogeneous coefficient vectors (degree m and 1).
fn hom_mul(f: &Field, a: &[FieldElement], lin: &[FieldElement; 2]) -> Vec<FieldElement> {
    hom_mul_full(f, a, lin)
}

/// Convolution of two homogeneous coefficient vectors.
fn hom_mul_full(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = alloc::vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    out
}

/// Weil-bound sanity interval for the number of points of a smooth projective
/// curve of genus g over GF(q): |#C − (q+1)| ≤ 2g√q.
pub fn weil_bound_holds(count: usize, q: u64, g: usize) -> bool {
    let diff = (count as f64) - (q as f64 + 1.0);
    let bound = 2.0 * g as f64 * libm::sqrt(q as f64);
    diff.abs() <= bound + 1e-9
}
