//! Verified representation constructors.
//!
//! A `Representation` bundles a binary form f of degree d with a size-m
//! pencil satisfying (uA + vB)^d = f·I. Construction always re-verifies the
//! identity and the divisibility d | m, so a value of this type is evidence
//! that both hold; no constructor can emit an unverified object.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::{Field, FieldElement, FieldSpec};
use crate::form::BinaryForm;
use crate::linalg::ExactMatrix;
use crate::pencil::MatrixPencil;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    form: BinaryForm,
    pencil: MatrixPencil,
    r: usize,
}

impl Representation {
    /// Validate and wrap: requires d | m and the full Clifford identity.
    pub fn new(form: BinaryForm, pencil: MatrixPencil) -> Result<Self> {
        let d = form.degree();
        let m = pencil.size();
        if m == 0 || m % d != 0 {
            return Err(Error::DivisibilityViolation { d, m });
        }
        let report = pencil.clifford_check(&form)?;
        if !report.ok {
            return Err(Error::CliffordViolation { index: report.failing[0] });
        }
        Ok(Representation { form, pencil, r: m / d })
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn pencil(&self) -> &MatrixPencil {
        &self.pencil
    }

    pub fn field(&self) -> &Field {
        self.pencil.field()
    }

    pub fn d(&self) -> usize {
        self.form.degree()
    }

    pub fn m(&self) -> usize {
        self.pencil.size()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn genus(&self) -> usize {
        self.form.genus()
    }

    /// The clock–shift representation of f = u^d + v^d: A is the diagonal of
    /// d-th roots of unity, B the cyclic shift, so AB = ζBA and mixed terms
    /// of the expansion cancel. Needs a primitive d-th root of unity and
    /// char ∤ d.
    pub fn clock_shift(d: usize, field: &Field) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let zeta = field.primitive_root_of_unity(d as u64)?;
        let mut diag = Vec::with_capacity(d);
        let mut acc = field.one();
        for _ in 0..d {
            diag.push(acc.clone());
            acc = field.mul(&acc, &zeta);
        }
        let a = ExactMatrix::diagonal(field.clone(), &diag);
        let mut b = ExactMatrix::zero(field.clone(), d, d);
        for i in 0..d {
            b.set((i + 1) % d, i, field.one());
        }
        let form = BinaryForm::fermat(field, d)?;
        Representation::new(form, MatrixPencil::new(a, b)?)
    }

    /// Pull back along g = [[p,q],[r,s]]: the result represents
    /// f(pu+qv, ru+sv) via (A', B') = (pA + rB, qA + sB). Irreducibility is
    /// preserved (the generated algebra is unchanged).
    pub fn gl2_pullback(&self, g: &ExactMatrix) -> Result<Self> {
        let form = self.form.gl2_transform(g)?;
        let pencil = self.pencil.substitute(g)?;
        Representation::new(form, pencil)
    }

    /// Block-diagonal sum of two representations of the same form. Always
    /// reducible.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self> {
        if self.form != other.form {
            return Err(Error::FormMismatch);
        }
        let a = self.pencil.a().direct_sum(other.pencil.a());
        let b = self.pencil.b().direct_sum(other.pencil.b());
        Representation::new(self.form.clone(), MatrixPencil::new(a, b)?)
    }

    /// Conjugate by an invertible X: (XAX⁻¹, XBX⁻¹); equivalent to `self`.
    pub fn conjugate(&self, x: &ExactMatrix) -> Result<Self> {
        if x.rows() != self.m() || x.cols() != self.m() {
            return Err(Error::DimensionMismatch);
        }
        if x.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let inv = x.inverse()?;
        let a = x.mul(self.pencil.a())?.mul(&inv)?;
        let b = x.mul(self.pencil.b())?.mul(&inv)?;
        Representation::new(self.form.clone(), MatrixPencil::new(a, b)?)
    }

    /// Conjugate by a seeded random invertible matrix; deterministic for a
    /// given seed. Exact fields only. Generic seeds produce matrices that
    /// differ from the input, though no individual seed guarantees it.
    pub fn random_equivalent(&self, seed: u64) -> Representation {
        assert!(self.field().is_exact(), "random_equivalent needs an exact field");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.m();
        let field = self.field().clone();
        loop {
            let x = ExactMatrix::from_fn(field.clone(), m, m, |_, _| sample_element(&field, &mut rng));
            if let Ok(rep) = self.conjugate(&x) {
                return rep;
            }
        }
    }
}

/// Uniform element of a finite field; small integer-combination element in
/// characteristic zero (plain integers over ℚ, small generator polynomials
/// over cyclotomics).
pub(crate) fn sample_element<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FieldElement {
    match field.spec() {
        FieldSpec::PrimeField { .. } | FieldSpec::ExtensionField { .. } => {
            let q = field.order().expect("finite field order fits u64");
            field.element_from_index(rng.random_range(0..q)).unwrap()
        }
        FieldSpec::Rationals => field.from_integer(rng.random_range(-9..=9)),
        FieldSpec::Cyclotomic { .. } => {
            let gen = field.generator().unwrap();
            let (_, deg) = field.cyc_modulus();
            let mut acc = field.zero();
            let mut pw = field.one();
            for _ in 0..deg.max(1) {
                let c = field.from_integer(rng.random_range(-2..=2));
                acc = field.add(&acc, &field.mul(&c, &pw));
                pw = field.mul(&pw, &gen);
            }
            acc
        }
        FieldSpec::ComplexDouble => panic!("sampling exact elements requires an exact field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clock_shift_d2_over_q() {
        let q = Field::rationals();
        let rep = Representation::clock_shift(2, &q).unwrap();
        assert_eq!(rep.r(), 1);
        let a = rep.pencil().a();
        assert_eq!(a.entry(0, 0), &q.one());
        assert_eq!(a.entry(1, 1), &q.from_integer(-1));
        let b = rep.pencil().b();
        assert_eq!(b.entry(0, 1), &q.one());
        assert_eq!(b.entry(1, 0), &q.one());
    }

    #[test]
    fn clock_shift_d3_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap();
        let a = rep.pencil().a();
        // ζ = 2: diagonal (1, 2, 4)
        for (i, v) in [1i64, 2, 4].into_iter().enumerate() {
            assert_eq!(a.entry(i, i), &f7.from_integer(v));
        }
        assert!(rep.pencil().clifford_check(rep.form()).unwrap().ok);
    }

    #[test]
    fn clock_shift_needs_roots() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            Representation::clock_shift(3, &f5).unwrap_err(),
            Error::NoPrimitiveRoot { n: 3 }
        );
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            Representation::clock_shift(3, &f3).unwrap_err(),
            Error::CharacteristicDivides { ch: 3, n: 3 }
        );
    }

    #[test]
    fn clock_shift_over_cyclotomic() {
        for d in 2..=6usize {
            let field = Field::cyclotomic(d as u32).unwrap();
            let rep = Representation::clock_shift(d, &field).unwrap();
            assert_eq!(rep.m(), d);
            assert_eq!(rep.r(), 1);
        }
    }

    #[test]
    fn pullback_examples() {
        let q = Field::rationals();
        let rep = Representation::clock_shift(2, &q).unwrap();
        let id = ExactMatrix::identity(q.clone(), 2);
        assert_eq!(rep.gl2_pullback(&id).unwrap(), rep);

        // swap: pencil becomes (B, A), form unchanged by symmetry
        let swap = ExactMatrix::from_fn(q.clone(), 2, 2, |i, j| {
            if i != j { q.one() } else { q.zero() }
        });
        let sw = rep.gl2_pullback(&swap).unwrap();
        assert_eq!(sw.pencil().a(), rep.pencil().b());
        assert_eq!(sw.pencil().b(), rep.pencil().a());
        assert_eq!(sw.form(), rep.form());

        // shear [[1,1],[0,1]]: u ↦ u+v, v ↦ v gives A' = A, B' = A + B
        let shear = ExactMatrix::new(
            q.clone(),
            2,
            2,
            alloc::vec![q.one(), q.one(), q.zero(), q.one()],
        )
        .unwrap();
        let sh = rep.gl2_pullback(&shear).unwrap();
        assert_eq!(sh.pencil().a(), rep.pencil().a());
        assert_eq!(
            sh.pencil().b(),
            &rep.pencil().a().add(rep.pencil().b()).unwrap()
        );
        assert_eq!(
            sh.form(),
            &BinaryForm::from_integers(&q, &[1, 2, 2]).unwrap()
        );
    }

    #[test]
    fn pullback_round_trip() {
        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap();
        let g = ExactMatrix::new(
            f7.clone(),
            2,
            2,
            alloc::vec![
                f7.from_integer(2),
                f7.from_integer(3),
                f7.from_integer(1),
                f7.from_integer(4),
            ],
        )
        .unwrap();
        let back = rep
            .gl2_pullback(&g)
            .unwrap()
            .gl2_pullback(&g.inverse().unwrap())
            .unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn direct_sum_examples() {
        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap();
        let sum = rep.direct_sum(&rep).unwrap();
        assert_eq!(sum.m(), 6);
        assert_eq!(sum.r(), 2);
        let triple = sum.direct_sum(&rep).unwrap();
        assert_eq!(triple.m(), 9);
        assert_eq!(triple.r(), 3);

        let rep2 = Representation::clock_shift(2, &f7).unwrap();
        assert_eq!(rep.direct_sum(&rep2).unwrap_err(), Error::FormMismatch);
    }

    #[test]
    fn conjugation_examples() {
        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap();
        let id = ExactMatrix::identity(f7.clone(), 3);
        assert_eq!(rep.conjugate(&id).unwrap(), rep);
        // scalars act trivially
        let two_i = ExactMatrix::scalar(f7.clone(), 3, &f7.from_integer(2));
        assert_eq!(rep.conjugate(&two_i).unwrap(), rep);
        // permutation swaps diagonal entries of A
        let mut perm = ExactMatrix::zero(f7.clone(), 3, 3);
        perm.set(0, 1, f7.one());
        perm.set(1, 0, f7.one());
        perm.set(2, 2, f7.one());
        let conj = rep.conjugate(&perm).unwrap();
        assert_eq!(conj.pencil().a().entry(0, 0), &f7.from_integer(2));
        assert_eq!(conj.pencil().a().entry(1, 1), &f7.from_integer(1));
        // singular conjugator is rejected
        let zero = ExactMatrix::zero(f7.clone(), 3, 3);
        assert_eq!(rep.conjugate(&zero).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn random_equivalent_is_deterministic() {
        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap();
        let a = rep.random_equivalent(1);
        let b = rep.random_equivalent(1);
        assert_eq!(a, b);
        // generic seeds move the matrices
        assert!((1..=5).any(|s| rep.random_equivalent(s).pencil() != rep.pencil()));
    }

    #[test]
    fn random_equivalent_over_cyclotomic() {
        let c4 = Field::cyclotomic(4).unwrap();
        let rep = Representation::clock_shift(4, &c4).unwrap();
        let conj = rep.random_equivalent(7);
        assert_eq!(conj.form(), rep.form());
        assert!(conj.pencil().clifford_check(conj.form()).unwrap().ok);
    }

    #[test]
    fn new_rejects_bad_divisibility_and_identity() {
        let f7 = Field::prime(7).unwrap();
        let form = BinaryForm::from_integers(&f7, &[1, 0, 0, 1]).unwrap();
        let pencil2 = MatrixPencil::new(
            ExactMatrix::identity(f7.clone(), 2),
            ExactMatrix::identity(f7.clone(), 2),
        )
        .unwrap();
        assert_eq!(
            Representation::new(form.clone(), pencil2).unwrap_err(),
            Error::DivisibilityViolation { d: 3, m: 2 }
        );
        let pencil3 = MatrixPencil::new(
            ExactMatrix::identity(f7.clone(), 3),
            ExactMatrix::identity(f7.clone(), 3),
        )
        .unwrap();
        assert!(matches!(
            Representation::new(form, pencil3).unwrap_err(),
            Error::CliffordViolation { .. }
        ));
    }
}
