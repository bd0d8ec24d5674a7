//! Matrix pencils M(u,v) = uA + vB, their formal powers, and the verifier
//! for the defining identity (uA + vB)^d = f(u,v)·I.
//!
//! Powers are expanded by dynamic programming on homogeneous coefficient
//! lists — d−1 polynomial multiplications, O(d²) matrix products in total —
//! never by walking the 2^d words in A and B.

use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::form::BinaryForm;
use crate::linalg::ExactMatrix;
use crate::Result;

/// A pair of square matrices of one size over one field, standing for the
/// pencil uA + vB.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPencil {
    a: ExactMatrix,
    b: ExactMatrix,
}

/// A homogeneous matrix polynomial of degree k: coefficient matrices
/// C_0..C_k meaning Σ_j C_j u^{k−j} v^j.
#[derive(Debug, Clone, PartialEq)]
pub struct HomMatrixPoly {
    coeffs: Vec<ExactMatrix>,
}

/// Outcome of the identity verifier: which coefficient indices fail.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordReport {
    pub ok: bool,
    pub failing: Vec<usize>,
}

impl MatrixPencil {
    pub fn new(a: ExactMatrix, b: ExactMatrix) -> Result<Self> {
        if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::DimensionMismatch);
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(MatrixPencil { a, b })
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix {
        &self.b
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// (uA + vB)^d as a homogeneous matrix polynomial of degree d.
    pub fn power(&self, d: usize) -> Result<HomMatrixPoly> {
        if d < 1 {
            return Err(Error::DegreeTooSmall);
        }
        let mut coeffs = alloc::vec![self.a.clone(), self.b.clone()];
        for _ in 1..d {
            // multiply Σ C_j u^{k−j} v^j by (uA + vB): C'_j = C_j A + C_{j−1} B
            let k = coeffs.len();
            let mut next = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let mut acc: Option<ExactMatrix> = None;
                if j < k {
                    acc = Some(coeffs[j].mul(&self.a)?);
                }
                if j > 0 {
                    let t = coeffs[j - 1].mul(&self.b)?;
                    acc = Some(match acc {
                        Some(m) => m.add(&t)?,
                        None => t,
                    });
                }
                next.push(acc.expect("nonempty product"));
            }
            coeffs = next;
        }
        Ok(HomMatrixPoly { coeffs })
    }

    /// Specialize at scalars: aA + bB.
    pub fn evaluate(&self, a: &FieldElement, b: &FieldElement) -> Result<ExactMatrix> {
        let f = self.field();
        if !f.contains(a) || !f.contains(b) {
            return Err(Error::FieldMismatch);
        }
        self.a.scale(a).add(&self.b.scale(b))
    }

    /// Check the d+1 formal coefficient identities of
    /// (uA + vB)^d = f(u,v)·I. The formal identities imply the specialized
    /// relations (aA + bB)^d = f(a,b)·I for every pair of scalars, which is
    /// the generating condition of the defining ideal.
    pub fn clifford_check(&self, form: &BinaryForm) -> Result<CliffordReport> {
        if form.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let d = form.degree();
        let power = self.power(d)?;
        let f = self.field();
        let n = self.size();
        let mut failing = Vec::new();
        for (j, c) in power.coeffs.iter().enumerate() {
            let expected = ExactMatrix::scalar(f.clone(), n, form.coeff(j));
            if c != &expected {
                failing.push(j);
            }
        }
        Ok(CliffordReport { ok: failing.is_empty(), failing })
    }

    /// Pencil of the substituted variables u ↦ pu + qv, v ↦ ru + sv:
    /// (A', B') = (pA + rB, qA + sB).
    pub fn substitute(&self, g: &ExactMatrix) -> Result<MatrixPencil> {
        if g.rows() != 2 || g.cols() != 2 {
            return Err(Error::DimensionMismatch);
        }
        if g.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if self.field().is_zero(&g.det()?) {
            return Err(Error::SingularMatrix);
        }
        let a2 = self.a.scale(g.entry(0, 0)).add(&self.b.scale(g.entry(1, 0)))?;
        let b2 = self.a.scale(g.entry(0, 1)).add(&self.b.scale(g.entry(1, 1)))?;
        MatrixPencil::new(a2, b2)
    }
}

impl HomMatrixPoly {
    pub fn from_coeffs(coeffs: Vec<ExactMatrix>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall);
        }
        let first = &coeffs[0];
        for c in &coeffs {
            if c.rows() != first.rows() || c.cols() != first.cols() || c.field() != first.field() {
                return Err(Error::DimensionMismatch);
            }
        }
        Ok(HomMatrixPoly { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &ExactMatrix {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[ExactMatrix] {
        &self.coeffs
    }

    /// Product of two homogeneous matrix polynomials.
    pub fn mul(&self, other: &HomMatrixPoly) -> Result<HomMatrixPoly> {
        let n = self.coeffs[0].rows();
        let field = self.coeffs[0].field().clone();
        let deg = self.degree() + other.degree();
        let mut out = alloc::vec![ExactMatrix::zero(field, n, n); deg + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a.mul(b)?;
                out[i + j] = out[i + j].add(&t)?;
            }
        }
        Ok(HomMatrixPoly { coeffs: out })
    }

    /// Specialize the homogeneous polynomial at scalars (a, b).
    pub fn evaluate(&self, a: &FieldElement, b: &FieldElement) -> Result<ExactMatrix> {
        let f = self.coeffs[0].field().clone();
        let k = self.degree();
        let n = self.coeffs[0].rows();
        let mut acc = ExactMatrix::zero(f.clone(), n, n);
        for (j, c) in self.coeffs.iter().enumerate() {
            let scalar = f.mul(&f.pow(a, (k - j) as i64)?, &f.pow(b, j as i64)?);
            acc = acc.add(&c.scale(&scalar))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn imat(field: &Field, n: usize, v: &[i64]) -> ExactMatrix {
        ExactMatrix::new(
            field.clone(),
            n,
            n,
            v.iter().map(|&c| field.from_integer(c)).collect(),
        )
        .unwrap()
    }

    fn pauli(field: &Field) -> MatrixPencil {
        // A = [[0,1],[1,0]], B = [[1,0],[0,−1]]: A² = B² = I, AB + BA = 0
        MatrixPencil::new(imat(field, 2, &[0, 1, 1, 0]), imat(field, 2, &[1, 0, 0, -1])).unwrap()
    }

    /// Exponential-time oracle: expand (uA+vB)^d over all 2^d words.
    fn power_oracle(p: &MatrixPencil, d: usize) -> Vec<ExactMatrix> {
        let n = p.size();
        let f = p.field().clone();
        let mut coeffs = alloc::vec![ExactMatrix::zero(f.clone(), n, n); d + 1];
        for word in 0u32..(1 << d) {
            let mut m = ExactMatrix::identity(f.clone(), n);
            let mut b_count = 0;
            for bit in 0..d {
                let pick_b = (word >> bit) & 1 == 1;
                m = m.mul(if pick_b { p.b() } else { p.a() }).unwrap();
                if pick_b {
                    b_count += 1;
                }
            }
            coeffs[b_count] = coeffs[b_count].add(&m).unwrap();
        }
        coeffs
    }

    #[test]
    fn pauli_square_is_sum_of_squares() {
        let q = Field::rationals();
        let p = pauli(&q);
        let pw = p.power(2).unwrap();
        let id = ExactMatrix::identity(q.clone(), 2);
        let z = ExactMatrix::zero(q.clone(), 2, 2);
        assert_eq!(pw.coeffs(), &[id.clone(), z, id]);
        assert_eq!(pw.coeffs(), power_oracle(&p, 2).as_slice());
    }

    #[test]
    fn power_with_zero_b() {
        let q = Field::rationals();
        let a = imat(&q, 2, &[1, 2, 3, 4]);
        let p = MatrixPencil::new(a.clone(), ExactMatrix::zero(q.clone(), 2, 2)).unwrap();
        let pw = p.power(3).unwrap();
        let a3 = a.mul(&a).unwrap().mul(&a).unwrap();
        assert_eq!(pw.coeff(0), &a3);
        for j in 1..=3 {
            assert!(pw.coeff(j).is_zero_matrix());
        }
    }

    #[test]
    fn power_matches_oracle_on_random_pair() {
        let f7 = Field::prime(7).unwrap();
        let p = MatrixPencil::new(imat(&f7, 3, &[1, 2, 0, 3, 1, 5, 0, 2, 2]), imat(&f7, 3, &[0, 1, 1, 4, 0, 2, 1, 1, 3])).unwrap();
        for d in 1..=4 {
            assert_eq!(p.power(d).unwrap().coeffs(), power_oracle(&p, d).as_slice());
        }
    }

    #[test]
    fn clifford_check_examples() {
        let q = Field::rationals();
        let p = pauli(&q);
        let sum_sq = BinaryForm::from_integers(&q, &[1, 0, 1]).unwrap();
        assert!(p.clifford_check(&sum_sq).unwrap().ok);

        let diff_sq = BinaryForm::from_integers(&q, &[1, 0, -1]).unwrap();
        let rep = p.clifford_check(&diff_sq).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.failing, alloc::vec![2]);

        let zero = MatrixPencil::new(
            ExactMatrix::zero(q.clone(), 2, 2),
            ExactMatrix::zero(q.clone(), 2, 2),
        )
        .unwrap();
        let rep = zero.clifford_check(&sum_sq).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.failing, alloc::vec![0, 2]);
    }

    #[test]
    fn evaluate_examples() {
        let q = Field::rationals();
        let p = pauli(&q);
        assert_eq!(&p.evaluate(&q.one(), &q.zero()).unwrap(), p.a());
        assert_eq!(&p.evaluate(&q.zero(), &q.one()).unwrap(), p.b());
        assert_eq!(
            p.evaluate(&q.one(), &q.one()).unwrap(),
            imat(&q, 2, &[1, 1, 1, -1])
        );
    }

    #[test]
    fn power_is_multiplicative() {
        let f7 = Field::prime(7).unwrap();
        let p = MatrixPencil::new(imat(&f7, 2, &[1, 2, 3, 4]), imat(&f7, 2, &[0, 1, 6, 2])).unwrap();
        for (d1, d2) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3)] {
            let lhs = p.power(d1 + d2).unwrap();
            let rhs = p.power(d1).unwrap().mul(&p.power(d2).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn specialization_commutes_with_power() {
        let f7 = Field::prime(7).unwrap();
        let p = MatrixPencil::new(imat(&f7, 2, &[1, 2, 3, 4]), imat(&f7, 2, &[0, 1, 6, 2])).unwrap();
        for (a, b) in [(0i64, 1i64), (1, 0), (2, 3), (6, 5)] {
            let a = f7.from_integer(a);
            let b = f7.from_integer(b);
            let lhs = p.power(3).unwrap().evaluate(&a, &b).unwrap();
            let m = p.evaluate(&a, &b).unwrap();
            let rhs = m.mul(&m).unwrap().mul(&m).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
