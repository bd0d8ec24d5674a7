//! Dense exact matrices over one field: rank, nullspace, determinant,
//! inverse, and the characteristic polynomial.
//!
//! Entries are stored row-major. Elimination uses exact field arithmetic; the
//! characteristic polynomial is computed fraction-free (Bareiss) over the
//! polynomial ring in `t`, so it is safe in any characteristic, including the
//! small positive characteristics used by the census.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::poly::{self, Poly};
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch);
        }
        if !entries.iter().all(|e| field.contains(e)) {
            return Err(Error::FieldMismatch);
        }
        Ok(ExactMatrix { field, rows, cols, entries })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix::new(field, rows, cols, entries).expect("from_fn produced a foreign element")
    }

    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        ExactMatrix { field, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let mut m = ExactMatrix::zero(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Scalar matrix c·I.
    pub fn scalar(field: Field, n: usize, c: &FieldElement) -> Self {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(self.field.contains(&v), "foreign element");
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactMatrix {
        let entries = self.entries.iter().map(|a| self.field.neg(a)).collect();
        ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &FieldElement) -> ExactMatrix {
        let entries = self.entries.iter().map(|a| self.field.mul(a, c)).collect();
        ExactMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch);
        }
        let f = &self.field;
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    if f.is_zero(a) {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(ExactMatrix { field: f.clone(), rows: self.rows, cols: other.cols, entries })
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.entry(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &ExactMatrix) -> ExactMatrix {
        assert!(self.field == other.field);
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = ExactMatrix::zero(self.field.clone(), rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.entry(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.entry(i, j).clone());
            }
        }
        m
    }

    /// Apply a map to every entry, landing in `target`.
    pub fn map_entries(
        &self,
        target: &Field,
        mut f: impl FnMut(&FieldElement) -> Result<FieldElement>,
    ) -> Result<ExactMatrix> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        ExactMatrix::new(target.clone(), self.rows, self.cols, entries)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    /// Exact fields only.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        assert!(self.field.is_exact(), "elimination needs an exact field");
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.entry(r, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inverse(m.entry(row, col)).unwrap();
            for j in col..m.cols {
                let v = f.mul(m.entry(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !f.is_zero(m.entry(r, col)) {
                    let factor = m.entry(r, col).clone();
                    for j in col..m.cols {
                        let v = f.sub(m.entry(r, j), &f.mul(&factor, m.entry(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right nullspace in the canonical reduced-echelon
    /// parametrization: one vector per free column, unit in that coordinate.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.entry(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination with division.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.field.is_exact() {
            return Err(Error::InexactField);
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(m.entry(r, col))) else {
                return Ok(f.zero());
            };
            if p != col {
                m.swap_rows(col, p);
                det = f.neg(&det);
            }
            let pivot = m.entry(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inverse(&pivot).unwrap();
            for r in col + 1..n {
                if f.is_zero(m.entry(r, col)) {
                    continue;
                }
                let factor = f.mul(m.entry(r, col), &inv);
                for j in col..n {
                    let v = f.sub(m.entry(r, j), &f.mul(&factor, m.entry(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let f = self.field.clone();
        let mut aug = ExactMatrix::zero(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.entry(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        let mut out = ExactMatrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.entry(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Coefficients of det(tI − M), ascending, monic of degree n.
    ///
    /// Fraction-free expansion over the polynomial ring in t: Bareiss pivots
    /// divide exactly by construction, with no division by integer constants,
    /// so the computation is valid over every exact field.
    pub fn char_poly(&self) -> Result<Vec<FieldElement>> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        if !self.field.is_exact() {
            return Err(Error::InexactField);
        }
        let f = self.field.clone();
        let n = self.rows;
        if n == 0 {
            return Ok(vec![f.one()]);
        }
        // a[i][j] = entry of tI − M as a polynomial in t
        let mut a: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut p = vec![f.neg(self.entry(i, j))];
                        if i == j {
                            p.push(f.one());
                        }
                        poly::trim(&f, p)
                    })
                    .collect()
            })
            .collect();
        let mut negate = false;
        let mut prev: Poly = vec![f.one()];
        for k in 0..n - 1 {
            let pivot_row = (k..n).find(|&r| !poly::is_zero(&a[r][k]));
            let Some(p) = pivot_row else {
                // a zero column of minors: det(tI − M) would be zero, which
                // cannot happen for a monic polynomial; kept for safety
                return Ok(vec![f.zero()]);
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let lhs = poly::mul(&f, &a[i][j], &a[k][k]);
                    let rhs = poly::mul(&f, &a[i][k], &a[k][j]);
                    let num = poly::sub(&f, &lhs, &rhs);
                    a[i][j] = poly::exact_div(&f, &num, &prev);
                }
            }
            prev = a[k][k].clone();
        }
        let mut det = a[n - 1][n - 1].clone();
        if negate {
            det = poly::neg(&f, &det);
        }
        det.resize(n + 1, f.zero());
        debug_assert!(f.is_one(&det[n]), "characteristic polynomial must be monic");
        Ok(det)
    }

    /// Evaluate a polynomial (ascending coefficients) at this square matrix.
    pub fn eval_poly(&self, coeffs: &[FieldElement]) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut acc = ExactMatrix::zero(f.clone(), n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            acc = acc.add(&ExactMatrix::scalar(f.clone(), n, c))?;
        }
        Ok(acc)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.field.is_one(self.entry(i, j))
                    } else {
                        self.field.is_zero(self.entry(i, j))
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn imat(field: &Field, rows: usize, cols: usize, v: &[i64]) -> ExactMatrix {
        let entries = v.iter().map(|&c| field.from_integer(c)).collect();
        ExactMatrix::new(field.clone(), rows, cols, entries).unwrap()
    }

    /// Independent determinant by Laplace cofactor expansion, used as the
    /// oracle for the elimination-based routines.
    fn laplace_det(m: &ExactMatrix) -> FieldElement {
        let f = m.field().clone();
        let n = m.rows();
        if n == 0 {
            return f.one();
        }
        if n == 1 {
            return m.entry(0, 0).clone();
        }
        let mut acc = f.zero();
        for j in 0..n {
            let mut minor = ExactMatrix::zero(f.clone(), n - 1, n - 1);
            for r in 1..n {
                let mut cc = 0;
                for c in 0..n {
                    if c == j {
                        continue;
                    }
                    minor.set(r - 1, cc, m.entry(r, c).clone());
                    cc += 1;
                }
            }
            let term = f.mul(m.entry(0, j), &laplace_det(&minor));
            acc = if j % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
        }
        acc
    }

    #[test]
    fn identity_and_zero() {
        let q = Field::rationals();
        let id = ExactMatrix::identity(q.clone(), 3);
        assert_eq!(id.rank(), 3);
        assert!(id.nullspace().is_empty());
        assert_eq!(id.det().unwrap(), q.one());

        let z = ExactMatrix::zero(q.clone(), 3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().len(), 3);
    }

    #[test]
    fn rank_one_example() {
        let q = Field::rationals();
        let m = imat(&q, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.det().unwrap(), q.zero());
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q.from_integer(-2), q.one()]);
        // nullspace vectors are annihilated
        let out = m.mul_vec(&ns[0]);
        assert!(out.iter().all(|e| q.is_zero(e)));
    }

    #[test]
    fn char_poly_examples() {
        // diag(1, ζ, ζ²) over Q(ζ₃): (t−1)(t−ζ)(t−ζ²) = t³ − 1
        let c3 = Field::cyclotomic(3).unwrap();
        let z = c3.generator().unwrap();
        let z2 = c3.mul(&z, &z);
        let m = ExactMatrix::diagonal(c3.clone(), &[c3.one(), z, z2]);
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, vec![c3.from_integer(-1), c3.zero(), c3.zero(), c3.one()]);

        // zero 2×2 → t²
        let q = Field::rationals();
        let z2x2 = ExactMatrix::zero(q.clone(), 2, 2);
        assert_eq!(z2x2.char_poly().unwrap(), vec![q.zero(), q.zero(), q.one()]);

        // swap matrix → t² − 1
        let m = imat(&q, 2, 2, &[0, 1, 1, 0]);
        assert_eq!(
            m.char_poly().unwrap(),
            vec![q.from_integer(-1), q.zero(), q.one()]
        );
    }

    #[test]
    fn char_poly_constant_term_is_det() {
        let f7 = Field::prime(7).unwrap();
        let m = imat(&f7, 3, 3, &[1, 2, 3, 4, 5, 6, 1, 0, 1]);
        let cp = m.char_poly().unwrap();
        // det(tI − M) at t = 0 is (−1)^n det M
        let det = m.det().unwrap();
        let sign = f7.from_integer(-1);
        assert_eq!(cp[0], f7.mul(&f7.mul(&sign, &sign), &f7.mul(&sign, &det)));
        assert_eq!(det, laplace_det(&m));
    }

    #[test]
    fn char_poly_in_characteristic_two() {
        // Bareiss must survive char 2 (no division by factorials anywhere)
        let f2 = Field::prime(2).unwrap();
        let m = imat(&f2, 4, 4, &[0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0]);
        // companion of t⁴ − 1 = t⁴ + 1 over GF(2)
        let cp = m.char_poly().unwrap();
        assert_eq!(cp, vec![f2.one(), f2.zero(), f2.zero(), f2.zero(), f2.one()]);
    }

    #[test]
    fn cayley_hamilton_small() {
        let f7 = Field::prime(7).unwrap();
        let m = imat(&f7, 3, 3, &[2, 1, 0, 0, 3, 1, 5, 0, 1]);
        let cp = m.char_poly().unwrap();
        assert!(m.eval_poly(&cp).unwrap().is_zero_matrix());
    }

    #[test]
    fn inverse_round_trip() {
        let f7 = Field::prime(7).unwrap();
        let m = imat(&f7, 3, 3, &[2, 1, 0, 0, 3, 1, 5, 0, 1]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let singular = imat(&f7, 2, 2, &[1, 2, 2, 4]);
        assert!(matches!(singular.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn det_matches_laplace_on_random_entries() {
        // deterministic small sweep over GF(5), 4×4
        let f5 = Field::prime(5).unwrap();
        let mut seed = 1u64;
        for _ in 0..8 {
            let mut vals = Vec::new();
            for _ in 0..16 {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.push((seed >> 33) as i64 % 5);
            }
            let m = imat(&f5, 4, 4, &vals);
            assert_eq!(m.det().unwrap(), laplace_det(&m));
        }
    }
}
