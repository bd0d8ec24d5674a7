//! Dense complex matrices and the three numeric kernels the solver needs:
//! Hermitian positive-definite solves (damped normal equations), singular
//! values by one-sided Jacobi, and determinants by partially pivoted LU
//! (for the resultant-based nondegeneracy test).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

pub type C64 = Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, e: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.e[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.e[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.e[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.e[idx] += a * other.at(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.e.iter_mut().zip(&other.e) {
            *x += y;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.e.iter_mut().zip(&other.e) {
            *x -= y;
        }
        out
    }

    pub fn scale(&self, c: C64) -> CMat {
        let mut out = self.clone();
        for x in out.e.iter_mut() {
            *x *= c;
        }
        out
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.e.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).conj());
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Solve (H)x = rhs for Hermitian positive definite H via LLᴴ. Returns None
/// when a pivot degenerates (H not numerically positive definite).
pub fn cholesky_solve(h: &CMat, rhs: &[C64]) -> Option<Vec<C64>> {
    let n = h.rows;
    assert_eq!(h.cols, n);
    assert_eq!(rhs.len(), n);
    let mut l = CMat::zeros(n, n);
    for j in 0..n {
        let mut diag = h.at(j, j).re;
        for k in 0..j {
            diag -= l.at(j, k).norm_sqr();
        }
        if diag <= 0.0 || !diag.is_finite() {
            return None;
        }
        let dj = libm::sqrt(diag);
        l.set(j, j, C64::new(dj, 0.0));
        for i in j + 1..n {
            let mut v = h.at(i, j);
            for k in 0..j {
                v -= l.at(i, k) * l.at(j, k).conj();
            }
            l.set(i, j, v / dj);
        }
    }
    // forward: L z = rhs
    let mut z = rhs.to_vec();
    for i in 0..n {
        for k in 0..i {
            let t = l.at(i, k) * z[k];
            z[i] -= t;
        }
        z[i] /= l.at(i, i);
    }
    // backward: Lᴴ x = z
    let mut x = z;
    for i in (0..n).rev() {
        for k in i + 1..n {
            let t = l.at(k, i).conj() * x[k];
            x[i] -= t;
        }
        x[i] /= l.at(i, i);
    }
    Some(x)
}

/// Singular values by one-sided Jacobi on columns: de-phase each column pair
/// so its Gram block is real, rotate it orthogonal, sweep to convergence.
/// Returned in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    let work = if m.rows >= m.cols { m.clone() } else { m.adjoint() };
    let (rows, cols) = (work.rows, work.cols);
    let mut a = work.e;
    let col = |a: &Vec<C64>, j: usize, i: usize| a[i * cols + j];
    let tol = 1e-30;
    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = C64::new(0.0, 0.0);
                for i in 0..rows {
                    let x = col(&a, p, i);
                    let y = col(&a, q, i);
                    app += x.norm_sqr();
                    aqq += y.norm_sqr();
                    apq += x.conj() * y;
                }
                let off = apq.norm();
                if off * off <= tol * app * aqq || off == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = apq / off;
                let tau = (aqq - app) / (2.0 * off);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let pc = phase.conj();
                for i in 0..rows {
                    let x = a[i * cols + p];
                    let y = a[i * cols + q] * pc;
                    a[i * cols + p] = x * c - y * s;
                    a[i * cols + q] = x * s + y * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..cols)
        .map(|j| {
            let mut norm = 0.0;
            for i in 0..rows {
                norm += a[i * cols + j].norm_sqr();
            }
            libm::sqrt(norm)
        })
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// Determinant with partial pivoting, consuming the matrix.
pub fn lu_det(mut m: CMat) -> C64 {
    let n = m.rows;
    assert_eq!(m.cols, n);
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let (pivot_row, pivot_mag) = (col..n)
            .map(|r| (r, m.at(r, col).norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_mag == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for j in 0..n {
                let t = m.at(col, j);
                let u = m.at(pivot_row, j);
                m.set(col, j, u);
                m.set(pivot_row, j, t);
            }
            det = -det;
        }
        let pivot = m.at(col, col);
        det *= pivot;
        for r in col + 1..n {
            let factor = m.at(r, col) / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let t = factor * m.at(col, j);
                let cur = m.at(r, j);
                m.set(r, j, cur - t);
            }
        }
    }
    det
}

/// Sylvester resultant of two polynomials with formal degrees taken from the
/// coefficient lengths (ascending order).
pub fn sylvester_resultant(p: &[C64], q: &[C64]) -> C64 {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    if dp == 0 || dq == 0 {
        // deg-0 convention: res(c, g) = c^{deg g}
        let n = dp + dq;
        let base = if dp == 0 { p[0] } else { q[0] };
        return base.powu(n as u32);
    }
    let n = dp + dq;
    let mut s = CMat::zeros(n, n);
    for row in 0..dq {
        for (k, &c) in p.iter().enumerate() {
            s.set(row, row + dp - k, c);
        }
    }
    for row in 0..dp {
        for (k, &c) in q.iter().enumerate() {
            s.set(dq + row, row + dq - k, c);
        }
    }
    lu_det(s)
}
