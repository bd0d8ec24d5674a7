//! Table-driven finite-field arithmetic for the census hot loops.
//!
//! Census runs touch billions of field operations; routing them through the
//! generic `FieldElement` enum would dominate the runtime. Elements here are
//! `u16` indices in the field's canonical enumeration, and add/mul/neg/inv
//! are table lookups built once from the exact field, which stays the single
//! source of arithmetic truth. Matrices are row-major `Vec<u16>`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::linalg::ExactMatrix;
use crate::Result;

/// Largest field order the tables will be built for (two q² u16 tables).
pub const MAX_PACKED_ORDER: u64 = 1024;

pub struct PackedField {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>, // inv[0] unused
    field: Field,
}

impl PackedField {
    pub fn new(field: &Field) -> Result<PackedField> {
        let q = field.order().ok_or(Error::InfiniteField)?;
        if q > MAX_PACKED_ORDER {
            return Err(Error::GuardExceeded { q, exponent: 1 });
        }
        let q = q as usize;
        let elems: Vec<FieldElement> = field.elements()?.collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for i in 0..q {
            neg[i] = field.element_index(&field.neg(&elems[i]))? as u16;
            if i != 0 {
                inv[i] = field.element_index(&field.inverse(&elems[i])?)? as u16;
            }
            for j in 0..q {
                add[i * q + j] = field.element_index(&field.add(&elems[i], &elems[j]))? as u16;
                mul[i * q + j] = field.element_index(&field.mul(&elems[i], &elems[j]))? as u16;
            }
        }
        Ok(PackedField { q, add, mul, neg, inv, field: field.clone() })
    }

    #[inline(always)]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline(always)]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline(always)]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline(always)]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn pack(&self, e: &FieldElement) -> Result<u16> {
        Ok(self.field.element_index(e)? as u16)
    }

    pub fn unpack(&self, v: u16) -> FieldElement {
        self.field.element_from_index(v as u64).unwrap()
    }

    pub fn unpack_matrix(&self, n: usize, data: &[u16]) -> ExactMatrix {
        ExactMatrix::from_fn(self.field.clone(), n, n, |i, j| self.unpack(data[i * n + j]))
    }

    // --- square-matrix kernels on row-major u16 slices ---

    pub fn mat_mul(&self, n: usize, a: &[u16], b: &[u16], out: &mut [u16]) {
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u16;
                for k in 0..n {
                    let x = a[i * n + k];
                    if x != 0 {
                        acc = self.add(acc, self.mul(x, b[k * n + j]));
                    }
                }
                out[i * n + j] = acc;
            }
        }
    }

    pub fn mat_pow(&self, n: usize, a: &[u16], e: usize) -> Vec<u16> {
        let mut acc = identity(n);
        let mut base = a.to_vec();
        let mut e = e;
        let mut scratch = vec![0u16; n * n];
        while e > 0 {
            if e & 1 == 1 {
                self.mat_mul(n, &acc, &base, &mut scratch);
                acc.copy_from_slice(&scratch);
            }
            self.mat_mul(n, &base, &base, &mut scratch);
            base.copy_from_slice(&scratch);
            e >>= 1;
        }
        acc
    }

    pub fn is_scalar(&self, n: usize, m: &[u16], c: u16) -> bool {
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { c } else { 0 };
                if m[i * n + j] != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self, n: usize, m: &[u16]) -> u16 {
        let mut acc = 0u16;
        for i in 0..n {
            acc = self.add(acc, m[i * n + i]);
        }
        acc
    }

    /// All d+1 coefficients of (uA + vB)^d, by the same homogeneous DP as the
    /// exact path.
    pub fn pencil_power(&self, n: usize, a: &[u16], b: &[u16], d: usize) -> Vec<Vec<u16>> {
        let mut coeffs = vec![a.to_vec(), b.to_vec()];
        let mut scratch = vec![0u16; n * n];
        for _ in 1..d {
            let k = coeffs.len();
            let mut next = Vec::with_capacity(k + 1);
            for j in 0..=k {
                let mut acc = vec![0u16; n * n];
                if j < k {
                    self.mat_mul(n, &coeffs[j], a, &mut scratch);
                    for (o, &s) in acc.iter_mut().zip(&scratch) {
                        *o = s;
                    }
                }
                if j > 0 {
                    self.mat_mul(n, &coeffs[j - 1], b, &mut scratch);
                    for (o, &s) in acc.iter_mut().zip(&scratch) {
                        *o = self.add(*o, s);
                    }
                }
                next.push(acc);
            }
            coeffs = next;
        }
        coeffs
    }

    /// Does (uA + vB)^d equal Σ c_j u^{d−j} v^j · I? `c` lists the packed
    /// form coefficients.
    pub fn clifford_holds(&self, n: usize, a: &[u16], b: &[u16], c: &[u16]) -> bool {
        let d = c.len() - 1;
        // cheap rejection first: B^d must be the scalar c_d
        let bd = self.mat_pow(n, b, d);
        if !self.is_scalar(n, &bd, c[d]) {
            return false;
        }
        let coeffs = self.pencil_power(n, a, b, d);
        coeffs.iter().zip(c).all(|(m, &cj)| self.is_scalar(n, m, cj))
    }

    /// Row-reduce an augmented system `rows × (cols + 1)` in place; returns
    /// pivot columns (augmented column excluded from pivoting).
    fn rref_aug(&self, rows: usize, cols: usize, m: &mut [u16]) -> Vec<usize> {
        let w = cols + 1;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&r| m[r * w + col] != 0) else {
                continue;
            };
            if p != row {
                for j in 0..w {
                    m.swap(p * w + j, row * w + j);
                }
            }
            let inv = self.inv(m[row * w + col]);
            for j in col..w {
                m[row * w + j] = self.mul(m[row * w + j], inv);
            }
            for r in 0..rows {
                if r != row && m[r * w + col] != 0 {
                    let factor = m[r * w + col];
                    for j in col..w {
                        let t = self.mul(factor, m[row * w + j]);
                        m[r * w + j] = self.sub(m[r * w + j], t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Solve the affine-linear stage-2 system
    /// Σ_{k=0}^{d−1} A^k B A^{d−1−k} = c₁·I for B. Returns a particular
    /// solution and a kernel basis (vectorized m×m matrices), or None when
    /// the system is inconsistent.
    pub fn solve_middle_identity(
        &self,
        n: usize,
        a: &[u16],
        d: usize,
        c1: u16,
    ) -> Option<(Vec<u16>, Vec<Vec<u16>>)> {
        let nn = n * n;
        let mut powers = Vec::with_capacity(d);
        for k in 0..d {
            powers.push(self.mat_pow(n, a, k));
        }
        // system[(x,y)][(s,t)] = Σ_k (A^k)_{x,s} (A^{d−1−k})_{t,y}
        let w = nn + 1;
        let mut sys = vec![0u16; nn * w];
        for k in 0..d {
            let left = &powers[k];
            let right = &powers[d - 1 - k];
            for x in 0..n {
                for s in 0..n {
                    let lxs = left[x * n + s];
                    if lxs == 0 {
                        continue;
                    }
                    for t in 0..n {
                        for y in 0..n {
                            let add = self.mul(lxs, right[t * n + y]);
                            let idx = (x * n + y) * w + (s * n + t);
                            sys[idx] = self.add(sys[idx], add);
                        }
                    }
                }
            }
        }
        for x in 0..n {
            sys[(x * n + x) * w + nn] = c1;
        }
        let pivots = self.rref_aug(nn, nn, &mut sys);
        // inconsistent iff a row reads 0 = nonzero
        for r in pivots.len()..nn {
            if sys[r * w + nn] != 0 {
                return None;
            }
        }
        let mut pivot_of_col = vec![usize::MAX; nn];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = row;
        }
        let mut particular = vec![0u16; nn];
        for (row, &c) in pivots.iter().enumerate() {
            particular[c] = sys[row * w + nn];
        }
        let mut kernel = Vec::new();
        for free in 0..nn {
            if pivot_of_col[free] != usize::MAX {
                continue;
            }
            let mut v = vec![0u16; nn];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = self.neg(sys[row * w + free]);
            }
            kernel.push(v);
        }
        Some((particular, kernel))
    }

    /// Dimension of the unital algebra generated by A and B (Burnside span).
    pub fn word_span_dim(&self, n: usize, a: &[u16], b: &[u16]) -> usize {
        let nn = n * n;
        let mut rows: Vec<Vec<u16>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut queue: Vec<Vec<u16>> = Vec::new();
        let insert = |v: Vec<u16>, rows: &mut Vec<Vec<u16>>, pivots: &mut Vec<usize>| -> Option<Vec<u16>> {
            let mut v = v;
            for (row, &p) in rows.iter().zip(pivots.iter()) {
                if v[p] != 0 {
                    let c = v[p];
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = self.sub(*x, self.mul(c, *y));
                    }
                }
            }
            let p = v.iter().position(|&c| c != 0)?;
            let inv = self.inv(v[p]);
            for x in v.iter_mut() {
                *x = self.mul(*x, inv);
            }
            for row in rows.iter_mut() {
                if row[p] != 0 {
                    let c = row[p];
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x = self.sub(*x, self.mul(c, *y));
                    }
                }
            }
            rows.push(v.clone());
            pivots.push(p);
            Some(v)
        };
        let id = identity(n);
        insert(id.clone(), &mut rows, &mut pivots);
        queue.push(id);
        let mut scratch = vec![0u16; nn];
        while let Some(w) = queue.pop() {
            if rows.len() == nn {
                break;
            }
            for gen in [a, b] {
                self.mat_mul(n, gen, &w, &mut scratch);
                if insert(scratch.clone(), &mut rows, &mut pivots).is_some() {
                    queue.push(scratch.clone());
                }
            }
        }
        rows.len()
    }

    /// Dimension of {X : X A₁ = A₂ X, X B₁ = B₂ X}.
    pub fn intertwiner_dim(
        &self,
        n: usize,
        a1: &[u16],
        b1: &[u16],
        a2: &[u16],
        b2: &[u16],
    ) -> usize {
        let nn = n * n;
        let w = nn + 1; // reuse the augmented eliminator with a zero rhs
        let mut sys = vec![0u16; 2 * nn * w];
        for (block, (m1, m2)) in [(a1, a2), (b1, b2)].into_iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    let row = block * nn + i * n + j;
                    for k in 0..n {
                        let idx = row * w + (i * n + k);
                        sys[idx] = self.add(sys[idx], m1[k * n + j]);
                        let idx = row * w + (k * n + j);
                        sys[idx] = self.sub(sys[idx], m2[i * n + k]);
                    }
                }
            }
        }
        let pivots = self.rref_aug(2 * nn, nn, &mut sys);
        nn - pivots.len()
    }

    /// Conjugation-invariant fingerprint used to pre-sort solutions before
    /// the exact intertwiner test: traces of a fixed list of short words.
    pub fn fingerprint(&self, n: usize, a: &[u16], b: &[u16]) -> Vec<u16> {
        let mut words: Vec<Vec<u16>> = Vec::new();
        let mut scratch = vec![0u16; n * n];
        let push_prod = |x: &[u16], y: &[u16], words: &mut Vec<Vec<u16>>| {
            let mut out = vec![0u16; n * n];
            self.mat_mul(n, x, y, &mut out);
            words.push(out);
        };
        words.push(a.to_vec());
        words.push(b.to_vec());
        push_prod(a, b, &mut words); // AB
        let ab = words[2].clone();
        push_prod(a, &ab, &mut words); // A²B? no: A·AB = A²B
        push_prod(&ab, b, &mut words); // AB²
        push_prod(&ab, &ab, &mut words); // ABAB
        self.mat_mul(n, a, a, &mut scratch);
        let a2 = scratch.clone();
        self.mat_mul(n, b, b, &mut scratch);
        let b2 = scratch.clone();
        push_prod(&a2, &b2, &mut words); // A²B²
        words.iter().map(|wd| self.trace(n, wd)).collect()
    }
}

pub fn identity(n: usize) -> Vec<u16> {
    let mut m = vec![0u16; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}
