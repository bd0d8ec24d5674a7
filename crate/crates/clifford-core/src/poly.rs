//! Dense univariate polynomials with coefficients in an arbitrary exact
//! field, ascending degree order, trailing zeros trimmed (zero = empty).
//!
//! These are working buffers for the characteristic polynomial, nondegeneracy
//! tests and identity expansions, not a public polynomial type; everything
//! takes the field handle explicitly.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Field, FieldElement};

pub type Poly = Vec<FieldElement>;

pub fn trim(field: &Field, mut v: Poly) -> Poly {
    while v.last().map(|c| field.is_zero(c)) == Some(true) {
        v.pop();
    }
    v
}

pub fn is_zero(p: &Poly) -> bool {
    p.is_empty()
}

pub fn degree(p: &Poly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn constant(field: &Field, c: FieldElement) -> Poly {
    trim(field, vec![c])
}

pub fn add(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let n = a.len().max(b.len());
    let zero = field.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(field.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)));
    }
    trim(field, out)
}

pub fn neg(field: &Field, a: &[FieldElement]) -> Poly {
    a.iter().map(|c| field.neg(c)).collect()
}

pub fn sub(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    add(field, a, &neg(field, b))
}

pub fn mul(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = field.add(&out[i + j], &field.mul(x, y));
        }
    }
    trim(field, out)
}

pub fn scale(field: &Field, a: &[FieldElement], c: &FieldElement) -> Poly {
    trim(field, a.iter().map(|x| field.mul(x, c)).collect())
}

/// Quotient and remainder by a nonzero divisor.
pub fn divrem(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> (Poly, Poly) {
    let b = trim(field, b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(field, a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    let lead_inv = field.inverse(b.last().unwrap()).expect("nonzero lead");
    while r.len() >= b.len() && !r.is_empty() {
        let c = field.mul(r.last().unwrap(), &lead_inv);
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            let t = field.mul(&c, bi);
            r[shift + i] = field.sub(&r[shift + i], &t);
        }
        q[shift] = c;
        r = trim(field, r);
    }
    (trim(field, q), r)
}

/// Exact division; panics when the remainder is nonzero. The fraction-free
/// elimination in `char_poly` guarantees divisibility.
pub fn exact_div(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let (q, r) = divrem(field, a, b);
    assert!(r.is_empty(), "exact_div with nonzero remainder");
    q
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut x = trim(field, a.to_vec());
    let mut y = trim(field, b.to_vec());
    while !y.is_empty() {
        let r = divrem(field, &x, &y).1;
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        let inv = field.inverse(&lead).unwrap();
        x = scale(field, &x, &inv);
    }
    x
}

pub fn derivative(field: &Field, a: &[FieldElement]) -> Poly {
    if a.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(field.mul(&field.from_integer(i as i64), c));
    }
    trim(field, out)
}

pub fn eval(field: &Field, a: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = field.zero();
    for c in a.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

pub fn pow(field: &Field, a: &[FieldElement], mut e: u64) -> Poly {
    let mut acc = constant(field, field.one());
    let mut base = trim(field, a.to_vec());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(field, &acc, &base);
        }
        base = mul(field, &base, &base);
        e >>= 1;
    }
    acc
}
