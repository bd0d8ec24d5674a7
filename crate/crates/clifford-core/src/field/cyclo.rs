//! Cyclotomic polynomials and arithmetic in ℚ(ζ_n) = ℚ[x]/(Φ_n).
//!
//! Elements are coefficient vectors of length φ(n) with rational entries
//! (ascending powers of the generator). Polynomials in this module are
//! ascending `Vec<BigRational>` with trailing zeros trimmed.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QPoly = Vec<BigRational>;

pub fn trim(mut v: QPoly) -> QPoly {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
    v
}

pub fn poly_add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero));
    }
    trim(out)
}

pub fn poly_neg(a: &[BigRational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().unwrap() / &lead;
        let shift = r.len() - b.len();
        q[shift] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            let t = &c * bi;
            r[shift + i] -= t;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// The n-th cyclotomic polynomial, ascending coefficients, computed by
/// dividing x^n − 1 by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(n: u32) -> QPoly {
    assert!(n >= 1);
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    let mut result = num;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            let (q, r) = poly_divrem(&result, &phi_d);
            debug_assert!(r.is_empty());
            result = q;
        }
    }
    result
}

/// Euler's totient, the degree of Φ_n.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut out = n;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out -= out / d;
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out as u32
}

/// Inverse of `a` modulo the monic polynomial `m`, by extended Euclid;
/// `None` when a is zero mod m (or shares a factor, which cannot happen for
/// irreducible m).
pub fn poly_inv_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let mut r0 = m.to_vec();
    let mut r1 = poly_divrem(a, m).1;
    let mut t0: QPoly = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let t = poly_add(&t0, &poly_neg(&poly_mul(&q, &t1)));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = BigRational::one() / &r0[0];
    Some(trim(t0.iter().map(|c| c * &inv).collect()))
}

pub fn from_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
