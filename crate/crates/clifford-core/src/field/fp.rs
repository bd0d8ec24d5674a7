//! Modular arithmetic on `u64` residues and dense polynomials over GF(p).
//!
//! This is the machinery behind prime and extension fields: residues live in
//! `[0, p)`, polynomials are coefficient vectors in ascending degree order
//! with trailing zeros trimmed.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + p as u128 - b as u128) % p as u128;
    s as u64
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse mod a prime, by Fermat.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        None
    } else {
        Some(pow_mod(a, p - 2, p))
    }
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n`, ascending and without multiplicity. Trial division;
/// the inputs here are small (root orders, census parameters).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomials over GF(p), ascending coefficients ---

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = add_mod(x, y, p);
    }
    trim(out)
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    trim(out)
}

/// Remainder of `a` by a monic divisor `m`.
pub fn poly_rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    debug_assert_eq!(*m.last().expect("nonzero modulus"), 1);
    let mut r: Vec<u64> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = sub_mod(r[idx], mul_mod(lead, mi, p), p);
            }
        }
        r.pop();
        while r.last() == Some(&0) && r.len() > dm {
            r.pop();
        }
    }
    trim(r)
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let lead = *y.last().unwrap();
        let inv = inv_mod(lead, p).expect("nonzero lead in GF(p)");
        let monic: Vec<u64> = y.iter().map(|&c| mul_mod(c, inv, p)).collect();
        let r = poly_rem_monic(&x, &monic, p);
        x = y;
        y = r;
    }
    x
}

/// `base^exp mod m` for a monic modulus `m`.
pub fn poly_pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem_monic(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_rem_monic(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem_monic(&poly_mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// `x^(p^e) mod m` by iterated Frobenius powering.
pub fn frobenius_power(e: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u64, 1]; // x
    for _ in 0..e {
        acc = poly_pow_mod(&acc, p, m, p);
    }
    acc
}

/// Irreducibility of a monic degree-k polynomial over GF(p): the Rabin test.
/// `m` is irreducible iff x^(p^k) ≡ x (mod m) and gcd(x^(p^(k/ℓ)) − x, m) = 1
/// for every prime ℓ | k.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 0 {
        return false;
    }
    debug_assert_eq!(*m.last().unwrap(), 1);
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let top = frobenius_power(k as u32, m, p);
    if poly_add(&top, &poly_neg(&x, p), p) != Vec::<u64>::new() {
        return false;
    }
    for l in prime_factors(k as u64) {
        let e = (k as u64 / l) as u32;
        let fr = frobenius_power(e, m, p);
        let diff = poly_add(&fr, &poly_neg(&x, p), p);
        let g = poly_gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub fn poly_neg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&c| sub_mod(0, c, p)).collect()
}

/// Extended Euclid over GF(p)[x]: returns the inverse of `a` modulo the monic
/// polynomial `m`, or `None` when gcd(a, m) is not constant.
pub fn poly_inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = poly_rem_monic(a, m, p);
    let mut t0: Vec<u64> = Vec::new();
    let mut t1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let t = poly_add(&t0, &poly_neg(&poly_mul(&q, &t1, p), p), p);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = inv_mod(r0[0], p)?;
    Some(trim(t0.iter().map(|&c| mul_mod(c, inv, p)).collect()))
}

/// Quotient and remainder by an arbitrary nonzero divisor.
pub fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    let lead_inv = inv_mod(*b.last().unwrap(), p).expect("unit lead");
    while r.len() >= b.len() && !r.is_empty() {
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = sub_mod(r[shift + i], mul_mod(c, bi, p), p);
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// Smallest monic irreducible polynomial of degree `k` over GF(p), in the
/// ascending-coefficient base-p order. Deterministic, used when a caller asks
/// for "the" field with p^k elements without supplying a modulus.
pub fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut lower = vec![0u64; k];
    loop {
        let mut m = lower.clone();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
        // increment the lower coefficients as a base-p counter
        let mut i = 0;
        loop {
            assert!(i < k, "no irreducible polynomial found (impossible)");
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(7));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(4));
        assert!(!is_prime_u64(561)); // Carmichael
    }

    #[test]
    fn modular_inverse() {
        for a in 1..7 {
            let inv = inv_mod(a, 7).unwrap();
            assert_eq!(mul_mod(a, inv, 7), 1);
        }
        assert_eq!(inv_mod(0, 7), None);
    }

    #[test]
    fn irreducibility_small() {
        // x^2 + x + 1 over GF(2) is irreducible, x^2 + 1 = (x+1)^2 is not
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^2 + 1 over GF(3) is irreducible (−1 is a nonsquare)
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[5, 0, 1], 7)); // x^2 − 2 = (x−3)(x−4) mod 7
    }

    #[test]
    fn poly_inverse_in_gf4() {
        // GF(4) = GF(2)[x]/(x^2+x+1); the class of x has inverse x+1
        let m = vec![1u64, 1, 1];
        let inv = poly_inv_mod(&[0, 1], &m, 2).unwrap();
        assert_eq!(inv, vec![1, 1]);
    }

    #[test]
    fn least_irreducible_matches_known() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn factor_list() {
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), vec![97]);
    }
}
