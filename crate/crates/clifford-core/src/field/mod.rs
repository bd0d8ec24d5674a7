//! The field tower: ℚ, GF(p), GF(p^k), ℚ(ζ_n), and complex doubles.
//!
//! A [`Field`] is a cheaply clonable handle created from a [`FieldSpec`]; all
//! arithmetic goes through the handle. A [`FieldElement`] stores a canonical
//! value — reduced fraction with positive denominator, least residue in
//! `[0, p)`, polynomial residue of fixed length reduced mod the modulus — so
//! that structural equality coincides with mathematical equality. Elements are
//! immutable and safe to share across threads.
//!
//! Mixing elements of different fields in arithmetic is a bug on the caller's
//! side; the handle panics on foreign elements. Operations exposed to
//! untrusted input validate with [`Field::contains`] first and return errors.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

pub mod cyclo;
pub mod fp;
pub mod reduce;
mod text;

/// Description of a field, serializable and hashable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    PrimeField { p: u64 },
    /// GF(p^k) presented as GF(p)[a]/(modulus); the modulus is monic of degree
    /// k with ascending coefficients in `[0, p)`.
    ExtensionField { p: u64, k: u32, modulus: Vec<u64> },
    /// ℚ(ζ_n) = ℚ[a]/(Φ_n), elements reduced mod the n-th cyclotomic
    /// polynomial.
    Cyclotomic { n: u32 },
    ComplexDouble,
}

#[derive(Debug)]
enum Inner {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, k: u32, modulus: Vec<u64>, key: u32 },
    Cyclotomic { n: u32, degree: u32, phi: Vec<BigRational> },
    Complex,
}

/// Handle to a field; clone freely, all clones share one allocation.
#[derive(Clone, Debug)]
pub struct Field {
    inner: Arc<Inner>,
}

/// An element of one of the supported fields, in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { p: u64, value: u64 },
    /// Fixed length k; `key` fingerprints the modulus so that elements of
    /// distinct presentations of GF(p^k) do not silently mix.
    Extension { p: u64, key: u32, coeffs: Vec<u64> },
    /// Fixed length φ(n).
    Cyclotomic { n: u32, coeffs: Vec<BigRational> },
    Complex(Complex64),
}

fn modulus_key(p: u64, modulus: &[u64]) -> u32 {
    // FNV-1a over the spec data; collisions would only weaken a sanity check.
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        for b in v.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(p);
    for &c in modulus {
        eat(c);
    }
    (h >> 32) as u32 ^ h as u32
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

impl Field {
    /// Build a field from its spec, verifying the spec invariants
    /// (primality, irreducibility of the modulus, n ≥ 1).
    pub fn new(spec: &FieldSpec) -> Result<Field> {
        let inner = match spec {
            FieldSpec::Rationals => Inner::Rationals,
            FieldSpec::PrimeField { p } => {
                if !fp::is_prime_u64(*p) {
                    return Err(Error::NotPrime(*p));
                }
                Inner::Prime { p: *p }
            }
            FieldSpec::ExtensionField { p, k, modulus } => {
                if !fp::is_prime_u64(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *k == 0 {
                    return Err(Error::InvalidFieldSpec("extension degree must be positive".into()));
                }
                if modulus.len() != *k as usize + 1 {
                    return Err(Error::InvalidFieldSpec(
                        "modulus must list k+1 coefficients, ascending".into(),
                    ));
                }
                let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
                let lead = *m.last().unwrap();
                if lead == 0 {
                    return Err(Error::InvalidFieldSpec("modulus leading coefficient is zero".into()));
                }
                if lead != 1 {
                    let inv = fp::inv_mod(lead, *p).unwrap();
                    for c in m.iter_mut() {
                        *c = fp::mul_mod(*c, inv, *p);
                    }
                }
                if !fp::is_irreducible(&m, *p) {
                    return Err(Error::ReducibleModulus { p: *p });
                }
                let key = modulus_key(*p, &m);
                Inner::Extension { p: *p, k: *k, modulus: m, key }
            }
            FieldSpec::Cyclotomic { n } => {
                if *n == 0 {
                    return Err(Error::InvalidFieldSpec("cyclotomic index must be positive".into()));
                }
                let phi = cyclo::cyclotomic_polynomial(*n);
                let degree = (phi.len() - 1) as u32;
                Inner::Cyclotomic { n: *n, degree, phi }
            }
            FieldSpec::ComplexDouble => Inner::Complex,
        };
        Ok(Field { inner: Arc::new(inner) })
    }

    pub fn rationals() -> Field {
        Field::new(&FieldSpec::Rationals).unwrap()
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(&FieldSpec::PrimeField { p })
    }

    pub fn extension(p: u64, k: u32, modulus: Vec<u64>) -> Result<Field> {
        Field::new(&FieldSpec::ExtensionField { p, k, modulus })
    }

    /// The field with q = p^k elements, using the lexicographically least
    /// monic irreducible modulus when k > 1.
    pub fn gf(q: u64) -> Result<Field> {
        if q < 2 {
            return Err(Error::InvalidFieldSpec("field order must be at least 2".into()));
        }
        let factors = fp::prime_factors(q);
        if factors.len() != 1 {
            return Err(Error::InvalidFieldSpec("field order must be a prime power".into()));
        }
        let p = factors[0];
        let mut k = 0u32;
        let mut m = q;
        while m > 1 {
            m /= p;
            k += 1;
        }
        if k == 1 {
            Field::prime(p)
        } else {
            Field::extension(p, k, fp::least_irreducible(p, k))
        }
    }

    pub fn cyclotomic(n: u32) -> Result<Field> {
        Field::new(&FieldSpec::Cyclotomic { n })
    }

    pub fn complex() -> Field {
        Field::new(&FieldSpec::ComplexDouble).unwrap()
    }

    pub fn spec(&self) -> FieldSpec {
        match &*self.inner {
            Inner::Rationals => FieldSpec::Rationals,
            Inner::Prime { p } => FieldSpec::PrimeField { p: *p },
            Inner::Extension { p, k, modulus, .. } => FieldSpec::ExtensionField {
                p: *p,
                k: *k,
                modulus: modulus.clone(),
            },
            Inner::Cyclotomic { n, .. } => FieldSpec::Cyclotomic { n: *n },
            Inner::Complex => FieldSpec::ComplexDouble,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.inner {
            Inner::Prime { p } | Inner::Extension { p, .. } => *p,
            _ => 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(&*self.inner, Inner::Complex)
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.inner, Inner::Prime { .. } | Inner::Extension { .. })
    }

    /// Number of elements for finite fields; `None` for infinite fields or
    /// when p^k overflows u64.
    pub fn order(&self) -> Option<u64> {
        match &*self.inner {
            Inner::Prime { p } => Some(*p),
            Inner::Extension { p, k, .. } => {
                let mut acc: u64 = 1;
                for _ in 0..*k {
                    acc = acc.checked_mul(*p)?;
                }
                Some(acc)
            }
            _ => None,
        }
    }

    /// True when the element belongs to this field (kind and parameters).
    pub fn contains(&self, e: &FieldElement) -> bool {
        match (&*self.inner, e) {
            (Inner::Rationals, FieldElement::Rational(_)) => true,
            (Inner::Prime { p }, FieldElement::Prime { p: q, .. }) => p == q,
            (Inner::Extension { p, k, key, .. }, FieldElement::Extension { p: q, key: k2, coeffs }) => {
                p == q && key == k2 && coeffs.len() == *k as usize
            }
            (Inner::Cyclotomic { n, degree, .. }, FieldElement::Cyclotomic { n: m, coeffs }) => {
                n == m && coeffs.len() == *degree as usize
            }
            (Inner::Complex, FieldElement::Complex(_)) => true,
            _ => false,
        }
    }

    fn expect(&self, e: &FieldElement) {
        assert!(self.contains(e), "element {e:?} does not belong to {:?}", self.spec());
    }

    pub fn zero(&self) -> FieldElement {
        self.from_integer(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_integer(1)
    }

    pub fn from_integer(&self, v: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElement {
        match &*self.inner {
            Inner::Rationals => FieldElement::Rational(BigRational::from_integer(v.clone())),
            Inner::Prime { p } => FieldElement::Prime { p: *p, value: bigint_mod(v, *p) },
            Inner::Extension { p, k, key, .. } => {
                let mut coeffs = vec![0u64; *k as usize];
                coeffs[0] = bigint_mod(v, *p);
                FieldElement::Extension { p: *p, key: *key, coeffs }
            }
            Inner::Cyclotomic { n, degree, .. } => {
                let mut coeffs = vec![BigRational::zero(); *degree as usize];
                if *degree > 0 {
                    coeffs[0] = BigRational::from_integer(v.clone());
                }
                FieldElement::Cyclotomic { n: *n, coeffs }
            }
            Inner::Complex => FieldElement::Complex(Complex64::new(
                v.to_f64().expect("integer out of f64 range"),
                0.0,
            )),
        }
    }

    /// The class of the polynomial generator `a` (extension and cyclotomic
    /// fields only).
    pub fn generator(&self) -> Result<FieldElement> {
        match &*self.inner {
            Inner::Extension { p, k, key, .. } => {
                let mut coeffs = vec![0u64; *k as usize];
                if *k == 1 {
                    // degree-1 modulus x + c: the class of x is −c
                    if let Inner::Extension { modulus, .. } = &*self.inner {
                        coeffs[0] = fp::sub_mod(0, modulus[0], *p);
                    }
                } else {
                    coeffs[1] = 1;
                }
                Ok(FieldElement::Extension { p: *p, key: *key, coeffs })
            }
            Inner::Cyclotomic { n, degree, phi } => {
                let mut coeffs = vec![BigRational::zero(); *degree as usize];
                if *degree == 1 {
                    // Φ_1 = x−1 or Φ_2 = x+1: the class of x is ±1
                    coeffs[0] = -phi[0].clone();
                } else {
                    coeffs[1] = BigRational::one();
                }
                Ok(FieldElement::Cyclotomic { n: *n, coeffs })
            }
            _ => Err(Error::InvalidFieldSpec("field has no polynomial generator".into())),
        }
    }

    pub fn is_zero(&self, e: &FieldElement) -> bool {
        self.expect(e);
        match e {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
            FieldElement::Extension { coeffs, .. } => coeffs.iter().all(|&c| c == 0),
            FieldElement::Cyclotomic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            FieldElement::Complex(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_one(&self, e: &FieldElement) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.expect(a);
        self.expect(b);
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
            (FieldElement::Prime { p, value: x }, FieldElement::Prime { value: y, .. }) => {
                FieldElement::Prime { p: *p, value: fp::add_mod(*x, *y, *p) }
            }
            (
                FieldElement::Extension { p, key, coeffs: x },
                FieldElement::Extension { coeffs: y, .. },
            ) => FieldElement::Extension {
                p: *p,
                key: *key,
                coeffs: x.iter().zip(y).map(|(&a, &b)| fp::add_mod(a, b, *p)).collect(),
            },
            (
                FieldElement::Cyclotomic { n, coeffs: x },
                FieldElement::Cyclotomic { coeffs: y, .. },
            ) => FieldElement::Cyclotomic {
                n: *n,
                coeffs: x.iter().zip(y).map(|(a, b)| a + b).collect(),
            },
            (FieldElement::Complex(x), FieldElement::Complex(y)) => FieldElement::Complex(x + y),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.expect(a);
        match a {
            FieldElement::Rational(x) => FieldElement::Rational(-x),
            FieldElement::Prime { p, value } => {
                FieldElement::Prime { p: *p, value: fp::sub_mod(0, *value, *p) }
            }
            FieldElement::Extension { p, key, coeffs } => FieldElement::Extension {
                p: *p,
                key: *key,
                coeffs: coeffs.iter().map(|&c| fp::sub_mod(0, c, *p)).collect(),
            },
            FieldElement::Cyclotomic { n, coeffs } => FieldElement::Cyclotomic {
                n: *n,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
            FieldElement::Complex(z) => FieldElement::Complex(-z),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.expect(a);
        self.expect(b);
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
            (FieldElement::Prime { p, value: x }, FieldElement::Prime { value: y, .. }) => {
                FieldElement::Prime { p: *p, value: fp::mul_mod(*x, *y, *p) }
            }
            (
                FieldElement::Extension { p, key, coeffs: x },
                FieldElement::Extension { coeffs: y, .. },
            ) => {
                let (modulus, k) = self.ext_modulus();
                let prod = fp::poly_mul(x, y, *p);
                let red = fp::poly_rem_monic(&prod, modulus, *p);
                FieldElement::Extension { p: *p, key: *key, coeffs: pad(red, k) }
            }
            (
                FieldElement::Cyclotomic { n, coeffs: x },
                FieldElement::Cyclotomic { coeffs: y, .. },
            ) => {
                let (phi, deg) = self.cyc_modulus();
                let prod = cyclo::poly_mul(x, y);
                let red = cyclo::poly_divrem(&prod, phi).1;
                FieldElement::Cyclotomic { n: *n, coeffs: pad_q(red, deg) }
            }
            (FieldElement::Complex(x), FieldElement::Complex(y)) => FieldElement::Complex(x * y),
            _ => unreachable!(),
        }
    }

    pub fn inverse(&self, a: &FieldElement) -> Result<FieldElement> {
        self.expect(a);
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            FieldElement::Rational(x) => FieldElement::Rational(x.recip()),
            FieldElement::Prime { p, value } => {
                FieldElement::Prime { p: *p, value: fp::inv_mod(*value, *p).unwrap() }
            }
            FieldElement::Extension { p, key, coeffs } => {
                let (modulus, k) = self.ext_modulus();
                let inv = fp::poly_inv_mod(coeffs, modulus, *p).ok_or(Error::DivisionByZero)?;
                FieldElement::Extension { p: *p, key: *key, coeffs: pad(inv, k) }
            }
            FieldElement::Cyclotomic { n, coeffs } => {
                let (phi, deg) = self.cyc_modulus();
                let inv = cyclo::poly_inv_mod(coeffs, phi).ok_or(Error::DivisionByZero)?;
                FieldElement::Cyclotomic { n: *n, coeffs: pad_q(inv, deg) }
            }
            FieldElement::Complex(z) => FieldElement::Complex(1.0 / z),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inverse(b)?))
    }

    pub fn pow(&self, a: &FieldElement, exp: i64) -> Result<FieldElement> {
        let (base, mut e) = if exp < 0 {
            (self.inverse(a)?, exp.unsigned_abs())
        } else {
            (a.clone(), exp as u64)
        };
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Canonical total order on elements of one field, used for deterministic
    /// report ordering: numeric for ℚ, least-residue for GF(p), base-p digit
    /// order for extensions, coordinatewise for cyclotomics, (re, im) for
    /// complex.
    pub fn compare(&self, a: &FieldElement, b: &FieldElement) -> Ordering {
        self.expect(a);
        self.expect(b);
        match (a, b) {
            (FieldElement::Rational(x), FieldElement::Rational(y)) => x.cmp(y),
            (FieldElement::Prime { value: x, .. }, FieldElement::Prime { value: y, .. }) => x.cmp(y),
            (FieldElement::Extension { coeffs: x, .. }, FieldElement::Extension { coeffs: y, .. }) => {
                x.iter().rev().cmp(y.iter().rev())
            }
            (FieldElement::Cyclotomic { coeffs: x, .. }, FieldElement::Cyclotomic { coeffs: y, .. }) => {
                x.iter().cmp(y.iter())
            }
            (FieldElement::Complex(x), FieldElement::Complex(y)) => {
                x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
            }
            _ => unreachable!(),
        }
    }

    /// Element with the given index in the canonical enumeration of a finite
    /// field (residues ascending; extension coefficients as base-p digits,
    /// constant coefficient least significant).
    pub fn element_from_index(&self, idx: u64) -> Result<FieldElement> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        assert!(idx < q, "index out of range");
        match &*self.inner {
            Inner::Prime { p } => Ok(FieldElement::Prime { p: *p, value: idx }),
            Inner::Extension { p, k, key, .. } => {
                let mut coeffs = vec![0u64; *k as usize];
                let mut rest = idx;
                for c in coeffs.iter_mut() {
                    *c = rest % p;
                    rest /= p;
                }
                Ok(FieldElement::Extension { p: *p, key: *key, coeffs })
            }
            _ => unreachable!(),
        }
    }

    pub fn element_index(&self, e: &FieldElement) -> Result<u64> {
        self.expect(e);
        self.order().ok_or(Error::InfiniteField)?;
        match e {
            FieldElement::Prime { value, .. } => Ok(*value),
            FieldElement::Extension { p, coeffs, .. } => {
                let mut idx = 0u64;
                for &c in coeffs.iter().rev() {
                    idx = idx * p + c;
                }
                Ok(idx)
            }
            _ => unreachable!(),
        }
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.order().ok_or(Error::InfiniteField)?;
        Ok((0..q).map(move |i| self.element_from_index(i).unwrap()))
    }

    /// A primitive n-th root of unity: ζ^n = 1 and ζ^k ≠ 1 for 0 < k < n.
    /// For finite fields this is the least element in canonical order with
    /// exact order n.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 {
            return Err(Error::NoPrimitiveRoot { n });
        }
        let ch = self.characteristic();
        if ch != 0 && n % ch == 0 {
            return Err(Error::CharacteristicDivides { ch, n });
        }
        match &*self.inner {
            Inner::Rationals => match n {
                1 => Ok(self.one()),
                2 => Ok(self.from_integer(-1)),
                _ => Err(Error::NoPrimitiveRoot { n }),
            },
            Inner::Prime { .. } | Inner::Extension { .. } => {
                let q = self.order().ok_or(Error::NoPrimitiveRoot { n })?;
                if (q - 1) % n != 0 {
                    return Err(Error::NoPrimitiveRoot { n });
                }
                let factors = fp::prime_factors(n);
                for idx in 1..q {
                    let x = self.element_from_index(idx)?;
                    if self.pow(&x, n as i64)? != self.one() {
                        continue;
                    }
                    if factors
                        .iter()
                        .all(|&l| self.pow(&x, (n / l) as i64).map(|y| y != self.one()).unwrap_or(false))
                    {
                        return Ok(x);
                    }
                }
                Err(Error::NoPrimitiveRoot { n })
            }
            Inner::Cyclotomic { n: m, .. } => {
                let m = *m as u64;
                let zeta = self.generator()?;
                let candidate = if m % n == 0 {
                    self.pow(&zeta, (m / n) as i64)?
                } else if m % 2 == 1 && (2 * m) % n == 0 {
                    let minus_zeta = self.neg(&zeta);
                    self.pow(&minus_zeta, (2 * m / n) as i64)?
                } else {
                    return Err(Error::NoPrimitiveRoot { n });
                };
                debug_assert!(self.pow(&candidate, n as i64)? == self.one());
                Ok(candidate)
            }
            Inner::Complex => {
                let theta = core::f64::consts::TAU / n as f64;
                Ok(FieldElement::Complex(Complex64::new(libm::cos(theta), libm::sin(theta))))
            }
        }
    }

    /// Serialize an element in the canonical text grammar.
    pub fn format_element(&self, e: &FieldElement) -> String {
        self.expect(e);
        text::format_element(e)
    }

    /// Parse the canonical text grammar in this field.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        text::parse_element(self, s)
    }

    pub(crate) fn ext_modulus(&self) -> (&Vec<u64>, usize) {
        match &*self.inner {
            Inner::Extension { modulus, k, .. } => (modulus, *k as usize),
            _ => panic!("not an extension field"),
        }
    }

    pub(crate) fn cyc_modulus(&self) -> (&Vec<BigRational>, usize) {
        match &*self.inner {
            Inner::Cyclotomic { phi, degree, .. } => (phi, *degree as usize),
            _ => panic!("not a cyclotomic field"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.inner {
            Inner::Rationals => write!(f, "Q"),
            Inner::Prime { p } => write!(f, "GF({p})"),
            Inner::Extension { p, k, .. } => write!(f, "GF({p}^{k})"),
            Inner::Cyclotomic { n, .. } => write!(f, "Q(zeta_{n})"),
            Inner::Complex => write!(f, "C"),
        }
    }
}

fn pad(mut v: Vec<u64>, k: usize) -> Vec<u64> {
    v.resize(k, 0);
    v
}

fn pad_q(mut v: Vec<BigRational>, k: usize) -> Vec<BigRational> {
    v.resize(k, BigRational::zero());
    v
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.characteristic(), 7);

        let c3 = Field::cyclotomic(3).unwrap();
        let z = c3.generator().unwrap();
        // ζ² + ζ + 1 = 0
        let lhs = c3.add(&c3.add(&c3.mul(&z, &z), &z), &c3.one());
        assert!(c3.is_zero(&lhs));

        assert_eq!(Field::prime(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primitive_roots() {
        let f7 = Field::prime(7).unwrap();
        let z = f7.primitive_root_of_unity(3).unwrap();
        assert_eq!(z, f7.from_integer(2)); // least residue
        assert_eq!(f7.pow(&z, 3).unwrap(), f7.one());

        let c5 = Field::cyclotomic(5).unwrap();
        let z5 = c5.primitive_root_of_unity(5).unwrap();
        assert_eq!(z5, c5.generator().unwrap());

        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.primitive_root_of_unity(3), Err(Error::NoPrimitiveRoot { n: 3 }));

        // char divides n
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            f3.primitive_root_of_unity(3),
            Err(Error::CharacteristicDivides { ch: 3, n: 3 })
        );

        // in a cyclotomic field of odd index the sign trick gives even orders
        let c3 = Field::cyclotomic(3).unwrap();
        let r6 = c3.primitive_root_of_unity(6).unwrap();
        assert_eq!(c3.pow(&r6, 6).unwrap(), c3.one());
        for k in 1..6 {
            assert_ne!(c3.pow(&r6, k).unwrap(), c3.one(), "order divides {k}");
        }
    }

    #[test]
    fn root_powers_are_all_distinct_from_one() {
        for (field, n) in [
            (Field::prime(13).unwrap(), 4u64),
            (Field::gf(4).unwrap(), 3),
            (Field::gf(9).unwrap(), 8),
            (Field::cyclotomic(12).unwrap(), 12),
        ] {
            let z = field.primitive_root_of_unity(n).unwrap();
            assert_eq!(field.pow(&z, n as i64).unwrap(), field.one());
            for k in 1..n {
                assert_ne!(field.pow(&z, k as i64).unwrap(), field.one());
            }
        }
    }

    #[test]
    fn gf4_arithmetic() {
        let f4 = Field::gf(4).unwrap();
        assert_eq!(f4.order(), Some(4));
        let a = f4.generator().unwrap();
        // a² = a + 1 under x² + x + 1
        let sq = f4.mul(&a, &a);
        assert_eq!(sq, f4.add(&a, &f4.one()));
        // Fermat: x^4 = x for every element
        for x in f4.elements().unwrap() {
            assert_eq!(f4.pow(&x, 4).unwrap(), x);
        }
    }

    #[test]
    fn inverse_round_trip() {
        let fields = [
            Field::rationals(),
            Field::prime(11).unwrap(),
            Field::gf(8).unwrap(),
            Field::cyclotomic(5).unwrap(),
        ];
        for field in &fields {
            for i in -6..7i64 {
                let x = field.from_integer(i);
                if field.is_zero(&x) {
                    assert_eq!(field.inverse(&x), Err(Error::DivisionByZero));
                    continue;
                }
                let inv = field.inverse(&x).unwrap();
                assert!(field.is_one(&field.mul(&x, &inv)));
            }
        }
        // a nontrivial cyclotomic inverse
        let c5 = Field::cyclotomic(5).unwrap();
        let z = c5.generator().unwrap();
        let e = c5.add(&z, &c5.from_integer(2));
        let inv = c5.inverse(&e).unwrap();
        assert!(c5.is_one(&c5.mul(&e, &inv)));
    }

    #[test]
    fn element_indexing_round_trip() {
        let f9 = Field::gf(9).unwrap();
        for i in 0..9 {
            let e = f9.element_from_index(i).unwrap();
            assert_eq!(f9.element_index(&e).unwrap(), i);
        }
    }

    #[test]
    fn cross_field_membership() {
        let f7 = Field::prime(7).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert!(f7.contains(&f7.one()));
        assert!(!f7.contains(&f5.one()));
        assert!(!f7.contains(&Field::rationals().one()));
    }
}
