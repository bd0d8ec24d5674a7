//! Reduction of characteristic-zero data into prime fields.
//!
//! Empirical checks on representations defined over ℚ or ℚ(ζ_n) enumerate
//! curve points after reducing modulo a good prime: one that does not divide
//! the relevant degree, does not divide any denominator, and (for cyclotomic
//! sources) splits Φ_n so the generator has somewhere to go. Candidate primes
//! are produced in ascending order; the caller retries with the next one when
//! a reduction-specific condition (say, nondegeneracy of the reduced form)
//! fails.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{fp, Field, FieldElement, FieldSpec};
use crate::error::Error;
use crate::Result;

/// A ring homomorphism from a characteristic-zero field (ℚ or ℚ(ζ_n)) onto
/// GF(p), defined on elements whose denominators are prime to p.
pub struct ReductionMap {
    src: Field,
    dst: Field,
    /// Image of the cyclotomic generator, when the source is cyclotomic.
    zeta_image: Option<u64>,
}

impl ReductionMap {
    /// Reduction of `src` modulo the prime `p`. Fails when `p` is not prime
    /// or (cyclotomic source) Φ_n has no root mod p.
    pub fn to_prime(src: &Field, p: u64) -> Result<ReductionMap> {
        let dst = Field::prime(p)?;
        let zeta_image = match src.spec() {
            FieldSpec::Rationals => None,
            FieldSpec::Cyclotomic { .. } => {
                let (phi, _) = src.cyc_modulus();
                let phi_mod: Vec<u64> = phi
                    .iter()
                    .map(|c| {
                        debug_assert!(c.denom().to_u64() == Some(1));
                        bigint_mod_u64(c.numer(), p)
                    })
                    .collect();
                let root = (0..p).find(|&x| eval_mod(&phi_mod, x, p) == 0);
                Some(root.ok_or(Error::NoGoodPrime)?)
            }
            FieldSpec::PrimeField { p: q } if q == p => None,
            _ => return Err(Error::FieldMismatch),
        };
        Ok(ReductionMap { src: src.clone(), dst, zeta_image })
    }

    /// Ascending candidate primes for reducing `src`, skipping divisors of
    /// `avoid_divisor_of` and, for cyclotomic sources, primes not ≡ 1 mod n.
    pub fn candidate_primes(src: &Field, avoid_divisor_of: u64) -> impl Iterator<Item = u64> {
        let n = match src.spec() {
            FieldSpec::Cyclotomic { n } => n as u64,
            _ => 1,
        };
        (2u64..).filter(move |&p| {
            fp::is_prime_u64(p) && (avoid_divisor_of % p != 0) && (n == 1 || p % n == 1)
        })
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    pub fn map(&self, e: &FieldElement) -> Result<FieldElement> {
        if !self.src.contains(e) {
            return Err(Error::FieldMismatch);
        }
        let p = self.dst.characteristic();
        match e {
            FieldElement::Rational(r) => {
                let num = bigint_mod_u64(r.numer(), p);
                let den = bigint_mod_u64(r.denom(), p);
                let inv = fp::inv_mod(den, p).ok_or(Error::DivisionByZero)?;
                Ok(FieldElement::Prime { p, value: fp::mul_mod(num, inv, p) })
            }
            FieldElement::Cyclotomic { coeffs, .. } => {
                let zeta = self.zeta_image.expect("cyclotomic map has a generator image");
                let mut acc = 0u64;
                let mut power = 1u64;
                for c in coeffs {
                    let num = bigint_mod_u64(c.numer(), p);
                    let den = bigint_mod_u64(c.denom(), p);
                    let inv = fp::inv_mod(den, p).ok_or(Error::DivisionByZero)?;
                    let val = fp::mul_mod(fp::mul_mod(num, inv, p), power, p);
                    acc = fp::add_mod(acc, val, p);
                    power = fp::mul_mod(power, zeta, p);
                }
                Ok(FieldElement::Prime { p, value: acc })
            }
            FieldElement::Prime { p: q, value } if *q == p => {
                Ok(FieldElement::Prime { p, value: *value })
            }
            _ => Err(Error::FieldMismatch),
        }
    }
}

fn eval_mod(poly: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = fp::add_mod(fp::mul_mod(acc, x, p), c, p);
    }
    acc
}

fn bigint_mod_u64(v: &BigInt, p: u64) -> u64 {
    let m = v % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_rational::BigRational;

    #[test]
    fn rational_reduction() {
        let q = Field::rationals();
        let map = ReductionMap::to_prime(&q, 7).unwrap();
        let half = FieldElement::Rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        // 1/2 ≡ 4 mod 7
        assert_eq!(map.map(&half).unwrap(), map.target().from_integer(4));
        let seventh = FieldElement::Rational(BigRational::new(BigInt::from(1), BigInt::from(7)));
        assert_eq!(map.map(&seventh), Err(Error::DivisionByZero));
    }

    #[test]
    fn cyclotomic_reduction_respects_relations() {
        // Q(ζ₃) → GF(7): ζ goes to a root of x²+x+1, i.e. 2 or 4; least is 2.
        let c3 = Field::cyclotomic(3).unwrap();
        let map = ReductionMap::to_prime(&c3, 7).unwrap();
        let z = c3.generator().unwrap();
        let img = map.map(&z).unwrap();
        assert_eq!(img, map.target().from_integer(2));
        // relation survives: img² + img + 1 = 0
        let t = map.target();
        let rel = t.add(&t.add(&t.mul(&img, &img), &img), &t.one());
        assert!(t.is_zero(&rel));
        // homomorphism on a product
        let e1 = c3.add(&z, &c3.from_integer(3));
        let e2 = c3.sub(&c3.mul(&z, &z), &c3.from_integer(2));
        let prod = c3.mul(&e1, &e2);
        assert_eq!(
            map.map(&prod).unwrap(),
            t.mul(&map.map(&e1).unwrap(), &map.map(&e2).unwrap())
        );
    }

    #[test]
    fn candidate_primes_filtered() {
        let c4 = Field::cyclotomic(4).unwrap();
        let first: Vec<u64> = ReductionMap::candidate_primes(&c4, 4).take(3).collect();
        // p ∤ 4 and p ≡ 1 mod 4
        assert_eq!(first, vec![5, 13, 17]);
    }
}
