//! The canonical element grammar, shared by every serialized document.
//!
//! * rationals: `p/q` or `n` (reduced, positive denominator)
//! * prime fields: the least residue `n`
//! * extension/cyclotomic fields: polynomials in `a`, descending powers,
//!   e.g. `a^2+3*a+1`, `-1/2*a+3`; the zero element is `0`
//! * complex doubles: `(re,im)` with decimal literals (shortest
//!   round-tripping form)
//!
//! Formatting always emits the canonical form; parsing is lenient about
//! residue ranges (values are reduced into the field).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, FieldElement};
use crate::error::Error;
use crate::Result;

pub fn format_element(e: &FieldElement) -> String {
    match e {
        FieldElement::Rational(r) => format_rational(r),
        FieldElement::Prime { value, .. } => value.to_string(),
        FieldElement::Extension { coeffs, .. } => {
            let terms: Vec<(String, bool)> = coeffs
                .iter()
                .map(|&c| (c.to_string(), c == 1))
                .collect();
            format_poly(&terms, |s| s == "0")
        }
        FieldElement::Cyclotomic { coeffs, .. } => {
            let terms: Vec<(String, bool)> = coeffs
                .iter()
                .map(|c| (format_rational(c), c.abs().is_one()))
                .collect();
            format_poly(&terms, |s| s == "0")
        }
        FieldElement::Complex(z) => format!("({},{})", z.re, z.im),
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Shared polynomial printer: `terms[i]` is the printed coefficient of a^i
/// plus a flag marking coefficients of absolute value one.
fn format_poly(terms: &[(String, bool)], is_zero: impl Fn(&str) -> bool) -> String {
    let mut out = String::new();
    for (i, (coeff, unit)) in terms.iter().enumerate().rev() {
        if is_zero(coeff) {
            continue;
        }
        let negative = coeff.starts_with('-');
        let mag = if negative { &coeff[1..] } else { coeff.as_str() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        if i == 0 {
            out.push_str(mag);
        } else {
            if !unit {
                out.push_str(mag);
                out.push('*');
            }
            out.push('a');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn parse_element(field: &Field, s: &str) -> Result<FieldElement> {
    let s = s.trim();
    let err = |reason: &str| Error::ParseElement { input: s.into(), reason: reason.into() };
    match field.spec() {
        super::FieldSpec::Rationals => Ok(FieldElement::Rational(parse_rational(s)?)),
        super::FieldSpec::PrimeField { .. } => {
            let v: BigInt = s.parse().map_err(|_| err("expected an integer"))?;
            Ok(field.from_bigint(&v))
        }
        super::FieldSpec::ExtensionField { .. } | super::FieldSpec::Cyclotomic { .. } => {
            let terms = parse_poly_terms(s)?;
            let gen = field.generator()?;
            let mut acc = field.zero();
            for (coeff, power) in terms {
                let c = field_coeff(field, &coeff)?;
                let term = field.mul(&c, &field.pow(&gen, power as i64)?);
                acc = field.add(&acc, &term);
            }
            Ok(acc)
        }
        super::FieldSpec::ComplexDouble => {
            if let Some(stripped) = s.strip_prefix('(') {
                let inner = stripped.strip_suffix(')').ok_or_else(|| err("expected (re,im)"))?;
                let (re, im) = inner.split_once(',').ok_or_else(|| err("expected (re,im)"))?;
                let re: f64 = re.trim().parse().map_err(|_| err("bad real part"))?;
                let im: f64 = im.trim().parse().map_err(|_| err("bad imaginary part"))?;
                return Ok(FieldElement::Complex(num_complex::Complex64::new(re, im)));
            }
            // bare real literal: decimal or p/q
            let re: f64 = if let Some((n, d)) = s.split_once('/') {
                let n: f64 = n.trim().parse().map_err(|_| err("bad numerator"))?;
                let d: f64 = d.trim().parse().map_err(|_| err("bad denominator"))?;
                n / d
            } else {
                s.parse().map_err(|_| err("expected (re,im) or a real literal"))?
            };
            Ok(FieldElement::Complex(num_complex::Complex64::new(re, 0.0)))
        }
    }
}

fn field_coeff(field: &Field, lit: &str) -> Result<FieldElement> {
    let r = parse_rational(lit)?;
    if r.denom().is_one() {
        Ok(field.from_bigint(r.numer()))
    } else {
        field.div(&field.from_bigint(r.numer()), &field.from_bigint(r.denom()))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::ParseElement { input: s.into(), reason: reason.into() };
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| err("expected integer or p/q"))?;
        Ok(BigRational::from_integer(n))
    }
}

/// Split a polynomial literal into `(coefficient literal, power)` terms.
/// Accepted term shapes: `c`, `c*a`, `c*a^k`, `a`, `a^k`, each optionally
/// preceded by a sign.
fn parse_poly_terms(s: &str) -> Result<Vec<(String, u32)>> {
    let err = |reason: &str| Error::ParseElement { input: s.into(), reason: reason.into() };
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    // split at top-level signs (every sign starts a new term except a leading one)
    let mut chunks: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            chunks.push(core::mem::take(&mut cur));
            if ch == '-' {
                cur.push('-');
            }
        } else {
            cur.push(ch);
        }
    }
    chunks.push(cur);

    let mut out = Vec::new();
    for chunk in chunks {
        let t = chunk.trim();
        if t.is_empty() || t == "-" {
            return Err(err("dangling sign"));
        }
        let (coeff_part, var_part) = match t.find('a') {
            None => (t, None),
            Some(pos) => {
                let before = t[..pos].trim_end_matches('*').trim();
                (before, Some(t[pos..].trim()))
            }
        };
        let power = match var_part {
            None => 0u32,
            Some("a") => 1,
            Some(v) => {
                let exp = v
                    .strip_prefix("a^")
                    .ok_or_else(|| err("malformed variable part"))?;
                exp.parse().map_err(|_| err("bad exponent"))?
            }
        };
        let coeff = match coeff_part {
            "" => "1".to_string(),
            "-" => "-1".to_string(),
            other => other.to_string(),
        };
        out.push((coeff, power));
    }
    Ok(out)
}
