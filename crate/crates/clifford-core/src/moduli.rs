//! Irreducibility, equivalence, and the local moduli dimension.
//!
//! Irreducibility is decided by the Burnside criterion: the span of words in
//! {A, B} has dimension m² exactly when the representation is absolutely
//! irreducible. Equivalence is decided through the intertwiner space
//! {X : XA₁ = A₂X, XB₁ = B₂X}; when at least one side is irreducible the
//! space has dimension ≤ 1 and a nonzero element is automatically invertible
//! (Schur), so the decision is exact. When both sides are reducible an
//! exhaustive or randomized search over the intertwiner space is offered
//! instead, with one-sided error in the randomized regime.
//!
//! The tangent space of the representation variety at (A, B) is the kernel
//! of the linearized identity Σ_k M^k (uȦ + vḂ) M^{d−1−k} = 0; its dimension
//! minus the conjugation-orbit dimension m²−1 measures the local moduli
//! dimension, to be compared with r²(g−1)+1.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::field::{Field, FieldElement};
use crate::linalg::ExactMatrix;
use crate::pencil::HomMatrixPoly;
use crate::rep::{sample_element, Representation};
use crate::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    /// Dimension of the unital algebra generated by A and B inside M_m.
    pub algebra_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentReport {
    pub tangent_dim: usize,
    pub orbit_dim: usize,
    pub moduli_dim: i64,
    pub predicted: i64,
    pub matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomizedVerdict {
    Equivalent,
    /// Exhaustive search of the intertwiner space found no invertible
    /// element: exactly inequivalent.
    Inequivalent,
    /// Randomized search found no invertible element; failure to find is
    /// one-sided evidence only.
    ProbablyInequivalent,
}

/// Incrementally maintained reduced row space over an exact field.
struct Echelon {
    field: Field,
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(field: Field) -> Self {
        Echelon { field, rows: Vec::new(), pivots: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; insert if independent. Returns true
    /// when the dimension grew.
    fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        let Some(p) = v.iter().position(|c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inverse(&v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep rows fully reduced so single-pass reduction stays exact
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                *x = f.sub(x, &f.mul(&c, y));
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Burnside word-span test: seed with I, repeatedly left-multiply new basis
/// members by A and B, re-echelonize, stop when the dimension stabilizes.
/// Absolutely irreducible iff the generated algebra is all of M_m.
pub fn is_irreducible(rep: &Representation) -> IrreducibilityReport {
    assert!(rep.field().is_exact(), "irreducibility needs an exact field");
    let f = rep.field().clone();
    let m = rep.m();
    let a = rep.pencil().a();
    let b = rep.pencil().b();
    let mut span = Echelon::new(f.clone());
    let identity = ExactMatrix::identity(f.clone(), m);
    span.insert(identity.entries().to_vec());
    let mut queue = alloc::vec![identity];
    while let Some(w) = queue.pop() {
        for gen in [a, b] {
            let prod = gen.mul(&w).expect("square product");
            if span.insert(prod.entries().to_vec()) {
                queue.push(prod);
            }
        }
        if span.dim() == m * m {
            break;
        }
    }
    IrreducibilityReport { irreducible: span.dim() == m * m, algebra_dim: span.dim() }
}

/// Basis of {X : X A₁ = A₂ X and X B₁ = B₂ X}, the exact nullspace of a
/// 2m² × m² system. Requires equal forms and equal sizes.
pub fn intertwiners(rep1: &Representation, rep2: &Representation) -> Result<Vec<ExactMatrix>> {
    if rep1.form() != rep2.form() {
        return Err(Error::FormMismatch);
    }
    if rep1.m() != rep2.m() {
        return Err(Error::DimensionMismatch);
    }
    let f = rep1.field().clone();
    let m = rep1.m();
    let mut system = ExactMatrix::zero(f.clone(), 2 * m * m, m * m);
    for (block, (m1, m2)) in [
        (rep1.pencil().a(), rep2.pencil().a()),
        (rep1.pencil().b(), rep2.pencil().b()),
    ]
    .into_iter()
    .enumerate()
    .map(|(i, pair)| (i, pair))
    {
        for i in 0..m {
            for j in 0..m {
                let row = block * m * m + i * m + j;
                // (X M₁)_{ij} = Σ_k X_{ik} (M₁)_{kj}
                for k in 0..m {
                    let cur = system.entry(row, i * m + k).clone();
                    system.set(row, i * m + k, f.add(&cur, m1.entry(k, j)));
                }
                // −(M₂ X)_{ij} = −Σ_k (M₂)_{ik} X_{kj}
                for k in 0..m {
                    let cur = system.entry(row, k * m + j).clone();
                    system.set(row, k * m + j, f.sub(&cur, m2.entry(i, k)));
                }
            }
        }
    }
    let basis = system.nullspace();
    basis
        .into_iter()
        .map(|v| ExactMatrix::new(f.clone(), m, m, v))
        .collect()
}

/// Exact equivalence decision; requires at least one irreducible side.
/// With an irreducible side the intertwiner space has dimension ≤ 1 and any
/// nonzero element is invertible, so equivalence is exactly
/// "dimension 1 with invertible basis element".
pub fn are_equivalent(rep1: &Representation, rep2: &Representation) -> Result<bool> {
    let irr1 = is_irreducible(rep1).irreducible;
    let irr2 = irr1 || is_irreducible(rep2).irreducible;
    if !irr1 && !irr2 {
        return Err(Error::Undecided);
    }
    let basis = intertwiners(rep1, rep2)?;
    Ok(basis.len() == 1 && basis[0].inverse().is_ok())
}

/// Search the intertwiner space for an invertible element. Exhaustive when
/// the space is finite and small (then the verdict is exact); otherwise a
/// seeded randomized search with the stated one-sided error.
pub fn are_equivalent_randomized(
    rep1: &Representation,
    rep2: &Representation,
    seed: u64,
    tries: usize,
) -> Result<RandomizedVerdict> {
    let basis = intertwiners(rep1, rep2)?;
    if basis.is_empty() {
        return Ok(RandomizedVerdict::Inequivalent);
    }
    let f = rep1.field().clone();
    let dim = basis.len();
    if let Some(q) = f.order() {
        let space: Option<u64> = q.checked_pow(dim as u32).filter(|&s| s <= 1 << 16);
        if let Some(total) = space {
            for idx in 1..total {
                let mut rest = idx;
                let mut x = ExactMatrix::zero(f.clone(), rep1.m(), rep1.m());
                for b in &basis {
                    let c = f.element_from_index(rest % q)?;
                    rest /= q;
                    x = x.add(&b.scale(&c))?;
                }
                if x.inverse().is_ok() {
                    return Ok(RandomizedVerdict::Equivalent);
                }
            }
            return Ok(RandomizedVerdict::Inequivalent);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let mut x = ExactMatrix::zero(f.clone(), rep1.m(), rep1.m());
        for b in &basis {
            let c = sample_element(&f, &mut rng);
            x = x.add(&b.scale(&c))?;
        }
        if x.inverse().is_ok() {
            return Ok(RandomizedVerdict::Equivalent);
        }
    }
    Ok(RandomizedVerdict::ProbablyInequivalent)
}

/// Assemble the (d+1)m² × 2m² linearization of the coefficient identities at
/// the representation: column (slot, s, t) holds the coefficients of
/// Σ_k M^k · (u or v)·E_st · M^{d−1−k}.
pub fn tangent_system(rep: &Representation) -> Result<ExactMatrix> {
    let f = rep.field().clone();
    let m = rep.m();
    let d = rep.d();
    let mut powers: Vec<HomMatrixPoly> = Vec::with_capacity(d);
    powers.push(HomMatrixPoly::from_coeffs(alloc::vec![ExactMatrix::identity(f.clone(), m)])?);
    for k in 1..d {
        powers.push(rep.pencil().power(k)?);
    }
    let rows = (d + 1) * m * m;
    let cols = 2 * m * m;
    let mut system = ExactMatrix::zero(f.clone(), rows, cols);
    for slot in 0..2usize {
        for s in 0..m {
            for t in 0..m {
                let col = slot * m * m + s * m + t;
                for k in 0..d {
                    let left = &powers[k];
                    let right = &powers[d - 1 - k];
                    for j1 in 0..=left.degree() {
                        for j2 in 0..=right.degree() {
                            let j = j1 + j2 + slot;
                            let lm = left.coeff(j1);
                            let rm = right.coeff(j2);
                            // (L · E_st · R)_{x,y} = L_{x,s} R_{t,y}
                            for x in 0..m {
                                let lxs = lm.entry(x, s);
                                if f.is_zero(lxs) {
                                    continue;
                                }
                                for y in 0..m {
                                    let add = f.mul(lxs, rm.entry(t, y));
                                    let row = j * m * m + x * m + y;
                                    let cur = system.entry(row, col).clone();
                                    system.set(row, col, f.add(&cur, &add));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(system)
}

/// Tangent dimension, orbit dimension m²−1 (valid under the irreducibility
/// precondition: the stabilizer is the scalars), measured moduli dimension
/// and the prediction r²(g−1)+1.
pub fn tangent_space_dim(rep: &Representation) -> Result<TangentReport> {
    if !is_irreducible(rep).irreducible {
        return Err(Error::ReducibleInput);
    }
    let m = rep.m();
    let system = tangent_system(rep)?;
    let tangent_dim = system.nullspace().len();
    let orbit_dim = m * m - 1;
    let moduli_dim = tangent_dim as i64 - orbit_dim as i64;
    let r = rep.r() as i64;
    let g = rep.genus() as i64;
    let predicted = r * r * (g - 1) + 1;
    Ok(TangentReport {
        tangent_dim,
        orbit_dim,
        moduli_dim,
        predicted,
        matches: moduli_dim == predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::pencil::MatrixPencil;

    fn f7_clock3() -> Representation {
        Representation::clock_shift(3, &Field::prime(7).unwrap()).unwrap()
    }

    /// Clock–shift with the shift squared: (A, B²) also satisfies the
    /// identity for u^d + v^d but is inequivalent to (A, B) when d ≥ 3.
    fn twisted_clock(d: usize, field: &Field) -> Representation {
        let rep = Representation::clock_shift(d, field).unwrap();
        let b2 = rep.pencil().b().mul(rep.pencil().b()).unwrap();
        Representation::new(
            rep.form().clone(),
            MatrixPencil::new(rep.pencil().a().clone(), b2).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn irreducibility_examples() {
        let rep = f7_clock3();
        let r = is_irreducible(&rep);
        assert!(r.irreducible);
        assert_eq!(r.algebra_dim, 9);

        let sum = rep.direct_sum(&rep).unwrap();
        let r = is_irreducible(&sum);
        assert!(!r.irreducible);
        assert!(r.algebra_dim <= 18);
        assert_eq!(r.algebra_dim, 9); // equal blocks: the diagonal copy

        let q = Field::rationals();
        let pauli = Representation::clock_shift(2, &q).unwrap();
        let r = is_irreducible(&pauli);
        assert!(r.irreducible);
        assert_eq!(r.algebra_dim, 4);
    }

    #[test]
    fn word_span_invariant_under_conjugation_and_pullback() {
        let f7 = Field::prime(7).unwrap();
        let rep = f7_clock3();
        let conj = rep.random_equivalent(11);
        assert_eq!(is_irreducible(&rep).algebra_dim, is_irreducible(&conj).algebra_dim);
        let g = ExactMatrix::new(
            f7.clone(),
            2,
            2,
            alloc::vec![f7.one(), f7.from_integer(2), f7.zero(), f7.one()],
        )
        .unwrap();
        let pulled = rep.gl2_pullback(&g).unwrap();
        assert_eq!(is_irreducible(&rep).algebra_dim, is_irreducible(&pulled).algebra_dim);
    }

    #[test]
    fn schur_intertwiners() {
        let rep = f7_clock3();
        let self_hom = intertwiners(&rep, &rep).unwrap();
        assert_eq!(self_hom.len(), 1);
        // the basis element is a scalar multiple of the identity
        let f = rep.field().clone();
        let x = &self_hom[0];
        let c = x.entry(0, 0).clone();
        assert!(!f.is_zero(&c));
        assert_eq!(x, &ExactMatrix::scalar(f.clone(), 3, &c));

        // against a conjugate: dimension 1, basis proportional to X
        let f7 = rep.field().clone();
        let mut x = ExactMatrix::identity(f7.clone(), 3);
        x.set(0, 1, f7.from_integer(3));
        x.set(2, 0, f7.from_integer(5));
        let conj = rep.conjugate(&x).unwrap();
        let hom = intertwiners(&rep, &conj).unwrap();
        assert_eq!(hom.len(), 1);
        // hom maps rep to conj: Y A₁ = A₂ Y with A₂ = X A₁ X⁻¹, so Y ∝ X
        let y = &hom[0];
        let (mut s, mut t) = (None, None);
        'outer: for i in 0..3 {
            for j in 0..3 {
                if !f7.is_zero(y.entry(i, j)) {
                    s = Some(f7.div(x.entry(i, j), y.entry(i, j)).unwrap());
                    t = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (s, _) = (s.unwrap(), t.unwrap());
        assert_eq!(&y.scale(&s), &x);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let rep = f7_clock3();
        let sum = rep.direct_sum(&rep).unwrap();
        assert_eq!(intertwiners(&rep, &sum).unwrap_err(), Error::DimensionMismatch);
    }

    #[test]
    fn equivalence_examples() {
        let rep = f7_clock3();
        assert!(are_equivalent(&rep, &rep.random_equivalent(7)).unwrap());

        // pullback along a non-form-preserving g changes the algebra
        let f7 = rep.field().clone();
        let g = ExactMatrix::new(
            f7.clone(),
            2,
            2,
            alloc::vec![f7.one(), f7.one(), f7.zero(), f7.one()],
        )
        .unwrap();
        let pulled = rep.gl2_pullback(&g).unwrap();
        assert_ne!(pulled.form(), rep.form());
        assert_eq!(are_equivalent(&rep, &pulled).unwrap_err(), Error::FormMismatch);

        // twisted clock–shift: same form, inequivalent
        let twisted = twisted_clock(3, &f7);
        assert!(is_irreducible(&twisted).irreducible);
        assert!(!are_equivalent(&rep, &twisted).unwrap());
    }

    #[test]
    fn negated_shift_is_conjugate_for_d2() {
        // (A, −B) for u² + v²: X must satisfy XA = AX, XB = −BX; X = A works,
        // verified against a brute-force grid oracle
        let q = Field::rationals();
        let rep = Representation::clock_shift(2, &q).unwrap();
        let negated = Representation::new(
            rep.form().clone(),
            MatrixPencil::new(rep.pencil().a().clone(), rep.pencil().b().neg()).unwrap(),
        )
        .unwrap();
        let verdict = are_equivalent(&rep, &negated).unwrap();

        // oracle: search X with entries in {−1, 0, 1}
        let mut found = false;
        let vals = [-1i64, 0, 1];
        for x00 in vals {
            for x01 in vals {
                for x10 in vals {
                    for x11 in vals {
                        let x = ExactMatrix::new(
                            q.clone(),
                            2,
                            2,
                            alloc::vec![
                                q.from_integer(x00),
                                q.from_integer(x01),
                                q.from_integer(x10),
                                q.from_integer(x11),
                            ],
                        )
                        .unwrap();
                        if x.inverse().is_err() {
                            continue;
                        }
                        let lhs_a = x.mul(rep.pencil().a()).unwrap();
                        let rhs_a = negated.pencil().a().mul(&x).unwrap();
                        let lhs_b = x.mul(rep.pencil().b()).unwrap();
                        let rhs_b = negated.pencil().b().mul(&x).unwrap();
                        if lhs_a == rhs_a && lhs_b == rhs_b {
                            found = true;
                        }
                    }
                }
            }
        }
        assert_eq!(verdict, found);
        assert!(verdict);
    }

    #[test]
    fn reducible_pairs_need_the_randomized_path() {
        let rep = f7_clock3();
        let sum = rep.direct_sum(&rep).unwrap();
        assert_eq!(are_equivalent(&sum, &sum).unwrap_err(), Error::Undecided);

        // sum vs itself: exhaustive search finds invertible combinations
        assert_eq!(
            are_equivalent_randomized(&sum, &sum, 0, 64).unwrap(),
            RandomizedVerdict::Equivalent
        );

        // sum of inequivalent blocks vs sum of equal blocks: exact refusal
        let twisted = twisted_clock(3, rep.field());
        let mixed = rep.direct_sum(&twisted).unwrap();
        assert_eq!(
            are_equivalent_randomized(&sum, &mixed, 0, 64).unwrap(),
            RandomizedVerdict::Inequivalent
        );
    }

    #[test]
    fn equivalence_is_an_equivalence_relation_on_samples() {
        let rep = f7_clock3();
        let a = rep.random_equivalent(1);
        let b = rep.random_equivalent(2);
        let c = rep.random_equivalent(3);
        assert!(are_equivalent(&a, &a).unwrap());
        assert!(are_equivalent(&a, &b).unwrap() == are_equivalent(&b, &a).unwrap());
        assert!(are_equivalent(&a, &b).unwrap() && are_equivalent(&b, &c).unwrap());
        assert!(are_equivalent(&a, &c).unwrap());
    }

    /// Independent linearization oracle: expand the pencil power over the
    /// dual numbers k[ε]/ε², one direction at a time, and read off the
    /// first-order coefficient matrices.
    fn tangent_system_oracle(rep: &Representation) -> ExactMatrix {
        let f = rep.field().clone();
        let m = rep.m();
        let d = rep.d();
        let a = rep.pencil().a().clone();
        let b = rep.pencil().b().clone();
        let rows = (d + 1) * m * m;
        let mut system = ExactMatrix::zero(f.clone(), rows, 2 * m * m);
        for slot in 0..2 {
            for s in 0..m {
                for t in 0..m {
                    let col = slot * m * m + s * m + t;
                    let mut e_a = ExactMatrix::zero(f.clone(), m, m);
                    let mut e_b = ExactMatrix::zero(f.clone(), m, m);
                    if slot == 0 {
                        e_a.set(s, t, f.one());
                    } else {
                        e_b.set(s, t, f.one());
                    }
                    // value coefficients C_j and derivative coefficients D_j
                    let mut c = alloc::vec![a.clone(), b.clone()];
                    let mut dd = alloc::vec![e_a.clone(), e_b.clone()];
                    for _ in 1..d {
                        let k = c.len();
                        let mut c2 = Vec::with_capacity(k + 1);
                        let mut d2 = Vec::with_capacity(k + 1);
                        for j in 0..=k {
                            let mut cv = ExactMatrix::zero(f.clone(), m, m);
                            let mut dv = ExactMatrix::zero(f.clone(), m, m);
                            if j < k {
                                cv = cv.add(&c[j].mul(&a).unwrap()).unwrap();
                                dv = dv
                                    .add(&dd[j].mul(&a).unwrap())
                                    .unwrap()
                                    .add(&c[j].mul(&e_a).unwrap())
                                    .unwrap();
                            }
                            if j > 0 {
                                cv = cv.add(&c[j - 1].mul(&b).unwrap()).unwrap();
                                dv = dv
                                    .add(&dd[j - 1].mul(&b).unwrap())
                                    .unwrap()
                                    .add(&c[j - 1].mul(&e_b).unwrap())
                                    .unwrap();
                            }
                            c2.push(cv);
                            d2.push(dv);
                        }
                        c = c2;
                        dd = d2;
                    }
                    for (j, mat) in dd.iter().enumerate() {
                        for x in 0..m {
                            for y in 0..m {
                                system.set(j * m * m + x * m + y, col, mat.entry(x, y).clone());
                            }
                        }
                    }
                }
            }
        }
        system
    }

    #[test]
    fn tangent_matches_dual_number_oracle() {
        let c3 = Field::cyclotomic(3).unwrap();
        let rep = Representation::clock_shift(3, &c3).unwrap();
        let sys = tangent_system(&rep).unwrap();
        let oracle = tangent_system_oracle(&rep);
        assert_eq!(sys, oracle);

        let f7 = Field::prime(7).unwrap();
        let rep = Representation::clock_shift(3, &f7).unwrap().random_equivalent(5);
        assert_eq!(tangent_system(&rep).unwrap(), tangent_system_oracle(&rep));
    }

    #[test]
    fn tangent_clock3_over_cyclotomic() {
        let c3 = Field::cyclotomic(3).unwrap();
        let rep = Representation::clock_shift(3, &c3).unwrap();
        let report = tangent_space_dim(&rep).unwrap();
        assert_eq!(report.tangent_dim, 9);
        assert_eq!(report.orbit_dim, 8);
        assert_eq!(report.moduli_dim, 1);
        assert_eq!(report.predicted, 1);
        assert!(report.matches);
    }

    #[test]
    fn tangent_rejects_reducible() {
        let rep = f7_clock3();
        let sum = rep.direct_sum(&rep).unwrap();
        assert_eq!(tangent_space_dim(&sum).unwrap_err(), Error::ReducibleInput);
    }

    #[test]
    fn tangent_invariant_under_conjugation() {
        let rep = f7_clock3();
        let report = tangent_space_dim(&rep).unwrap();
        let conj = rep.random_equivalent(9);
        let report2 = tangent_space_dim(&conj).unwrap();
        assert_eq!(report.tangent_dim, report2.tangent_dim);
    }
}
