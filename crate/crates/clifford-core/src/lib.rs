//! Exact computation with representations of Clifford algebras of binary forms.
//!
//! A binary form `f(u,v)` of degree `d` has an associated algebra generated by
//! two elements subject to the relations `(au + bv)^d = f(a,b)` for all scalars
//! `a, b`. A matrix representation of that algebra is the same thing as a pair
//! of m-by-m matrices `(A, B)` whose pencil satisfies `(uA + vB)^d = f(u,v)·I`
//! as an identity of homogeneous matrix polynomials. Such pairs correspond to
//! vector bundles on the plane curve `w^d = f(u,v)`, and this crate computes
//! the matrix-side shadow of that correspondence:
//!
//! * [`field`] — exact arithmetic over ℚ, 𝔽_p, 𝔽_{p^k}, ℚ(ζ_n), plus
//!   complex doubles for the numeric solver;
//! * [`linalg`] — dense exact linear algebra (rank, nullspace, determinant,
//!   characteristic polynomial);
//! * [`form`] — binary forms, nondegeneracy, the curve `w^d = f(u,v)` and its
//!   points over finite fields;
//! * [`pencil`] — matrix pencils, formal powers, and the defining-identity
//!   verifier;
//! * [`rep`] — verified representation constructors (clock–shift, pullback,
//!   direct sum, conjugation);
//! * [`bundle`] — fiber dimensions, the characteristic-polynomial identity,
//!   rank/degree/Euler characteristic, stability;
//! * [`moduli`] — irreducibility, intertwiners, equivalence, and the tangent
//!   space of the representation variety;
//! * [`census`] — exhaustive pruned enumeration of all solutions over a small
//!   finite field, classified up to conjugacy;
//! * [`numeric`] — damped Gauss–Newton discovery of floating-point solutions
//!   with SVD diagnostics.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command-line
//! front end live in the companion `clifford-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bundle;
pub mod census;
pub mod error;
pub mod field;
pub mod form;
pub mod linalg;
pub mod moduli;
pub mod numeric;
pub mod pencil;
pub mod poly;
pub mod rep;

pub use error::Error;
pub use field::{Field, FieldElement, FieldSpec};
pub use form::{BinaryForm, CurvePoint};
pub use linalg::ExactMatrix;
pub use pencil::{HomMatrixPoly, MatrixPencil};
pub use rep::Representation;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
