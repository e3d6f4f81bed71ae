//! Exact computational algebra for the divided-power ring of differential
//! operators over `K[x_1,...,x_n]`.
//!
//! The crate provides:
//! - [`scalars`]: arbitrary-precision rationals and prime fields, plus
//!   generalized binomial coefficients with arbitrary integer upper argument;
//! - [`weyl`]: normal-form operator arithmetic, Euler operators, grading,
//!   and a sound (incomplete) left-ideal reduction procedure;
//! - [`region`]: Z^n-multigraded monomial-basis module models (the
//!   polynomial ring, its monomial localizations, the graded injective hull
//!   of the residue field), the operator action on them, and the Eulerian
//!   property checker;
//! - [`cech`]: degreewise Cech-complex computation of (iterated) local
//!   cohomology at monomial ideals, socles, Hilbert tables, and the
//!   injective-hull decomposition check;
//! - [`frob`]: the Frobenius digit-splitting layer in characteristic `p`,
//!   the induced operator action on F-modules, and its Eulerian check;
//! - [`inj`]: a-invariants of monomial-prime quotients, annihilator
//!   degrees in top local cohomology, and Eulerian shift scans.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod cech;
pub mod error;
pub mod frob;
pub mod inj;
pub mod linalg;
pub mod region;
pub mod scalars;
pub mod weyl;

pub use error::{Error, Result};
pub use scalars::{binom_field, binom_int, CharSpec, FieldScalar};
