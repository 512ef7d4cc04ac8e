//! Multivariate dimension polynomials of finitely generated modules over
//! the Weyl algebra `A_n(Q)` with its variables split into blocks.

pub mod dimension;
pub mod error;
pub mod groebner;
pub mod io;
pub mod module;
pub mod numerical;
pub mod oracle;
pub mod weyl;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use groebner::{complete_basis, membership, multi_reduce, s_poly, GroebnerBasis, OrderSequence, Reduction};
pub use module::{act, rho, term_compare, GammaTerm, ModuleElement, OrderId, Term};
pub use numerical::{canonicalize, minimize, omega, IndexSet, NumericalPolynomial, RatPoly};
pub use weyl::{weyl_mul, ExponentPair, Partition, WeylElement};
