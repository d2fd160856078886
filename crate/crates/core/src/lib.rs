//! Exact verification of Bernstein–Sato polynomials for maximal minors and
//! sub-maximal Pfaffians: polynomial arithmetic over ℚ, the Weyl algebra,
//! generic matrices, Capelli elements, b-function recovery and topological
//! zeta functions.

pub mod bfun;
pub mod capelli;
pub mod exact;
pub mod genmat;
pub mod linalg;
pub mod report;
pub mod weyl;
pub mod zeta;

pub use exact::{FactoredPolynomial, MultiPoly, Rational, UniPoly, VarId};
pub use report::{Check, Report, Status};
pub use weyl::{Space, SpaceError, WeylElement};
