//! Exact polynomial model of torus-equivariant Schubert calculus on
//! Grassmannians: double Schur polynomials, the truncated ring
//! `Lambda_{n,m}`, equivariant structure constants with positivity
//! certificates, and the wedge-representation model `Lambda^n V`.

pub mod error;
pub mod grass;
pub mod oracles;
pub mod partition;
pub mod poly;
pub mod rep;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
pub use grass::{GrassContext, StructureTable};
pub use partition::{Partition, StrictSequence};
pub use poly::{DiffPoly, Monomial, Poly};
pub use rep::{Coweight01, GLMatrix, VElement, WedgeVector};
pub use schur::SchurExpansion;
