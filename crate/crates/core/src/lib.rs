//! Exact algebra for quantum network dynamics: iterated Grassmann algebras,
//! the topon lattice operator algebra, dipole and quadrupole chronons, net
//! invariants, the toy propagator model and the S(4) symmetry analysis,
//! together with the verification suites that check their identities.

pub mod dipole;
pub mod error;
pub mod exterior;
pub mod hyperdiamond;
pub mod lattice;
pub mod linalg;
pub mod network;
pub mod quadrupole;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod suites;
pub mod symmetry;
pub mod toy;

pub use error::{Error, Result};
