//! Exact computations in the quantum covering group attached to a super
//! Cartan datum.
//!
//! The crate is organized bottom-up:
//!
//! * [`scalar_ring`]: the coefficient ring Q(q)^π and (q,π)-binomials.
//! * [`datum`]: super Cartan data, root data, Weyl groups, sign statistics.
//! * [`free_half`]: the free algebra 'f, its bilinear form and the quotient f.
//! * [`covering`]: the algebra U in triangular normal form with its Hopf
//!   structure and (anti)automorphisms.
//! * [`rmatrix`]: the quasi-R-matrix and the Casimir element.
//! * [`repcat`]: weight modules, Verma and simple modules, characters.
//! * [`serre_plus`]: higher Serre elements.
//! * [`suites`]: verification suites producing JSON-lines reports.

pub mod covering;
pub mod datum;
pub mod error;
pub mod free_half;
pub mod linalg;
pub mod repcat;
pub mod rmatrix;
pub mod scalar_ring;
pub mod serre_plus;
pub mod suites;

pub use error::{Error, Result};
