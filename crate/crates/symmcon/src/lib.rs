//! Symmetrized eigenbases for classical orthogonal expansions, with the
//! associated differential-difference derivatives, Riesz transforms, Poisson
//! and conjugate Poisson integrals realized as verifiable spectral operators.
//!
//! The pipeline: a one-dimensional eigensystem on (0, c) ([`family`]) is
//! extended by reflection to the punctured interval (-c, 0) u (0, c)
//! ([`symmetrize`]), tensorized over d axes ([`index`]), and equipped with
//! coefficient-space operators ([`engine`]) plus family-adapted Gauss
//! quadrature for inner products and sampling ([`quadrature`]). Every
//! structural identity the construction promises is an executable check in
//! [`verify`].

pub mod engine;
pub mod error;
pub mod family;
pub mod index;
pub mod jet;
pub mod orthopoly;
pub mod quadrature;
pub mod symmetrize;
pub mod verify;

pub use engine::OperatorEngine;
pub use error::{Error, Result};
pub use family::{DeltaSide, FamilyKind, FamilySpec};
pub use index::{angle_index, lambda_multi, CoeffVector, LevelTable};
pub use quadrature::{Grid, GridFunction, GridTransform, QuadratureRule};
pub use symmetrize::SymmetrizedBasis;
pub use verify::{run_suite, CheckReport, Mutation, VerifyConfig};
