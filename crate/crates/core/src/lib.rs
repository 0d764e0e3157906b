//! Signatures of flat symplectic and unitary bundles over compact surfaces
//! with boundary.
//!
//! The library computes, for representations of surface groups into
//! SL(2,R) = Sp(2,R), block-embedded SL(2,R)^p < Sp(2p,R) and diagonal tori in
//! U(p,q):
//!
//! - rotation/translation numbers on the universal cover and the relative
//!   Euler class ([`cover`]),
//! - Toledo invariants, rho invariants and the signature via the index
//!   formula ([`invariants`]),
//! - explicit representations realizing every achievable signature value
//!   ([`constructions`], [`valuesets`]),
//! - an independent signature oracle that evaluates the intersection form on
//!   twisted cohomology directly ([`oracle`]),
//! - self-contained JSON certificates ([`cert`]).

pub mod cert;
pub mod constructions;
pub mod cover;
pub mod error;
pub mod group;
pub mod invariants;
pub mod oracle;
pub mod rational;
pub mod surfaces;
pub mod valuesets;

pub use error::{Error, Result};
