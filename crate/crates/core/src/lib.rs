//! Lens-space extents, central extensions of polyhedral groups, explicit
//! matrix models and fixed-point identities.
//!
//! The crate is organised by subject:
//!
//! * [`sphere_geom`]: lens-space quotients of S³, the q-extent upper bound and a
//!   numerical lower-bound optimizer.
//! * [`group`]: finite groups as multiplication tables, constructors for the
//!   polyhedral, binary polyhedral and metacyclic families, isomorphism testing.
//! * [`cohomology`]: H²(Q; Z_m) with trivial action and central extensions.
//! * [`matrix_embed`]: explicit SO(3), SO(4), SO(5), U(2) and PU(3) realizations.
//! * [`fixed_point`]: Lefschetz and involution-signature identities on linear models.
//! * [`classify`], [`report`]: the statement table and the `verify-all` suite.

pub mod cache;
pub mod classify;
pub mod cohomology;
pub mod config;
pub mod error;
pub mod fixed_point;
pub mod group;
pub mod matrix_embed;
pub mod quat;
pub mod report;
pub mod snf;
pub mod sphere_geom;

pub use error::{Error, Result};
