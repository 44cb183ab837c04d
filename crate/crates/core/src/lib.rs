//! Exact computation with multimatroids.
//!
//! The crate is organised bottom-up: [`algebra`] provides packed GF(2)/GF(4)
//! linear algebra, [`matroid`] ordinary matroids, [`multimatroid`] carriers,
//! validators and minors, and the remaining modules build polynomials,
//! orienting transversals, isotropic constructions and the excluded-minor
//! catalog on top of a single rank oracle.

pub mod algebra;
pub mod bits;
mod error;
pub mod exec;
pub mod io;
pub mod isotropic;
pub mod limits;
pub mod matroid;
pub mod minors_catalog;
pub mod multimatroid;
pub mod orienting;
pub mod polynomials;

pub use error::{Error, Result};
