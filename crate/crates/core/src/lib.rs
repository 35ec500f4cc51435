//! Exact arithmetic for the prehomogeneous vector space of binary
//! tri-Hermitian forms attached to a cubic extension.

pub mod cubealg;
pub mod error;
pub mod finite;
pub mod invariant;
pub mod io;
pub mod selftest;
pub mod space;
pub mod strata;
pub mod zeta;

pub use error::{Error, Result};
