//! Continued fractions and series for pi and Catalan's constant: exact
//! convergents, series-to-fraction transforms, closed forms, a catalog of
//! identities and a verification harness.

pub mod catalog;
pub mod cf;
pub mod error;
pub mod euler;
pub mod numerics;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
