//! Eigenvalue-ratio cooperative spectrum sensing.
//!
//! The crate evaluates the order-2 Tracy–Widom law from the Hastings–McLeod
//! solution of Painlevé II, builds the limiting distribution of the ratio
//! `T = l_max / l_min` of a complex white Wishart matrix, derives detection
//! thresholds from it, and provides a deterministic Monte-Carlo model of a
//! `K`-receiver sensing network.
//!
//! Everything here is `no_std` (with `alloc`); file formats, caching and the
//! command line live in the `eigensense` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod airy;
pub mod eigen;
pub mod error;
mod interp;
pub mod matrix;
pub mod normal;
pub mod painleve;
pub mod ratio;
pub mod scaling;
pub mod sim;
pub mod thresholds;
pub mod tracy_widom;

pub use error::{Error, Result};
