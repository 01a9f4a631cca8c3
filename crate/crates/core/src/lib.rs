//! Band-limited analysis on the rotation group and the two-sphere, the
//! great-circle transform that averages rotation-group functions over the
//! fibers {g : gx = y}, and tools for inverting it both spectrally and from
//! scattered samples.
//!
//! The crate is `no_std` + `alloc`; everything IO-shaped lives in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cmat;
pub mod error;
pub mod harmonics;
pub mod radon;
pub mod rotations;
pub mod sampling;
pub mod sphere3;
pub mod vec3;

pub use error::Error;

/// Convenience alias used throughout.
pub type Result<T> = core::result::Result<T, Error>;
