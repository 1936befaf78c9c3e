//! Bounded, Bessel-deformed exterior calculus.
//!
//! The deformed exterior derivative `d_t = t·φ_{q+2}(tD)·d` is built by
//! functional calculus of the Dirac operator `D = d + d*` on discrete
//! spectral domains (Fourier form spaces on flat tori, the circle, finite
//! simplicial complexes). Around it sit the deformed wave equations, exact
//! polynomial oracles for sphere and ball averages, and wave-front geometry
//! on surfaces.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the `deformd` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod besselfn;
pub mod error;
pub mod geomfront;
pub mod huygens;
pub mod linalg;
pub mod poly;
pub mod specops;
pub mod waveforms;

pub use error::{Error, Result};
