//! Multi-hop entangled networks of X-state node pairs coupled by a spin
//! dipolar interaction.
//!
//! Two evaluation paths exist for every reduced channel: explicit closed
//! forms ([`closedform`]) and dense evolution of the full register
//! ([`netmodel`]). [`scan`] sweeps either path over (τ, ε̃) and extracts
//! death/birth intervals, peaks and slope discontinuities; [`cli`] drives
//! sweeps from scenario files.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod measures;
pub mod netmodel;
pub mod qmat;
pub mod scan;

pub use error::{Error, Result};
pub use netmodel::{Channel, DipolarParams, NetworkConfig, NetworkKind, XStateParams};
pub use qmat::{ComplexMatrix, DensityMatrix};
