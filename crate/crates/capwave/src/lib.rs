//! Pseudo-spectral laboratory for the quadratic quasilinear capillary model
//! `∂_t u + i|D|^{3/2} u = N(u)` on a truncated line.

pub mod bilinear;
pub mod cli;
pub mod config;
pub mod energies;
pub mod error;
pub mod evolution;
pub mod run;
pub mod scattering;
pub mod spectral_core;
pub mod symbols;
pub mod verify;

pub use error::{Error, Result};
pub use spectral_core::{Field, Grid, C64};
