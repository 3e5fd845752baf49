//! Quantum friction on an atom moving at constant velocity parallel to a
//! Drude–Lorentz dielectric surface.
//!
//! The crate evaluates the nonretarded friction force for two atomic models:
//!
//! * the two-level atom, whose ground-state force is linear in the velocity
//!   at low speed, and
//! * the linear (harmonic) oscillator, whose force starts at third order.
//!
//! Layers, bottom up: [`material`] and [`atom`] supply the response
//! functions, [`quadrature`] the adaptive integration engine, [`forces`] the
//! force integrals, [`oracle`] an independent dense-grid evaluation of the
//! same integrals, [`analysis`] sweeps and power-law fits, and [`cli`] the
//! config-driven batch front end used by the `qfric` binary.

pub mod analysis;
pub mod atom;
pub mod cli;
pub mod error;
pub mod forces;
pub mod material;
pub mod oracle;
pub mod quadrature;

pub use error::{Error, Result};
