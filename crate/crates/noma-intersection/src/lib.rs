//! Outage analysis for cooperative NOMA transmissions at a two-road
//! intersection under Poisson-field interference.
//!
//! A source serves two destinations with the help of a decode-and-forward
//! relay over two slots; destinations may combine both observations by
//! summing received powers. Interference comes from ALOHA-gated vehicles
//! placed as homogeneous Poisson processes on two perpendicular roads, with
//! Rayleigh fading on every link. The crate computes outage probabilities
//! two independent ways:
//!
//! * [`outage`] — closed-form compositions of interference Laplace
//!   transforms ([`laplace`]), exact for path-loss exponent 2 and backed by
//!   adaptive quadrature for any exponent above 1;
//! * [`monte_carlo`] — a reproducible trial-level simulator that evaluates
//!   the outage event algebra directly.
//!
//! [`sweep`] reproduces the standard experiment families (power split,
//! distance to the intersection, vehicle density, relay placement) as CSV,
//! and [`validate`] cross-checks the two engines. See the `examples/`
//! directory for runnable entry points of each capability.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod laplace;
pub mod monte_carlo;
pub mod outage;
mod quad;
pub mod scenario;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
