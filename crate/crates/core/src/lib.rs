//! Transformations from the unit cube to non-cubic domains for
//! (randomized) quasi-Monte Carlo.
//!
//! * [`points`]: Monte Carlo points and scrambled Sobol nets.
//! * [`transforms`]: the map catalog with exact mixed partials and domain checks.
//! * [`faadibruno`]: mixed partials of `f ∘ τ` from partials of `f` and `τ`.
//! * [`variation`]: face integrals and L^p divergence probes.
//! * [`harness`]: weighted estimators and RMSE convergence studies.

pub mod error;
pub mod faadibruno;
pub mod fd;
pub mod harness;
pub mod hash;
pub mod index_set;
pub mod points;
pub mod registry;
pub mod transforms;
pub mod variation;

pub use error::{Error, Result};
pub use index_set::MultiIndexSet;
