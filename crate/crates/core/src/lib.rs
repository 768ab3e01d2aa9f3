//! Exact persistence landscapes.
//!
//! Diagrams, landscapes, norms and kernels, max-plus evaluation, and exact
//! recovery of a family of diagrams from its average landscape. All
//! coordinates are exact rationals; only root extraction and Poisson weights
//! produce floating-point results.

pub mod analysis;
pub mod benchgen;
pub mod diagram;
pub mod error;
pub mod landscape;
pub mod rational;
pub mod reconstruct;
pub mod tropical;

pub use diagram::{DiagramFamily, PersistenceDiagram, Point};
pub use error::{Error, Result};
pub use landscape::{diagram_of, landscape_of, Landscape, PiecewiseLinearFunction};
pub use rational::Rational;
