//! Tukey depth layers and convex layers of planar point sets, executable
//! checks of their structural properties, outlier-robust enclosing shapes,
//! and a Monte Carlo harness for expected layer sizes.

pub mod depth;
pub mod enclosing;
pub mod error;
pub mod experiments;
pub mod gadgets;
pub mod geometry;
pub mod io;
pub mod lemmas;
pub mod predicates;
pub mod sampling;

pub use error::{Error, Result};
pub use geometry::{Point, PointSet};
