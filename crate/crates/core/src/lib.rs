//! Small-denominator functions, Brjuno-type series, continued fractions and
//! logarithmic-kernel capacity estimates.

pub mod brjuno;
pub mod capacity;
pub mod cf1d;
pub mod diophantine;
pub mod error;
pub mod interval;
pub mod lattice;
pub mod panel;
pub mod point;
pub mod quadrature;
pub mod reduce;
pub mod scalar;

pub use error::{Error, Result};
pub use lattice::{IndexMode, MultiIndex};
pub use point::{Fixture, Number, Point, PointSource, Region, Rotated};
pub use scalar::{Backing, Real, Scalar};
