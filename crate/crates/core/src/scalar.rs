//! Scalar abstraction for the numeric kernel.
//!
//! Geometry, field, and statistics code is generic over [`Scalar`] so the
//! math layer can be instantiated at `f32` or `f64`. Everything above the
//! math layer (planners, reports, file formats) is pinned to [`Real`],
//! which is the only instantiation whose tolerances the test suite
//! guarantees.

use std::fmt;

/// Floating-point scalar usable by the numeric kernel: `f32` or `f64`.
pub trait Scalar:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumAssign
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a cell coordinate.
    fn from_coord(v: i64) -> Self {
        Self::from_i64(v).expect("coordinate out of scalar range")
    }

    /// Conversion from a count of cells.
    fn from_count(v: usize) -> Self {
        Self::from_usize(v).expect("count out of scalar range")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Canonical scalar for planners, metrics, and reports.
pub type Real = f64;
