//! L∞ and L1 Delaunay triangulations, exact stretch analysis and a
//! certified router for the `(1+√2)·x + y` path bound.

pub mod error;
pub mod geometry;
pub mod delaunay;
pub mod generator;
pub mod spanner;
pub mod router;
