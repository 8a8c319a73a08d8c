//! Exact counting of lattice paths and non-intersecting path families on
//! ladder-shaped regions of a grid, closed forms for diagonal ladders, and
//! the multiplicity formulas of ladder determinantal and pfaffian rings.

pub mod closedform;
pub mod error;
pub mod exactmath;
pub mod lgv;
pub mod multiplicity;
pub mod pathcount;
pub mod region;
pub mod verify;

pub use error::{Error, Result};
pub use exactmath::{ApInt, ApMatrix};
pub use region::{LadderRegion, Point, PointSetRegion, Region};
