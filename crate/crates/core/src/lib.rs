//! Fréchet distance between polygonal curves under a geodesic leash inside
//! a simple polygon, or an unobstructed Euclidean leash.
//!
//! The optimizer avoids parametric search: candidate critical values are
//! drawn at random from per-row red-blue intersection counts and resolved
//! with the decision procedure until the search slab is empty.

pub mod cli;
pub mod error;
pub mod freespace;
pub mod geodesic;
pub mod geometry;
pub mod hausdorff;
pub mod metric;
pub mod optimize;
pub mod redblue;
pub mod select;

pub use error::{Error, Result};
pub use geodesic::{BoundaryDistanceFunction, GeodesicPath, GeodesicSpace};
pub use geometry::{Point, PolygonalCurve, SimplePolygon};
pub use metric::{Euclidean, LeashMetric};
