//! Hausdorff distance between finite point sets under a leash metric.

use crate::error::{Error, Result};
use crate::geodesic::GeodesicSpace;
use crate::geometry::Point;
use crate::metric::LeashMetric;

/// A nonempty set of points inside a polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Checks that `points` is nonempty, finite and inside `space`.
    pub fn new(space: &GeodesicSpace, points: Vec<Point>) -> Result<Self> {
        let set = Self::unbounded(points)?;
        for &p in &set.points {
            space.distance(p, p)?;
        }
        Ok(set)
    }

    /// A set with no containing polygon, for Euclidean use.
    pub fn unbounded(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }
}

/// `max_{a in A} min_{b in B} d(a, b)`.
pub fn directed_hausdorff<M: LeashMetric>(metric: &M, a: &PointSet, b: &PointSet) -> Result<f64> {
    let mut worst = 0.0f64;
    for &p in &a.points {
        let mut best = f64::INFINITY;
        for &q in &b.points {
            best = best.min(metric.distance(p, q)?);
            if best <= worst {
                break;
            }
        }
        worst = worst.max(best);
    }
    Ok(worst)
}

/// The larger of the two directed distances.
pub fn hausdorff<M: LeashMetric>(metric: &M, a: &PointSet, b: &PointSet) -> Result<f64> {
    Ok(directed_hausdorff(metric, a, b)?.max(directed_hausdorff(metric, b, a)?))
}
