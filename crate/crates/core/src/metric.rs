//! Leash metrics: how the distance between a point on one curve and a point
//! on the other is measured.

use crate::error::Error;
use crate::error::Result;
use crate::geodesic::{BoundaryDistanceFunction, GeodesicSpace};
use crate::geometry::{Point, PolygonalCurve};

/// A point-to-point distance together with its point-to-segment profile.
pub trait LeashMetric {
    fn distance(&self, a: Point, b: Point) -> Result<f64>;

    /// Distance from `p` to `c + t(d - c)` as a function of `t`.
    fn boundary_function(&self, p: Point, c: Point, d: Point) -> Result<BoundaryDistanceFunction>;

    /// Rejects curves the metric cannot measure.
    fn check_curve(&self, _curve: &PolygonalCurve) -> Result<()> {
        Ok(())
    }
}

/// Unobstructed straight-line leash.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl LeashMetric for Euclidean {
    fn distance(&self, a: Point, b: Point) -> Result<f64> {
        Ok(a.dist(b))
    }

    fn boundary_function(&self, p: Point, c: Point, d: Point) -> Result<BoundaryDistanceFunction> {
        Ok(BoundaryDistanceFunction::euclidean(p, c, d))
    }
}

impl LeashMetric for GeodesicSpace {
    fn distance(&self, a: Point, b: Point) -> Result<f64> {
        GeodesicSpace::distance(self, a, b)
    }

    fn boundary_function(&self, p: Point, c: Point, d: Point) -> Result<BoundaryDistanceFunction> {
        GeodesicSpace::boundary_function(self, p, c, d)
    }

    fn check_curve(&self, curve: &PolygonalCurve) -> Result<()> {
        let v = curve.vertices();
        self.distance(v[0], v[0])?;
        for w in v.windows(2) {
            if !self.segment_inside(w[0], w[1])? {
                return Err(Error::SegmentOutsidePolygon(w[0], w[1]));
            }
        }
        Ok(())
    }
}

impl<M: LeashMetric + ?Sized> LeashMetric for &M {
    fn distance(&self, a: Point, b: Point) -> Result<f64> {
        (**self).distance(a, b)
    }

    fn boundary_function(&self, p: Point, c: Point, d: Point) -> Result<BoundaryDistanceFunction> {
        (**self).boundary_function(p, c, d)
    }

    fn check_curve(&self, curve: &PolygonalCurve) -> Result<()> {
        (**self).check_curve(curve)
    }
}
