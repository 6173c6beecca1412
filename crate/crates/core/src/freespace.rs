//! Free-space diagram and the reachability decision procedure.
//!
//! Cell `(i, j)` is the parameter square of segment `i` of `A` against
//! segment `j` of `B`. Its left and right sides lie on the vertical
//! boundaries `i` and `i + 1` (knot `A_i` against segment `B_j`), its bottom
//! and top on the horizontal boundaries `j` and `j + 1` (knot `B_j` against
//! segment `A_i`). Each boundary carries at most one free interval.

use crate::error::{Error, Result};
use crate::geodesic::{BoundaryDistanceFunction, TOUCH_TOL};
use crate::geometry::PolygonalCurve;
use crate::metric::LeashMetric;

/// Free or reachable part of a cell boundary, in that boundary's own
/// parameter.
pub type Interval = Option<(f64, f64)>;

/// Slack for interval comparisons that would otherwise fail on rounding.
const SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellBoundaryInterval {
    pub i: usize,
    pub j: usize,
    pub side: Side,
    pub interval: Interval,
}

/// Intervals of row `j` at a fixed `eps`, with their reachable parts.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeSpaceRow {
    pub j: usize,
    /// Vertical boundaries `0..=N_A`.
    pub vertical: Vec<Interval>,
    pub vertical_reach: Vec<Interval>,
    /// Horizontal boundary `j`, cells `0..N_A`.
    pub bottom: Vec<Interval>,
    pub bottom_reach: Vec<Interval>,
    /// Horizontal boundary `j + 1`.
    pub top: Vec<Interval>,
    pub top_reach: Vec<Interval>,
}

fn within(d: f64, eps: f64) -> bool {
    d <= eps + TOUCH_TOL * (1.0 + eps)
}

fn starts_at_zero(iv: Interval) -> bool {
    iv.is_some_and(|(lo, _)| lo <= SNAP)
}

fn ends_at_one(iv: Interval) -> bool {
    iv.is_some_and(|(_, hi)| hi >= 1.0 - SNAP)
}

/// Part of `free` at or above `low`.
fn clip_from(free: Interval, low: f64) -> Interval {
    let (lo, hi) = free?;
    if hi < low - SNAP {
        return None;
    }
    Some((lo.max(low).min(hi), hi))
}

fn intersect(a: Interval, b: Interval) -> Interval {
    let (a0, a1) = a?;
    let (b0, b1) = b?;
    let lo = a0.max(b0);
    let hi = a1.min(b1);
    if hi < lo - SNAP {
        None
    } else {
        Some((lo.min(hi), hi))
    }
}

/// Reachable parts of the right and top sides of one cell.
///
/// Entering through the bottom makes every free point on the right side
/// reachable; entering only from the left requires climbing, so the right
/// side is cut below the lowest reachable left point. The top side is
/// symmetric.
pub fn propagate_cell(
    left_reach: Interval,
    bottom_reach: Interval,
    free_left: Interval,
    free_bottom: Interval,
    free_right: Interval,
    free_top: Interval,
) -> (Interval, Interval) {
    let left = intersect(left_reach, free_left);
    let bottom = intersect(bottom_reach, free_bottom);
    let right = match (left, bottom) {
        (_, Some(_)) => free_right,
        (Some((lo, _)), None) => clip_from(free_right, lo),
        (None, None) => None,
    };
    let top = match (left, bottom) {
        (Some(_), _) => free_top,
        (None, Some((lo, _))) => clip_from(free_top, lo),
        (None, None) => None,
    };
    (right, top)
}

/// Row-by-row reachability sweep. `bottom0` holds horizontal boundary 0;
/// `next_row(j)` yields the vertical boundaries of row `j` and its top
/// boundary. Returns whether `(N_A, N_B)` is reachable.
fn sweep(
    na: usize,
    nb: usize,
    start_ok: bool,
    end_ok: bool,
    bottom0: Vec<Interval>,
    mut next_row: impl FnMut(usize) -> Result<(Vec<Interval>, Vec<Interval>)>,
    mut visit: impl FnMut(&FreeSpaceRow),
) -> Result<bool> {
    let mut bottom = bottom0;
    let mut bottom_reach = Vec::with_capacity(na);
    let mut chain = start_ok;
    for &iv in &bottom {
        if chain && starts_at_zero(iv) {
            bottom_reach.push(iv);
            chain = ends_at_one(iv);
        } else {
            bottom_reach.push(None);
            chain = false;
        }
    }

    let mut column_chain = start_ok;
    let mut reached = false;
    for j in 0..nb {
        let (vertical, top) = next_row(j)?;
        let mut vertical_reach = vec![None; na + 1];
        if column_chain && starts_at_zero(vertical[0]) {
            vertical_reach[0] = vertical[0];
        }
        column_chain = column_chain && ends_at_one(vertical_reach[0]);
        let mut top_reach = vec![None; na];
        for i in 0..na {
            let (r, t) = propagate_cell(
                vertical_reach[i],
                bottom_reach[i],
                vertical[i],
                bottom[i],
                vertical[i + 1],
                top[i],
            );
            vertical_reach[i + 1] = r;
            top_reach[i] = t;
        }
        if j + 1 == nb {
            reached = end_ok && (ends_at_one(vertical_reach[na]) || ends_at_one(top_reach[na - 1]));
        }
        let row = FreeSpaceRow {
            j,
            vertical,
            vertical_reach,
            bottom,
            bottom_reach,
            top,
            top_reach,
        };
        visit(&row);
        bottom = row.top;
        bottom_reach = row.top_reach;
    }
    Ok(reached)
}

fn check_eps(eps: f64) -> Result<()> {
    if eps >= 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::NegativeEpsilon(eps))
    }
}

/// Whether `δ_F(A, B) <= eps` under `metric`, keeping two rows of the
/// diagram alive at a time.
pub fn decide<M: LeashMetric>(
    metric: &M,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    eps: f64,
) -> Result<bool> {
    check_eps(eps)?;
    metric.check_curve(a)?;
    metric.check_curve(b)?;
    let start_ok = within(metric.distance(a.start(), b.start())?, eps);
    let end_ok = within(metric.distance(a.end(), b.end())?, eps);
    if !start_ok || !end_ok {
        return Ok(false);
    }
    let (na, nb) = (a.segment_count(), b.segment_count());
    let horizontal = |j: usize| -> Result<Vec<Interval>> {
        (0..na)
            .map(|i| {
                let (c, d) = a.segment(i);
                Ok(metric.boundary_function(b.knot(j), c, d)?.crossings(eps))
            })
            .collect()
    };
    let bottom0 = horizontal(0)?;
    let next_row = |j: usize| -> Result<(Vec<Interval>, Vec<Interval>)> {
        let (c, d) = b.segment(j);
        let vertical = (0..=na)
            .map(|i| Ok(metric.boundary_function(a.knot(i), c, d)?.crossings(eps)))
            .collect::<Result<Vec<_>>>()?;
        Ok((vertical, horizontal(j + 1)?))
    };
    sweep(na, nb, start_ok, end_ok, bottom0, next_row, |_| {})
}

/// All boundary distance functions of a curve pair, computed once so that
/// many decisions at different `eps` can share them.
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    na: usize,
    nb: usize,
    start_dist: f64,
    end_dist: f64,
    /// `vertical[j * (na + 1) + i]`: knot `A_i` against segment `B_j`.
    vertical: Vec<BoundaryDistanceFunction>,
    /// `horizontal[j * na + i]`: knot `B_j` against segment `A_i`.
    horizontal: Vec<BoundaryDistanceFunction>,
}

impl FreeSpaceDiagram {
    pub fn new<M: LeashMetric>(metric: &M, a: &PolygonalCurve, b: &PolygonalCurve) -> Result<Self> {
        metric.check_curve(a)?;
        metric.check_curve(b)?;
        let (na, nb) = (a.segment_count(), b.segment_count());
        let mut vertical = Vec::with_capacity((na + 1) * nb);
        for j in 0..nb {
            let (c, d) = b.segment(j);
            for i in 0..=na {
                vertical.push(metric.boundary_function(a.knot(i), c, d)?);
            }
        }
        let mut horizontal = Vec::with_capacity(na * (nb + 1));
        for j in 0..=nb {
            for i in 0..na {
                let (c, d) = a.segment(i);
                horizontal.push(metric.boundary_function(b.knot(j), c, d)?);
            }
        }
        Ok(FreeSpaceDiagram {
            na,
            nb,
            start_dist: metric.distance(a.start(), b.start())?,
            end_dist: metric.distance(a.end(), b.end())?,
            vertical,
            horizontal,
        })
    }

    /// Segment counts `(N_A, N_B)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn start_distance(&self) -> f64 {
        self.start_dist
    }

    pub fn end_distance(&self) -> f64 {
        self.end_dist
    }

    /// Boundary between cells `(i - 1, j)` and `(i, j)`, `i` in `0..=N_A`.
    pub fn vertical(&self, i: usize, j: usize) -> &BoundaryDistanceFunction {
        &self.vertical[j * (self.na + 1) + i]
    }

    /// Boundary between cells `(i, j - 1)` and `(i, j)`, `j` in `0..=N_B`.
    pub fn horizontal(&self, i: usize, j: usize) -> &BoundaryDistanceFunction {
        &self.horizontal[j * self.na + i]
    }

    pub fn decide(&self, eps: f64) -> Result<bool> {
        check_eps(eps)?;
        if !within(self.start_dist, eps) || !within(self.end_dist, eps) {
            return Ok(false);
        }
        self.run(eps, |_| {})
    }

    /// Every row of the diagram at `eps`, with reachability.
    pub fn rows(&self, eps: f64) -> Result<Vec<FreeSpaceRow>> {
        check_eps(eps)?;
        let mut rows = Vec::with_capacity(self.nb);
        self.run(eps, |r| rows.push(r.clone()))?;
        Ok(rows)
    }

    fn run(&self, eps: f64, visit: impl FnMut(&FreeSpaceRow)) -> Result<bool> {
        let (na, nb) = (self.na, self.nb);
        let row_of = |j: usize| -> Vec<Interval> {
            (0..na)
                .map(|i| self.horizontal(i, j).crossings(eps))
                .collect()
        };
        sweep(
            na,
            nb,
            within(self.start_dist, eps),
            within(self.end_dist, eps),
            row_of(0),
            |j| {
                let vertical = (0..=na)
                    .map(|i| self.vertical(i, j).crossings(eps))
                    .collect();
                Ok((vertical, row_of(j + 1)))
            },
            visit,
        )
    }

    /// The four side intervals of every cell at `eps`.
    pub fn cell_boundaries(&self, eps: f64) -> Result<Vec<CellBoundaryInterval>> {
        check_eps(eps)?;
        let mut out = Vec::with_capacity(4 * self.na * self.nb);
        for j in 0..self.nb {
            for i in 0..self.na {
                let sides = [
                    (Side::Left, self.vertical(i, j)),
                    (Side::Right, self.vertical(i + 1, j)),
                    (Side::Bottom, self.horizontal(i, j)),
                    (Side::Top, self.horizontal(i, j + 1)),
                ];
                for (side, f) in sides {
                    out.push(CellBoundaryInterval {
                        i,
                        j,
                        side,
                        interval: f.crossings(eps),
                    });
                }
            }
        }
        Ok(out)
    }
}

/// The four side intervals of every cell of the diagram of `a` and `b`.
pub fn cell_boundaries<M: LeashMetric>(
    metric: &M,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    eps: f64,
) -> Result<Vec<CellBoundaryInterval>> {
    check_eps(eps)?;
    FreeSpaceDiagram::new(metric, a, b)?.cell_boundaries(eps)
}
