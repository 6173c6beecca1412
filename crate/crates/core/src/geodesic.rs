//! Shortest paths inside a simple polygon and the point-to-segment distance
//! functions that define free-space cell boundaries.
//!
//! A query locates both endpoints in the triangulation, walks the dual tree
//! to obtain the sleeve of triangles between them and pulls the path taut
//! through the sleeve's diagonals with the funnel algorithm.
//!
//! For a source `p` and a segment `cd`, the map `t -> d(p, c + t(d - c))` is
//! decreasing then increasing. It is stored as a sequence of arcs, each of
//! the form `L + |q(t) - v|` where `v` is the last polygon vertex on the
//! shortest path to `q(t)` and `L` the geodesic length from `p` to `v`.

use crate::error::{Error, Result};
use crate::geometry::{locate_near, orient, Point, SimplePolygon, Triangulation};

/// Relative slack used when comparing `eps` against boundary distances.
pub const TOUCH_TOL: f64 = 1e-12;

/// Arcs narrower than this (in `t`) are folded into their neighbour.
const MIN_ARC_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub vertices: Vec<Point>,
    pub length: f64,
}

/// All shortest paths from `source` to the points of the segment `base`.
///
/// `chain_c` and `chain_d` start at the apex and end at the base endpoints;
/// `len_c[i]` / `len_d[i]` are geodesic lengths from the source to the
/// corresponding chain vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Funnel {
    pub source: Point,
    pub apex: Point,
    pub base: (Point, Point),
    pub chain_c: Vec<Point>,
    pub chain_d: Vec<Point>,
    pub len_c: Vec<f64>,
    pub len_d: Vec<f64>,
}

/// One piece of a boundary distance function: on `[t_lo, t_hi]` the value is
/// `base_len + |q(t) - anchor|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub t_lo: f64,
    pub t_hi: f64,
    pub base_len: f64,
    pub anchor: Point,
}

/// Distance from a fixed source to the points `q(t) = c + t(d - c)`,
/// `t` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDistanceFunction {
    c: Point,
    d: Point,
    arcs: Vec<Arc>,
    min_t: f64,
    min_val: f64,
}

impl BoundaryDistanceFunction {
    fn from_arcs(c: Point, d: Point, arcs: Vec<Arc>) -> Self {
        let mut f = BoundaryDistanceFunction {
            c,
            d,
            arcs,
            min_t: 0.0,
            min_val: 0.0,
        };
        let (t, v) = min_of(&f);
        f.min_t = t;
        f.min_val = v;
        f
    }

    /// Straight-line distance from `p` to the points of `cd`: a single arc.
    pub fn euclidean(p: Point, c: Point, d: Point) -> Self {
        Self::from_arcs(
            c,
            d,
            vec![Arc {
                t_lo: 0.0,
                t_hi: 1.0,
                base_len: 0.0,
                anchor: p,
            }],
        )
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn base(&self) -> (Point, Point) {
        (self.c, self.d)
    }

    pub fn min_t(&self) -> f64 {
        self.min_t
    }

    pub fn min_val(&self) -> f64 {
        self.min_val
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.c.lerp(self.d, t)
    }

    fn arc_index(&self, t: f64) -> usize {
        self.arcs
            .partition_point(|a| a.t_hi < t)
            .min(self.arcs.len() - 1)
    }

    fn arc_value(&self, i: usize, t: f64) -> f64 {
        let a = &self.arcs[i];
        a.base_len + self.point_at(t).dist(a.anchor)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.arc_value(self.arc_index(t), t)
    }

    /// Sign of the derivative of arc `i` at `t`.
    fn arc_slope(&self, i: usize, t: f64) -> f64 {
        (self.point_at(t) - self.arcs[i].anchor).dot(self.d - self.c)
    }

    /// Root of `arc_i(t) = eps` on the falling (`lower`) or rising side of
    /// the arc's own minimum.
    fn solve_arc(&self, i: usize, eps: f64, lower: bool) -> f64 {
        let a = &self.arcs[i];
        let e = self.d - self.c;
        let elen = e.norm();
        let w = self.c - a.anchor;
        let t0 = -w.dot(e) / (elen * elen);
        let perp = w.cross(e) / elen;
        let r = (eps - a.base_len).max(0.0);
        let half = (r * r - perp * perp).max(0.0).sqrt() / elen;
        if lower {
            t0 - half
        } else {
            t0 + half
        }
    }

    /// `{t : F(t) <= eps}` as an interval, or `None` when empty. Values
    /// within `TOUCH_TOL` (relative) of `eps` count as touching.
    pub fn crossings(&self, eps: f64) -> Option<(f64, f64)> {
        let tol = TOUCH_TOL * (1.0 + eps.abs());
        if eps < self.min_val - tol || eps.is_nan() {
            return None;
        }
        if self.c == self.d {
            return Some((0.0, 1.0));
        }
        if eps <= self.min_val {
            return Some((self.min_t, self.min_t));
        }
        let m = self.arc_index(self.min_t);

        let t1 = if self.arc_value(0, 0.0) <= eps + tol {
            0.0
        } else {
            let right_end = |i: usize| self.arcs[i].t_hi.min(self.min_t);
            let i = partition_range(0, m, |i| self.arc_value(i, right_end(i)) > eps);
            let i = i.min(m);
            let lo = self.arcs[i].t_lo;
            let hi = right_end(i);
            if self.arc_value(i, lo) <= eps {
                lo
            } else {
                self.solve_arc(i, eps, true).clamp(lo, hi)
            }
        };

        let last = self.arcs.len() - 1;
        let t2 = if self.arc_value(last, 1.0) <= eps + tol {
            1.0
        } else {
            let left_start = |i: usize| self.arcs[i].t_lo.max(self.min_t);
            // Last arc in m..=last whose start is still free.
            let k = partition_range(m, last + 1, |i| self.arc_value(i, left_start(i)) <= eps);
            let i = k.max(m + 1) - 1;
            let lo = left_start(i);
            let hi = self.arcs[i].t_hi;
            if self.arc_value(i, hi) <= eps {
                hi
            } else {
                self.solve_arc(i, eps, false).clamp(lo, hi)
            }
        };
        Some((t1, t2.max(t1)))
    }
}

/// First index in `lo..hi` where `pred` turns false, assuming it is true on
/// a prefix of the range; `hi` if it never does.
fn partition_range(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Global minimum `(t*, F(t*))`, found by binary search over the arcs.
pub fn min_of(f: &BoundaryDistanceFunction) -> (f64, f64) {
    if f.c == f.d {
        return (0.0, f.arc_value(0, 0.0));
    }
    // First arc that is no longer falling at its right end.
    let n = f.arcs.len();
    let mut lo = 0;
    let mut hi = n - 1;
    while lo < hi {
        let mid = (lo + hi) / 2;
        // Zero slope means the base passes through the anchor: still falling.
        if f.arc_slope(mid, f.arcs[mid].t_hi) <= 0.0 {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let arc = &f.arcs[lo];
    let e = f.d - f.c;
    let t0 = -(f.c - arc.anchor).dot(e) / e.norm_sq();
    let t = t0.clamp(arc.t_lo, arc.t_hi);
    (t, f.arc_value(lo, t))
}

/// Free interval `[t1, t2]` of `f` at distance `eps`, clamped to `[0, 1]`.
pub fn eps_crossings(f: &BoundaryDistanceFunction, eps: f64) -> Result<Option<(f64, f64)>> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::NegativeEpsilon(eps));
    }
    Ok(f.crossings(eps))
}

/// Pull a path taut through a sequence of `(left, right)` portals.
fn string_pull(start: Point, portals: &[(Point, Point)], goal: Point) -> Vec<Point> {
    let mut gates = Vec::with_capacity(portals.len() + 2);
    gates.push((start, start));
    gates.extend_from_slice(portals);
    gates.push((goal, goal));

    let mut path = vec![start];
    let mut apex = start;
    let (mut left, mut right) = (start, start);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < gates.len() {
        let (l, r) = gates[i];

        if orient(apex, right, r) >= 0 {
            let side = orient(apex, left, r);
            if apex == right || side < 0 {
                right = r;
                right_i = i;
            } else {
                // Collapsed onto the left ray: the nearer of the two vertices
                // on it is the next corner.
                let (corner, corner_i) = if side == 0
                    && apex != left
                    && (r - apex).norm_sq() < (left - apex).norm_sq()
                {
                    (r, i)
                } else {
                    (left, left_i)
                };
                path.push(corner);
                apex = corner;
                left = apex;
                right = apex;
                left_i = corner_i;
                right_i = corner_i;
                i = corner_i + 1;
                continue;
            }
        }

        if orient(apex, left, l) <= 0 {
            let side = orient(apex, right, l);
            if apex == left || side > 0 {
                left = l;
                left_i = i;
            } else {
                let (corner, corner_i) = if side == 0
                    && apex != right
                    && (l - apex).norm_sq() < (right - apex).norm_sq()
                {
                    (l, i)
                } else {
                    (right, right_i)
                };
                path.push(corner);
                apex = corner;
                left = apex;
                right = apex;
                left_i = corner_i;
                right_i = corner_i;
                i = corner_i + 1;
                continue;
            }
        }
        i += 1;
    }
    if *path.last().unwrap() != goal {
        path.push(goal);
    }
    path.dedup();
    path
}

fn locate_or_err(poly: &SimplePolygon, tri: &Triangulation, q: Point) -> Result<usize> {
    let scale = poly
        .vertices()
        .iter()
        .fold(1.0f64, |m, v| m.max(v.x.abs()).max(v.y.abs()));
    locate_near(poly, tri, q, 1e-12 * scale).ok_or(Error::PointOutsidePolygon(q))
}

/// Unique shortest path from `a` to `b` inside `poly`.
pub fn shortest_path(
    poly: &SimplePolygon,
    tri: &Triangulation,
    a: Point,
    b: Point,
) -> Result<GeodesicPath> {
    let ta = locate_or_err(poly, tri, a)?;
    let tb = locate_or_err(poly, tri, b)?;
    if a == b {
        return Ok(GeodesicPath {
            vertices: vec![a],
            length: 0.0,
        });
    }
    let sleeve = tri.sleeve(ta, tb);
    let verts = poly.vertices();
    let portals: Vec<(Point, Point)> = sleeve
        .windows(2)
        .map(|w| {
            let e = tri
                .shared_edge(w[0], w[1])
                .expect("sleeve follows dual edges");
            let t = tri.triangles[w[0]];
            (verts[t[(e + 1) % 3]], verts[t[e]])
        })
        .collect();
    // An endpoint lying on a diagonal belongs to both triangles; starting
    // the funnel on that diagonal would leave it with no opening angle.
    let on = |q: Point, &(l, r): &(Point, Point)| crate::geometry::on_segment(l, r, q);
    let first = portals.iter().take_while(|g| on(a, g)).count();
    let last = portals.len()
        - portals[first..]
            .iter()
            .rev()
            .take_while(|g| on(b, g))
            .count();
    let vertices = string_pull(a, &portals[first..last.max(first)], b);
    let length = vertices.windows(2).map(|w| w[0].dist(w[1])).sum();
    Ok(GeodesicPath { vertices, length })
}

fn prefix_lengths(path: &[Point]) -> Vec<f64> {
    let mut acc = 0.0;
    let mut out = Vec::with_capacity(path.len());
    out.push(0.0);
    for w in path.windows(2) {
        acc += w[0].dist(w[1]);
        out.push(acc);
    }
    out
}

/// Funnel with apex-side chains `π(p, c)` and `π(p, d)`.
pub fn build_funnel(
    poly: &SimplePolygon,
    tri: &Triangulation,
    p: Point,
    (c, d): (Point, Point),
) -> Result<Funnel> {
    let pc = shortest_path(poly, tri, p, c)?.vertices;
    let pd = if c == d {
        pc.clone()
    } else {
        shortest_path(poly, tri, p, d)?.vertices
    };
    let common = pc
        .iter()
        .zip(pd.iter())
        .take_while(|(x, y)| x == y)
        .count()
        .max(1);
    let lc = prefix_lengths(&pc);
    let ld = prefix_lengths(&pd);
    let apex_idx = common - 1;
    Ok(Funnel {
        source: p,
        apex: pc[apex_idx],
        base: (c, d),
        chain_c: pc[apex_idx..].to_vec(),
        chain_d: pd[apex_idx..].to_vec(),
        len_c: lc[apex_idx..].to_vec(),
        len_d: ld[apex_idx..].to_vec(),
    })
}

fn interior<T: Copy>(chain: &[T]) -> &[T] {
    if chain.len() > 2 {
        &chain[1..chain.len() - 1]
    } else {
        &[]
    }
}

/// Arc decomposition of the funnel's distance function.
pub fn distance_function(f: &Funnel) -> BoundaryDistanceFunction {
    let (c, d) = f.base;
    // Governing vertices in order of increasing t: the c-chain walked back to
    // the apex, then the d-chain outwards.
    let mut seq: Vec<(Point, f64)> = interior(&f.chain_c)
        .iter()
        .zip(interior(&f.len_c))
        .rev()
        .map(|(&p, &l)| (p, l))
        .collect();
    seq.push((f.chain_c[0], f.len_c[0]));
    seq.extend(
        interior(&f.chain_d)
            .iter()
            .zip(interior(&f.len_d))
            .map(|(&p, &l)| (p, l)),
    );

    if c == d {
        let (v, l) = seq[0];
        return BoundaryDistanceFunction::from_arcs(
            c,
            d,
            vec![Arc {
                t_lo: 0.0,
                t_hi: 1.0,
                base_len: l + c.dist(v),
                anchor: c,
            }],
        );
    }

    let e = d - c;
    let mut raw = Vec::with_capacity(seq.len());
    let mut t_prev = 0.0;
    for k in 0..seq.len() {
        let t_next = if k + 1 == seq.len() {
            1.0
        } else {
            // The taut path switches anchors where the edge between them,
            // extended away from the apex, meets the base.
            let (a, b) = (seq[k], seq[k + 1]);
            let (origin, through) = if a.1 <= b.1 { (a.0, b.0) } else { (b.0, a.0) };
            let g = through - origin;
            let denom = e.cross(g);
            let t = if denom == 0.0 {
                // Parallel ray: it only meets the base when the vertex itself
                // lies on the base line.
                if (through - c).cross(e) == 0.0 {
                    (through - c).dot(e) / e.norm_sq()
                } else {
                    t_prev
                }
            } else {
                (origin - c).cross(g) / denom
            };
            t.clamp(t_prev, 1.0)
        };
        raw.push(Arc {
            t_lo: t_prev,
            t_hi: t_next,
            base_len: seq[k].1,
            anchor: seq[k].0,
        });
        t_prev = t_next;
    }

    let mut arcs: Vec<Arc> = Vec::with_capacity(raw.len());
    for a in raw {
        if a.t_hi - a.t_lo < MIN_ARC_WIDTH {
            continue;
        }
        arcs.push(a);
    }
    if arcs.is_empty() {
        arcs.push(Arc {
            t_lo: 0.0,
            t_hi: 1.0,
            base_len: seq[0].1,
            anchor: seq[0].0,
        });
    }
    let n = arcs.len();
    arcs[0].t_lo = 0.0;
    arcs[n - 1].t_hi = 1.0;
    for i in 1..n {
        arcs[i].t_lo = arcs[i - 1].t_hi;
    }
    BoundaryDistanceFunction::from_arcs(c, d, arcs)
}

/// A simple polygon prepared for shortest-path queries.
#[derive(Debug, Clone)]
pub struct GeodesicSpace {
    polygon: SimplePolygon,
    triangulation: Triangulation,
}

impl GeodesicSpace {
    pub fn new(polygon: SimplePolygon) -> Self {
        let triangulation = crate::geometry::triangulate(&polygon);
        GeodesicSpace {
            polygon,
            triangulation,
        }
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.polygon
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn shortest_path(&self, a: Point, b: Point) -> Result<GeodesicPath> {
        shortest_path(&self.polygon, &self.triangulation, a, b)
    }

    pub fn distance(&self, a: Point, b: Point) -> Result<f64> {
        Ok(self.shortest_path(a, b)?.length)
    }

    pub fn build_funnel(&self, p: Point, c: Point, d: Point) -> Result<Funnel> {
        build_funnel(&self.polygon, &self.triangulation, p, (c, d))
    }

    pub fn boundary_function(
        &self,
        p: Point,
        c: Point,
        d: Point,
    ) -> Result<BoundaryDistanceFunction> {
        Ok(distance_function(&self.build_funnel(p, c, d)?))
    }

    /// The closed segment `ab` lies in the polygon.
    pub fn segment_inside(&self, a: Point, b: Point) -> Result<bool> {
        let path = self.shortest_path(a, b)?;
        let direct = a.dist(b);
        Ok(path.length <= direct * (1.0 + 1e-12) + 1e-15)
    }
}
