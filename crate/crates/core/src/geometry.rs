//! Planar primitives: points, exact orientation, polygonal curves, simple
//! polygons and their ear-clipping triangulation.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3d cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Point at parameter `t` on the segment from `self` to `other`.
    pub fn lerp(self, other: Point, t: f64) -> Point {
        if t == 1.0 {
            return other;
        }
        Point::new(
            self.x + t * (other.x - self.x),
            self.y + t * (other.y - self.y),
        )
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Sign of the doubled signed area of triangle `abc`: `+1` for a
/// counterclockwise turn, `-1` for clockwise, `0` for collinear.
///
/// Evaluated with adaptive precision, so the sign is exact for all finite
/// inputs.
pub fn orient(a: Point, b: Point, c: Point) -> i8 {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

/// `q` lies on the closed segment `ab`.
pub fn on_segment(a: Point, b: Point, q: Point) -> bool {
    orient(a, b, q) == 0
        && q.x >= a.x.min(b.x)
        && q.x <= a.x.max(b.x)
        && q.y >= a.y.min(b.y)
        && q.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// A polygonal curve given by its vertex sequence.
///
/// A single-vertex curve is allowed and behaves like a constant curve.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalCurve {
    vertices: Vec<Point>,
}

impl PolygonalCurve {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyCurve);
        }
        for (i, v) in vertices.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        for i in 1..vertices.len() {
            if vertices[i] == vertices[i - 1] {
                return Err(Error::DuplicateVertex(i));
            }
        }
        Ok(PolygonalCurve { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of cells this curve spans in a free-space diagram. A
    /// single-vertex curve counts as one degenerate segment.
    pub fn segment_count(&self) -> usize {
        (self.vertices.len() - 1).max(1)
    }

    /// Endpoints of segment `i`; for a single-vertex curve both are the vertex.
    pub fn segment(&self, i: usize) -> (Point, Point) {
        if self.vertices.len() == 1 {
            (self.vertices[0], self.vertices[0])
        } else {
            (self.vertices[i], self.vertices[i + 1])
        }
    }

    /// Cell-boundary vertex `i` in `0..=segment_count()`.
    pub fn knot(&self, i: usize) -> Point {
        self.vertices[i.min(self.vertices.len() - 1)]
    }

    pub fn start(&self) -> Point {
        self.vertices[0]
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().unwrap()
    }

    /// Point at global parameter `s` in `[0, segment_count()]`.
    pub fn point_at(&self, s: f64) -> Point {
        let n = self.segment_count();
        let s = s.clamp(0.0, n as f64);
        let i = (s.floor() as usize).min(n - 1);
        let (a, b) = self.segment(i);
        a.lerp(b, s - i as f64)
    }

    pub fn length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].dist(w[1])).sum()
    }
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
}

impl SimplePolygon {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        (
            self.vertices[i],
            self.vertices[(i + 1) % self.vertices.len()],
        )
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Closed point-in-polygon test with exact predicates.
    pub fn contains(&self, q: Point) -> bool {
        let n = self.vertices.len();
        let mut winding = 0i32;
        for i in 0..n {
            let (a, b) = self.edge(i);
            if on_segment(a, b, q) {
                return true;
            }
            if a.y <= q.y {
                if b.y > q.y && orient(a, b, q) > 0 {
                    winding += 1;
                }
            } else if b.y <= q.y && orient(a, b, q) < 0 {
                winding -= 1;
            }
        }
        winding != 0
    }
}

fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * acc
}

/// Validate a raw vertex ring and return it as a counterclockwise simple
/// polygon.
pub fn validate_polygon(raw: &[Point]) -> Result<SimplePolygon> {
    let n = raw.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    for (i, v) in raw.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite(i));
        }
    }
    let v0 = raw[0];
    let collinear = match raw.iter().position(|&v| v != v0) {
        None => true,
        Some(i) => raw.iter().all(|&v| orient(v0, raw[i], v) == 0),
    };
    if collinear {
        return Err(Error::DegenerateArea);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b) = (raw[i], raw[(i + 1) % n]);
            let (c, d) = (raw[j], raw[(j + 1) % n]);
            if adjacent {
                // (a,b),(b,d) or (c,a),(a,b): shared vertex, must not fold back.
                let (p, shared, q) = if j == i + 1 { (a, b, d) } else { (c, a, b) };
                if p == shared || q == shared {
                    return Err(Error::SelfIntersecting(i, j));
                }
                if orient(p, shared, q) == 0 && (shared - p).dot(q - shared) < 0.0 {
                    return Err(Error::SelfIntersecting(i, j));
                }
            } else if segments_intersect(a, b, c, d) {
                return Err(Error::SelfIntersecting(i, j));
            }
        }
    }
    let mut vertices = raw.to_vec();
    let area = signed_area(&vertices);
    if area == 0.0 {
        return Err(Error::DegenerateArea);
    }
    if area < 0.0 {
        vertices.reverse();
    }
    Ok(SimplePolygon { vertices })
}

/// Triangulation of a simple polygon together with its dual tree.
///
/// Triangles are stored as counterclockwise vertex-index triples. Edge `e` of
/// triangle `t` runs from `triangles[t][e]` to `triangles[t][(e + 1) % 3]`;
/// `neighbors[t][e]` is the triangle across it, if that edge is a diagonal.
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub triangles: Vec<[usize; 3]>,
    pub neighbors: Vec<[Option<usize>; 3]>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn corners(&self, poly: &SimplePolygon, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        let v = poly.vertices();
        [v[a], v[b], v[c]]
    }

    /// Edge index of `t` shared with neighbour `u`.
    pub fn shared_edge(&self, t: usize, u: usize) -> Option<usize> {
        self.neighbors[t].iter().position(|&n| n == Some(u))
    }

    /// Triangles along the dual-tree path from `from` to `to`, inclusive.
    pub fn sleeve(&self, from: usize, to: usize) -> Vec<usize> {
        let (mut a, mut b) = (from, to);
        let mut head = vec![a];
        let mut tail = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
            head.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
            tail.push(b);
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
            head.push(a);
            tail.push(b);
        }
        tail.pop();
        head.extend(tail.into_iter().rev());
        head
    }
}

fn ear_is_empty(pts: &[Point], ring: &[usize], prev: usize, cur: usize, next: usize) -> bool {
    let (a, b, c) = (pts[ring[prev]], pts[ring[cur]], pts[ring[next]]);
    ring.iter().enumerate().all(|(k, &vi)| {
        if k == prev || k == cur || k == next {
            return true;
        }
        let q = pts[vi];
        if q == a || q == b || q == c {
            return true;
        }
        !(orient(a, b, q) >= 0 && orient(b, c, q) >= 0 && orient(c, a, q) >= 0)
    })
}

/// Ear-clipping triangulation; always yields `k - 2` triangles.
pub fn triangulate(poly: &SimplePolygon) -> Triangulation {
    let pts = poly.vertices();
    let mut ring: Vec<usize> = (0..pts.len()).collect();
    let mut triangles = Vec::with_capacity(pts.len() - 2);
    let mut cursor = 0;
    while ring.len() > 3 {
        let m = ring.len();
        let mut clipped = None;
        for step in 0..m {
            let cur = (cursor + step) % m;
            let prev = (cur + m - 1) % m;
            let next = (cur + 1) % m;
            if orient(pts[ring[prev]], pts[ring[cur]], pts[ring[next]]) > 0
                && ear_is_empty(pts, &ring, prev, cur, next)
            {
                clipped = Some(cur);
                break;
            }
        }
        // Only collinear runs remain clippable: cut a straight-angle vertex.
        let cur = clipped.unwrap_or_else(|| {
            (0..m)
                .find(|&cur| {
                    let prev = (cur + m - 1) % m;
                    let next = (cur + 1) % m;
                    orient(pts[ring[prev]], pts[ring[cur]], pts[ring[next]]) == 0
                })
                .unwrap_or(0)
        });
        let prev = (cur + m - 1) % m;
        let next = (cur + 1) % m;
        triangles.push([ring[prev], ring[cur], ring[next]]);
        ring.remove(cur);
        cursor = if cur == 0 { 0 } else { cur - 1 };
    }
    triangles.push([ring[0], ring[1], ring[2]]);

    let mut neighbors = vec![[None; 3]; triangles.len()];
    let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for e in 0..3 {
            let (u, v) = (tri[e], tri[(e + 1) % 3]);
            let key = (u.min(v), u.max(v));
            if let Some((s, f)) = edges.remove(&key) {
                neighbors[t][e] = Some(s);
                neighbors[s][f] = Some(t);
            } else {
                edges.insert(key, (t, e));
            }
        }
    }

    let n = triangles.len();
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(t) = queue.pop_front() {
        for u in neighbors[t].iter().flatten() {
            if !seen[*u] {
                seen[*u] = true;
                parent[*u] = Some(t);
                depth[*u] = depth[t] + 1;
                queue.push_back(*u);
            }
        }
    }

    Triangulation {
        triangles,
        neighbors,
        parent,
        depth,
    }
}

fn triangle_contains(tri: [Point; 3], q: Point) -> bool {
    let [a, b, c] = tri;
    orient(a, b, q) >= 0 && orient(b, c, q) >= 0 && orient(c, a, q) >= 0
}

/// Index of a triangle containing `q` (boundary inclusive), or `None` when
/// `q` is outside the polygon.
pub fn locate(poly: &SimplePolygon, tri: &Triangulation, q: Point) -> Option<usize> {
    let mut degenerate = None;
    for t in 0..tri.len() {
        let corners = tri.corners(poly, t);
        if triangle_contains(corners, q) {
            if orient(corners[0], corners[1], corners[2]) > 0 {
                return Some(t);
            }
            degenerate.get_or_insert(t);
        }
    }
    degenerate
}

/// Like [`locate`], but points within `tol` of some triangle (as produced by
/// rounding when interpolating along boundary-hugging segments) are snapped
/// to the nearest one.
pub(crate) fn locate_near(
    poly: &SimplePolygon,
    tri: &Triangulation,
    q: Point,
    tol: f64,
) -> Option<usize> {
    if let Some(t) = locate(poly, tri, q) {
        return Some(t);
    }
    let mut best = None;
    let mut best_d = tol;
    for t in 0..tri.len() {
        let [a, b, c] = tri.corners(poly, t);
        let d = point_segment_dist(q, a, b)
            .min(point_segment_dist(q, b, c))
            .min(point_segment_dist(q, c, a));
        if d <= best_d {
            best_d = d;
            best = Some(t);
        }
    }
    best
}

pub(crate) fn point_segment_dist(q: Point, a: Point, b: Point) -> f64 {
    let e = b - a;
    let len2 = e.norm_sq();
    if len2 == 0.0 {
        return q.dist(a);
    }
    let t = ((q - a).dot(e) / len2).clamp(0.0, 1.0);
    q.dist(a.lerp(b, t))
}
