//! Independent oracles and random instance generators shared by the
//! integration tests. Nothing here goes through the funnel algorithm.

#![allow(dead_code)]

use geofrechet::geometry::{on_segment, orient, validate_polygon};
use geofrechet::{GeodesicSpace, Point, PolygonalCurve, SimplePolygon};
use rand::Rng;

pub fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

pub fn polygon(raw: &[(f64, f64)]) -> SimplePolygon {
    let pts: Vec<Point> = raw.iter().map(|&(x, y)| p(x, y)).collect();
    validate_polygon(&pts).unwrap()
}

pub fn curve(raw: &[(f64, f64)]) -> PolygonalCurve {
    PolygonalCurve::new(raw.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
}

pub fn l_shape() -> SimplePolygon {
    polygon(&[
        (0.0, 0.0),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.0),
        (1.0, 2.0),
        (0.0, 2.0),
    ])
}

/// U-shaped polygon: two vertical arms joined at the bottom, separated by a
/// notch `x in (1, 2), y > 0.5`.
pub fn u_notch() -> SimplePolygon {
    polygon(&[
        (0.0, 0.0),
        (3.0, 0.0),
        (3.0, 3.0),
        (2.0, 3.0),
        (2.0, 0.5),
        (1.0, 0.5),
        (1.0, 3.0),
        (0.0, 3.0),
    ])
}

/// Star-shaped polygon around the origin with `k` vertices.
pub fn random_star<R: Rng>(rng: &mut R, k: usize) -> SimplePolygon {
    loop {
        let mut angles: Vec<f64> = (0..k)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let min_gap = angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .chain(std::iter::once(
                angles[0] + std::f64::consts::TAU - angles[k - 1],
            ))
            .fold(f64::INFINITY, f64::min);
        if min_gap < 1e-3 {
            continue;
        }
        let pts: Vec<Point> = angles
            .iter()
            .map(|&a| {
                let r = rng.gen_range(0.25..1.0) * 4.0;
                p(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(poly) = validate_polygon(&pts) {
            return poly;
        }
    }
}

/// Convex polygon from `k` points on an ellipse.
pub fn random_convex<R: Rng>(rng: &mut R, k: usize) -> SimplePolygon {
    let rx = rng.gen_range(2.0..5.0);
    let ry = rng.gen_range(2.0..5.0);
    let mut angles: Vec<f64> = (0..k)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
    let pts: Vec<Point> = angles
        .iter()
        .map(|&a| p(rx * a.cos(), ry * a.sin()))
        .collect();
    if pts.len() < 3 {
        return random_convex(rng, k);
    }
    validate_polygon(&pts).unwrap()
}

/// Orthogonal comb: a spine `0 <= y <= 1` with `teeth` unit-wide teeth
/// reaching up to `y = 3`, separated by unit-wide gaps.
pub fn comb(teeth: usize) -> SimplePolygon {
    let right = 2.0 * teeth as f64 - 1.0;
    let mut raw = vec![(0.0, 0.0), (right, 0.0)];
    for t in (0..teeth).rev() {
        let x = 2.0 * t as f64;
        raw.push((x + 1.0, 3.0));
        raw.push((x, 3.0));
        if t > 0 {
            raw.push((x, 1.0));
            raw.push((x - 1.0, 1.0));
        }
    }
    polygon(&raw)
}

fn bbox(poly: &SimplePolygon) -> (Point, Point) {
    let v = poly.vertices();
    let mut lo = v[0];
    let mut hi = v[0];
    for q in v {
        lo = p(lo.x.min(q.x), lo.y.min(q.y));
        hi = p(hi.x.max(q.x), hi.y.max(q.y));
    }
    (lo, hi)
}

pub fn random_point_in<R: Rng>(rng: &mut R, poly: &SimplePolygon) -> Point {
    let (lo, hi) = bbox(poly);
    loop {
        let q = p(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if poly.contains(q) {
            return q;
        }
    }
}

fn point_seg_dist(q: Point, a: Point, b: Point) -> f64 {
    let e = b - a;
    let t = ((q - a).dot(e) / e.norm_sq()).clamp(0.0, 1.0);
    q.dist(a + e * t)
}

fn inside_tolerant(poly: &SimplePolygon, q: Point) -> bool {
    if poly.contains(q) {
        return true;
    }
    let n = poly.len();
    (0..n).any(|i| {
        let (a, b) = poly.edge(i);
        point_seg_dist(q, a, b) < 1e-12
    })
}

/// Closed segment `ab` stays inside `poly`; independent of triangulations.
pub fn visible(poly: &SimplePolygon, a: Point, b: Point) -> bool {
    if a == b {
        return inside_tolerant(poly, a);
    }
    let n = poly.len();
    let mut cuts = vec![0.0, 1.0];
    for i in 0..n {
        let (u, v) = poly.edge(i);
        let o1 = orient(a, b, u);
        let o2 = orient(a, b, v);
        let o3 = orient(u, v, a);
        let o4 = orient(u, v, b);
        if o1 * o2 < 0 && o3 * o4 < 0 {
            return false;
        }
        if on_segment(a, b, u) {
            cuts.push((u - a).dot(b - a) / (b - a).norm_sq());
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.windows(2).all(|w| {
        let m = a.lerp(b, 0.5 * (w[0] + w[1]));
        inside_tolerant(poly, m)
    })
}

/// Geodesic distance by Dijkstra over the visibility graph of the polygon
/// vertices and the two query points.
pub fn visibility_distance(poly: &SimplePolygon, a: Point, b: Point) -> f64 {
    let mut nodes = vec![a, b];
    nodes.extend_from_slice(poly.vertices());
    let n = nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[0] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !done[i])
            .min_by(|&i, &j| dist[i].total_cmp(&dist[j]))
            .unwrap();
        if dist[u].is_infinite() {
            break;
        }
        done[u] = true;
        if u == 1 {
            break;
        }
        for v in 0..n {
            if !done[v] && visible(poly, nodes[u], nodes[v]) {
                let cand = dist[u] + nodes[u].dist(nodes[v]);
                if cand < dist[v] {
                    dist[v] = cand;
                }
            }
        }
    }
    dist[1]
}

/// Random curve with `segments` segments whose every segment stays inside.
pub fn random_curve<R: Rng>(rng: &mut R, poly: &SimplePolygon, segments: usize) -> PolygonalCurve {
    let mut pts = vec![random_point_in(rng, poly)];
    while pts.len() <= segments {
        let last = *pts.last().unwrap();
        let q = random_point_in(rng, poly);
        if q != last && visible(poly, last, q) {
            pts.push(q);
        }
    }
    PolygonalCurve::new(pts).unwrap()
}

/// Upper bound on any leash length: the largest vertex-to-vertex distance.
pub fn diameter_bound(space: &GeodesicSpace, a: &PolygonalCurve, b: &PolygonalCurve) -> f64 {
    let mut m: f64 = 0.0;
    for &x in a.vertices() {
        for &y in b.vertices() {
            m = m.max(space.distance(x, y).unwrap());
        }
    }
    m
}

/// Smallest `eps` with `decide(eps)` true, by 60 halvings of `[0, hi]`.
pub fn bisection_oracle(mut decide: impl FnMut(f64) -> bool, hi: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if decide(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub enum PolygonKind {
    Convex,
    Star,
}

/// A random polygon with `k` vertices and two random curves inside it.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    kind: PolygonKind,
    k: usize,
    na: usize,
    nb: usize,
) -> (GeodesicSpace, PolygonalCurve, PolygonalCurve) {
    let poly = match kind {
        PolygonKind::Convex => random_convex(rng, k),
        PolygonKind::Star => random_star(rng, k),
    };
    let a = random_curve(rng, &poly, na);
    let b = random_curve(rng, &poly, nb);
    (GeodesicSpace::new(poly), a, b)
}

/// Points along `c` with consecutive spacing at most `h`, and the largest
/// spacing actually used.
pub fn dense_samples(c: &PolygonalCurve, h: f64) -> (Vec<Point>, f64) {
    let v = c.vertices();
    let mut out = vec![v[0]];
    let mut spacing: f64 = 0.0;
    for w in v.windows(2) {
        let len = w[0].dist(w[1]);
        let m = (len / h).ceil().max(1.0) as usize;
        spacing = spacing.max(len / m as f64);
        for s in 1..=m {
            out.push(w[0].lerp(w[1], s as f64 / m as f64));
        }
    }
    (out, spacing)
}

/// Reachability over a fully stored diagram, column by column. Boundary
/// intervals come from the library; the propagation is written out here.
pub fn reference_decide(diagram: &geofrechet::freespace::FreeSpaceDiagram, eps: f64) -> bool {
    type Iv = Option<(f64, f64)>;
    let (na, nb) = diagram.dims();
    let tol = 1e-12 * (1.0 + eps);
    if diagram.start_distance() > eps + tol || diagram.end_distance() > eps + tol {
        return false;
    }
    let lf: Vec<Vec<Iv>> = (0..=na)
        .map(|i| {
            (0..nb)
                .map(|j| diagram.vertical(i, j).crossings(eps))
                .collect()
        })
        .collect();
    let bf: Vec<Vec<Iv>> = (0..na)
        .map(|i| {
            (0..=nb)
                .map(|j| diagram.horizontal(i, j).crossings(eps))
                .collect()
        })
        .collect();
    let mut lr: Vec<Vec<Iv>> = vec![vec![None; nb]; na + 1];
    let mut br: Vec<Vec<Iv>> = vec![vec![None; nb + 1]; na];
    let snap = 1e-12;
    for j in 0..nb {
        let below_ok = j == 0 || lr[0][j - 1].is_some_and(|(_, hi)| hi >= 1.0 - snap);
        lr[0][j] = lf[0][j].filter(|&(lo, _)| below_ok && lo <= snap);
    }
    for i in 0..na {
        let left_ok = i == 0 || br[i - 1][0].is_some_and(|(_, hi)| hi >= 1.0 - snap);
        br[i][0] = bf[i][0].filter(|&(lo, _)| left_ok && lo <= snap);
    }
    let cut = |free: Iv, low: f64| -> Iv {
        free.and_then(|(lo, hi)| {
            if hi >= low - snap {
                Some((lo.max(low).min(hi), hi))
            } else {
                None
            }
        })
    };
    for i in 0..na {
        for j in 0..nb {
            lr[i + 1][j] = match (lr[i][j], br[i][j]) {
                (_, Some(_)) => lf[i + 1][j],
                (Some((lo, _)), None) => cut(lf[i + 1][j], lo),
                _ => None,
            };
            br[i][j + 1] = match (lr[i][j], br[i][j]) {
                (Some(_), _) => bf[i][j + 1],
                (None, Some((lo, _))) => cut(bf[i][j + 1], lo),
                _ => None,
            };
        }
    }
    let done = |iv: Iv| iv.is_some_and(|(_, hi)| hi >= 1.0 - snap);
    done(lr[na][nb - 1]) || done(br[na - 1][nb])
}

/// Discrete Fréchet distance between point sequences.
pub fn discrete_frechet(ps: &[Point], qs: &[Point], dist: impl Fn(Point, Point) -> f64) -> f64 {
    let m = qs.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![0.0; m];
    for (i, &p) in ps.iter().enumerate() {
        for (j, &q) in qs.iter().enumerate() {
            let d = dist(p, q);
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]),
            };
            cur[j] = d.max(best);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

/// Each segment of `c` split into `k` equal pieces.
pub fn refine(c: &PolygonalCurve, k: usize) -> Vec<Point> {
    let v = c.vertices();
    let mut out = vec![v[0]];
    for w in v.windows(2) {
        for s in 1..=k {
            out.push(w[0].lerp(w[1], s as f64 / k as f64));
        }
    }
    out
}

/// Number of rows and columns of the `n x n` free-space raster of one cell
/// whose free samples are not one contiguous run, plus one if the free set
/// is not a single 4-connected component.
pub fn cell_structure_violations(grid: &[Vec<bool>]) -> usize {
    let n = grid.len();
    let runs = |cells: &mut dyn Iterator<Item = bool>| {
        let mut count = 0;
        let mut prev = false;
        for c in cells {
            if c && !prev {
                count += 1;
            }
            prev = c;
        }
        count
    };
    let mut bad = 0;
    for r in 0..n {
        if runs(&mut grid[r].iter().copied()) > 1 {
            bad += 1;
        }
    }
    for c in 0..n {
        if runs(&mut (0..n).map(|r| grid[r][c])) > 1 {
            bad += 1;
        }
    }
    let total = grid.iter().flatten().filter(|&&x| x).count();
    if total > 0 {
        let start = (0..n * n).find(|&k| grid[k / n][k % n]).unwrap();
        let mut seen = vec![false; n * n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 0;
        while let Some(k) = stack.pop() {
            reached += 1;
            let (r, c) = (k / n, k % n);
            let mut push = |rr: usize, cc: usize| {
                let kk = rr * n + cc;
                if grid[rr][cc] && !seen[kk] {
                    seen[kk] = true;
                    stack.push(kk);
                }
            };
            if r > 0 {
                push(r - 1, c);
            }
            if r + 1 < n {
                push(r + 1, c);
            }
            if c > 0 {
                push(r, c - 1);
            }
            if c + 1 < n {
                push(r, c + 1);
            }
        }
        if reached != total {
            bad += 1;
        }
    }
    bad
}

/// Free-space raster of segment `(a0, a1)` against `(b0, b1)`:
/// `grid[r][c]` samples `s = c / (n - 1)` on `a`, `t = r / (n - 1)` on `b`.
pub fn cell_raster(
    dist: impl Fn(Point, Point) -> f64,
    (a0, a1): (Point, Point),
    (b0, b1): (Point, Point),
    eps: f64,
    n: usize,
) -> Vec<Vec<bool>> {
    let step = 1.0 / (n - 1) as f64;
    (0..n)
        .map(|r| {
            let q = b0.lerp(b1, r as f64 * step);
            (0..n)
                .map(|c| dist(a0.lerp(a1, c as f64 * step), q) <= eps)
                .collect()
        })
        .collect()
}

/// Count of up-then-down turns and of second down-then-up turns in a sampled
/// function; plateaus within `tol` are ignored.
pub fn bitonic_violations(values: &[f64], tol: f64) -> usize {
    let mut dir = 0i8;
    let mut turns_up = 0usize;
    let mut bad = 0;
    for w in values.windows(2) {
        let d = w[1] - w[0];
        let step = if d > tol {
            1
        } else if d < -tol {
            -1
        } else {
            0
        };
        if step == 0 {
            continue;
        }
        if dir == 1 && step == -1 {
            bad += 1;
        }
        if dir == -1 && step == 1 {
            turns_up += 1;
        }
        dir = step;
    }
    bad + turns_up.saturating_sub(1)
}

/// Piecewise-linear curve over `[0, 1]` on a uniform grid.
#[derive(Debug, Clone)]
pub struct Pwl {
    pub id: usize,
    pub values: Vec<f64>,
}

impl Pwl {
    /// Strictly monotone random curve on `pieces` equal pieces.
    pub fn random<R: Rng>(rng: &mut R, id: usize, pieces: usize, decreasing: bool) -> Pwl {
        let mut v = rng.gen_range(-2.0..2.0);
        let mut values = vec![v];
        for _ in 0..pieces {
            let step = rng.gen_range(0.01..4.0 / pieces as f64);
            v += if decreasing { -step } else { step };
            values.push(v);
        }
        Pwl { id, values }
    }

    fn pieces(&self) -> usize {
        self.values.len() - 1
    }

    /// Exact crossing with `other` on the shared grid: the `x` where
    /// `self - other` first drops to zero, if it does.
    pub fn exact_crossing(&self, other: &Pwl) -> Option<f64> {
        let n = self.pieces();
        assert_eq!(n, other.pieces());
        let g: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        if !(g[0] > 0.0) || g[n] > 0.0 {
            return None;
        }
        let k = (0..n).find(|&k| g[k] > 0.0 && g[k + 1] <= 0.0)?;
        Some((k as f64 + g[k] / (g[k] - g[k + 1])) / n as f64)
    }
}

impl geofrechet::redblue::MonotoneCurve for Pwl {
    fn id(&self) -> usize {
        self.id
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.pieces();
        let s = (x * n as f64).clamp(0.0, n as f64);
        let k = (s.floor() as usize).min(n - 1);
        let f = s - k as f64;
        self.values[k] * (1.0 - f) + self.values[k + 1] * f
    }
}

/// Random red (decreasing) and blue (increasing) families.
pub fn random_family<R: Rng>(
    rng: &mut R,
    m: usize,
    n: usize,
    pieces: usize,
) -> (Vec<Pwl>, Vec<Pwl>) {
    let reds = (0..m).map(|i| Pwl::random(rng, i, pieces, true)).collect();
    let blues = (0..n)
        .map(|i| Pwl::random(rng, 1000 + i, pieces, false))
        .collect();
    (reds, blues)
}
