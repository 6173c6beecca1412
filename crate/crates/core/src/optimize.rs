//! Randomized search for the Fréchet distance.
//!
//! Candidate values come in three kinds: (a) the distances between the two
//! start points and the two end points, (b) the minima of the cell-boundary
//! distance functions, where a free interval is born, and (c) values where
//! the lower end of a free interval on one boundary meets the upper end of an
//! interval on another boundary of the same row or column.
//!
//! Kinds (a) and (b) are sorted and binary searched with the decision
//! procedure, which leaves a slab `(alpha, beta]` free of them. Kind (c)
//! values are crossings of decreasing lower-end curves ("red") with
//! increasing upper-end curves ("blue"). Each round draws one random crossing
//! per row, moves every crossing of each row's busiest red into a pool and
//! retires that red, then probes the pool median and the count-weighted
//! median of the random draws. Rows are handled first, then columns.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freespace::FreeSpaceDiagram;
use crate::geodesic::{BoundaryDistanceFunction, GeodesicSpace};
use crate::geometry::PolygonalCurve;
use crate::metric::{Euclidean, LeashMetric};
use crate::redblue::{self, MonotoneCurve};
use crate::select;

pub use crate::select::weighted_median;

/// Default relative root tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriticalKind {
    /// Start or end point distance.
    A,
    /// Birth of a free interval on a cell boundary.
    B,
    /// Meeting of interval endpoints on two boundaries of a row or column.
    C,
}

impl CriticalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CriticalKind::A => "a",
            CriticalKind::B => "b",
            CriticalKind::C => "c",
        }
    }
}

/// Which end of a boundary's free interval a curve follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    /// Lower end, nonincreasing in `eps`.
    Lower,
    /// Upper end, nondecreasing in `eps`.
    Upper,
}

/// One endpoint of a boundary's free interval as a function of `eps`.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryCurve<'a> {
    pub id: usize,
    pub endpoint: Endpoint,
    /// `eps` at which the free interval appears.
    pub birth: f64,
    function: &'a BoundaryDistanceFunction,
}

impl<'a> BoundaryCurve<'a> {
    pub fn new(id: usize, endpoint: Endpoint, function: &'a BoundaryDistanceFunction) -> Self {
        BoundaryCurve {
            id,
            endpoint,
            birth: function.min_val(),
            function,
        }
    }
}

impl MonotoneCurve for BoundaryCurve<'_> {
    fn id(&self) -> usize {
        self.id
    }

    /// Position of the endpoint; held at the birth position below `birth`.
    fn eval(&self, eps: f64) -> f64 {
        match self.function.crossings(eps) {
            Some((lo, hi)) => match self.endpoint {
                Endpoint::Lower => lo,
                Endpoint::Upper => hi,
            },
            None => self.function.min_t(),
        }
    }
}

/// The `eps` in `[lo, hi]` where the lower-end curve `a` drops to the
/// upper-end curve `b`, to absolute tolerance `tol`.
pub fn curve_intersection(
    a: &BoundaryCurve,
    b: &BoundaryCurve,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Option<f64> {
    a.crossing(b, lo, hi, tol)
}

/// Start and end point distances.
pub fn type_a_values<M: LeashMetric>(
    metric: &M,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
) -> Result<[f64; 2]> {
    Ok([
        metric.distance(a.start(), b.start())?,
        metric.distance(a.end(), b.end())?,
    ])
}

/// Minimum of every boundary distance function: vertical boundaries row by
/// row, then horizontal boundaries row by row.
pub fn type_b_values(diagram: &FreeSpaceDiagram) -> Vec<f64> {
    let (na, nb) = diagram.dims();
    let mut out = Vec::with_capacity((na + 1) * nb + na * (nb + 1));
    for j in 0..nb {
        for i in 0..=na {
            out.push(diagram.vertical(i, j).min_val());
        }
    }
    for j in 0..=nb {
        for i in 0..na {
            out.push(diagram.horizontal(i, j).min_val());
        }
    }
    out
}

/// Outcome of binary searching sorted candidates with the decision
/// procedure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SortedSlab {
    /// Largest candidate deciding false; `None` when the smallest decides
    /// true.
    pub alpha: Option<f64>,
    /// Smallest candidate deciding true.
    pub beta: f64,
    pub beta_index: usize,
}

/// Binary search over ascending `values`. The largest value is assumed to
/// decide true and is never tested.
pub fn resolve_sorted_values(
    values: &[f64],
    mut decide: impl FnMut(f64) -> Result<bool>,
) -> Result<SortedSlab> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (mut lo, mut hi) = (0, values.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide(values[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(SortedSlab {
        alpha: lo.checked_sub(1).map(|k| values[k]),
        beta: values[lo],
        beta_index: lo,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrechetOptions {
    pub seed: u64,
    /// Relative root tolerance: crossings are located to
    /// `tol * max(1, beta)`.
    pub tol: f64,
}

impl Default for FrechetOptions {
    fn default() -> Self {
        FrechetOptions {
            seed: 0,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Rows,
    Columns,
}

/// State after one round of the search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Round {
    pub phase: Phase,
    pub alpha: f64,
    pub beta: f64,
    /// Crossings counted over all rows (or columns) at the start of the round.
    pub kappa: usize,
    /// Values moved into the pool this round.
    pub inserted: usize,
    /// Pool size after pruning.
    pub pool: usize,
    /// Smallest and largest remaining pool values.
    pub pool_range: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrechetResult {
    pub epsilon_star: f64,
    pub resolving_kind: CriticalKind,
    pub iterations: usize,
    pub decision_calls: usize,
    pub peak_pool: usize,
    pub rounds: Vec<Round>,
}

struct Search<'d> {
    diagram: &'d FreeSpaceDiagram,
    tol: f64,
    seed: u64,
    alpha: f64,
    beta: f64,
    kind: CriticalKind,
    iterations: usize,
    guard: usize,
    decision_calls: usize,
    peak_pool: usize,
    rounds: Vec<Round>,
}

impl<'d> Search<'d> {
    fn tau(&self) -> f64 {
        self.tol * self.beta.max(1.0)
    }

    fn probe(&mut self, eps: f64) -> Result<()> {
        if !(eps > self.alpha && eps < self.beta) {
            return Ok(());
        }
        self.decision_calls += 1;
        if self.diagram.decide(eps)? {
            self.beta = eps;
            self.kind = CriticalKind::C;
        } else {
            self.alpha = eps;
        }
        Ok(())
    }

    fn rng(&self, phase: Phase, line: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let phase_bit = match phase {
            Phase::Rows => 0u64,
            Phase::Columns => 1u64,
        };
        rng.set_stream((phase_bit << 63) | ((self.iterations as u64) << 32) | line as u64);
        rng
    }

    /// Boundary functions along each row (vertical boundaries) or column
    /// (horizontal boundaries), in order.
    fn lines(&self, phase: Phase) -> Vec<Vec<&'d BoundaryDistanceFunction>> {
        let d: &'d FreeSpaceDiagram = self.diagram;
        let (na, nb) = d.dims();
        match phase {
            Phase::Rows => (0..nb)
                .map(|j| (0..=na).map(|i| d.vertical(i, j)).collect())
                .collect(),
            Phase::Columns => (0..na)
                .map(|i| (0..=nb).map(|j| d.horizontal(i, j)).collect())
                .collect(),
        }
    }

    fn run_phase(&mut self, phase: Phase) -> Result<()> {
        let lines = self.lines(phase);
        let mut retired: Vec<Vec<bool>> = lines.iter().map(|l| vec![false; l.len()]).collect();
        let mut pool: Vec<f64> = Vec::new();
        loop {
            let tau = self.tau();
            let top = self.beta - tau;
            if top <= self.alpha {
                return Ok(());
            }
            let mut kappa = 0;
            let mut draws = Vec::new();
            let mut weights = Vec::new();
            let mut inserted = 0;
            for (line, funcs) in lines.iter().enumerate() {
                let live = |k: usize| funcs[k].min_val() <= self.alpha;
                let reds: Vec<BoundaryCurve> = (0..funcs.len())
                    .filter(|&k| live(k) && !retired[line][k])
                    .map(|k| BoundaryCurve::new(k, Endpoint::Lower, funcs[k]))
                    .collect();
                let blues: Vec<BoundaryCurve> = (0..funcs.len())
                    .filter(|&k| live(k))
                    .map(|k| BoundaryCurve::new(k, Endpoint::Upper, funcs[k]))
                    .collect();
                let counter = redblue::count(&reds, &blues, self.alpha, top, tau)?;
                if counter.total() == 0 {
                    continue;
                }
                kappa += counter.total();
                let mut rng = self.rng(phase, line);
                let (_, _, theta) =
                    redblue::random_intersection(&counter, &reds, &blues, &mut rng)?;
                draws.push(theta);
                weights.push(counter.total() as f64);
                let m = counter.max_red_index().expect("nonempty row has reds");
                let found = counter.crossings_of(m, &reds, &blues);
                inserted += found.len();
                pool.extend(found.into_iter().map(|(_, x)| x));
                retired[line][reds[m].id] = true;
            }
            if kappa == 0 && pool.is_empty() {
                return Ok(());
            }
            self.iterations += 1;
            if self.iterations > self.guard {
                return Err(Error::NonTermination(self.iterations));
            }
            self.peak_pool = self.peak_pool.max(pool.len());

            let xi = select::median(&mut pool);
            let psi = if draws.is_empty() {
                None
            } else {
                Some(weighted_median(&draws, &weights)?)
            };
            match (xi, psi) {
                (Some(x), Some(y)) if x == y => self.probe(x)?,
                (x, y) => {
                    for v in [x, y].into_iter().flatten() {
                        self.probe(v)?;
                    }
                }
            }

            let (alpha, beta, tau) = (self.alpha, self.beta, self.tau());
            pool.retain(|&v| v > alpha && v < beta - tau);
            let pool_range = pool.iter().fold(None, |acc: Option<(f64, f64)>, &v| {
                Some(acc.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))))
            });
            self.rounds.push(Round {
                phase,
                alpha,
                beta,
                kappa,
                inserted,
                pool: pool.len(),
                pool_range,
            });
        }
    }
}

/// Fréchet distance from a prepared diagram.
pub fn frechet_with_diagram(
    diagram: &FreeSpaceDiagram,
    opts: FrechetOptions,
) -> Result<FrechetResult> {
    let (na, nb) = diagram.dims();
    let mut candidates: Vec<(f64, CriticalKind)> = vec![
        (diagram.start_distance(), CriticalKind::A),
        (diagram.end_distance(), CriticalKind::A),
    ];
    candidates.extend(
        type_b_values(diagram)
            .into_iter()
            .map(|v| (v, CriticalKind::B)),
    );
    // Every leash is bounded by the largest knot-to-knot distance, so this
    // value always decides true.
    let mut bound = 0.0f64;
    for j in 0..=nb {
        for i in 0..na {
            let f = diagram.horizontal(i, j);
            bound = bound.max(f.value(0.0)).max(f.value(1.0));
        }
    }
    candidates.push((bound, CriticalKind::C));
    candidates.sort_by(|x, y| x.0.total_cmp(&y.0));
    let values: Vec<f64> = candidates.iter().map(|c| c.0).collect();

    let mut decision_calls = 0;
    let slab = resolve_sorted_values(&values, |eps| {
        decision_calls += 1;
        diagram.decide(eps)
    })?;
    let kind = candidates[slab.beta_index].1;
    let Some(alpha) = slab.alpha else {
        return Ok(FrechetResult {
            epsilon_star: slab.beta,
            resolving_kind: kind,
            iterations: 0,
            decision_calls,
            peak_pool: 0,
            rounds: Vec::new(),
        });
    };

    let n = na.max(nb) + 1;
    let mut search = Search {
        diagram,
        tol: opts.tol,
        seed: opts.seed,
        alpha,
        beta: slab.beta,
        kind,
        iterations: 0,
        guard: n * (na + nb) + 16,
        decision_calls,
        peak_pool: 0,
        rounds: Vec::new(),
    };
    search.run_phase(Phase::Rows)?;
    search.run_phase(Phase::Columns)?;
    Ok(FrechetResult {
        epsilon_star: search.beta,
        resolving_kind: search.kind,
        iterations: search.iterations,
        decision_calls: search.decision_calls,
        peak_pool: search.peak_pool,
        rounds: search.rounds,
    })
}

/// Fréchet distance under any leash metric.
pub fn frechet<M: LeashMetric>(
    metric: &M,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    opts: FrechetOptions,
) -> Result<FrechetResult> {
    let diagram = FreeSpaceDiagram::new(metric, a, b)?;
    frechet_with_diagram(&diagram, opts)
}

/// Fréchet distance with the leash constrained to the polygon of `space`.
pub fn frechet_geodesic(
    space: &GeodesicSpace,
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    seed: u64,
) -> Result<FrechetResult> {
    frechet(
        space,
        a,
        b,
        FrechetOptions {
            seed,
            ..Default::default()
        },
    )
}

/// Fréchet distance with a straight-line leash.
pub fn frechet_euclidean(
    a: &PolygonalCurve,
    b: &PolygonalCurve,
    seed: u64,
) -> Result<FrechetResult> {
    frechet(
        &Euclidean,
        a,
        b,
        FrechetOptions {
            seed,
            ..Default::default()
        },
    )
}
