//! Counting, reporting and sampling crossings between decreasing ("red") and
//! increasing ("blue") curves over a slab `[alpha, beta]`.
//!
//! A red and a blue curve cross at most once. A blue curve is *below* a red
//! one at `x` when `blue(x) < red(x)`; the pair crosses inside the slab iff
//! the blue is below at `alpha` and not below at `beta`. Sorting the blue
//! values at both slab edges turns the per-red crossing count into the
//! difference of two rank queries.

use rand::Rng;

use crate::error::{Error, Result};

/// Number of interior sample points used to validate monotonicity.
const MONOTONE_SAMPLES: usize = 17;

/// A continuous curve over the slab, monotone in the direction required by
/// its colour.
pub trait MonotoneCurve {
    fn id(&self) -> usize;

    fn eval(&self, x: f64) -> f64;

    /// Abscissa of the crossing of `self` (red) with `blue` in `[lo, hi]`.
    fn crossing(&self, blue: &Self, lo: f64, hi: f64, tol: f64) -> Option<f64>
    where
        Self: Sized,
    {
        bisect_crossing(self, blue, lo, hi, tol)
    }
}

/// Root of `red(x) - blue(x)` on `[lo, hi]` by bisection down to width `tol`.
///
/// Returns the right end of the final bracket, i.e. a point where the red
/// value is no longer above the blue one; `None` if the sign does not change.
pub fn bisect_crossing<R, B>(red: &R, blue: &B, lo: f64, hi: f64, tol: f64) -> Option<f64>
where
    R: MonotoneCurve + ?Sized,
    B: MonotoneCurve + ?Sized,
{
    let gap = |x: f64| red.eval(x) - blue.eval(x);
    if !(gap(lo) > 0.0) || gap(hi) > 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

fn sample_points(alpha: f64, beta: f64) -> Vec<f64> {
    let mid = 0.5 * (alpha + beta);
    let half = 0.5 * (beta - alpha);
    let mut xs: Vec<f64> = (0..MONOTONE_SAMPLES)
        .map(|k| {
            let theta = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * MONOTONE_SAMPLES) as f64;
            mid - half * theta.cos()
        })
        .collect();
    xs.insert(0, alpha);
    xs.push(beta);
    xs
}

fn check_monotone<C: MonotoneCurve>(curve: &C, xs: &[f64], decreasing: bool) -> Result<(f64, f64)> {
    let vals: Vec<f64> = xs.iter().map(|&x| curve.eval(x)).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::MonotonicityViolation(curve.id()));
    }
    for w in vals.windows(2) {
        let slack = 1e-12 * (1.0 + w[0].abs().max(w[1].abs()));
        let ok = if decreasing {
            w[1] <= w[0] + slack
        } else {
            w[1] >= w[0] - slack
        };
        if !ok {
            return Err(Error::MonotonicityViolation(curve.id()));
        }
    }
    Ok((vals[0], *vals.last().unwrap()))
}

/// Slab structure with per-red crossing counts.
#[derive(Debug, Clone)]
pub struct RedBlueCounter {
    alpha: f64,
    beta: f64,
    tol: f64,
    red_ids: Vec<usize>,
    red_alpha: Vec<f64>,
    red_beta: Vec<f64>,
    /// Blue indices sorted by value at `alpha`.
    blue_order: Vec<usize>,
    blue_alpha_sorted: Vec<f64>,
    blue_beta: Vec<f64>,
    below_alpha: Vec<usize>,
    below_beta: Vec<usize>,
    counts: Vec<usize>,
    /// `prefix[r]` = sum of `counts[..r]`.
    prefix: Vec<usize>,
    total: usize,
}

/// Build the counter for `reds` (non-increasing) and `blues` (non-decreasing)
/// over `[alpha, beta]`. Crossings are located to absolute tolerance `tol`.
pub fn count<C: MonotoneCurve>(
    reds: &[C],
    blues: &[C],
    alpha: f64,
    beta: f64,
    tol: f64,
) -> Result<RedBlueCounter> {
    let xs = sample_points(alpha, beta);
    let mut red_alpha = Vec::with_capacity(reds.len());
    let mut red_beta = Vec::with_capacity(reds.len());
    for r in reds {
        let (a, b) = check_monotone(r, &xs, true)?;
        red_alpha.push(a);
        red_beta.push(b);
    }
    let mut blue_alpha = Vec::with_capacity(blues.len());
    let mut blue_beta = Vec::with_capacity(blues.len());
    for b in blues {
        let (a, z) = check_monotone(b, &xs, false)?;
        blue_alpha.push(a);
        blue_beta.push(z);
    }

    let mut blue_order: Vec<usize> = (0..blues.len()).collect();
    blue_order.sort_by(|&i, &j| blue_alpha[i].total_cmp(&blue_alpha[j]).then(i.cmp(&j)));
    let blue_alpha_sorted: Vec<f64> = blue_order.iter().map(|&i| blue_alpha[i]).collect();
    let mut beta_sorted = blue_beta.clone();
    beta_sorted.sort_by(f64::total_cmp);

    let below_alpha: Vec<usize> = red_alpha
        .iter()
        .map(|&v| blue_alpha_sorted.partition_point(|&b| b < v))
        .collect();
    let below_beta: Vec<usize> = red_beta
        .iter()
        .map(|&v| beta_sorted.partition_point(|&b| b < v))
        .collect();
    let counts: Vec<usize> = below_alpha
        .iter()
        .zip(&below_beta)
        .map(|(&a, &b)| a.saturating_sub(b))
        .collect();
    let mut prefix = Vec::with_capacity(counts.len());
    let mut total = 0;
    for &c in &counts {
        prefix.push(total);
        total += c;
    }

    Ok(RedBlueCounter {
        alpha,
        beta,
        tol,
        red_ids: reds.iter().map(|r| r.id()).collect(),
        red_alpha,
        red_beta,
        blue_order,
        blue_alpha_sorted,
        blue_beta,
        below_alpha,
        below_beta,
        counts,
        prefix,
        total,
    })
}

impl RedBlueCounter {
    pub fn slab(&self) -> (f64, f64) {
        (self.alpha, self.beta)
    }

    /// Total number of crossings `κ` in the slab.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Crossing count of each red, in input order.
    pub fn per_red(&self) -> &[usize] {
        &self.counts
    }

    pub fn below_at_alpha(&self) -> &[usize] {
        &self.below_alpha
    }

    pub fn below_at_beta(&self) -> &[usize] {
        &self.below_beta
    }

    /// Blues (by input index) crossing red `r`, ordered by value at `alpha`.
    pub fn crossing_blues(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let rb = self.red_beta[r];
        self.blue_order[..self.below_alpha[r]]
            .iter()
            .copied()
            .filter(move |&b| self.blue_beta[b] >= rb)
    }

    /// Map a rank in `0..total()` to a `(red index, blue index)` pair.
    pub fn pair_at(&self, rank: usize) -> Option<(usize, usize)> {
        if rank >= self.total {
            return None;
        }
        let r = self.prefix.partition_point(|&p| p <= rank) - 1;
        let j = rank - self.prefix[r];
        let mut blues = self.crossing_blues(r);
        let b = blues.nth(j).or_else(|| self.crossing_blues(r).last())?;
        Some((r, b))
    }

    /// Index (into the red slice) of a red with the most crossings; ties go
    /// to the smallest id.
    pub fn max_red_index(&self) -> Option<usize> {
        (0..self.counts.len()).max_by(|&i, &j| {
            self.counts[i]
                .cmp(&self.counts[j])
                .then(self.red_ids[j].cmp(&self.red_ids[i]))
        })
    }

    /// All crossings of red `r` as `(blue index, abscissa)`.
    pub fn crossings_of<C: MonotoneCurve>(
        &self,
        r: usize,
        reds: &[C],
        blues: &[C],
    ) -> Vec<(usize, f64)> {
        self.crossing_blues(r)
            .filter_map(|b| {
                reds[r]
                    .crossing(&blues[b], self.alpha, self.beta, self.tol)
                    .map(|x| (b, x))
            })
            .collect()
    }

    #[doc(hidden)]
    pub fn red_values(&self, r: usize) -> (f64, f64) {
        (self.red_alpha[r], self.red_beta[r])
    }

    #[doc(hidden)]
    pub fn blue_alpha_sorted(&self) -> &[f64] {
        &self.blue_alpha_sorted
    }
}

/// Every crossing in the slab as `(red id, blue id, abscissa)`.
pub fn report<C: MonotoneCurve>(
    counter: &RedBlueCounter,
    reds: &[C],
    blues: &[C],
) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::with_capacity(counter.total());
    for r in 0..reds.len() {
        if counter.counts[r] == 0 {
            continue;
        }
        for (b, x) in counter.crossings_of(r, reds, blues) {
            out.push((reds[r].id(), blues[b].id(), x));
        }
    }
    out
}

/// A crossing drawn uniformly from the `κ` crossings in the slab.
pub fn random_intersection<C: MonotoneCurve, G: Rng + ?Sized>(
    counter: &RedBlueCounter,
    reds: &[C],
    blues: &[C],
    rng: &mut G,
) -> Result<(usize, usize, f64)> {
    if counter.total == 0 {
        return Err(Error::EmptySlab);
    }
    let rank = rng.gen_range(0..counter.total);
    let (r, b) = counter.pair_at(rank).ok_or(Error::EmptySlab)?;
    let x = reds[r]
        .crossing(&blues[b], counter.alpha, counter.beta, counter.tol)
        // Noise-level crossings collapse onto the slab edge.
        .unwrap_or(counter.beta);
    Ok((reds[r].id(), blues[b].id(), x))
}

/// Id of a red with the most crossings (smallest id on ties).
pub fn max_red(counter: &RedBlueCounter) -> Option<usize> {
    counter.max_red_index().map(|r| counter.red_ids[r])
}
