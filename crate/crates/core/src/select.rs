//! Linear-expected-time order statistics over `f64` values.

use std::cmp::Ordering;

use crate::error::{Error, Result};

fn cmp_f64(a: &f64, b: &f64) -> Ordering {
    a.total_cmp(b)
}

/// Lower median (element of rank `(n - 1) / 2`). Reorders `values`.
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let k = (values.len() - 1) / 2;
    let (_, m, _) = values.select_nth_unstable_by(k, cmp_f64);
    Some(*m)
}

/// Smallest value `v` such that the total weight of `{values <= v}` is at
/// least half the total weight.
pub fn weighted_median(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.is_empty() || values.len() != weights.len() {
        return Err(Error::EmptyInput);
    }
    let total: f64 = weights.iter().sum();
    let half = 0.5 * total;
    let mut items: Vec<(f64, f64)> = values
        .iter()
        .copied()
        .zip(weights.iter().copied())
        .collect();
    // Weight of everything already discarded below the current window.
    let mut below = 0.0;
    loop {
        if items.len() == 1 {
            return Ok(items[0].0);
        }
        let k = items.len() / 2;
        let pivot = items
            .select_nth_unstable_by(k, |a, b| cmp_f64(&a.0, &b.0))
            .1
             .0;
        let (mut lt, mut eq) = (0.0, 0.0);
        for &(v, w) in &items {
            match v.total_cmp(&pivot) {
                Ordering::Less => lt += w,
                Ordering::Equal => eq += w,
                Ordering::Greater => {}
            }
        }
        if below + lt >= half && lt > 0.0 {
            items.retain(|&(v, _)| v < pivot);
        } else if below + lt + eq >= half {
            return Ok(pivot);
        } else {
            below += lt + eq;
            items.retain(|&(v, _)| v > pivot);
            if items.is_empty() {
                return Ok(pivot);
            }
        }
    }
}
