//! Kendall tau-b in O(n log n).
//!
//! Sort pairs by (x, y), count tied groups, then merge-sort the y sequence
//! counting inversions. With `n0 = n(n-1)/2`, `n1`/`n2` the tied-pair counts
//! of x and y and `n3` the pairs tied in both,
//! `C - D = n0 - n1 - n2 + n3 - 2 * inversions`.

use std::cmp::Ordering;

use statrs::function::erf::erfc;

use super::{check_pairs, CorrelationMethod, CorrelationResult, Method};
use crate::error::{Error, Result};

pub struct Kendall;

fn cmp(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("finite input")
}

/// Sizes of runs of equal values in a sorted slice.
fn tie_groups(sorted: &[f64]) -> Vec<u64> {
    let mut groups = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > 1 {
            groups.push((j - i) as u64);
        }
        i = j;
    }
    groups
}

fn pairs(t: u64) -> u64 {
    t * (t - 1) / 2
}

/// Sort `v` ascending, returning the number of inversions removed.
fn count_inversions(v: &mut [f64]) -> u64 {
    let n = v.len();
    let mut swaps = 0u64;
    let mut width = 1;
    let (mut src, mut dst) = (v.to_vec(), v.to_vec());
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if src[i] <= src[j] {
                    dst[k] = src[i];
                    i += 1;
                } else {
                    dst[k] = src[j];
                    j += 1;
                    swaps += (mid - i) as u64;
                }
                k += 1;
            }
            dst[k..k + (mid - i)].copy_from_slice(&src[i..mid]);
            k += mid - i;
            dst[k..k + (hi - j)].copy_from_slice(&src[j..hi]);
            lo = hi;
        }
        std::mem::swap(&mut src, &mut dst);
        width *= 2;
    }
    v.copy_from_slice(&src);
    swaps
}

pub fn kendall_tau_b(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    check_pairs(x, y)?;
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp(x[a], x[b]).then(cmp(y[a], y[b])));
    let xs: Vec<f64> = order.iter().map(|&i| x[i]).collect();
    let mut ys: Vec<f64> = order.iter().map(|&i| y[i]).collect();

    let x_groups = tie_groups(&xs);
    let mut joint = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && xs[j] == xs[i] && ys[j] == ys[i] {
            j += 1;
        }
        joint += pairs((j - i) as u64);
        i = j;
    }
    let swaps = count_inversions(&mut ys);
    let y_groups = tie_groups(&ys);

    let n0 = pairs(n as u64);
    let n1: u64 = x_groups.iter().map(|&t| pairs(t)).sum();
    let n2: u64 = y_groups.iter().map(|&t| pairs(t)).sum();
    if n1 == n0 || n2 == n0 {
        return Err(Error::UndefinedCorrelation(
            "all pairs are tied in one input".into(),
        ));
    }
    let s = n0 as i128 - n1 as i128 - n2 as i128 + joint as i128 - 2 * swaps as i128;
    let s = s as f64;
    let tau = s / ((n0 - n1) as f64).sqrt() / ((n0 - n2) as f64).sqrt();

    // tie-corrected variance of S
    let nf = n as f64;
    let sum_f = |g: &[u64], f: fn(f64) -> f64| g.iter().map(|&t| f(t as f64)).sum::<f64>();
    let v0 = nf * (nf - 1.0) * (2.0 * nf + 5.0);
    let vt = sum_f(&x_groups, |t| t * (t - 1.0) * (2.0 * t + 5.0));
    let vu = sum_f(&y_groups, |t| t * (t - 1.0) * (2.0 * t + 5.0));
    let v1 = sum_f(&x_groups, |t| t * (t - 1.0)) * sum_f(&y_groups, |t| t * (t - 1.0));
    let v2 = sum_f(&x_groups, |t| t * (t - 1.0) * (t - 2.0))
        * sum_f(&y_groups, |t| t * (t - 1.0) * (t - 2.0));
    let var = (v0 - vt - vu) / 18.0
        + v1 / (2.0 * nf * (nf - 1.0))
        + v2 / (9.0 * nf * (nf - 1.0) * (nf - 2.0));
    let p = if var > 0.0 {
        erfc((s / var.sqrt()).abs() / std::f64::consts::SQRT_2)
    } else {
        1.0
    };
    Ok(CorrelationResult::new(Method::Kendall, tau, p, n))
}

impl CorrelationMethod for Kendall {
    fn method(&self) -> Method {
        Method::Kendall
    }

    fn correlate(&self, x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
        kendall_tau_b(x, y)
    }
}
