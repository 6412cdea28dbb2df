use super::pearson::pearson_r;
use super::{check_pairs, t_test_p_value, CorrelationMethod, CorrelationResult, Method};
use crate::error::Result;

pub struct Spearman;

/// 1-based ranks; tied values share the mean of the positions they occupy.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].partial_cmp(&x[b]).expect("finite input"));
    let mut ranks = vec![0.0; x.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && x[idx[j]] == x[idx[i]] {
            j += 1;
        }
        // positions i+1 ..= j
        let avg = (i + 1 + j) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    check_pairs(x, y)?;
    let rho = pearson_r(&average_ranks(x), &average_ranks(y))?.clamp(-1.0, 1.0);
    Ok(CorrelationResult::new(
        Method::Spearman,
        rho,
        t_test_p_value(rho, x.len()),
        x.len(),
    ))
}

impl CorrelationMethod for Spearman {
    fn method(&self) -> Method {
        Method::Spearman
    }

    fn correlate(&self, x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
        spearman(x, y)
    }
}
