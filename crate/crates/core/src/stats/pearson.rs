use super::{check_pairs, t_test_p_value, CorrelationMethod, CorrelationResult, Method};
use crate::error::{Error, Result};

pub struct Pearson;

/// Sample correlation coefficient, computed with single-pass co-moment
/// updates.
pub(crate) fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    let (mut mx, mut my) = (0.0f64, 0.0f64);
    let (mut sxx, mut syy, mut sxy) = (0.0f64, 0.0f64, 0.0f64);
    for (i, (&a, &b)) in x.iter().zip(y).enumerate() {
        let k = (i + 1) as f64;
        let dx = a - mx;
        let dy = b - my;
        mx += dx / k;
        my += dy / k;
        sxx += dx * (a - mx);
        syy += dy * (b - my);
        sxy += dx * (b - my);
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(Error::UndefinedCorrelation("input vector is constant".into()));
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

pub fn pearson(x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
    check_pairs(x, y)?;
    let r = pearson_r(x, y)?.clamp(-1.0, 1.0);
    Ok(CorrelationResult::new(Method::Pearson, r, t_test_p_value(r, x.len()), x.len()))
}

impl CorrelationMethod for Pearson {
    fn method(&self) -> Method {
        Method::Pearson
    }

    fn correlate(&self, x: &[f64], y: &[f64]) -> Result<CorrelationResult> {
        pearson(x, y)
    }
}
