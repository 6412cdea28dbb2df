//! Correlation between TN and scholar indicators.
//!
//! Pearson, Spearman and Kendall tau-b are interchangeable
//! [`CorrelationMethod`]s looked up by name in a [`MethodRegistry`]. Each
//! returns a coefficient, a two-sided p-value and the significance stars
//! (`*` p < 0.1, `**` p < 0.05, `***` p < 0.01).

mod correlate;
mod kendall;
mod pearson;
mod spearman;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::function::beta::beta_reg;

use crate::error::{Error, Result};

pub use correlate::{correlate_tn, CorrelationRow, Indicator};
pub use kendall::{kendall_tau_b, Kendall};
pub use pearson::{pearson, Pearson};
pub use spearman::{average_ranks, spearman, Spearman};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pearson,
    Spearman,
    Kendall,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pearson, Method::Spearman, Method::Kendall];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pearson => "pearson",
            Method::Spearman => "spearman",
            Method::Kendall => "kendall",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown correlation method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationResult {
    pub method: Method,
    pub coefficient: f64,
    pub p_value: f64,
    pub n: usize,
    pub stars: &'static str,
}

impl CorrelationResult {
    pub(crate) fn new(method: Method, coefficient: f64, p_value: f64, n: usize) -> Self {
        let p_value = p_value.clamp(0.0, 1.0);
        CorrelationResult {
            method,
            coefficient: coefficient.clamp(-1.0, 1.0),
            p_value,
            n,
            stars: stars(p_value),
        }
    }
}

/// `***` for p < 0.01, `**` for p < 0.05, `*` for p < 0.1, else empty.
pub fn stars(p: f64) -> &'static str {
    if p < 0.01 {
        "***"
    } else if p < 0.05 {
        "**"
    } else if p < 0.1 {
        "*"
    } else {
        ""
    }
}

/// Two-sided p-value of a correlation coefficient `r` on `n` pairs via
/// `t = r sqrt((n-2)/(1-r^2))` against Student's t with `n-2` degrees of
/// freedom, evaluated through the regularized incomplete beta function.
pub fn t_test_p_value(r: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    let r2 = r * r;
    if r2 >= 1.0 {
        return 0.0;
    }
    let t2 = r2 * df / (1.0 - r2);
    beta_reg(df / 2.0, 0.5, df / (df + t2))
}

pub(crate) fn check_pairs(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(Error::Argument(format!("need at least 3 pairs, got {}", x.len())));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Argument("non-finite value in correlation input".into()));
    }
    Ok(())
}

pub trait CorrelationMethod: Send + Sync {
    fn method(&self) -> Method;

    fn correlate(&self, x: &[f64], y: &[f64]) -> Result<CorrelationResult>;

    fn name(&self) -> &'static str {
        self.method().name()
    }
}

pub struct MethodRegistry {
    entries: BTreeMap<&'static str, Box<dyn CorrelationMethod>>,
}

impl MethodRegistry {
    pub fn register(&mut self, m: Box<dyn CorrelationMethod>) {
        self.entries.insert(m.name(), m);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CorrelationMethod> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::Validation(format!("unknown correlation method {name:?}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        let mut r = MethodRegistry {
            entries: BTreeMap::new(),
        };
        r.register(Box::new(Pearson));
        r.register(Box::new(Spearman));
        r.register(Box::new(Kendall));
        r
    }
}
