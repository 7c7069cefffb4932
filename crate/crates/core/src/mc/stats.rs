//! Empirical distributions and the statistics used to check the experiments.

use serde::Serialize;

use crate::error::{param, Error, Result};

/// A sorted sample, plus the number of right-censored observations that were
/// left out of it.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
    censored: usize,
}

impl EmpiricalDistribution {
    /// Sorts `values`; `+inf` is admitted, NaN is not.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_censoring(values, 0)
    }

    pub fn with_censoring(mut values: Vec<f64>, censored: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(param("empirical distribution needs at least one value"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(param("empirical distribution cannot hold NaN"));
        }
        values.sort_by(f64::total_cmp);
        Ok(EmpiricalDistribution { values, censored })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn censored(&self) -> usize {
        self.censored
    }

    /// Left-continuous inverse of the ECDF: the `⌈p n⌉`-th order statistic.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.values.len();
        let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
        self.values[rank - 1]
    }

    /// Fraction of values `<= x`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }
}

/// Two-sample Kolmogorov–Smirnov statistic `sup_x |F_a(x) - F_b(x)|`,
/// computed exactly by a merge scan over both sorted samples.
pub fn ks_distance(a: &EmpiricalDistribution, b: &EmpiricalDistribution) -> Result<f64> {
    for d in [a, b] {
        if d.censored > 0 {
            return Err(Error::Censoring { censored: d.censored, total: d.len() + d.censored, cap: 0.0 });
        }
    }
    let (x, y) = (a.values(), b.values());
    let (n, m) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < x.len() && j < y.len() {
        let v = x[i].min(y[j]);
        while i < x.len() && x[i] == v {
            i += 1;
        }
        while j < y.len() && y[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Asymptotic two-sample KS critical value at level `level`:
/// `sqrt(-ln(level/2)/2) · sqrt((n+m)/(n m))`.
pub fn ks_critical_value(n: usize, m: usize, level: f64) -> f64 {
    let c = (-(level / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Hill estimator `k / Σ_{i=1..k} ln(x_(n-i+1) / x_(n-k))` of the tail index.
pub fn hill_estimator(sample: &EmpiricalDistribution, k: usize) -> Result<f64> {
    let n = sample.len();
    if k == 0 || k >= n {
        return Err(param(format!("Hill estimator needs 0 < k < n (k = {k}, n = {n})")));
    }
    let xs = sample.values();
    if xs[0] <= 0.0 {
        return Err(param("Hill estimator needs positive values"));
    }
    if !xs[n - 1].is_finite() {
        return Err(param("Hill estimator needs finite values"));
    }
    let threshold = xs[n - k - 1];
    let sum: f64 = xs[n - k..].iter().map(|x| (x / threshold).ln()).sum();
    if !(sum > 0.0) {
        return Err(param("Hill estimator is undefined: the top order statistics are all equal"));
    }
    Ok(k as f64 / sum)
}

/// Wilson score interval for a binomial proportion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinomialInterval {
    pub fraction: f64,
    pub lower: f64,
    pub upper: f64,
    pub half_width: f64,
}

pub fn wilson_interval(successes: usize, n: usize, z: f64) -> BinomialInterval {
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    // The endpoints are exactly 0 and 1 at the boundary counts.
    let lower = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let upper = if successes == n { 1.0 } else { (center + half).min(1.0) };
    BinomialInterval { fraction: p, lower, upper, half_width: half }
}

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;
