//! Exit detection from the regions `R_κ = {(t, x) : t > 0, |x| <= r t^κ}`.
//!
//! Exit tests and running suprema share one comparison, `|x| / t^κ > r`, so
//! the sandwich `{T > t} ⊆ {sup_{s<=t} |X_s|/s^κ <= r} ⊆ {T >= t}` holds
//! exactly on every grid, bit for bit. The origin `t = 0` is never tested.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::paths::{Path, PathModel};

/// The region parameters `(r, κ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    r: f64,
    kappa: f64,
}

impl Region {
    pub fn new(r: f64, kappa: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(param(format!("region half-width r = {r} must be positive")));
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(param(format!("expansion exponent kappa = {kappa} must be nonnegative")));
        }
        Ok(Region { r, kappa })
    }

    /// Rectangular strip `[-r, r]`.
    pub fn strip(r: f64) -> Result<Self> {
        Self::new(r, 0.0)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// `r t^κ`.
    pub fn boundary(&self, t: f64) -> f64 {
        self.r * t.powf(self.kappa)
    }

    /// Whether `(t, x)` lies strictly outside the region.
    #[inline]
    pub fn is_outside(&self, t: f64, x: f64) -> bool {
        normalized_abs(x, t, self.kappa) > self.r
    }
}

/// `|x| / t^κ`.
#[inline]
pub fn normalized_abs(x: f64, t: f64, kappa: f64) -> f64 {
    if kappa == 0.0 {
        x.abs()
    } else {
        x.abs() / t.powf(kappa)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Upper,
    Lower,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            other => Err(Error::Structural(format!("unknown exit side {other:?}"))),
        }
    }
}

/// Outcome of one replication. Censored records have `side = None`,
/// `overshoot = 0` and `exit_time = horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExitRecord {
    pub exit_time: f64,
    pub exit_position: f64,
    pub overshoot: f64,
    pub side: Option<Side>,
    pub censored: bool,
    pub horizon: f64,
}

impl ExitRecord {
    fn exited(t: f64, x: f64, region: &Region, horizon: f64) -> Self {
        let scale = if region.kappa == 0.0 { 1.0 } else { t.powf(region.kappa) };
        // (ratio - r) > 0 exactly when ratio > r, so the overshoot keeps its sign.
        let overshoot = (normalized_abs(x, t, region.kappa) - region.r) * scale;
        ExitRecord {
            exit_time: t,
            exit_position: x,
            overshoot,
            side: Some(if x > 0.0 { Side::Upper } else { Side::Lower }),
            censored: false,
            horizon,
        }
    }

    fn censored(horizon: f64, last_position: f64) -> Self {
        ExitRecord {
            exit_time: horizon,
            exit_position: last_position,
            overshoot: 0.0,
            side: None,
            censored: true,
            horizon,
        }
    }

    /// Checks the record's internal invariants against `region`.
    pub fn is_consistent(&self, region: &Region) -> bool {
        if self.censored {
            self.exit_time == self.horizon
                && self.side.is_none()
                && !region.is_outside(self.exit_time, self.exit_position)
        } else {
            self.overshoot > 0.0
                && self.exit_time > 0.0
                && self.exit_time <= self.horizon
                && region.is_outside(self.exit_time, self.exit_position)
                && self.side == Some(if self.exit_position > 0.0 { Side::Upper } else { Side::Lower })
        }
    }
}

/// First point `(t_i, x_i)` with `t_i > 0` outside `region`; censored at
/// `horizon`, the final observation time of the stream, otherwise.
pub fn first_exit_points<I>(points: I, region: &Region, horizon: f64) -> Result<ExitRecord>
where
    I: IntoIterator<Item = (f64, f64)>,
{
    let mut last: Option<f64> = None;
    for (t, x) in points {
        if t <= 0.0 {
            continue;
        }
        if region.is_outside(t, x) {
            return Ok(ExitRecord::exited(t, x, region, horizon));
        }
        last = Some(x);
    }
    match last {
        Some(x) => Ok(ExitRecord::censored(horizon, x)),
        None => Err(Error::Structural("no observation at a positive time".into())),
    }
}

/// Discrete passage time `min{n >= 1 : |S_n| > r n^κ}` of a walk.
pub fn first_exit_walk(path: &Path, region: &Region) -> Result<ExitRecord> {
    if path.model() != PathModel::Flight {
        return Err(Error::Structural(format!("first_exit_walk expects a flight, got {:?}", path.model())));
    }
    if path.len() < 2 {
        return Err(Error::Structural("walk has no steps".into()));
    }
    let horizon = (path.len() - 1) as f64;
    first_exit_points(path.points(), region, horizon)
}

/// Grid passage time: least grid time `t_i > 0` with `|X_{t_i}| > r t_i^κ`.
///
/// Excursions between grid points are invisible, so the estimate never
/// undercuts the passage time of the observed skeleton.
pub fn first_exit_grid(path: &Path, region: &Region) -> Result<ExitRecord> {
    let horizon = *path.times().last().ok_or_else(|| Error::Structural("empty path".into()))?;
    first_exit_points(path.points(), region, horizon)
}

/// `sup_{0 < s <= t_i} |X_s| / s^κ` over grid times, one entry per positive
/// grid time.
pub fn running_sup(path: &Path, kappa: f64) -> Result<Vec<f64>> {
    if !(kappa >= 0.0) {
        return Err(param(format!("kappa = {kappa} must be nonnegative")));
    }
    let sups: Vec<f64> = path
        .points()
        .filter(|&(t, _)| t > 0.0)
        .scan(f64::NEG_INFINITY, |acc, (t, x)| {
            *acc = acc.max(normalized_abs(x, t, kappa));
            Some(*acc)
        })
        .collect();
    if sups.is_empty() {
        return Err(Error::Structural("running sup needs a positive time point".into()));
    }
    Ok(sups)
}

/// Final value of the running supremum over a stream of points.
pub fn sup_normalized<I: IntoIterator<Item = (f64, f64)>>(points: I, kappa: f64) -> f64 {
    points
        .into_iter()
        .filter(|&(t, _)| t > 0.0)
        .fold(0.0, |acc: f64, (t, x)| acc.max(normalized_abs(x, t, kappa)))
}

/// One point of an empirical survival curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurvivalPoint {
    pub t: f64,
    /// Fraction of usable records with exit time `> t`; NaN if none usable.
    pub survival: f64,
    /// Records that carry information at `t`.
    pub at_risk: usize,
    /// Set when censored records had to be excluded at this `t`.
    pub flagged: bool,
}

/// `P̂(T > t)` on `t_grid`.
///
/// A censored record counts as surviving up to its horizon; beyond it the
/// record is excluded and the point is flagged.
pub fn survival_curve(records: &[ExitRecord], t_grid: &[f64]) -> Result<Vec<SurvivalPoint>> {
    if records.is_empty() {
        return Err(Error::Structural("survival curve of an empty record set".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(param("survival grid must increase strictly"));
    }
    Ok(t_grid
        .iter()
        .map(|&t| {
            let mut survivors = 0usize;
            let mut usable = 0usize;
            let mut excluded = 0usize;
            for rec in records {
                if rec.censored && t > rec.horizon {
                    excluded += 1;
                    continue;
                }
                usable += 1;
                if rec.censored || rec.exit_time > t {
                    survivors += 1;
                }
            }
            let survival = if usable == 0 { f64::NAN } else { survivors as f64 / usable as f64 };
            SurvivalPoint { t, survival, at_risk: usable, flagged: excluded > 0 }
        })
        .collect())
}
