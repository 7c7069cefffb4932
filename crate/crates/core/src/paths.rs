//! Sample paths: Lévy flights, rescaled interpolated walks, and grid skeletons
//! of stable and stable-plus-drift processes.
//!
//! Stable skeletons are exact in law at the grid times: the increment over
//! `[t_{i-1}, t_i]` is `(t_i - t_{i-1})^{1/α} Z_i` with `Z_i` i.i.d. stable.
//! Only path functionals (suprema, exit times) see the discretization.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{PowerLawJumpParams, StableParams, StableSampler};
use crate::error::{param, Error, Result};
use crate::rng::{open01, stable_deviates};

/// Strictly increasing observation times starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    times: Vec<f64>,
}

impl TimeGrid {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 {
            return Err(param("a time grid needs at least two points"));
        }
        if times[0] != 0.0 {
            return Err(param("a time grid must start at t = 0"));
        }
        if times.iter().any(|t| !t.is_finite()) {
            return Err(param("grid times must be finite"));
        }
        if let Some(w) = times.windows(2).find(|w| w[1] <= w[0]) {
            return Err(param(format!("grid times must increase strictly ({} then {})", w[0], w[1])));
        }
        Ok(TimeGrid { times })
    }

    /// `{0, 1, ..., n}`, the index set of a walk with `n` steps.
    pub fn integer(n: usize) -> Result<Self> {
        Self::new((0..=n).map(|j| j as f64).collect())
    }

    /// `steps` equal cells on `[0, t_max]`.
    pub fn uniform(t_max: f64, steps: usize) -> Result<Self> {
        if !(t_max > 0.0) || steps == 0 {
            return Err(param("uniform grid needs t_max > 0 and at least one step"));
        }
        let mut times: Vec<f64> = (0..=steps).map(|i| t_max * i as f64 / steps as f64).collect();
        times[steps] = t_max;
        Self::new(times)
    }

    /// `t_0 = 0` and `t_i = t_max q^(m-i)` for `i = 1..=m`.
    pub fn geometric(t_max: f64, ratio: f64, points: usize) -> Result<Self> {
        if !(t_max > 0.0 && t_max.is_finite()) || !(ratio > 0.0 && ratio < 1.0) || points == 0 {
            return Err(param("geometric grid needs t_max > 0, ratio in (0, 1), points >= 1"));
        }
        let mut times = Vec::with_capacity(points + 1);
        times.push(0.0);
        times.extend((1..=points).map(|i| t_max * ratio.powi((points - i) as i32)));
        Self::new(times)
    }

    /// Geometric grid with `points` positive times from `t_min` to `t_max`.
    pub fn geometric_span(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        if !(t_min > 0.0 && t_min < t_max) || points < 2 {
            return Err(param("geometric span needs 0 < t_min < t_max and at least two points"));
        }
        let ratio = (t_min / t_max).powf(1.0 / (points - 1) as f64);
        Self::geometric(t_max, ratio, points)
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Final grid time.
    pub fn horizon(&self) -> f64 {
        *self.times.last().expect("grid is nonempty")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathModel {
    Flight,
    InterpolatedFlight,
    Stable,
    StableWithDrift,
}

/// Process values on a time grid, starting at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    times: Vec<f64>,
    values: Vec<f64>,
    model: PathModel,
}

impl Path {
    pub fn new(grid: TimeGrid, values: Vec<f64>, model: PathModel) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(param(format!(
                "path has {} values for {} grid times",
                values.len(),
                grid.len()
            )));
        }
        if values[0] != 0.0 {
            return Err(param("paths start at 0"));
        }
        Ok(Path { times: grid.times, values, model })
    }

    /// The degenerate walk `S_0 = 0` with no steps.
    pub fn origin() -> Self {
        Path { times: vec![0.0], values: vec![0.0], model: PathModel::Flight }
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn model(&self) -> PathModel {
        self.model
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Observation points `(t_i, X_{t_i})`, including the origin.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Value at `t` by linear interpolation between grid points.
    pub fn value_at(&self, t: f64) -> Option<f64> {
        let last = *self.times.last()?;
        if !(0.0..=last).contains(&t) {
            return None;
        }
        let i = self.times.partition_point(|&s| s <= t);
        if i == self.times.len() {
            return self.values.last().copied();
        }
        let (t0, t1) = (self.times[i - 1], self.times[i]);
        let (x0, x1) = (self.values[i - 1], self.values[i]);
        Some(x0 + (x1 - x0) * (t - t0) / (t1 - t0))
    }
}

/// Parameters of `X_t = b t + S_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftParams {
    drift_b: f64,
    stable: Option<StableParams>,
}

impl DriftParams {
    pub fn new(drift_b: f64, stable: StableParams) -> Result<Self> {
        if !drift_b.is_finite() {
            return Err(param("drift must be finite"));
        }
        Ok(DriftParams { drift_b, stable: Some(stable) })
    }

    /// `X_t = b t`, the zero-scale limit.
    pub fn pure_drift(drift_b: f64) -> Result<Self> {
        if !drift_b.is_finite() {
            return Err(param("drift must be finite"));
        }
        Ok(DriftParams { drift_b, stable: None })
    }

    /// Builds from raw parts; `scale = 0` gives the pure drift.
    pub fn from_parts(drift_b: f64, alpha: f64, beta: f64, scale: f64) -> Result<Self> {
        if scale == 0.0 {
            return Self::pure_drift(drift_b);
        }
        Self::new(drift_b, StableParams::new(alpha, beta, scale)?)
    }

    pub fn drift_b(&self) -> f64 {
        self.drift_b
    }

    pub fn stable(&self) -> Option<&StableParams> {
        self.stable.as_ref()
    }
}

/// Simulates stable (optionally drifted) skeletons on a fixed grid.
///
/// The per-cell factors `Δt^{1/α}` are computed once, so one simulator can be
/// shared across replications.
#[derive(Debug, Clone)]
pub struct GridSimulator {
    times: Vec<f64>,
    cell_scales: Vec<f64>,
    sampler: Option<StableSampler>,
    drift: f64,
    model: PathModel,
}

impl GridSimulator {
    pub fn stable(params: &StableParams, grid: &TimeGrid) -> Result<Self> {
        Self::build(Some(params), 0.0, grid, PathModel::Stable)
    }

    pub fn drifted(params: &DriftParams, grid: &TimeGrid) -> Result<Self> {
        Self::build(params.stable(), params.drift_b(), grid, PathModel::StableWithDrift)
    }

    fn build(stable: Option<&StableParams>, drift: f64, grid: &TimeGrid, model: PathModel) -> Result<Self> {
        let (sampler, cell_scales) = match stable {
            Some(p) => {
                let inv_alpha = 1.0 / p.alpha();
                let scales = grid.times().windows(2).map(|w| (w[1] - w[0]).powf(inv_alpha)).collect();
                (Some(StableSampler::new(p)?), scales)
            }
            None => (None, Vec::new()),
        };
        Ok(GridSimulator { times: grid.times().to_vec(), cell_scales, sampler, drift, model })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Lazily simulated points `(t_i, X_{t_i})` for `i >= 1`. Consumers that
    /// stop early (exit detection) skip the remaining draws.
    pub fn skeleton<'a, R: Rng + ?Sized>(&'a self, rng: &'a mut R) -> Skeleton<'a, R> {
        Skeleton { sim: self, rng, index: 1, stable_part: 0.0 }
    }

    pub fn simulate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Path> {
        let mut values = Vec::with_capacity(self.times.len());
        values.push(0.0);
        values.extend(self.skeleton(rng).map(|(_, x)| x));
        Path::new(TimeGrid { times: self.times.clone() }, values, self.model)
    }
}

pub struct Skeleton<'a, R: ?Sized> {
    sim: &'a GridSimulator,
    rng: &'a mut R,
    index: usize,
    stable_part: f64,
}

impl<R: Rng + ?Sized> Iterator for Skeleton<'_, R> {
    type Item = (f64, f64);

    #[inline]
    fn next(&mut self) -> Option<(f64, f64)> {
        let t = *self.sim.times.get(self.index)?;
        if let Some(sampler) = &self.sim.sampler {
            let (u, e) = stable_deviates(self.rng);
            self.stable_part += self.sim.cell_scales[self.index - 1] * sampler.sample_unchecked(u, e);
        }
        self.index += 1;
        Some((t, self.sim.drift * t + self.stable_part))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.sim.times.len() - self.index;
        (rest, Some(rest))
    }
}

/// The walk `S_0 = 0, S_j = ξ_1 + ... + ξ_j` from given jumps.
pub fn walk_from_jumps<I: IntoIterator<Item = f64>>(jumps: I) -> Result<Path> {
    let mut values = vec![0.0];
    let mut sum = 0.0;
    for xi in jumps {
        sum += xi;
        values.push(sum);
    }
    if values.len() < 2 {
        return Err(param("a walk needs at least one step"));
    }
    let grid = TimeGrid::integer(values.len() - 1)?;
    Path::new(grid, values, PathModel::Flight)
}

/// Lévy flight with `n` i.i.d. Pareto jumps.
pub fn simulate_walk<R: Rng + ?Sized>(n: usize, jump_params: &PowerLawJumpParams, rng: &mut R) -> Result<Path> {
    if n == 0 {
        return Err(param("a walk needs n >= 1 steps"));
    }
    walk_from_jumps((0..n).map(|_| {
        let u_mag = open01(rng);
        let u_sign = open01(rng);
        jump_params.jump(u_mag, u_sign)
    }))
}

/// The interpolated walk `S_n(t) / n^{1/α}` on `{0, 1/n, ..., 1}`.
pub fn rescale_walk(path: &Path, alpha: f64) -> Result<Path> {
    if path.model() != PathModel::Flight {
        return Err(Error::Structural(format!("rescale_walk expects a flight, got {:?}", path.model())));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(param(format!("alpha = {alpha} must lie in (0, 2)")));
    }
    let n = path.len() - 1;
    if n == 0 {
        return Err(Error::Structural("cannot rescale a walk with no steps".into()));
    }
    let norm = (n as f64).powf(1.0 / alpha);
    let times: Vec<f64> = (0..=n).map(|j| j as f64 / n as f64).collect();
    let values = path.values().iter().map(|s| s / norm).collect();
    Path::new(TimeGrid::new(times)?, values, PathModel::InterpolatedFlight)
}

/// Stable process observed on `grid`.
pub fn simulate_stable_path<R: Rng + ?Sized>(params: &StableParams, grid: &TimeGrid, rng: &mut R) -> Result<Path> {
    GridSimulator::stable(params, grid)?.simulate(rng)
}

/// `b t + S_t` observed on `grid`.
pub fn simulate_drifted_path<R: Rng + ?Sized>(params: &DriftParams, grid: &TimeGrid, rng: &mut R) -> Result<Path> {
    GridSimulator::drifted(params, grid)?.simulate(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::{ks_distance, EmpiricalDistribution};
    use crate::rng::replication_stream;

    fn ks(a: Vec<f64>, b: Vec<f64>) -> f64 {
        ks_distance(&EmpiricalDistribution::new(a).unwrap(), &EmpiricalDistribution::new(b).unwrap()).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(vec![0.0]).is_err());
        assert!(TimeGrid::new(vec![0.1, 1.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, 1.0, 1.0]).is_err());
        assert!(TimeGrid::new(vec![0.0, f64::INFINITY]).is_err());
        let g = TimeGrid::geometric(8.0, 0.5, 4).unwrap();
        assert_eq!(g.times(), &[0.0, 1.0, 2.0, 4.0, 8.0]);
        let g = TimeGrid::geometric_span(1e-3, 1.0, 4).unwrap();
        assert!((g.times()[1] - 1e-3).abs() < 1e-15);
        assert_eq!(g.horizon(), 1.0);
        assert_eq!(TimeGrid::uniform(2.0, 4).unwrap().times(), &[0.0, 0.5, 1.0, 1.5, 2.0]);
    }

    #[test]
    fn walk_is_running_sum() {
        let p = walk_from_jumps([2.0, -3.0, 1.0]).unwrap();
        assert_eq!(p.values(), &[0.0, 2.0, -1.0, 0.0]);
        assert_eq!(p.times(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(p.model(), PathModel::Flight);
    }

    #[test]
    fn empty_walk_is_rejected() {
        let j = PowerLawJumpParams::new(1.5, 0.5, 1.0).unwrap();
        let mut rng = replication_stream(0, 0, 0);
        assert!(simulate_walk(0, &j, &mut rng).is_err());
        let origin = Path::origin();
        assert_eq!(origin.values(), &[0.0]);
    }

    #[test]
    fn rescaled_walk_divides_by_norming() {
        let p = walk_from_jumps([2.0, -3.0, 1.0]).unwrap();
        let r = rescale_walk(&p, 1.0).unwrap();
        let expect = [0.0, 2.0 / 3.0, -1.0 / 3.0, 0.0];
        for (a, b) in r.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!((r.times()[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.times()[3], 1.0);
        assert_eq!(r.model(), PathModel::InterpolatedFlight);
        // Joining the dots.
        assert!((r.value_at(1.0 / 6.0).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!(rescale_walk(&r, 1.0).is_err());
        assert!(rescale_walk(&p, 2.0).is_err());
    }

    #[test]
    fn rescaled_endpoint_identity() {
        let j = PowerLawJumpParams::new(1.5, 0.5, 1.0).unwrap();
        let mut rng = replication_stream(4, 0, 0);
        let walk = simulate_walk(50, &j, &mut rng).unwrap();
        let r = rescale_walk(&walk, 1.5).unwrap();
        let end = walk.values()[50] / 50f64.powf(1.0 / 1.5);
        assert_eq!(*r.values().last().unwrap(), end);
        for (a, b) in walk.values().iter().zip(r.values()) {
            assert_eq!(a.signum(), b.signum());
            assert_eq!(*a == 0.0, *b == 0.0);
        }
    }

    #[test]
    fn symmetric_walk_is_positive_half_the_time() {
        let j = PowerLawJumpParams::new(1.5, 0.5, 1.0).unwrap();
        let reps = 2000;
        let pos = (0..reps)
            .filter(|&rep| {
                let mut rng = replication_stream(8, 0, rep);
                *simulate_walk(10_000, &j, &mut rng).unwrap().values().last().unwrap() > 0.0
            })
            .count();
        let frac = pos as f64 / reps as f64;
        // 0.5 ± 0.02 is ~1.8 binomial sd at 2000 reps; use 3 sd here.
        assert!((frac - 0.5).abs() < 0.034, "{frac}");
    }

    #[test]
    fn rescaled_endpoints_approach_the_stable_law() {
        // Pareto(1.5) jumps with P(|ξ| > x) = x^-1.5 sit in the domain of
        // attraction of the symmetric stable law whose Lévy tail is x^-1.5,
        // i.e. scale σ with σ^α (1-α) / (Γ(2-α) cos(πα/2)) = 1. For α = 1.5,
        // Γ(1/2) = √π gives σ^1.5 = √(2π).
        let alpha = 1.5;
        let sigma = (2.0 * std::f64::consts::PI).sqrt().powf(1.0 / alpha);
        let target = StableParams::new(alpha, 0.0, sigma).unwrap();
        let sampler = StableSampler::new(&target).unwrap();
        let reps = 10_000u64;
        let direct: Vec<f64> = (0..reps)
            .map(|rep| {
                let (u, e) = stable_deviates(&mut replication_stream(21, 9, rep));
                sampler.sample_unchecked(u, e)
            })
            .collect();
        let j = PowerLawJumpParams::new(alpha, 0.5, 1.0).unwrap();
        let endpoints = |n: usize, family: u64| -> Vec<f64> {
            (0..reps)
                .map(|rep| {
                    let mut rng = replication_stream(21, family, rep);
                    let w = simulate_walk(n, &j, &mut rng).unwrap();
                    *rescale_walk(&w, alpha).unwrap().values().last().unwrap()
                })
                .collect()
        };
        let d: Vec<f64> = [2, 16, 256].iter().zip(1..).map(|(&n, fam)| ks(endpoints(n, fam), direct.clone())).collect();
        assert!(d[0] > d[1] && d[1] > d[2], "{d:?}");
    }

    #[test]
    fn stable_paths_start_at_zero_and_scale() {
        let p = StableParams::symmetric(1.3).unwrap();
        let grid = TimeGrid::uniform(4.0, 8).unwrap();
        let mut rng = replication_stream(3, 0, 0);
        let path = simulate_stable_path(&p, &grid, &mut rng).unwrap();
        assert_eq!(path.values()[0], 0.0);
        assert_eq!(path.model(), PathModel::Stable);

        // S_λ / λ^{1/α} vs S_1, λ = 16.
        let n = 20_000u64;
        let lam = 16.0;
        let g_lam = TimeGrid::uniform(lam, 4).unwrap();
        let g_one = TimeGrid::uniform(1.0, 4).unwrap();
        let end = |g: &TimeGrid, fam: u64, rep: u64| {
            let mut rng = replication_stream(5, fam, rep);
            *simulate_stable_path(&p, g, &mut rng).unwrap().values().last().unwrap()
        };
        let a: Vec<f64> = (0..n).map(|r| end(&g_lam, 0, r) * lam.powf(-1.0 / 1.3)).collect();
        let b: Vec<f64> = (0..n).map(|r| end(&g_one, 1, r)).collect();
        assert!(ks(a, b) < 2.0 * 1.358 * (2.0 / n as f64).sqrt());
    }

    #[test]
    fn gaussian_mode_variance_grows_linearly() {
        let p = StableParams::new(2.0, 0.0, 1.0).unwrap();
        let grid = TimeGrid::uniform(3.0, 6).unwrap();
        let sim = GridSimulator::stable(&p, &grid).unwrap();
        let n = 100_000u64;
        let mut sum_sq = 0.0;
        for rep in 0..n {
            let mut rng = replication_stream(6, 0, rep);
            let x = sim.skeleton(&mut rng).last().unwrap().1;
            sum_sq += x * x;
        }
        let var = sum_sq / n as f64;
        assert!((var / 6.0 - 1.0).abs() < 0.05, "variance {var}");
    }

    #[test]
    fn increments_are_exchangeable() {
        // First and last of four equal cells have the same law.
        let p = StableParams::symmetric(0.9).unwrap();
        let grid = TimeGrid::uniform(4.0, 4).unwrap();
        let (mut first, mut last) = (Vec::new(), Vec::new());
        for rep in 0..20_000 {
            let mut rng = replication_stream(12, 0, rep);
            let v = simulate_stable_path(&p, &grid, &mut rng).unwrap();
            first.push(v.values()[1]);
            last.push(v.values()[4] - v.values()[3]);
        }
        assert!(ks(first, last) < 2.0 * 1.358 * (2.0 / 20_000f64).sqrt());
    }

    #[test]
    fn pure_drift_is_deterministic() {
        let d = DriftParams::from_parts(2.5, 0.6, 0.0, 0.0).unwrap();
        let grid = TimeGrid::uniform(1.0, 10).unwrap();
        let mut rng = replication_stream(0, 0, 0);
        let path = simulate_drifted_path(&d, &grid, &mut rng).unwrap();
        for (t, x) in path.points() {
            assert_eq!(x, 2.5 * t);
        }
        assert_eq!(path.model(), PathModel::StableWithDrift);
    }

    #[test]
    fn zero_drift_matches_stable_path() {
        let s = StableParams::symmetric(0.8).unwrap();
        let d = DriftParams::new(0.0, s).unwrap();
        let grid = TimeGrid::uniform(1.0, 5).unwrap();
        let a = simulate_drifted_path(&d, &grid, &mut replication_stream(1, 0, 0)).unwrap();
        let b = simulate_stable_path(&s, &grid, &mut replication_stream(1, 0, 0)).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn drift_dominates_at_small_times() {
        let d = DriftParams::new(1.0, StableParams::symmetric(0.6).unwrap()).unwrap();
        let frac_far = |t: f64| {
            let grid = TimeGrid::uniform(t, 1).unwrap();
            let sim = GridSimulator::drifted(&d, &grid).unwrap();
            (0..5000u64)
                .filter(|&rep| {
                    let mut rng = replication_stream(30, 0, rep);
                    let x = sim.skeleton(&mut rng).last().unwrap().1;
                    (x - t).abs() > t / 2.0
                })
                .count() as f64
                / 5000.0
        };
        let fr: Vec<f64> = [1e-1, 1e-3, 1e-5].iter().map(|&t| frac_far(t)).collect();
        assert!(fr[0] > fr[1] && fr[1] > fr[2], "{fr:?}");
        assert!(fr[2] < 0.02, "{fr:?}");
    }
}
