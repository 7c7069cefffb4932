//! Stable laws, power-law jumps and stable Lévy-measure tails.
//!
//! Samplers take their uniform/exponential deviates as explicit arguments,
//! so they are pure functions and unit tests can be exact. The stable law is
//! in the `S1` parametrization `S_α(scale, β, 0)`; for `α != 1` (and for the
//! symmetric Cauchy case) it is strictly stable, which is what the process
//! scaling `S_{λt} = λ^{1/α} S_t` requires.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{param, Error, Result};

/// Parameters of a stable law: index, skew and scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StableParams {
    alpha: f64,
    beta: f64,
    scale: f64,
}

impl StableParams {
    /// `alpha` in `(0, 2]` (2 is the Gaussian validation mode), `beta` in
    /// `[-1, 1]`, `scale > 0`.
    pub fn new(alpha: f64, beta: f64, scale: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(param(format!("stable index alpha = {alpha} must lie in (0, 2]")));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(param(format!("skew beta = {beta} must lie in [-1, 1]")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(param(format!("scale = {scale} must be positive")));
        }
        Ok(StableParams { alpha, beta, scale })
    }

    /// Symmetric law with unit scale.
    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self::new(alpha, 0.0, 1.0)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Exact Pareto jump law: `P(|ξ| > x) = (x / cutoff)^(-alpha)` for
/// `x >= cutoff`, `P(ξ > 0) = balance_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawJumpParams {
    alpha: f64,
    balance_c: f64,
    cutoff: f64,
}

impl PowerLawJumpParams {
    pub fn new(alpha: f64, balance_c: f64, cutoff: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(param(format!("jump tail index alpha = {alpha} must lie in (0, 2)")));
        }
        if !(0.0..=1.0).contains(&balance_c) {
            return Err(param(format!("balance c = {balance_c} must lie in [0, 1]")));
        }
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return Err(param(format!("cutoff = {cutoff} must be positive")));
        }
        Ok(PowerLawJumpParams { alpha, balance_c, cutoff })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn balance_c(&self) -> f64 {
        self.balance_c
    }

    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    /// Exact two-sided tail `P(|ξ| > x)`.
    pub fn abs_tail(&self, x: f64) -> f64 {
        if x < self.cutoff {
            1.0
        } else {
            (x / self.cutoff).powf(-self.alpha)
        }
    }

    #[inline]
    pub(crate) fn jump(&self, u_mag: f64, u_sign: f64) -> f64 {
        let magnitude = self.cutoff * u_mag.powf(-1.0 / self.alpha);
        if u_sign < self.balance_c {
            magnitude
        } else {
            -magnitude
        }
    }
}

/// Maps the balance constant `c = c+ / (c+ + c-)` to the skew `β = 2c - 1`.
pub fn balance_to_skew(balance_c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&balance_c) {
        return Err(param(format!("balance c = {balance_c} must lie in [0, 1]")));
    }
    Ok(2.0 * balance_c - 1.0)
}

/// Chambers–Mallows–Stuck sampler with the parameter-only constants hoisted.
#[derive(Debug, Clone, Copy)]
pub struct StableSampler {
    kind: SamplerKind,
    scale: f64,
}

#[derive(Debug, Clone, Copy)]
enum SamplerKind {
    Gaussian,
    Cauchy,
    General {
        alpha: f64,
        inv_alpha: f64,
        shift: f64,
        factor: f64,
        exponent: f64,
    },
}

impl StableSampler {
    /// Fails for `α = 1, β != 0`, whose norming needs logarithmic centering.
    pub fn new(params: &StableParams) -> Result<Self> {
        let StableParams { alpha, beta, scale } = *params;
        let kind = if alpha == 2.0 {
            SamplerKind::Gaussian
        } else if alpha == 1.0 {
            if beta != 0.0 {
                return Err(Error::Unsupported(format!(
                    "alpha = 1 with beta = {beta} requires logarithmic centering"
                )));
            }
            SamplerKind::Cauchy
        } else {
            let t = beta * (PI * alpha / 2.0).tan();
            SamplerKind::General {
                alpha,
                inv_alpha: 1.0 / alpha,
                shift: t.atan() / alpha,
                factor: (1.0 + t * t).powf(1.0 / (2.0 * alpha)),
                exponent: (1.0 - alpha) / alpha,
            }
        };
        Ok(StableSampler { kind, scale })
    }

    /// One draw from the uniform deviate `u` on `(-π/2, π/2)` and the
    /// exponential deviate `e > 0`. No domain checks.
    #[inline]
    pub fn sample_unchecked(&self, u: f64, e: f64) -> f64 {
        let z = match self.kind {
            SamplerKind::Gaussian => 2.0 * u.sin() * e.sqrt(),
            SamplerKind::Cauchy => u.tan(),
            SamplerKind::General { alpha, inv_alpha, shift, factor, exponent } => {
                let a = alpha * (u + shift);
                factor * a.sin() / u.cos().powf(inv_alpha) * ((u - a).cos() / e).powf(exponent)
            }
        };
        self.scale * z
    }

    pub fn sample(&self, u: f64, e: f64) -> Result<f64> {
        check_stable_deviates(u, e)?;
        Ok(self.sample_unchecked(u, e))
    }
}

fn check_stable_deviates(u: f64, e: f64) -> Result<()> {
    if !(u > -FRAC_PI_2 && u < FRAC_PI_2) {
        return Err(param(format!("uniform deviate u = {u} must lie in (-pi/2, pi/2)")));
    }
    if !(e > 0.0 && e.is_finite()) {
        return Err(param(format!("exponential deviate e = {e} must be positive")));
    }
    Ok(())
}

/// One stable draw from the deviates `(u, e)`.
///
/// For `α = 2` the result is a centred Gaussian with variance `2 scale²`.
pub fn sample_stable(params: &StableParams, u: f64, e: f64) -> Result<f64> {
    StableSampler::new(params)?.sample(u, e)
}

/// One power-law jump: magnitude `cutoff · u_mag^(-1/α)`, positive iff
/// `u_sign < balance_c`.
pub fn sample_powerlaw_jump(params: &PowerLawJumpParams, u_mag: f64, u_sign: f64) -> Result<f64> {
    if !(u_mag > 0.0 && u_mag < 1.0) || !(u_sign > 0.0 && u_sign < 1.0) {
        return Err(param(format!(
            "deviates ({u_mag}, {u_sign}) must lie in the open unit interval"
        )));
    }
    Ok(params.jump(u_mag, u_sign))
}

/// Positive, negative and total tails of a stable Lévy measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevyTail {
    pub plus: f64,
    pub minus: f64,
    pub total: f64,
}

/// `(c+ x^-α, c- x^-α, (c+ + c-) x^-α)`.
pub fn stable_levy_tail(x: f64, alpha: f64, c_plus: f64, c_minus: f64) -> Result<LevyTail> {
    if !(x > 0.0) {
        return Err(param(format!("tail argument x = {x} must be positive (singular at 0)")));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(param(format!("alpha = {alpha} must lie in (0, 2)")));
    }
    if !(c_plus >= 0.0 && c_minus >= 0.0 && c_plus + c_minus > 0.0) {
        return Err(param("tail constants must be nonnegative with positive sum"));
    }
    let power = x.powf(-alpha);
    Ok(LevyTail {
        plus: c_plus * power,
        minus: c_minus * power,
        total: (c_plus + c_minus) * power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::{ks_distance, EmpiricalDistribution};
    use crate::rng::{open01, replication_stream, stable_deviates};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn balance_maps_to_skew() {
        assert_eq!(balance_to_skew(0.5).unwrap(), 0.0);
        assert_eq!(balance_to_skew(1.0).unwrap(), 1.0);
        assert_eq!(balance_to_skew(0.25).unwrap(), -0.5);
        assert!(matches!(balance_to_skew(1.5), Err(Error::Parameter(_))));
        assert!(balance_to_skew(-0.1).is_err());
    }

    #[test]
    fn cauchy_case_matches_quantile_function() {
        let cauchy = StableParams::symmetric(1.0).unwrap();
        assert_eq!(sample_stable(&cauchy, 0.0, 1.0).unwrap(), 0.0);
        // Cauchy quantile tan(π(p - 1/2)); u = π(p - 1/2) with p = 3/4.
        let quantile = |p: f64| (PI * (p - 0.5)).tan();
        let x = sample_stable(&cauchy, FRAC_PI_4, 1.0).unwrap();
        assert!((x - 1.0).abs() < 1e-15);
        assert!((x - quantile(0.75)).abs() < 1e-15);
        // e does not enter the Cauchy transform.
        assert_eq!(sample_stable(&cauchy, 0.3, 0.1).unwrap(), sample_stable(&cauchy, 0.3, 7.0).unwrap());
    }

    #[test]
    fn skewed_cauchy_is_rejected() {
        let p = StableParams::new(1.0, 0.5, 1.0).unwrap();
        assert!(matches!(sample_stable(&p, 0.1, 1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn deviate_domain_is_checked() {
        let p = StableParams::symmetric(1.5).unwrap();
        assert!(sample_stable(&p, FRAC_PI_2, 1.0).is_err());
        assert!(sample_stable(&p, 0.0, 0.0).is_err());
        assert!(sample_stable(&p, 0.0, -1.0).is_err());
    }

    #[test]
    fn params_are_validated() {
        assert!(StableParams::new(0.0, 0.0, 1.0).is_err());
        assert!(StableParams::new(2.1, 0.0, 1.0).is_err());
        assert!(StableParams::new(1.5, 1.1, 1.0).is_err());
        assert!(StableParams::new(1.5, 0.0, 0.0).is_err());
        assert!(StableParams::new(2.0, 0.0, 1.0).is_ok());
        assert!(PowerLawJumpParams::new(2.0, 0.5, 1.0).is_err());
        assert!(PowerLawJumpParams::new(1.0, 1.2, 1.0).is_err());
        assert!(PowerLawJumpParams::new(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn gaussian_mode_has_variance_two_scale_squared() {
        let p = StableParams::new(2.0, 0.0, 1.5).unwrap();
        let sampler = StableSampler::new(&p).unwrap();
        let mut rng = replication_stream(11, 0, 0);
        let n = 100_000;
        let xs: Vec<f64> = (0..n)
            .map(|_| {
                let (u, e) = stable_deviates(&mut rng);
                sampler.sample_unchecked(u, e)
            })
            .collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!((var / (2.0 * 1.5 * 1.5) - 1.0).abs() < 0.02, "variance {var}");
    }

    fn symmetric_draws(alpha: f64, n: usize, seed: u64) -> Vec<f64> {
        let sampler = StableSampler::new(&StableParams::symmetric(alpha).unwrap()).unwrap();
        let mut rng = replication_stream(seed, 0, 0);
        (0..n)
            .map(|_| {
                let (u, e) = stable_deviates(&mut rng);
                sampler.sample_unchecked(u, e)
            })
            .collect()
    }

    #[test]
    fn symmetric_law_has_half_mass_above_zero() {
        let n = 100_000;
        let xs = symmetric_draws(1.5, n, 3);
        let frac = xs.iter().filter(|&&x| x > 0.0).count() as f64 / n as f64;
        assert!((frac - 0.5).abs() <= 3.0 / (2.0 * (n as f64).sqrt()), "P(X>0) = {frac}");
    }

    #[test]
    fn symmetric_law_matches_its_negation() {
        let n = 100_000;
        let xs = symmetric_draws(1.2, n, 5);
        // Independent draws for the negated side, so the two samples are
        // genuinely two-sample.
        let neg: Vec<f64> = symmetric_draws(1.2, n, 6).into_iter().map(|x| -x).collect();
        let ks = ks_distance(
            &EmpiricalDistribution::new(xs).unwrap(),
            &EmpiricalDistribution::new(neg).unwrap(),
        )
        .unwrap();
        let crit_1pct = 1.628 * (2.0 / n as f64).sqrt();
        assert!(ks < crit_1pct, "KS {ks} vs {crit_1pct}");
    }

    #[test]
    fn positive_skew_shifts_mass_right() {
        let p = StableParams::new(1.5, 1.0, 1.0).unwrap();
        let s = StableSampler::new(&p).unwrap();
        let mut rng = replication_stream(9, 0, 0);
        let n = 20_000;
        let big_pos = (0..n)
            .filter(|_| {
                let (u, e) = stable_deviates(&mut rng);
                s.sample_unchecked(u, e) > 10.0
            })
            .count();
        let mut rng = replication_stream(9, 0, 0);
        let big_neg = (0..n)
            .filter(|_| {
                let (u, e) = stable_deviates(&mut rng);
                s.sample_unchecked(u, e) < -10.0
            })
            .count();
        // β = 1 with α > 1 has a light left tail.
        assert!(big_pos > 100 && big_neg == 0, "pos {big_pos} neg {big_neg}");
    }

    #[test]
    fn pareto_tail_is_exact() {
        let p = PowerLawJumpParams::new(1.0, 0.5, 1.0).unwrap();
        assert_eq!(p.abs_tail(2.0), 0.5);
        assert_eq!(p.abs_tail(0.5), 1.0);
        // Magnitude cutoff·u^(-1/α): |ξ| > 2 iff u < 1/2.
        assert!(sample_powerlaw_jump(&p, 0.49, 0.1).unwrap().abs() > 2.0);
        assert!(sample_powerlaw_jump(&p, 0.51, 0.1).unwrap().abs() < 2.0);
    }

    #[test]
    fn pareto_median_inverts_the_cdf() {
        // P(|ξ| <= m) = 1 - m^-2 = 1/2 at m = √2.
        let p = PowerLawJumpParams::new(1.999_999_999, 0.5, 1.0).unwrap();
        let m = sample_powerlaw_jump(&p, 0.5, 0.2).unwrap();
        assert!((m - 2f64.sqrt()).abs() < 1e-8);
        // Exact α = 2 via the magnitude map itself.
        assert!((0.5f64.powf(-1.0 / 2.0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn one_sided_balance_gives_positive_jumps() {
        let p = PowerLawJumpParams::new(1.3, 1.0, 1.0).unwrap();
        let mut rng = replication_stream(1, 0, 0);
        for _ in 0..10_000 {
            let x = sample_powerlaw_jump(&p, open01(&mut rng), open01(&mut rng)).unwrap();
            assert!(x >= 1.0);
        }
    }

    #[test]
    fn pareto_exceedance_fraction() {
        let p = PowerLawJumpParams::new(1.5, 0.5, 1.0).unwrap();
        let mut rng = replication_stream(2, 0, 0);
        let n = 100_000;
        let hits = (0..n)
            .filter(|_| sample_powerlaw_jump(&p, open01(&mut rng), open01(&mut rng)).unwrap().abs() > 2.0)
            .count();
        let target = 2f64.powf(-1.5);
        let frac = hits as f64 / n as f64;
        let band = 4.0 * (target * (1.0 - target) / n as f64).sqrt();
        assert!((frac - target).abs() <= band, "{frac} vs {target}");
    }

    #[test]
    fn levy_tail_values() {
        let t = stable_levy_tail(1.0, 1.0, 0.5, 0.5).unwrap();
        assert_eq!((t.plus, t.minus, t.total), (0.5, 0.5, 1.0));
        let t = stable_levy_tail(2.0, 1.0, 0.5, 0.5).unwrap();
        assert_eq!((t.plus, t.minus, t.total), (0.25, 0.25, 0.5));
        assert!(stable_levy_tail(0.0, 1.0, 0.5, 0.5).is_err());
        assert!(stable_levy_tail(-1.0, 1.0, 0.5, 0.5).is_err());
        assert!(stable_levy_tail(1.0, 1.0, 0.0, 0.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn levy_tail_decreasing_and_additive(
                x in 1e-3f64..1e3, dx in 1e-3f64..10.0, alpha in 0.05f64..1.95,
                cp in 0.0f64..5.0, cm in 0.01f64..5.0,
            ) {
                let a = stable_levy_tail(x, alpha, cp, cm).unwrap();
                let b = stable_levy_tail(x + dx, alpha, cp, cm).unwrap();
                prop_assert!(b.total < a.total);
                prop_assert!((a.plus + a.minus - a.total).abs() <= 1e-12 * a.total);
            }

            #[test]
            fn samplers_are_pure(
                alpha in 0.1f64..2.0, beta in -1.0f64..1.0,
                u in -1.5f64..1.5, e in 1e-6f64..20.0, um in 1e-9f64..0.999, us in 1e-9f64..0.999,
            ) {
                prop_assume!((alpha - 1.0).abs() > 1e-9 || beta == 0.0);
                let p = StableParams::new(alpha, beta, 1.0).unwrap();
                let a = sample_stable(&p, u, e).unwrap();
                let b = sample_stable(&p, u, e).unwrap();
                prop_assert_eq!(a.to_bits(), b.to_bits());
                let j = PowerLawJumpParams::new(alpha.min(1.99), 0.5, 1.0).unwrap();
                prop_assert_eq!(
                    sample_powerlaw_jump(&j, um, us).unwrap().to_bits(),
                    sample_powerlaw_jump(&j, um, us).unwrap().to_bits()
                );
            }
        }
    }
}
