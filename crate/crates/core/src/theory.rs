//! Closed-form regime classification for passage times of the stable process
//! out of `R_κ`, with Lévy tail `Π̄(x) = c x^{-α}`.

use std::fmt;

use serde::Serialize;

use crate::error::{param, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InstantaneousExit {
    RuledOut,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiniteExit {
    AlmostSure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanFiniteness {
    Yes,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegralTest {
    Finite,
    Infinite,
}

/// What is known about `T_κ(r)` for the stable process of index `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeReport {
    pub alpha: f64,
    pub kappa: f64,
    pub instantaneous_exit: InstantaneousExit,
    pub finite_exit: FiniteExit,
    pub mean_t_finite: MeanFiniteness,
    pub nu: Option<f64>,
}

impl fmt::Display for RegimeReport {
    /// Flat `key=value` record.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ie = match self.instantaneous_exit {
            InstantaneousExit::RuledOut => "ruled_out",
            InstantaneousExit::Undetermined => "undetermined",
        };
        let mean = match self.mean_t_finite {
            MeanFiniteness::Yes => "yes",
            MeanFiniteness::Undetermined => "undetermined",
        };
        write!(
            f,
            "alpha={} kappa={} instantaneous_exit={} finite_exit=almost_sure mean_T_finite={} nu=",
            self.alpha, self.kappa, ie, mean
        )?;
        match self.nu {
            Some(nu) => write!(f, "{nu}"),
            None => f.write_str("none"),
        }
    }
}

fn check_alpha_kappa(alpha: f64, kappa: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(param(format!("alpha = {alpha} must lie in (0, 2)")));
    }
    if !(kappa >= 0.0 && kappa.is_finite()) {
        return Err(param(format!("kappa = {kappa} must be nonnegative")));
    }
    Ok(())
}

/// `ν = 1/α - κ`, defined for `κ < 1/α`.
pub fn nu_exponent(alpha: f64, kappa: f64) -> Result<f64> {
    check_alpha_kappa(alpha, kappa)?;
    if kappa * alpha >= 1.0 {
        return Err(Error::Regime(format!(
            "requires kappa < 1/alpha (kappa = {kappa}, 1/alpha = {}); otherwise the supremum Y is infinite",
            1.0 / alpha
        )));
    }
    Ok(1.0 / alpha - kappa)
}

/// Small-time test `∫_0^1 Π̄(x^κ) dx = c ∫_0^1 x^{-κα} dx`: finite iff `κα < 1`.
pub fn integral_test_small_time(alpha: f64, kappa: f64) -> Result<IntegralTest> {
    check_alpha_kappa(alpha, kappa)?;
    Ok(if kappa * alpha < 1.0 { IntegralTest::Finite } else { IntegralTest::Infinite })
}

/// Large-time test `∫_1^∞ Π̄(x^κ) dx = c ∫_1^∞ x^{-κα} dx`: infinite iff `κα <= 1`.
pub fn integral_test_large_time(alpha: f64, kappa: f64) -> Result<IntegralTest> {
    check_alpha_kappa(alpha, kappa)?;
    Ok(if kappa * alpha <= 1.0 { IntegralTest::Infinite } else { IntegralTest::Finite })
}

pub fn classify_regime(alpha: f64, kappa: f64) -> Result<RegimeReport> {
    check_alpha_kappa(alpha, kappa)?;
    let instantaneous_exit = if kappa * alpha < 1.0 || kappa < 0.5 {
        InstantaneousExit::RuledOut
    } else {
        InstantaneousExit::Undetermined
    };
    let mean_t_finite = if kappa < 0.5 { MeanFiniteness::Yes } else { MeanFiniteness::Undetermined };
    Ok(RegimeReport {
        alpha,
        kappa,
        instantaneous_exit,
        finite_exit: FiniteExit::AlmostSure,
        mean_t_finite,
        nu: nu_exponent(alpha, kappa).ok(),
    })
}

/// Norming `r^{1/(1-κ)}` for relatively stable passage times, `0 <= κ < 1`.
pub fn relative_stability_norm(r: f64, kappa: f64) -> Result<f64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(param(format!("r = {r} must be positive")));
    }
    if !(kappa >= 0.0) {
        return Err(param(format!("kappa = {kappa} must be nonnegative")));
    }
    if kappa >= 1.0 {
        return Err(Error::Regime(format!("relative stability norming requires kappa < 1, got {kappa}")));
    }
    Ok(r.powf(1.0 / (1.0 - kappa)))
}
