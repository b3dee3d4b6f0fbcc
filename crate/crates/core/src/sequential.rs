//! Unknown-variance sequential stopping rules.
//!
//! Joint rules sample both systems once per step and stop at the first
//! `n ≥ ⌈1/δ⌉` (and `n ≥ 2`) where
//!
//! - CLT: `z_α²(S₁²(n) + S₂²(n))/n < δ²`
//! - MD:  `2(S₁²(n) + S₂²(n))/n < δ²/log(1/α)`
//!
//! Independent rules run each system on its own:
//!
//! - CLT: `2z_α²S_i²(n)/n < δ²` from `n ≥ ⌊1/δ⌋`
//! - MD:  `4S_i²(n)/n < δ²/log(1/α)` from `n ≥ ⌈1/δ⌉`

use crate::distributions::{DistributionSpec, SystemPair};
use crate::normal;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Default hard cap on observations per system.
pub const DEFAULT_BUDGET_CAP: u64 = 1_000_000_000;

/// Running mean and sum of squared deviations (Welford's update).
///
/// The update runs on `x − x₀`, with `x₀` the first observation, so a large
/// common offset does not cost precision.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StreamingStats {
    count: u64,
    shift: f64,
    shifted_mean: f64,
    sum_sq_dev: f64,
}

impl StreamingStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        if self.count == 0 {
            self.shift = x;
        }
        self.count += 1;
        let y = x - self.shift;
        let d = y - self.shifted_mean;
        self.shifted_mean += d / self.count as f64;
        self.sum_sq_dev = (self.sum_sq_dev + d * (y - self.shifted_mean)).max(0.0);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.shift + self.shifted_mean
    }

    pub fn sum_sq_dev(&self) -> f64 {
        self.sum_sq_dev
    }

    /// Unbiased sample variance `S²`; `None` below two observations.
    pub fn variance(&self) -> Option<f64> {
        (self.count >= 2).then(|| self.sum_sq_dev / (self.count - 1) as f64)
    }
}

impl Extend<f64> for StreamingStats {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.push(x);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequentialRule {
    Clt,
    Md,
}

impl fmt::Display for SequentialRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequentialRule::Clt => "clt",
            SequentialRule::Md => "md",
        })
    }
}

impl std::str::FromStr for SequentialRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "clt" => Ok(SequentialRule::Clt),
            "md" => Ok(SequentialRule::Md),
            other => Err(Error::InvalidParameter(format!("unknown sequential rule '{other}'"))),
        }
    }
}

/// Parameters of a stopping rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequentialParams {
    rule: SequentialRule,
    alpha: f64,
    delta: f64,
    budget_cap: u64,
    z_sq: f64,
    log_inv_alpha: f64,
}

impl SequentialParams {
    pub fn new(rule: SequentialRule, alpha: f64, delta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Range(format!("alpha = {alpha} must lie in (0, 1)")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::Range(format!("delta = {delta} must be positive")));
        }
        Ok(SequentialParams {
            rule,
            alpha,
            delta,
            budget_cap: DEFAULT_BUDGET_CAP,
            z_sq: normal::upper_quantile(alpha)?.powi(2),
            log_inv_alpha: (1.0 / alpha).ln(),
        })
    }

    /// Observations per system after which the rule gives up.
    pub fn with_budget_cap(mut self, cap: u64) -> Self {
        self.budget_cap = cap;
        self
    }

    pub fn rule(&self) -> SequentialRule {
        self.rule
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn budget_cap(&self) -> u64 {
        self.budget_cap
    }

    /// First admissible `n` for the joint rule.
    pub fn joint_floor(&self) -> u64 {
        ((1.0 / self.delta).ceil() as u64).max(2)
    }

    /// First admissible `n_i` for the independent rule: `⌊1/δ⌋` for CLT,
    /// `⌈1/δ⌉` for MD, never below 2.
    pub fn independent_floor(&self) -> u64 {
        let inv = 1.0 / self.delta;
        let floor = match self.rule {
            SequentialRule::Clt => inv.floor(),
            SequentialRule::Md => inv.ceil(),
        };
        (floor as u64).max(2)
    }

    /// Joint stopping criterion at `n` with sample variances `s1_sq`, `s2_sq`.
    pub fn joint_should_stop(&self, n: u64, s1_sq: f64, s2_sq: f64) -> bool {
        let n = n as f64;
        let d2 = self.delta * self.delta;
        match self.rule {
            SequentialRule::Clt => self.z_sq * (s1_sq + s2_sq) / n < d2,
            SequentialRule::Md => 2.0 * (s1_sq + s2_sq) / n < d2 / self.log_inv_alpha,
        }
    }

    /// Independent stopping criterion at `n` with sample variance `s_sq`.
    pub fn independent_should_stop(&self, n: u64, s_sq: f64) -> bool {
        let n = n as f64;
        let d2 = self.delta * self.delta;
        match self.rule {
            SequentialRule::Clt => 2.0 * self.z_sq * s_sq / n < d2,
            SequentialRule::Md => 4.0 * s_sq / n < d2 / self.log_inv_alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    System1,
    System2,
}

/// Result of a sequential run. Joint rules have `n1 == n2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingOutcome {
    pub n1: u64,
    pub n2: u64,
    pub mean1: f64,
    pub mean2: f64,
}

impl StoppingOutcome {
    /// System 1 is picked unless its sample mean is strictly smaller.
    pub fn selected(&self) -> Selection {
        if self.mean1 >= self.mean2 {
            Selection::System1
        } else {
            Selection::System2
        }
    }
}

/// Per-system outcome of an independent rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemStop {
    pub n: u64,
    pub mean: f64,
}

/// Runs a joint rule on pairs of observations produced by `draw`.
pub fn stop_joint<F>(params: &SequentialParams, mut draw: F) -> Result<StoppingOutcome>
where
    F: FnMut() -> (f64, f64),
{
    let floor = params.joint_floor();
    let (mut s1, mut s2) = (StreamingStats::new(), StreamingStats::new());
    loop {
        let n = s1.count() + 1;
        if n > params.budget_cap {
            return Err(Error::BudgetExceeded { cap: params.budget_cap });
        }
        let (x1, x2) = draw();
        s1.push(x1);
        s2.push(x2);
        if n >= floor {
            let (v1, v2) = (s1.variance().unwrap(), s2.variance().unwrap());
            if params.joint_should_stop(n, v1, v2) {
                return Ok(StoppingOutcome {
                    n1: n,
                    n2: n,
                    mean1: s1.mean(),
                    mean2: s2.mean(),
                });
            }
        }
    }
}

/// Runs an independent rule on one system's observations.
pub fn stop_independent<F>(params: &SequentialParams, mut draw: F) -> Result<SystemStop>
where
    F: FnMut() -> f64,
{
    let floor = params.independent_floor();
    let mut s = StreamingStats::new();
    loop {
        let n = s.count() + 1;
        if n > params.budget_cap {
            return Err(Error::BudgetExceeded { cap: params.budget_cap });
        }
        s.push(draw());
        if n >= floor && params.independent_should_stop(n, s.variance().unwrap()) {
            return Ok(SystemStop { n, mean: s.mean() });
        }
    }
}

/// κ(δ) on a pair, drawing from each law with `rng`.
pub fn clt_stop_joint<R: Rng + ?Sized>(pair: &SystemPair, alpha: f64, delta: f64, rng: &mut R) -> Result<StoppingOutcome> {
    let params = SequentialParams::new(SequentialRule::Clt, alpha, delta)?;
    run_joint(&params, pair, rng)
}

/// N_k on a pair at fixed `(α, δ)`.
pub fn md_stop_joint<R: Rng + ?Sized>(pair: &SystemPair, alpha: f64, delta: f64, rng: &mut R) -> Result<StoppingOutcome> {
    let params = SequentialParams::new(SequentialRule::Md, alpha, delta)?;
    run_joint(&params, pair, rng)
}

/// κ_i^in(δ) for one system.
pub fn clt_stop_independent<R: Rng + ?Sized>(dist: &DistributionSpec, alpha: f64, delta: f64, rng: &mut R) -> Result<SystemStop> {
    let params = SequentialParams::new(SequentialRule::Clt, alpha, delta)?;
    stop_independent(&params, || dist.sample(rng))
}

/// N_i^in(k) for one system.
pub fn md_stop_independent<R: Rng + ?Sized>(dist: &DistributionSpec, alpha: f64, delta: f64, rng: &mut R) -> Result<SystemStop> {
    let params = SequentialParams::new(SequentialRule::Md, alpha, delta)?;
    stop_independent(&params, || dist.sample(rng))
}

/// Joint rule on a pair: each step draws system 1 then system 2 from `rng`.
pub fn run_joint<R: Rng + ?Sized>(params: &SequentialParams, pair: &SystemPair, rng: &mut R) -> Result<StoppingOutcome> {
    let (d1, d2) = (pair.dist1(), pair.dist2());
    stop_joint(params, || {
        let x1 = d1.sample(rng);
        (x1, d2.sample(rng))
    })
}

/// Independent rule on both systems of a pair, system 1 run to completion first.
pub fn run_independent<R: Rng + ?Sized>(params: &SequentialParams, pair: &SystemPair, rng: &mut R) -> Result<StoppingOutcome> {
    let a = stop_independent(params, || pair.dist1().sample(rng))?;
    let b = stop_independent(params, || pair.dist2().sample(rng))?;
    Ok(StoppingOutcome {
        n1: a.n,
        n2: b.n,
        mean1: a.mean,
        mean2: b.mean,
    })
}
