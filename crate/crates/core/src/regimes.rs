//! Fixed-sample-size planners for the CLT, LD and MD regimes.
//!
//! | regime | optimal | equal | independent |
//! |--------|---------|-------|-------------|
//! | CLT | `z²(σ₁+σ₂)σ_i/δ²` | `z²(σ₁²+σ₂²)/δ²` | `2z²σ_i²/δ²` |
//! | LD  | `log(1/α)p_i/G(p)`, `p` maximizing `G` | `log(1/α)/G_e(δ)` | `log(1/α)/I_i(b)` |
//! | MD  | `log(1/α)p_i/(δ²Ĝ(p))`, `p_i = σ_i/(σ₁+σ₂)` | `2log(1/α)(σ₁²+σ₂²)/δ²` | `4log(1/α)σ_i²/δ²` |
//!
//! Raw sizes are rounded up: `n_i = max(2, ⌈raw_i⌉)`.

use crate::distributions::SystemPair;
use crate::normal;
use crate::rate_functions::{g_e, g_hat, legendre, optimal_allocation};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Clt,
    Ld,
    Md,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Clt => "CLT",
            Regime::Ld => "LD",
            Regime::Md => "MD",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Optimal,
    Equal,
    Independent,
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::Optimal => "optimal",
            PolicyKind::Equal => "equal",
            PolicyKind::Independent => "independent",
        })
    }
}

/// How the sampling budget is split between the two systems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AllocationPolicy {
    pub kind: PolicyKind,
    /// Anchor point `b` for the LD independent rule. Defaults to the midpoint
    /// of the two means.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_b: Option<f64>,
}

impl AllocationPolicy {
    pub const OPTIMAL: AllocationPolicy = AllocationPolicy {
        kind: PolicyKind::Optimal,
        anchor_b: None,
    };
    pub const EQUAL: AllocationPolicy = AllocationPolicy {
        kind: PolicyKind::Equal,
        anchor_b: None,
    };
    pub const INDEPENDENT: AllocationPolicy = AllocationPolicy {
        kind: PolicyKind::Independent,
        anchor_b: None,
    };

    pub fn independent_at(anchor_b: f64) -> Self {
        AllocationPolicy {
            kind: PolicyKind::Independent,
            anchor_b: Some(anchor_b),
        }
    }
}

/// Per-system sample counts and the unrounded sizes they came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePlan {
    pub n1: u64,
    pub n2: u64,
    pub regime: Regime,
    pub policy: AllocationPolicy,
    pub raw1: f64,
    pub raw2: f64,
}

impl SamplePlan {
    fn from_raw(regime: Regime, policy: AllocationPolicy, raw1: f64, raw2: f64) -> Result<Self> {
        Ok(SamplePlan {
            n1: round_size(raw1)?,
            n2: round_size(raw2)?,
            regime,
            policy,
            raw1,
            raw2,
        })
    }

    /// A plan with explicit sizes, e.g. for replaying a published experiment.
    pub fn fixed(n1: u64, n2: u64, regime: Regime, policy: AllocationPolicy) -> Self {
        SamplePlan {
            n1,
            n2,
            regime,
            policy,
            raw1: n1 as f64,
            raw2: n2 as f64,
        }
    }

    pub fn total(&self) -> u64 {
        self.n1 + self.n2
    }
}

/// `max(2, ⌈raw⌉)`.
pub fn round_size(raw: f64) -> Result<u64> {
    if !(raw.is_finite() && raw >= 0.0) || raw > 1e18 {
        return Err(Error::Range(format!("sample size {raw} is not representable")));
    }
    Ok((raw.ceil() as u64).max(2))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Range(format!("alpha = {alpha} must lie in (0, 1)")))
    }
}

/// Upper-tail standard normal quantile `z_α`.
pub fn z_quantile(alpha: f64) -> Result<f64> {
    normal::upper_quantile(alpha)
}

/// Known-variance CLT planner `n_i = z_α²σ_i²q_i/δ²`.
pub fn clt_plan(pair: &SystemPair, alpha: f64, policy: AllocationPolicy) -> Result<SamplePlan> {
    check_alpha(alpha)?;
    let z2 = z_quantile(alpha)?.powi(2);
    let d2 = pair.delta().powi(2);
    let (s1, s2) = (pair.sigma1(), pair.sigma2());
    let (v1, v2) = (pair.variance1(), pair.variance2());
    if v1 + v2 == 0.0 {
        return Err(Error::Degenerate("both variances are zero".into()));
    }
    let (raw1, raw2) = match policy.kind {
        PolicyKind::Optimal => {
            if s1 == 0.0 || s2 == 0.0 {
                return Err(Error::Degenerate(
                    "optimal CLT allocation needs both variances positive".into(),
                ));
            }
            (z2 * (s1 + s2) * s1 / d2, z2 * (s1 + s2) * s2 / d2)
        }
        PolicyKind::Equal => {
            let n = z2 * (v1 + v2) / d2;
            (n, n)
        }
        PolicyKind::Independent => (2.0 * z2 * v1 / d2, 2.0 * z2 * v2 / d2),
    };
    SamplePlan::from_raw(Regime::Clt, policy, raw1, raw2)
}

/// Large-deviation planner `ñ_i = log(1/α)p_i/G(p₁, p₂)`.
pub fn ld_plan(pair: &SystemPair, alpha: f64, policy: AllocationPolicy) -> Result<SamplePlan> {
    check_alpha(alpha)?;
    let log_inv = (1.0 / alpha).ln();
    let (raw1, raw2) = match policy.kind {
        PolicyKind::Equal => {
            let n = log_inv / g_e(pair)?.value;
            (n, n)
        }
        PolicyKind::Optimal => {
            let a = optimal_allocation(pair, Regime::Ld)?;
            (log_inv * a.p1 / a.g_value, log_inv * a.p2 / a.g_value)
        }
        PolicyKind::Independent => {
            if pair.has_degenerate_marginal() {
                return Err(Error::Degenerate(
                    "independent LD sizes need both systems non-degenerate".into(),
                ));
            }
            let b = policy.anchor_b.unwrap_or(0.5 * (pair.mu1() + pair.mu2()));
            if !(b > pair.mu2() && b < pair.mu1()) {
                return Err(Error::Range(format!(
                    "anchor b = {b} must lie strictly between the means ({}, {})",
                    pair.mu2(),
                    pair.mu1()
                )));
            }
            (
                log_inv / legendre(pair.dist1(), b)?.value,
                log_inv / legendre(pair.dist2(), b)?.value,
            )
        }
    };
    SamplePlan::from_raw(Regime::Ld, policy, raw1, raw2)
}

/// Moderate-deviation planner `n̂_i = log(1/α)p_i/(δ²Ĝ(p₁, p₂))`.
pub fn md_plan(pair: &SystemPair, alpha: f64, policy: AllocationPolicy) -> Result<SamplePlan> {
    check_alpha(alpha)?;
    let log_inv = (1.0 / alpha).ln();
    let d2 = pair.delta().powi(2);
    let (s1, s2) = (pair.sigma1(), pair.sigma2());
    let (v1, v2) = (pair.variance1(), pair.variance2());
    if v1 + v2 == 0.0 {
        return Err(Error::Degenerate("both variances are zero".into()));
    }
    let general = |p1: f64, p2: f64| -> Result<(f64, f64)> {
        let g = g_hat(s1, s2, p1, p2)?;
        Ok((log_inv * p1 / (d2 * g), log_inv * p2 / (d2 * g)))
    };
    let (raw1, raw2) = match policy.kind {
        PolicyKind::Optimal => {
            let a = optimal_allocation(pair, Regime::Md)?;
            general(a.p1, a.p2)?
        }
        PolicyKind::Equal => general(0.5, 0.5)?,
        // p_i = σ_i²/(σ₁²+σ₂²) reduces p_i/Ĝ to 4σ_i²; the reduced form also
        // covers a zero-variance system, where p_i = 0.
        PolicyKind::Independent => (4.0 * log_inv * v1 / d2, 4.0 * log_inv * v2 / d2),
    };
    SamplePlan::from_raw(Regime::Md, policy, raw1, raw2)
}

/// Dispatches to the planner for `regime`.
pub fn plan(pair: &SystemPair, alpha: f64, regime: Regime, policy: AllocationPolicy) -> Result<SamplePlan> {
    match regime {
        Regime::Clt => clt_plan(pair, alpha, policy),
        Regime::Ld => ld_plan(pair, alpha, policy),
        Regime::Md => md_plan(pair, alpha, policy),
    }
}

/// Where a fixed `(α, δ)` sits on the moderate-deviation scaling curve
/// `log(1/α)·δ^{(1−2β)/β} = L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdScaling {
    pub alpha: f64,
    pub delta: f64,
    pub beta: f64,
    pub l: f64,
}

impl MdScaling {
    /// The `α` on the same curve at another gap.
    pub fn alpha_at(&self, delta: f64) -> f64 {
        (-self.l / delta.powf((1.0 - 2.0 * self.beta) / self.beta)).exp()
    }
}

pub fn md_scaling_diag(alpha: f64, delta: f64, beta: f64) -> Result<MdScaling> {
    check_alpha(alpha)?;
    if !(beta > 1.0 / 3.0 && beta < 0.5) {
        return Err(Error::Range(format!("beta = {beta} must lie in (1/3, 1/2)")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::Range(format!("delta = {delta} must be positive")));
    }
    let l = (1.0 / alpha).ln() * delta.powf((1.0 - 2.0 * beta) / beta);
    Ok(MdScaling { alpha, delta, beta, l })
}
