//! Legendre transforms of cumulant generating functions and the rate
//! objectives that drive large- and moderate-deviation planning.
//!
//! - `I(a) = sup_θ {θa − ψ(θ)}` is computed by solving `ψ′(θ) = a` with a
//!   bracketed Newton iteration.
//! - `G(p₁, p₂) = min_b {p₁ I₁(b) + p₂ I₂(b)}`, minimized over `b` between the
//!   two means.
//! - `G_e(δ)` is the rate of the difference `X₂⁰ − X₁` at `δ`; for equal
//!   allocation `G_e(δ) = 2 G(½, ½)`.
//! - `Ĝ(p₁, p₂) = p₁p₂ / (2(σ₁²p₂ + σ₂²p₁))` is the variance-only analogue.

use crate::distributions::{Cgf, SystemPair};
use crate::optimize::{bisect_increasing, golden_min};
use crate::regimes::Regime;
use crate::{Error, Result};

/// Absolute tolerance on θ for the Legendre root solve.
pub const THETA_TOL: f64 = 1e-12;
/// Iteration cap for the Legendre root solve.
pub const MAX_ITERATIONS: usize = 200;
/// Doubling steps allowed while bracketing `ψ′(θ) = a`.
pub const MAX_BRACKET_STEPS: usize = 60;
/// Relative residual bound `|ψ′(θ*) − a| ≤ RESIDUAL_TOL · max(1, |a|)`.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Final bracket width for the one-dimensional minimizations.
pub const SEARCH_WIDTH: f64 = 1e-10;

/// A solved Legendre transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEvaluation {
    /// `I(a)`.
    pub value: f64,
    /// `θ*` with `ψ′(θ*) = a`.
    pub maximizer_theta: f64,
    /// `ψ″(θ*)`.
    pub curvature: f64,
}

/// Budget proportions and the rate objective at those proportions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationResult {
    pub p1: f64,
    pub p2: f64,
    /// `G(p₁, p₂)` for the large-deviation objective, `Ĝ(p₁, p₂)` for the moderate one.
    pub g_value: f64,
    /// Inner minimizer `b` of `p₁I₁(b) + p₂I₂(b)`, when the objective has one.
    pub minimizer_b: Option<f64>,
}

/// Computes `I(a) = sup_θ {θa − ψ(θ)}`.
///
/// Fails with [`Error::Range`] when `a` cannot be reached by `ψ′` inside the
/// domain (the rate is +∞), and with [`Error::Convergence`] when the solve
/// does not meet its tolerances.
pub fn legendre<C: Cgf + ?Sized>(cgf: &C, a: f64) -> Result<RateEvaluation> {
    if !a.is_finite() {
        return Err(Error::Range(format!("rate argument {a} is not finite")));
    }
    let origin = cgf.derivatives(0.0)?;
    let mean = origin.slope;
    let scale = a.abs().max(1.0);
    if a == mean {
        return Ok(RateEvaluation {
            value: 0.0,
            maximizer_theta: 0.0,
            curvature: origin.curvature,
        });
    }
    if origin.curvature == 0.0 {
        return Err(Error::Range(format!(
            "degenerate law with mean {mean}: rate at {a} is infinite"
        )));
    }

    let slope_minus_a = |theta: f64| -> Result<f64> { Ok(cgf.derivatives(theta)?.slope - a) };

    // Bracket the root of ψ′(θ) − a on the side of zero that points toward a.
    let upward = a > mean;
    let domain = cgf.domain();
    let edge = if upward { domain.upper } else { domain.lower };
    let mut inner = 0.0;
    let mut outer = None;
    for k in 0..MAX_BRACKET_STEPS {
        let t = if edge.is_finite() {
            edge * (1.0 - 0.5f64.powi(k as i32 + 1))
        } else {
            let step = 2f64.powi(k as i32);
            if upward { step } else { -step }
        };
        if !domain.contains(t) {
            break;
        }
        let r = slope_minus_a(t)?;
        let reached = if upward { r >= 0.0 } else { r <= 0.0 };
        if reached {
            outer = Some(t);
            break;
        }
        inner = t;
    }
    let outer = outer.ok_or_else(|| {
        Error::Range(format!(
            "rate at {a} is infinite: the CGF slope cannot reach it inside ({}, {})",
            domain.lower, domain.upper
        ))
    })?;
    let (mut lo, mut hi) = if upward { (inner, outer) } else { (outer, inner) };

    // Safeguarded Newton on the increasing function ψ′(θ) − a.
    let mut theta = 0.5 * (lo + hi);
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let point = cgf.derivatives(theta)?;
        let r = point.slope - a;
        if r == 0.0 {
            converged = true;
            break;
        }
        if r < 0.0 {
            lo = theta;
        } else {
            hi = theta;
        }
        let newton = theta - r / point.curvature;
        let next = if point.curvature > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - theta).abs();
        theta = next;
        if step <= THETA_TOL || hi - lo <= THETA_TOL {
            converged = true;
            break;
        }
    }

    let point = cgf.derivatives(theta)?;
    let residual = (point.slope - a).abs();
    if !converged || residual > RESIDUAL_TOL * scale {
        return Err(Error::Convergence {
            what: format!("Legendre solve at a = {a} (residual {residual:e})"),
            iterations: MAX_ITERATIONS,
        });
    }
    Ok(RateEvaluation {
        value: (theta * a - point.value).max(0.0),
        maximizer_theta: theta,
        curvature: point.curvature,
    })
}

fn check_proportions(p1: f64, p2: f64) -> Result<()> {
    if !(p1 > 0.0 && p2 > 0.0 && (p1 + p2 - 1.0).abs() <= 1e-12) {
        return Err(Error::InvalidParameter(format!(
            "allocation ({p1}, {p2}) must be positive and sum to 1"
        )));
    }
    Ok(())
}

/// `G(p₁, p₂) = min_b {p₁I₁(b) + p₂I₂(b)}` over `b ∈ [μ₁ − δ, μ₁]`.
///
/// When one marginal is degenerate its rate is finite only at its own mean,
/// so the minimum is pinned there.
pub fn g_allocation(pair: &SystemPair, p1: f64, p2: f64) -> Result<AllocationResult> {
    check_proportions(p1, p2)?;
    let (d1, d2) = (pair.dist1(), pair.dist2());
    let (mu1, mu2) = (pair.mu1(), pair.mu2());
    let (v1, v2) = (pair.variance1(), pair.variance2());

    let pinned = |b: f64, g: f64| AllocationResult {
        p1,
        p2,
        g_value: g,
        minimizer_b: Some(b),
    };
    if v1 == 0.0 && v2 == 0.0 {
        return Err(Error::Range(
            "both systems are degenerate: the allocation rate is infinite".into(),
        ));
    }
    if v1 == 0.0 {
        return Ok(pinned(mu1, p2 * legendre(d2, mu1)?.value));
    }
    if v2 == 0.0 {
        return Ok(pinned(mu2, p1 * legendre(d1, mu2)?.value));
    }

    let objective = |b: f64| -> Result<f64> { Ok(p1 * legendre(d1, b)?.value + p2 * legendre(d2, b)?.value) };
    // I′(b) = θ*(b), so the objective's derivative is p₁θ₁(b) + p₂θ₂(b).
    let derivative = |b: f64| -> Result<f64> {
        Ok(p1 * legendre(d1, b)?.maximizer_theta + p2 * legendre(d2, b)?.maximizer_theta)
    };
    let coarse = golden_min(objective, mu2, mu1, 1e-4 * (mu1 - mu2))?;
    let b = if derivative(coarse.lo)? <= 0.0 && derivative(coarse.hi)? >= 0.0 {
        bisect_increasing(derivative, coarse.lo, coarse.hi, SEARCH_WIDTH.min(1e-12 * mu1.abs().max(1.0)))?
    } else {
        golden_min(objective, coarse.lo, coarse.hi, SEARCH_WIDTH)?.x
    };
    Ok(pinned(b, objective(b)?))
}

/// `G_e` at an arbitrary gap for the pair's difference law `X₂⁰ − X₁`.
pub fn g_e_at(pair: &SystemPair, delta: f64) -> Result<RateEvaluation> {
    legendre(&pair.diff_cgf(), delta)
}

/// `G_e(δ) = sup_θ {θδ − ψ(θ)}` for the difference `X₂⁰ − X₁`, with `θ(δ)`
/// and `ψ″(θ(δ))`.
pub fn g_e(pair: &SystemPair) -> Result<RateEvaluation> {
    g_e_at(pair, pair.delta())
}

/// `Ĝ(p₁, p₂) = p₁p₂ / (2(σ₁²p₂ + σ₂²p₁))` from standard deviations.
pub fn g_hat(sigma1: f64, sigma2: f64, p1: f64, p2: f64) -> Result<f64> {
    check_proportions(p1, p2)?;
    let (v1, v2) = (sigma1 * sigma1, sigma2 * sigma2);
    if v1 + v2 <= 0.0 {
        return Err(Error::Degenerate("both variances are zero".into()));
    }
    Ok(p1 * p2 / (2.0 * (v1 * p2 + v2 * p1)))
}

/// Cost-minimizing budget split.
///
/// - LD: maximizes `G(p₁, 1 − p₁)` over `p₁ ∈ (0, 1)` by golden-section search.
/// - MD: `p_i = σ_i / (σ₁ + σ₂)`.
pub fn optimal_allocation(pair: &SystemPair, regime: Regime) -> Result<AllocationResult> {
    match regime {
        Regime::Ld => {
            if pair.has_degenerate_marginal() {
                return Err(Error::Degenerate(
                    "optimal LD allocation needs both systems non-degenerate".into(),
                ));
            }
            let edge = 1e-6;
            let best = golden_min(
                |p1| Ok(-g_allocation(pair, p1, 1.0 - p1)?.g_value),
                edge,
                1.0 - edge,
                SEARCH_WIDTH,
            )?;
            g_allocation(pair, best.x, 1.0 - best.x)
        }
        Regime::Md => {
            let (s1, s2) = (pair.sigma1(), pair.sigma2());
            if s1 == 0.0 || s2 == 0.0 {
                return Err(Error::Degenerate(
                    "optimal MD allocation puts zero budget on a zero-variance system".into(),
                ));
            }
            let p1 = s1 / (s1 + s2);
            let p2 = s2 / (s1 + s2);
            Ok(AllocationResult {
                p1,
                p2,
                g_value: g_hat(s1, s2, p1, p2)?,
                minimizer_b: None,
            })
        }
        Regime::Clt => Err(Error::InvalidParameter(
            "optimal allocation is defined for the LD and MD objectives only".into(),
        )),
    }
}

/// Two-term expansion of `G_e` around zero at an arbitrary gap:
/// `δ²/(2s²) − κ₃δ³/(6s⁶)` with `s² = σ₁² + σ₂²` and `κ₃ = E[(X₂⁰ − X₁)³]`.
pub fn g_e_taylor_at(pair: &SystemPair, delta: f64) -> f64 {
    let m = pair.difference_moments();
    let s2 = m.variance;
    delta * delta / (2.0 * s2) - m.third_central * delta.powi(3) / (6.0 * s2.powi(3))
}

/// [`g_e_taylor_at`] at the pair's own gap.
pub fn g_e_taylor(pair: &SystemPair) -> f64 {
    g_e_taylor_at(pair, pair.delta())
}
