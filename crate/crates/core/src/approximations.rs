//! Pre-limit approximations of the probability of incorrect selection (PIS)
//! under equal allocation, and numerical checks of the links between regimes.
//!
//! - Edgeworth: `PIS − α ≈ (φ(z)/z)·{S(z²−1)δ/(6s) + [(K−3)(z²−3)/(24s²) + S²(z⁴−10z²+15)/(72s²)]δ²}`
//!   at the CLT-equal size, with `s² = σ₁² + σ₂²`, `S` and `K` the skewness
//!   and kurtosis of `X₂⁰ − X₁`.
//! - Chernoff: `PIS ≤ exp(−n·G_e(δ))`, equal to α at the unrounded LD-equal size.
//! - Bahadur-Rao: `PIS ≈ α/√log(1/α) · √G_e / (√(2πψ″(θ))·θ)` at the LD-equal size.
//!
//! Both refinements assume a non-lattice difference; the result carries a
//! validity flag instead of failing so the value can still be displayed.

use crate::distributions::SystemPair;
use crate::normal;
use crate::rate_functions::{g_e, g_e_at, g_e_taylor_at};
use crate::{Error, Result};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ApproximationMethod {
    EdgeworthClt,
    ChernoffBound,
    BahadurRao,
}

impl fmt::Display for ApproximationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApproximationMethod::EdgeworthClt => "Edgeworth (CLT)",
            ApproximationMethod::ChernoffBound => "Chernoff bound (LD)",
            ApproximationMethod::BahadurRao => "Bahadur-Rao (LD)",
        })
    }
}

/// Why an approximation should not be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invalidity {
    /// `X₂⁰ − X₁` is lattice.
    Lattice,
    /// `X₂⁰ − X₁` has zero variance.
    Degenerate,
}

impl fmt::Display for Invalidity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invalidity::Lattice => "lattice",
            Invalidity::Degenerate => "degenerate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PisApproximation {
    pub method: ApproximationMethod,
    /// Approximate PIS, clamped to `[0, 1]`.
    pub value: f64,
    /// `None` when the approximation's assumptions hold.
    pub invalid: Option<Invalidity>,
}

impl PisApproximation {
    pub fn is_valid(&self) -> bool {
        self.invalid.is_none()
    }
}

fn check_alpha_half(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 0.5 {
        Ok(())
    } else {
        Err(Error::Range(format!("alpha = {alpha} must lie in (0, 0.5)")))
    }
}

fn lattice_flag(pair: &SystemPair) -> Option<Invalidity> {
    if pair.total_variance() == 0.0 {
        Some(Invalidity::Degenerate)
    } else if pair.difference_is_lattice() {
        Some(Invalidity::Lattice)
    } else {
        None
    }
}

/// `z_α² / (2 log(1/α))`, which tends to 1 as α → 0.
pub fn lemma1_ratio(alpha: f64) -> Result<f64> {
    check_alpha_half(alpha)?;
    let z = normal::upper_quantile(alpha)?;
    Ok(z * z / (2.0 * (1.0 / alpha).ln()))
}

/// `φ(z_α)/z_α`, which exceeds α and is asymptotic to it as α → 0.
pub fn phi_over_z(alpha: f64) -> Result<f64> {
    check_alpha_half(alpha)?;
    let z = normal::upper_quantile(alpha)?;
    Ok(normal::pdf(z) / z)
}

/// First-order (δ) and second-order (δ²) Edgeworth corrections, before
/// multiplication by `φ(z)/z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeworthTerms {
    pub skewness: f64,
    pub kurtosis: f64,
    pub first_order: f64,
    pub second_order: f64,
    pub phi_over_z: f64,
}

impl EdgeworthTerms {
    pub fn correction(&self) -> f64 {
        self.phi_over_z * (self.first_order + self.second_order)
    }
}

pub fn edgeworth_terms(pair: &SystemPair, alpha: f64) -> Result<EdgeworthTerms> {
    check_alpha_half(alpha)?;
    let m = pair.difference_moments();
    let s2 = m.variance;
    if s2 == 0.0 {
        return Err(Error::Degenerate("difference has zero variance".into()));
    }
    let z = normal::upper_quantile(alpha)?;
    let z2 = z * z;
    let delta = pair.delta();
    let (skew, kurt) = (m.skewness, m.kurtosis);
    let first_order = skew * (z2 - 1.0) / (6.0 * s2.sqrt()) * delta;
    let second_order = ((kurt - 3.0) * (z2 - 3.0) / (24.0 * s2)
        + skew * skew * (z2 * z2 - 10.0 * z2 + 15.0) / (72.0 * s2))
        * delta
        * delta;
    Ok(EdgeworthTerms {
        skewness: skew,
        kurtosis: kurt,
        first_order,
        second_order,
        phi_over_z: normal::pdf(z) / z,
    })
}

/// Edgeworth prediction of the PIS at the CLT-equal sample size.
pub fn edgeworth_pis(pair: &SystemPair, alpha: f64) -> Result<PisApproximation> {
    check_alpha_half(alpha)?;
    let invalid = lattice_flag(pair);
    if invalid == Some(Invalidity::Degenerate) {
        return Ok(PisApproximation {
            method: ApproximationMethod::EdgeworthClt,
            value: alpha,
            invalid,
        });
    }
    let terms = edgeworth_terms(pair, alpha)?;
    Ok(PisApproximation {
        method: ApproximationMethod::EdgeworthClt,
        value: (alpha + terms.correction()).clamp(0.0, 1.0),
        invalid,
    })
}

/// Chernoff bound `exp(−n·G_e(δ))` for equal sample size `n`.
pub fn chernoff_bound(pair: &SystemPair, n: f64) -> Result<PisApproximation> {
    let ge = g_e(pair)?;
    Ok(PisApproximation {
        method: ApproximationMethod::ChernoffBound,
        value: (-n * ge.value).exp().min(1.0),
        invalid: None,
    })
}

/// Chernoff bound at the unrounded LD-equal size `log(1/α)/G_e(δ)`.
pub fn chernoff_pis(pair: &SystemPair, alpha: f64) -> Result<PisApproximation> {
    check_alpha_half(alpha)?;
    let ge = g_e(pair)?;
    chernoff_bound(pair, (1.0 / alpha).ln() / ge.value)
}

/// The shape factor `√G_e / (√ψ″(θ)·θ)`, which tends to `1/√2` as δ → 0.
pub fn bahadur_rao_shape(pair: &SystemPair) -> Result<f64> {
    let ge = g_e(pair)?;
    if ge.curvature <= 0.0 || ge.maximizer_theta <= 0.0 {
        return Err(Error::Degenerate("difference CGF has no curvature at θ(δ)".into()));
    }
    Ok(ge.value.sqrt() / (ge.curvature.sqrt() * ge.maximizer_theta))
}

/// Bahadur-Rao prediction of the PIS at the LD-equal sample size, with ψ″
/// taken at the tilting point θ(δ).
pub fn bahadur_rao_pis(pair: &SystemPair, alpha: f64) -> Result<PisApproximation> {
    check_alpha_half(alpha)?;
    let shape = bahadur_rao_shape(pair)?;
    let value = alpha / (1.0 / alpha).ln().sqrt() * shape / (2.0 * PI).sqrt();
    Ok(PisApproximation {
        method: ApproximationMethod::BahadurRao,
        value: value.clamp(0.0, 1.0),
        invalid: lattice_flag(pair),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Row {
    pub delta: f64,
    pub g_e: f64,
    pub taylor: f64,
    pub abs_error: f64,
}

/// Comparison of `G_e(δ)` against its two-term expansion on a grid of gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma2Report {
    pub rows: Vec<Lemma2Row>,
    /// Least-squares slope of log|error| against log δ; `None` when the errors
    /// are at rounding level (the expansion is exact) or the grid is too short.
    pub slope: Option<f64>,
}

impl Lemma2Report {
    pub fn max_abs_error(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
    }
}

/// Evaluates `G_e` and its Taylor expansion for the pair's difference law
/// `X₂⁰ − X₁` at each gap in `deltas`.
pub fn lemma2_check(pair: &SystemPair, deltas: &[f64]) -> Result<Lemma2Report> {
    let rows = deltas
        .iter()
        .map(|&d| {
            let g = g_e_at(pair, d)?.value;
            let t = g_e_taylor_at(pair, d);
            Ok(Lemma2Row {
                delta: d,
                g_e: g,
                taylor: t,
                abs_error: (g - t).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let resolvable = rows.len() >= 2 && rows.iter().all(|r| r.abs_error > 1e3 * f64::EPSILON * r.g_e);
    let slope = resolvable.then(|| {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta.ln(), r.abs_error.ln())).collect();
        least_squares_slope(&pts)
    });
    Ok(Lemma2Report { rows, slope })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
