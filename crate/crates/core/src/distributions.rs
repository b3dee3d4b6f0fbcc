//! Sample laws of the two systems, their exact moments and cumulant
//! generating functions (CGFs).
//!
//! The comparison instance follows a location-shift construction: system 2
//! is specified through the law of `X₂^δ` directly, and the zero-gap law
//! `X₂⁰` is recovered as `X₂^δ + δ`. Its variance therefore does not depend
//! on `δ`.

use crate::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

/// Parametric sample law.
///
/// Serialized as a record tagged by `family`, e.g.
/// `{"family":"exponential","mean":1.0}` or
/// `{"family":"shifted","base":{"family":"bernoulli","success_prob":0.001},"offset":0.007}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistributionSpec {
    Normal { mean: f64, stddev: f64 },
    Exponential { mean: f64 },
    Bernoulli { success_prob: f64 },
    Constant { value: f64 },
    Shifted { base: Box<DistributionSpec>, offset: f64 },
}

/// Open interval `(lower, upper)` on which a CGF is finite. Endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgfDomain {
    pub lower: f64,
    pub upper: f64,
}

impl CgfDomain {
    pub const REAL_LINE: CgfDomain = CgfDomain {
        lower: f64::NEG_INFINITY,
        upper: f64::INFINITY,
    };

    pub fn contains(&self, theta: f64) -> bool {
        theta > self.lower && theta < self.upper
    }

    pub fn intersect(&self, other: &CgfDomain) -> CgfDomain {
        CgfDomain {
            lower: self.lower.max(other.lower),
            upper: self.upper.min(other.upper),
        }
    }

    /// Domain of `θ ↦ ψ(−θ)`.
    pub fn reflect(&self) -> CgfDomain {
        CgfDomain {
            lower: -self.upper,
            upper: -self.lower,
        }
    }

    fn check(&self, theta: f64) -> Result<()> {
        if self.contains(theta) {
            Ok(())
        } else {
            Err(Error::Domain {
                theta,
                lower: self.lower,
                upper: self.upper,
            })
        }
    }
}

/// ψ(θ) together with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgfPoint {
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
}

/// A cumulant generating function ψ(θ) = log E[exp(θX)].
pub trait Cgf {
    fn domain(&self) -> CgfDomain;

    /// ψ, ψ′ and ψ″ at `theta`. Fails with [`Error::Domain`] outside the open domain.
    fn derivatives(&self, theta: f64) -> Result<CgfPoint>;

    fn value(&self, theta: f64) -> Result<f64> {
        Ok(self.derivatives(theta)?.value)
    }
}

/// Mean, central moments, skewness and kurtosis of a law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub third_central: f64,
    pub fourth_central: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

impl MomentSummary {
    /// Builds the summary from central moments. Skewness and kurtosis are
    /// reported as 0 for a degenerate (zero-variance) law.
    pub fn from_central(mean: f64, variance: f64, third_central: f64, fourth_central: f64) -> Self {
        let (skewness, kurtosis) = if variance > 0.0 {
            (
                third_central / variance.powf(1.5),
                fourth_central / (variance * variance),
            )
        } else {
            (0.0, 0.0)
        };
        MomentSummary {
            mean,
            variance,
            third_central,
            fourth_central,
            skewness,
            kurtosis,
        }
    }

    /// Fourth cumulant μ₄ − 3σ⁴.
    pub fn fourth_cumulant(&self) -> f64 {
        self.fourth_central - 3.0 * self.variance * self.variance
    }
}

impl DistributionSpec {
    pub fn normal(mean: f64, stddev: f64) -> Result<Self> {
        Self::Normal { mean, stddev }.validated()
    }

    pub fn exponential(mean: f64) -> Result<Self> {
        Self::Exponential { mean }.validated()
    }

    pub fn bernoulli(success_prob: f64) -> Result<Self> {
        Self::Bernoulli { success_prob }.validated()
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::Constant { value }.validated()
    }

    /// The law of `X + offset` where `X` follows `self`.
    pub fn shifted(self, offset: f64) -> Result<Self> {
        Self::Shifted {
            base: Box::new(self),
            offset,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Checks parameter constraints. Deserialized specs must pass through this
    /// before use.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            Self::Normal { mean, stddev } => {
                if !mean.is_finite() || !stddev.is_finite() || *stddev < 0.0 {
                    return bad(format!("normal(mean={mean}, stddev={stddev}) needs finite mean and stddev >= 0"));
                }
            }
            Self::Exponential { mean } => {
                if !(mean.is_finite() && *mean > 0.0) {
                    return bad(format!("exponential mean {mean} must be finite and > 0"));
                }
            }
            Self::Bernoulli { success_prob } => {
                if !(0.0..=1.0).contains(success_prob) {
                    return bad(format!("bernoulli success_prob {success_prob} must lie in [0, 1]"));
                }
            }
            Self::Constant { value } => {
                if !value.is_finite() {
                    return bad(format!("constant value {value} must be finite"));
                }
            }
            Self::Shifted { base, offset } => {
                if !offset.is_finite() {
                    return bad(format!("shift offset {offset} must be finite"));
                }
                base.validate()?;
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match self {
            Self::Normal { mean, .. } | Self::Exponential { mean } => *mean,
            Self::Bernoulli { success_prob } => *success_prob,
            Self::Constant { value } => *value,
            Self::Shifted { base, offset } => base.mean() + offset,
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Self::Normal { stddev, .. } => stddev * stddev,
            Self::Exponential { mean } => mean * mean,
            Self::Bernoulli { success_prob: p } => p * (1.0 - p),
            Self::Constant { .. } => 0.0,
            Self::Shifted { base, .. } => base.variance(),
        }
    }

    /// Exact closed-form moments.
    pub fn moments(&self) -> MomentSummary {
        match self {
            Self::Normal { mean, stddev } => {
                let v = stddev * stddev;
                MomentSummary::from_central(*mean, v, 0.0, 3.0 * v * v)
            }
            Self::Exponential { mean: m } => {
                let m2 = m * m;
                MomentSummary::from_central(*m, m2, 2.0 * m2 * m, 9.0 * m2 * m2)
            }
            Self::Bernoulli { success_prob: p } => {
                let pq = p * (1.0 - p);
                MomentSummary::from_central(*p, pq, pq * (1.0 - 2.0 * p), pq * (1.0 - 3.0 * pq))
            }
            Self::Constant { value } => MomentSummary::from_central(*value, 0.0, 0.0, 0.0),
            Self::Shifted { base, offset } => {
                let b = base.moments();
                MomentSummary {
                    mean: b.mean + offset,
                    ..b
                }
            }
        }
    }

    /// True for laws supported on a lattice (all observations differ by
    /// multiples of a common span), including degenerate laws.
    pub fn is_lattice(&self) -> bool {
        match self {
            Self::Normal { stddev, .. } => *stddev == 0.0,
            Self::Exponential { .. } => false,
            Self::Bernoulli { .. } | Self::Constant { .. } => true,
            Self::Shifted { base, .. } => base.is_lattice(),
        }
    }

    /// One draw from the law.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Normal { mean, stddev } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + stddev * z
            }
            Self::Exponential { mean } => {
                let e: f64 = Exp1.sample(rng);
                mean * e
            }
            Self::Bernoulli { success_prob } => {
                if rng.random::<f64>() < *success_prob {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Constant { value } => *value,
            Self::Shifted { base, offset } => base.sample(rng) + offset,
        }
    }

    /// Sum of `n` independent draws, consuming the stream exactly as `n`
    /// successive calls to [`sample`](Self::sample) would.
    pub fn sample_sum<R: Rng + ?Sized>(&self, n: u64, rng: &mut R) -> f64 {
        let mut sum = 0.0;
        match self {
            Self::Normal { mean, stddev } => {
                for _ in 0..n {
                    let z: f64 = StandardNormal.sample(rng);
                    sum += mean + stddev * z;
                }
            }
            Self::Exponential { mean } => {
                for _ in 0..n {
                    let e: f64 = Exp1.sample(rng);
                    sum += mean * e;
                }
            }
            Self::Bernoulli { success_prob } => {
                let mut hits = 0u64;
                for _ in 0..n {
                    hits += u64::from(rng.random::<f64>() < *success_prob);
                }
                sum = hits as f64;
            }
            Self::Constant { value } => {
                for _ in 0..n {
                    sum += value;
                }
            }
            Self::Shifted { base, offset } => {
                for _ in 0..n {
                    sum += base.sample(rng) + offset;
                }
            }
        }
        sum
    }
}

impl Cgf for DistributionSpec {
    fn domain(&self) -> CgfDomain {
        match self {
            Self::Exponential { mean } => CgfDomain {
                lower: f64::NEG_INFINITY,
                upper: 1.0 / mean,
            },
            Self::Shifted { base, .. } => base.domain(),
            _ => CgfDomain::REAL_LINE,
        }
    }

    fn derivatives(&self, theta: f64) -> Result<CgfPoint> {
        self.domain().check(theta)?;
        Ok(match self {
            Self::Normal { mean, stddev } => {
                let v = stddev * stddev;
                CgfPoint {
                    value: mean * theta + 0.5 * v * theta * theta,
                    slope: mean + v * theta,
                    curvature: v,
                }
            }
            Self::Exponential { mean: m } => {
                let one_minus = 1.0 - m * theta;
                CgfPoint {
                    value: -(-m * theta).ln_1p(),
                    slope: m / one_minus,
                    curvature: (m / one_minus).powi(2),
                }
            }
            Self::Bernoulli { success_prob: p } => bernoulli_cgf(*p, theta),
            Self::Constant { value } => CgfPoint {
                value: value * theta,
                slope: *value,
                curvature: 0.0,
            },
            Self::Shifted { base, offset } => {
                let b = base.derivatives(theta)?;
                CgfPoint {
                    value: b.value + offset * theta,
                    slope: b.slope + offset,
                    curvature: b.curvature,
                }
            }
        })
    }
}

fn bernoulli_cgf(p: f64, theta: f64) -> CgfPoint {
    if p == 0.0 {
        return CgfPoint { value: 0.0, slope: 0.0, curvature: 0.0 };
    }
    if p == 1.0 {
        return CgfPoint { value: theta, slope: 1.0, curvature: 0.0 };
    }
    let q = 1.0 - p;
    let value = if theta <= 0.0 {
        (p * theta.exp_m1()).ln_1p()
    } else {
        theta + (p + q * (-theta).exp()).ln()
    };
    // s = P_θ(X = 1) under the tilted law; 1 − s computed separately to keep precision near 1.
    let s = 1.0 / (1.0 + (q / p) * (-theta).exp());
    let one_minus_s = 1.0 / (1.0 + (p / q) * theta.exp());
    CgfPoint {
        value,
        slope: s,
        curvature: s * one_minus_s,
    }
}

/// CGF of the mean-zero difference `X₂⁰ − X₁`: ψ(θ) = ψ_{X₂⁰}(θ) + ψ_{X₁}(−θ).
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceCgf {
    x2_zero: DistributionSpec,
    x1: DistributionSpec,
}

impl DifferenceCgf {
    pub fn new(x2_zero: DistributionSpec, x1: DistributionSpec) -> Self {
        DifferenceCgf { x2_zero, x1 }
    }
}

impl Cgf for DifferenceCgf {
    fn domain(&self) -> CgfDomain {
        self.x2_zero.domain().intersect(&self.x1.domain().reflect())
    }

    fn derivatives(&self, theta: f64) -> Result<CgfPoint> {
        self.domain().check(theta)?;
        let a = self.x2_zero.derivatives(theta)?;
        let b = self.x1.derivatives(-theta)?;
        Ok(CgfPoint {
            value: a.value + b.value,
            slope: a.slope - b.slope,
            curvature: a.curvature + b.curvature,
        })
    }
}

/// Comparison instance: system 1 with law `dist1`, system 2 with law
/// `dist2 = X₂^δ`, and the mean gap `δ = μ₁ − μ₂^δ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemPair {
    dist1: DistributionSpec,
    dist2: DistributionSpec,
    delta: f64,
}

impl SystemPair {
    /// Builds the pair, taking `δ` as the difference of the two means.
    pub fn new(dist1: DistributionSpec, dist2: DistributionSpec) -> Result<Self> {
        let delta = dist1.mean() - dist2.mean();
        Self::with_delta(dist1, dist2, delta)
    }

    /// Builds the pair with an explicit gap, which must agree with the
    /// difference of means to within 1e-12.
    pub fn with_delta(dist1: DistributionSpec, dist2: DistributionSpec, delta: f64) -> Result<Self> {
        dist1.validate()?;
        dist2.validate()?;
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "mean gap delta = {delta} must be > 0 (system 1 must have the larger mean)"
            )));
        }
        let gap = dist1.mean() - dist2.mean();
        if (gap - delta).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "delta = {delta} disagrees with mean(dist1) - mean(dist2) = {gap}"
            )));
        }
        Ok(SystemPair { dist1, dist2, delta })
    }

    pub fn dist1(&self) -> &DistributionSpec {
        &self.dist1
    }

    pub fn dist2(&self) -> &DistributionSpec {
        &self.dist2
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// μ₁, the common mean of `X₁` and `X₂⁰`.
    pub fn mu1(&self) -> f64 {
        self.dist1.mean()
    }

    pub fn mu2(&self) -> f64 {
        self.dist2.mean()
    }

    pub fn variance1(&self) -> f64 {
        self.dist1.variance()
    }

    pub fn variance2(&self) -> f64 {
        self.dist2.variance()
    }

    pub fn sigma1(&self) -> f64 {
        self.variance1().sqrt()
    }

    pub fn sigma2(&self) -> f64 {
        self.variance2().sqrt()
    }

    /// σ₁² + σ₂².
    pub fn total_variance(&self) -> f64 {
        self.variance1() + self.variance2()
    }

    /// Law of `X₂⁰ = X₂^δ + δ`.
    pub fn x2_zero(&self) -> DistributionSpec {
        DistributionSpec::Shifted {
            base: Box::new(self.dist2.clone()),
            offset: self.delta,
        }
    }

    /// CGF of `X₂⁰ − X₁`.
    pub fn diff_cgf(&self) -> DifferenceCgf {
        DifferenceCgf::new(self.x2_zero(), self.dist1.clone())
    }

    /// Moments of `X₂⁰ − X₁` by cumulant additivity.
    pub fn difference_moments(&self) -> MomentSummary {
        let m1 = self.dist1.moments();
        let m2 = self.dist2.moments();
        let variance = m1.variance + m2.variance;
        let third = m2.third_central - m1.third_central;
        let kappa4 = m1.fourth_cumulant() + m2.fourth_cumulant();
        MomentSummary::from_central(0.0, variance, third, kappa4 + 3.0 * variance * variance)
    }

    /// Whether `X₂⁰ − X₁` is lattice (or degenerate).
    pub fn difference_is_lattice(&self) -> bool {
        self.dist1.is_lattice() && self.dist2.is_lattice()
    }

    /// True when either marginal has zero variance.
    pub fn has_degenerate_marginal(&self) -> bool {
        self.variance1() == 0.0 || self.variance2() == 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(DistributionSpec::exponential(0.0).is_err());
        assert!(DistributionSpec::exponential(-1.0).is_err());
        assert!(DistributionSpec::bernoulli(1.2).is_err());
        assert!(DistributionSpec::bernoulli(-0.1).is_err());
        assert!(DistributionSpec::normal(0.0, -1.0).is_err());
        assert!(DistributionSpec::constant(f64::NAN).is_err());
        assert!(DistributionSpec::normal(0.0, 0.0).is_ok());
        assert!(DistributionSpec::bernoulli(0.0).is_ok());
    }

    #[test]
    fn constant_sample_is_degenerate() {
        let c = DistributionSpec::constant(0.008).unwrap();
        let mut r = rng(3);
        for _ in 0..10 {
            assert_eq!(c.sample(&mut r), 0.008);
        }
    }

    #[test]
    fn shifted_bernoulli_support() {
        let s = DistributionSpec::bernoulli(0.001).unwrap().shifted(0.007).unwrap();
        let mut r = rng(11);
        let mut ones = 0;
        for _ in 0..200_000 {
            let x = s.sample(&mut r);
            assert!(x == 0.007 || x == 1.007, "{x}");
            ones += (x > 1.0) as u32;
        }
        assert!(ones > 0);
    }

    #[test]
    fn exponential_moments_closed_form() {
        let m = DistributionSpec::exponential(2.0).unwrap().moments();
        assert_eq!(m.variance, 4.0);
        assert_eq!(m.third_central, 16.0);
        assert!((m.skewness - 2.0).abs() < 1e-15);
        assert!((m.kurtosis - 9.0).abs() < 1e-15);
        let n = DistributionSpec::normal(0.0, 1.0).unwrap().moments();
        assert_eq!((n.skewness, n.kurtosis), (0.0, 3.0));
    }

    #[test]
    fn bernoulli_moments_by_enumeration() {
        let p = 0.001;
        let m = DistributionSpec::bernoulli(p).unwrap().moments();
        // Two-point brute force.
        let outcomes = [(0.0, 1.0 - p), (1.0, p)];
        let mean: f64 = outcomes.iter().map(|(x, w)| x * w).sum();
        let central = |k: i32| -> f64 { outcomes.iter().map(|(x, w)| (x - mean).powi(k) * w).sum() };
        assert!((m.mean - mean).abs() < 1e-16);
        assert!((m.variance - central(2)).abs() < 1e-16);
        assert!((m.variance - 0.000999).abs() < 1e-15);
        assert!((m.third_central - central(3)).abs() < 1e-15);
        assert!((m.fourth_central - central(4)).abs() < 1e-15);
    }

    #[test]
    fn shifted_keeps_central_moments() {
        let base = DistributionSpec::exponential(0.7).unwrap();
        let s = base.clone().shifted(3.5).unwrap();
        let (mb, ms) = (base.moments(), s.moments());
        assert_eq!(ms.mean, mb.mean + 3.5);
        assert_eq!(ms.variance, mb.variance);
        assert_eq!(ms.third_central, mb.third_central);
        assert_eq!(ms.fourth_central, mb.fourth_central);
    }

    #[test]
    fn cgf_closed_forms() {
        let e = DistributionSpec::exponential(1.0).unwrap();
        assert!((e.value(0.5).unwrap() - 0.5f64.ln().abs()).abs() < 1e-15);
        let b = DistributionSpec::bernoulli(0.001).unwrap();
        let brute = (0.999 + 0.001 * 1f64.exp()).ln();
        assert!((b.value(1.0).unwrap() - brute).abs() < 1e-16);
        assert!((b.value(1.0).unwrap() - 0.001_716_807_271_133_175_5).abs() < 1e-15);
        let n = DistributionSpec::normal(0.3, 2.0).unwrap();
        assert!((n.value(1.5).unwrap() - (0.3 * 1.5 + 4.0 * 2.25 / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn exponential_cgf_against_quadrature() {
        // log ∫₀^∞ e^{θx} e^{-x} dx by composite Simpson on [0, 60].
        let e = DistributionSpec::exponential(1.0).unwrap();
        let theta = 0.5;
        let (a, b, n) = (0.0, 80.0, 200_000);
        let h = (b - a) / n as f64;
        let f = |x: f64| (theta * x - x).exp();
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        let integral = s * h / 3.0;
        assert!((e.value(theta).unwrap() - integral.ln()).abs() < 1e-10);
    }

    #[test]
    fn cgf_domain_errors() {
        let e = DistributionSpec::exponential(2.0).unwrap();
        assert!(matches!(e.value(0.5), Err(Error::Domain { .. })));
        assert!(matches!(e.value(0.7), Err(Error::Domain { .. })));
        assert!(e.value(0.49).is_ok());
        let shifted = e.shifted(1.0).unwrap();
        assert!(shifted.value(0.5).is_err());
    }

    #[test]
    fn cgf_derivatives_match_moments_at_zero() {
        let specs = [
            DistributionSpec::normal(1.5, 0.3).unwrap(),
            DistributionSpec::exponential(0.25).unwrap(),
            DistributionSpec::bernoulli(0.37).unwrap(),
            DistributionSpec::constant(-2.0).unwrap(),
            DistributionSpec::exponential(3.0).unwrap().shifted(-1.0).unwrap(),
        ];
        for s in specs {
            let d = s.derivatives(0.0).unwrap();
            assert!(d.value.abs() < 1e-15);
            assert!((d.slope - s.mean()).abs() < 1e-10, "{s:?}");
            assert!((d.curvature - s.variance()).abs() < 1e-10, "{s:?}");
        }
    }

    #[test]
    fn cgf_derivatives_match_finite_differences() {
        let specs = [
            DistributionSpec::exponential(0.8).unwrap(),
            DistributionSpec::bernoulli(0.2).unwrap(),
            DistributionSpec::normal(-1.0, 2.0).unwrap(),
        ];
        let h = 1e-5;
        for s in specs {
            for theta in [-0.7, 0.1, 0.6] {
                let d = s.derivatives(theta).unwrap();
                let fd1 = (s.value(theta + h).unwrap() - s.value(theta - h).unwrap()) / (2.0 * h);
                let fd2 = (s.derivatives(theta + h).unwrap().slope - s.derivatives(theta - h).unwrap().slope) / (2.0 * h);
                assert!((d.slope - fd1).abs() < 1e-8, "{s:?} at {theta}");
                assert!((d.curvature - fd2).abs() < 1e-7, "{s:?} at {theta}");
            }
        }
    }

    #[test]
    fn bernoulli_cgf_is_stable_at_large_theta() {
        let b = DistributionSpec::bernoulli(0.001).unwrap();
        let d = b.derivatives(200.0).unwrap();
        assert!((d.value - (200.0 + 0.001f64.ln())).abs() < 1e-9);
        assert!((d.slope - 1.0).abs() < 1e-15);
        assert!(d.curvature > 0.0 && d.curvature < 1e-80);
    }

    fn table1() -> SystemPair {
        SystemPair::new(
            DistributionSpec::exponential(1.0).unwrap(),
            DistributionSpec::exponential(1.0 / 1.1).unwrap(),
        )
        .unwrap()
    }

    fn table2() -> SystemPair {
        SystemPair::new(
            DistributionSpec::constant(0.008).unwrap(),
            DistributionSpec::bernoulli(0.001).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn pair_invariants() {
        let p = table1();
        assert!((p.mu1() - p.mu2() - p.delta()).abs() < 1e-12);
        assert_eq!(p.x2_zero().moments().variance, p.dist2().moments().variance);
        assert!((p.x2_zero().mean() - p.mu1()).abs() < 1e-15);
        assert!((table2().delta() - 0.007).abs() < 1e-15);
    }

    #[test]
    fn pair_rejects_wrong_order_and_bad_delta() {
        let a = DistributionSpec::exponential(1.0).unwrap();
        let b = DistributionSpec::exponential(2.0).unwrap();
        assert!(SystemPair::new(a.clone(), b.clone()).is_err());
        assert!(SystemPair::with_delta(b.clone(), a.clone(), 0.9).is_err());
        assert!(SystemPair::with_delta(b, a, 1.0).is_ok());
    }

    #[test]
    fn gaussian_difference_cgf() {
        let p = SystemPair::new(
            DistributionSpec::normal(1.0, 1.0).unwrap(),
            DistributionSpec::normal(0.8, 2.0).unwrap(),
        )
        .unwrap();
        let cgf = p.diff_cgf();
        for theta in [-2.0, -0.3, 0.0, 0.4, 3.0] {
            let want = 5.0 * theta * theta / 2.0;
            assert!((cgf.value(theta).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn difference_has_zero_mean() {
        for p in [table1(), table2()] {
            assert!(p.diff_cgf().derivatives(0.0).unwrap().slope.abs() < 1e-15);
        }
    }

    #[test]
    fn table2_difference_cgf_two_point() {
        let cgf = table2().diff_cgf();
        for theta in [-1.0f64, 0.0, 1.0] {
            let brute = (0.999 * (-0.001 * theta).exp() + 0.001 * (0.999 * theta).exp()).ln();
            assert!((cgf.value(theta).unwrap() - brute).abs() < 1e-15, "theta={theta}");
        }
    }

    #[test]
    fn difference_domain_intersection() {
        // X₂⁰ − X₁ with exponential X₁ (mean 1) and X₂ (mean 0.5): θ ∈ (−1, 2).
        let p = SystemPair::new(
            DistributionSpec::exponential(1.0).unwrap(),
            DistributionSpec::exponential(0.5).unwrap(),
        )
        .unwrap();
        let d = p.diff_cgf().domain();
        assert_eq!((d.lower, d.upper), (-1.0, 2.0));
        assert!(p.diff_cgf().value(-1.0).is_err());
        assert!(p.diff_cgf().value(1.99).is_ok());
    }

    #[test]
    fn difference_moments_by_cumulants() {
        let p = table1();
        let m = p.difference_moments();
        let mu2: f64 = 1.0 / 1.1;
        assert!((m.third_central - (2.0 * mu2.powi(3) - 2.0)).abs() < 1e-15);
        assert!((m.variance - (1.0 + mu2 * mu2)).abs() < 1e-15);
        assert!(m.kurtosis >= m.skewness * m.skewness + 1.0);
        assert!(!p.difference_is_lattice());
        assert!(table2().difference_is_lattice());
    }

    #[test]
    fn difference_third_moment_by_finite_differences() {
        // ψ‴(0) of the difference equals its third central moment.
        let p = table1();
        let cgf = p.diff_cgf();
        let h = 1e-3;
        let d2 = |t: f64| cgf.derivatives(t).unwrap().curvature;
        let third = (d2(h) - d2(-h)) / (2.0 * h);
        assert!((third - p.difference_moments().third_central).abs() < 1e-5);
    }

    #[test]
    fn sampling_is_a_function_of_the_seed() {
        let s = DistributionSpec::exponential(1.0).unwrap();
        let (mut r1, mut r2) = (rng(5), rng(5));
        let a: Vec<f64> = (0..50).map(|_| s.sample(&mut r1)).collect();
        let b: Vec<f64> = (0..50).map(|_| s.sample(&mut r2)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_sum_consumes_stream_like_sample() {
        let specs = [
            DistributionSpec::exponential(1.0).unwrap(),
            DistributionSpec::normal(0.0, 1.0).unwrap(),
            DistributionSpec::bernoulli(0.3).unwrap(),
            DistributionSpec::bernoulli(0.3).unwrap().shifted(0.5).unwrap(),
        ];
        for s in specs {
            let mut r1 = rng(9);
            let mut r2 = rng(9);
            let total = s.sample_sum(37, &mut r1);
            let manual: f64 = (0..37).map(|_| s.sample(&mut r2)).sum();
            assert!((total - manual).abs() < 1e-12);
            assert_eq!(r1.random::<u64>(), r2.random::<u64>());
        }
    }

    #[test]
    fn serde_tagged_records() {
        let s: DistributionSpec = serde_json::from_str(r#"{"family":"exponential","mean":1.0}"#).unwrap();
        assert_eq!(s, DistributionSpec::exponential(1.0).unwrap());
        let s: DistributionSpec = serde_json::from_str(
            r#"{"family":"shifted","base":{"family":"bernoulli","success_prob":0.001},"offset":0.007}"#,
        )
        .unwrap();
        assert!((s.mean() - 0.008).abs() < 1e-15);
        assert!(serde_json::from_str::<DistributionSpec>(r#"{"family":"cauchy","scale":1}"#).is_err());
    }
}
