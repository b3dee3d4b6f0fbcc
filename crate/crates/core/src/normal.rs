//! Standard normal density, distribution function and upper-tail quantile.
//!
//! The tail function goes through `erfc`, so relative accuracy is kept deep
//! into the tail (needed for quantiles at levels like 1e-12).

#![allow(clippy::excessive_precision)]

use crate::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Standard normal density φ(x).
pub fn pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal distribution function Φ(x).
pub fn cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Upper tail Φ̄(x) = 1 − Φ(x).
pub fn sf(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Upper-tail quantile z_α, i.e. the solution of Φ̄(z) = α.
///
/// Starts from Acklam's rational approximation (relative error ~1e-9) and
/// polishes with Newton steps on the tail function.
pub fn upper_quantile(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Range(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if alpha == 0.5 {
        return Ok(0.0);
    }
    let mut z = -acklam_inverse_cdf(alpha);
    for _ in 0..8 {
        let density = pdf(z);
        if density == 0.0 {
            break;
        }
        // Work with the smaller tail to keep relative precision.
        let step = if z >= 0.0 {
            (sf(z) - alpha) / density
        } else {
            ((1.0 - alpha) - cdf(z)) / density
        };
        z += step;
        if step.abs() <= 1e-15 * z.abs().max(1.0) {
            break;
        }
    }
    Ok(z)
}

/// Lower-tail quantile Φ⁻¹(p) by Acklam's rational approximation.
fn acklam_inverse_cdf(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 40-digit mpmath.
    const QUANTILES: [(f64, f64); 8] = [
        (0.05, 1.6448536269514727),
        (0.01, 2.3263478740408411),
        (0.3, 0.52440051270804078),
        (1e-4, 3.7190164854556806),
        (1e-8, 5.6120012441747887),
        (1e-10, 6.3613409024040562),
        (1e-12, 7.0344838253011319),
        (0.999, -3.0902323061678135),
    ];

    #[test]
    fn quantiles_match_high_precision_reference() {
        for (alpha, z) in QUANTILES {
            let got = upper_quantile(alpha).unwrap();
            assert!((got - z).abs() < 1e-9, "alpha={alpha}: {got} vs {z}");
        }
        assert_eq!(upper_quantile(0.5).unwrap(), 0.0);
    }

    #[test]
    fn tail_function_reference_values() {
        let cases = [
            (-3.0, 0.99865010196836990547),
            (0.5, 0.30853753872598689636),
            (5.0, 2.8665157187919391167e-7),
            (8.0, 6.2209605742717841235e-16),
        ];
        for (x, want) in cases {
            let got = sf(x);
            assert!(((got - want) / want).abs() < 1e-12, "sf({x}) = {got}");
        }
        assert!((cdf(0.5) - 0.69146246127401310364).abs() < 1e-15);
    }

    #[test]
    fn quantile_rejects_out_of_range() {
        for bad in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(upper_quantile(bad), Err(Error::Range(_))));
        }
    }
}
