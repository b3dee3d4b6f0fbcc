//! One-dimensional search helpers shared by the rate-function solvers.

use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Bracket left after a golden-section search, with the best point seen.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GoldenBracket {
    pub lo: f64,
    pub hi: f64,
    pub x: f64,
}

/// Golden-section minimization of a unimodal `f` on `[lo, hi]` until the
/// bracket is no wider than `width`.
pub(crate) fn golden_min<F>(mut f: F, mut lo: f64, mut hi: f64, width: f64) -> Result<GoldenBracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut iterations = 0;
    while hi - lo > width {
        iterations += 1;
        if iterations > 500 {
            return Err(Error::Convergence {
                what: "golden-section search".into(),
                iterations,
            });
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
        }
    }
    let x = if f1 <= f2 { x1 } else { x2 };
    Ok(GoldenBracket { lo, hi, x })
}

/// Bisection for a root of an increasing `g` on `[lo, hi]` with `g(lo) ≤ 0 ≤ g(hi)`.
pub(crate) fn bisect_increasing<G>(mut g: G, mut lo: f64, mut hi: f64, width: f64) -> Result<f64>
where
    G: FnMut(f64) -> Result<f64>,
{
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= width || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
