//! Legendre transforms, the allocation rate G(p1, p2) and its maximizer.
//!
//! cargo run --example rate_functions

use rsregimes::rate_functions::{g_allocation, g_e, g_e_taylor, g_hat, legendre, optimal_allocation};
use rsregimes::{DistributionSpec, Regime, SystemPair};

fn main() -> rsregimes::Result<()> {
    let exp = DistributionSpec::exponential(1.0)?;
    println!("Exponential(1) rate function I(a) = a - 1 - log a:");
    for a in [0.5, 0.9, 1.1, 2.0] {
        let r = legendre(&exp, a)?;
        println!("  I({a}) = {:.10} (closed form {:.10}), theta = {:.6}", r.value, a - 1.0 - f64::ln(a), r.maximizer_theta);
    }

    let pair = SystemPair::new(exp, DistributionSpec::exponential(1.0 / 1.1)?)?;
    let ge = g_e(&pair)?;
    println!("\nG_e(delta) = {:.10} at theta = {:.6}, Taylor {:.10}", ge.value, ge.maximizer_theta, g_e_taylor(&pair));
    for p1 in [0.3, 0.5, 0.7] {
        let g = g_allocation(&pair, p1, 1.0 - p1)?;
        let b = g.minimizer_b.unwrap_or(f64::NAN);
        let gauss = pair.delta().powi(2) * g_hat(pair.sigma1(), pair.sigma2(), p1, 1.0 - p1)?;
        println!("G({p1}, {:.1}) = {:.10} at b = {b:.6}; Gaussian analogue {gauss:.10}", 1.0 - p1, g.g_value);
    }
    for regime in [Regime::Ld, Regime::Md] {
        let a = optimal_allocation(&pair, regime)?;
        println!("{regime} optimal split p1 = {:.6}", a.p1);
    }
    Ok(())
}
