//! Edgeworth, Chernoff and Bahadur-Rao predictions of the PIS, and the
//! quantile ratio linking the CLT and LD sizes.
//!
//! cargo run --example prelimit_approximations

use rsregimes::approximations::{
    bahadur_rao_pis, chernoff_pis, edgeworth_pis, lemma1_ratio, lemma2_check, phi_over_z,
};
use rsregimes::{DistributionSpec, SystemPair};

fn main() -> rsregimes::Result<()> {
    let exp_pair = SystemPair::new(DistributionSpec::exponential(1.0)?, DistributionSpec::exponential(1.0 / 1.1)?)?;
    let lattice = SystemPair::new(DistributionSpec::constant(0.008)?, DistributionSpec::bernoulli(0.001)?)?;
    for (name, pair, alpha) in [("exponential", &exp_pair, 0.05), ("constant/Bernoulli", &lattice, 0.01)] {
        println!("{name}, alpha = {alpha}");
        for a in [edgeworth_pis(pair, alpha)?, chernoff_pis(pair, alpha)?, bahadur_rao_pis(pair, alpha)?] {
            let note = a.invalid.map(|r| format!(" (not valid: {r})")).unwrap_or_default();
            println!("  {:<22} {:.6}{note}", a.method.to_string(), a.value);
        }
    }

    println!("\nalpha     z^2/(2 log 1/alpha)  phi(z)/z / alpha");
    for k in [2, 4, 8, 12] {
        let alpha = 10f64.powi(-k);
        println!("1e-{k:<6} {:>12.4} {:>18.4}", lemma1_ratio(alpha)?, phi_over_z(alpha)? / alpha);
    }

    let report = lemma2_check(&exp_pair, &[0.1, 0.05, 0.025])?;
    println!("\nG_e against its two-term expansion:");
    for r in &report.rows {
        println!("  delta {:<6} error {:.3e}", r.delta, r.abs_error);
    }
    println!("  log-log slope {:.3}", report.slope.unwrap_or(f64::NAN));
    Ok(())
}
