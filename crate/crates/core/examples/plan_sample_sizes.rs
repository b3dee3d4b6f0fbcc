//! Fixed sample sizes for every regime and allocation policy.
//!
//! cargo run --example plan_sample_sizes

use rsregimes::regimes::plan;
use rsregimes::{AllocationPolicy, DistributionSpec, Regime, SystemPair};

fn main() -> rsregimes::Result<()> {
    let pair = SystemPair::new(
        DistributionSpec::exponential(1.0)?,
        DistributionSpec::exponential(1.0 / 1.1)?,
    )?;
    let alpha = 0.05;
    println!("Exponential means 1 and 1/1.1, delta = {:.4}, alpha = {alpha}", pair.delta());
    println!("{:<4} {:<12} {:>6} {:>6} {:>12} {:>12}", "", "policy", "n1", "n2", "raw1", "raw2");
    for regime in [Regime::Clt, Regime::Ld, Regime::Md] {
        for policy in [AllocationPolicy::EQUAL, AllocationPolicy::OPTIMAL, AllocationPolicy::INDEPENDENT] {
            let p = plan(&pair, alpha, regime, policy)?;
            println!(
                "{:<4} {:<12} {:>6} {:>6} {:>12.3} {:>12.3}",
                regime.to_string(),
                policy.kind.to_string(),
                p.n1,
                p.n2,
                p.raw1,
                p.raw2
            );
        }
    }
    Ok(())
}
