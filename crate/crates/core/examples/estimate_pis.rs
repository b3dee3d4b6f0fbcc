//! Monte Carlo PIS for fixed plans, with coverage flags against alpha.
//!
//! cargo run --release --example estimate_pis

use rsregimes::montecarlo::overshoot_report;
use rsregimes::regimes::plan;
use rsregimes::{AllocationPolicy, DistributionSpec, Regime, SystemPair};

fn main() -> rsregimes::Result<()> {
    let pair = SystemPair::new(DistributionSpec::normal(0.0, 1.0)?, DistributionSpec::normal(-0.2, 1.5)?)?;
    let alpha = 0.05;
    let plans = [Regime::Clt, Regime::Ld, Regime::Md]
        .map(|r| plan(&pair, alpha, r, AllocationPolicy::OPTIMAL))
        .into_iter()
        .collect::<rsregimes::Result<Vec<_>>>()?;
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for row in overshoot_report(&pair, alpha, &plans, 100_000, 2024, workers)? {
        println!(
            "{:<4} n = ({:>4}, {:>4})  PIS {:.5} ± {:.5}  {}",
            row.plan.regime.to_string(),
            row.plan.n1,
            row.plan.n2,
            row.result.pis_estimate,
            row.result.std_error,
            row.flag
        );
    }
    Ok(())
}
