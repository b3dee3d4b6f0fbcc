//! Builds a suite from JSON and writes the plan CSV to standard output.
//!
//! cargo run --example config_suite

use rsregimes::report::{cmd_plan, SuiteConfig};

const SUITE: &str = r#"{
  "pairs": [
    { "name": "skewed",
      "dist1": { "family": "exponential", "mean": 2.0 },
      "dist2": { "family": "shifted", "base": { "family": "exponential", "mean": 1.0 }, "offset": 0.7 } },
    { "name": "gaussian",
      "dist1": { "family": "normal", "mean": 0.5, "stddev": 1.0 },
      "dist2": { "family": "normal", "mean": 0.0, "stddev": 2.0 } }
  ],
  "regimes": [
    { "regime": "clt", "policy": "optimal" },
    { "regime": "ld", "policy": "optimal" },
    { "regime": "md", "policy": "optimal" },
    { "pair": "gaussian", "regime": "ld", "policy": "independent", "anchor_b": 0.1 }
  ],
  "alpha": 0.01,
  "replications": 100000,
  "master_seed": 7
}"#;

fn main() -> rsregimes::Result<()> {
    let suite = SuiteConfig::from_json(SUITE)?;
    cmd_plan(&suite, std::io::stdout().lock())?;
    Ok(())
}
