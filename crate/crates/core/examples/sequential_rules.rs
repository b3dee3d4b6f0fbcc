//! Unknown-variance stopping rules on a single seeded stream.
//!
//! cargo run --release --example sequential_rules

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsregimes::sequential::{run_independent, run_joint, SequentialParams, SequentialRule};
use rsregimes::{DistributionSpec, SystemPair};

fn main() -> rsregimes::Result<()> {
    let pair = SystemPair::new(DistributionSpec::normal(0.0, 1.0)?, DistributionSpec::normal(-0.1, 1.0)?)?;
    let (alpha, delta) = (0.05, 0.1);
    for rule in [SequentialRule::Clt, SequentialRule::Md] {
        let params = SequentialParams::new(rule, alpha, delta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let runs = 200;
        let (mut joint, mut indep) = (0u64, 0u64);
        for _ in 0..runs {
            joint += run_joint(&params, &pair, &mut rng)?.n1;
            let o = run_independent(&params, &pair, &mut rng)?;
            indep += o.n1 + o.n2;
        }
        println!(
            "{rule}: joint floor {}, mean joint stop {:.1} per system; independent mean total {:.1}",
            params.joint_floor(),
            joint as f64 / runs as f64,
            indep as f64 / runs as f64
        );
    }
    Ok(())
}
