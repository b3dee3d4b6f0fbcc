//! Re-runs the two reference tables. Pass the replication count as the
//! first argument (default 100000; the published tables use 1000000).
//!
//! cargo run --release --example reproduce_tables -- 1000000

use rsregimes::report::{cmd_table, RunOptions};

fn main() -> rsregimes::Result<()> {
    let replications = std::env::args().nth(1).map_or(Ok(100_000), |s| s.parse()).expect("replication count");
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    for which in [1, 2] {
        let opts = RunOptions { replications, master_seed: 20_140_100 + which as u64, workers };
        cmd_table(which, opts, std::io::stdout().lock())?;
        println!();
    }
    Ok(())
}
