//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Set `ACCEPTANCE_SMOKE=1` to run the Monte Carlo criteria at
//! R = 10⁵ with the fixed windows widened by √10.

use rsregimes::approximations::{bahadur_rao_pis, edgeworth_pis, lemma1_ratio, lemma2_check};
use rsregimes::montecarlo::{estimate_pis, ExperimentConfig, ExperimentResult};
use rsregimes::rate_functions::{g_allocation, g_e, g_hat, legendre};
use rsregimes::regimes::{plan, z_quantile};
use rsregimes::report::SuiteConfig;
use rsregimes::sequential::{SequentialParams, SequentialRule};
use rsregimes::{AllocationPolicy, DistributionSpec, Regime, SamplePlan, SystemPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::Instant;

const SEED: u64 = 20_140_101;

struct Ctx {
    reps: u64,
    widen: f64,
    workers: usize,
    table1: Option<[ExperimentResult; 3]>,
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn table(which: u8) -> (SystemPair, f64) {
    let c = SuiteConfig::builtin(which).unwrap();
    (c.pairs[0].build().unwrap(), c.alpha)
}

fn gaussian(delta: f64) -> SystemPair {
    SystemPair::new(
        DistributionSpec::normal(0.0, 1.0).unwrap(),
        DistributionSpec::normal(-delta, 1.0).unwrap(),
    )
    .unwrap()
}

fn equal_plans(pair: &SystemPair, alpha: f64) -> [SamplePlan; 3] {
    [Regime::Clt, Regime::Ld, Regime::Md].map(|r| plan(pair, alpha, r, AllocationPolicy::EQUAL).unwrap())
}

fn run_fixed(ctx: &Ctx, pair: &SystemPair, p: SamplePlan, seed: u64) -> ExperimentResult {
    estimate_pis(&ExperimentConfig::fixed(pair.clone(), p, ctx.reps, seed), ctx.workers).unwrap()
}

fn plans_match(which: u8, expected: [u64; 3]) -> Outcome {
    let start = Instant::now();
    let (pair, alpha) = table(which);
    let p = equal_plans(&pair, alpha);
    let secs = start.elapsed().as_secs_f64();
    let ok = p[0].n1 == expected[0]
        && p[2].n1 == expected[2]
        && p[1].n1.abs_diff(expected[1]) <= 2
        && p.iter().all(|q| q.n1 == q.n2)
        && secs < 1.0;
    Outcome::new(ok, format!("n = {}/{}/{} in {secs:.3} s", p[0].n1, p[1].n1, p[2].n1))
}

fn within_se(r: &ExperimentResult, target: f64) -> bool {
    (r.pis_estimate - target).abs() <= 3.0 * r.std_error
}

fn c3(ctx: &mut Ctx) -> Outcome {
    let (pair, alpha) = table(1);
    let results = equal_plans(&pair, alpha).map(|p| run_fixed(ctx, &pair, p, SEED));
    let published = [0.0497, 0.0072, 0.0071];
    let ok = results.iter().zip(published).all(|(r, p)| within_se(r, p));
    let detail = results
        .iter()
        .map(|r| format!("{:.5}±{:.5}", r.pis_estimate, r.std_error))
        .collect::<Vec<_>>()
        .join(" ");
    ctx.table1 = Some(results);
    Outcome::new(ok, format!("CLT/LD/MD {detail} vs 0.0497/0.0072/0.0071"))
}

fn c4(ctx: &Ctx) -> Outcome {
    let (pair, alpha) = table(2);
    let [clt, ld, md] = equal_plans(&pair, alpha).map(|p| run_fixed(ctx, &pair, p, SEED + 1));
    let exact_clt = 1.0 - 0.999f64.powi(clt_n(&pair, alpha) as i32);
    let w = ctx.widen;
    let ok = (clt.pis_estimate - 0.1057).abs() <= 0.001 * w
        && within_se(&clt, exact_clt)
        && (ld.pis_estimate - 0.0015).abs() <= 0.0002 * w
        && (md.pis_estimate - 0.0156).abs() <= 0.0005 * w;
    Outcome::new(
        ok,
        format!(
            "CLT {:.5}±{:.5} (binomial {exact_clt:.5}), LD {:.5}, MD {:.5}",
            clt.pis_estimate, clt.std_error, ld.pis_estimate, md.pis_estimate
        ),
    )
}

fn clt_n(pair: &SystemPair, alpha: f64) -> u64 {
    plan(pair, alpha, Regime::Clt, AllocationPolicy::EQUAL).unwrap().n1
}

fn c5(ctx: &Ctx) -> Outcome {
    let pair = gaussian(0.1);
    let p = plan(&pair, 0.05, Regime::Clt, AllocationPolicy::EQUAL).unwrap();
    let r = run_fixed(ctx, &pair, p, SEED + 2);
    Outcome::new(
        within_se(&r, 0.05),
        format!("n = {}, PIS {:.5}±{:.5}", p.n1, r.pis_estimate, r.std_error),
    )
}

fn c6(ctx: &Ctx) -> Outcome {
    let reps = 10_000;
    let pair = gaussian(0.1);
    let params = SequentialParams::new(SequentialRule::Clt, 0.05, 0.1).unwrap();
    let r = estimate_pis(&ExperimentConfig::sequential(pair, params, false, reps, SEED + 3), ctx.workers).unwrap();
    let kappa = 0.01 * r.stops.unwrap().mean_n1(reps);
    let target = 2.0 * z_quantile(0.05).unwrap().powi(2);

    let (t1, alpha) = table(1);
    let params = SequentialParams::new(SequentialRule::Md, alpha, t1.delta()).unwrap();
    let r = estimate_pis(&ExperimentConfig::sequential(t1, params, false, reps, SEED + 4), ctx.workers).unwrap();
    let nk = r.stops.unwrap().mean_n1(reps);
    let ok = (kappa / target - 1.0).abs() <= 0.03 && (nk / 1325.0 - 1.0).abs() <= 0.05;
    Outcome::new(ok, format!("mean δ²κ = {kappa:.4} vs {target:.4}; mean N_k = {nk:.1} vs 1325"))
}

fn c7() -> Outcome {
    let mut worst_legendre = 0.0f64;
    let normal = DistributionSpec::normal(0.4, 1.7).unwrap();
    let exp = DistributionSpec::exponential(2.5).unwrap();
    for i in 0..50 {
        let t = i as f64 / 49.0;
        let a = 0.4 - 5.0 + 10.0 * t;
        let exact = (a - 0.4f64).powi(2) / (2.0 * 1.7 * 1.7);
        worst_legendre = worst_legendre.max((legendre(&normal, a).unwrap().value - exact).abs());
        let a = 2.5 * (0.1 + 3.9 * t);
        let x = a / 2.5;
        let exact = x - 1.0 - x.ln();
        worst_legendre = worst_legendre.max((legendre(&exp, a).unwrap().value - exact).abs());
    }
    let mut worst_identity = 0.0f64;
    for pair in [table(1).0, gaussian(0.2)] {
        let lhs = 2.0 * g_allocation(&pair, 0.5, 0.5).unwrap().g_value;
        worst_identity = worst_identity.max((lhs - g_e(&pair).unwrap().value).abs());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst_gauss = 0.0f64;
    for _ in 0..100 {
        let (s1, s2): (f64, f64) = (rng.random_range(0.1..4.0), rng.random_range(0.1..4.0));
        let p1: f64 = rng.random_range(0.02..0.98);
        let delta = 0.3;
        let pair = SystemPair::new(
            DistributionSpec::normal(delta, s1).unwrap(),
            DistributionSpec::normal(0.0, s2).unwrap(),
        )
        .unwrap();
        let g = g_allocation(&pair, p1, 1.0 - p1).unwrap().g_value;
        worst_gauss = worst_gauss.max((g - delta * delta * g_hat(s1, s2, p1, 1.0 - p1).unwrap()).abs());
    }
    let ok = worst_legendre <= 1e-9 && worst_identity <= 1e-8 && worst_gauss <= 1e-10;
    Outcome::new(
        ok,
        format!("Legendre {worst_legendre:.1e}, 2G(½,½)−G_e {worst_identity:.1e}, G−δ²Ĝ {worst_gauss:.1e}"),
    )
}

fn c8() -> Outcome {
    let grid: Vec<f64> = (2..=12).map(|k| lemma1_ratio(10f64.powi(-k)).unwrap()).collect();
    let at8 = grid[6];
    let ok = grid.windows(2).all(|w| w[1] > w[0])
        && grid.iter().all(|&v| v > 0.0 && v < 1.0)
        && (0.83..=0.88).contains(&at8);
    Outcome::new(ok, format!("ratio at 1e-2 {:.4}, 1e-8 {at8:.4}, 1e-12 {:.4}", grid[0], grid[10]))
}

fn c9() -> Outcome {
    let grid = [0.1, 0.05, 0.025];
    let slope = lemma2_check(&table(1).0, &grid).unwrap().slope;
    let gauss = lemma2_check(&gaussian(0.1), &grid).unwrap().max_abs_error();
    let ok = slope.is_some_and(|s| (3.5..=4.5).contains(&s)) && gauss < 1e-15;
    Outcome::new(ok, format!("exponential slope {slope:?}, Gaussian max error {gauss:.1e}"))
}

fn c10(ctx: &Ctx) -> Outcome {
    let (t1, alpha1) = table(1);
    let [clt, ld, _] = ctx.table1.clone().expect("criterion 3 runs first");
    let edge = edgeworth_pis(&t1, alpha1).unwrap().value;
    let br = bahadur_rao_pis(&t1, alpha1).unwrap().value;
    let br_rel = (br - ld.pis_estimate).abs() / ld.pis_estimate;

    let mut chernoff = vec![ld.clone()];
    let (t2, alpha2) = table(2);
    chernoff.push(run_fixed(ctx, &t2, plan(&t2, alpha2, Regime::Ld, AllocationPolicy::EQUAL).unwrap(), SEED + 5));
    let g = gaussian(0.2);
    chernoff.push(run_fixed(ctx, &g, plan(&g, 0.05, Regime::Ld, AllocationPolicy::EQUAL).unwrap(), SEED + 6));
    let alphas = [alpha1, alpha2, 0.05];
    let guarantee = chernoff.iter().zip(alphas).all(|(r, a)| r.pis_estimate + 3.0 * r.std_error < a);

    let ok = within_se(&clt, edge) && br_rel <= 0.25 && guarantee;
    Outcome::new(
        ok,
        format!(
            "Edgeworth {edge:.5} vs {:.5}; Bahadur-Rao {br:.5} vs {:.5} ({:.0}%); Chernoff guarantee {guarantee}",
            clt.pis_estimate,
            ld.pis_estimate,
            100.0 * br_rel
        ),
    )
}

fn c11() -> Outcome {
    let (t1, alpha) = table(1);
    let p = plan(&t1, alpha, Regime::Clt, AllocationPolicy::EQUAL).unwrap();
    let fixed = ExperimentConfig::fixed(t1.clone(), p, 10_000, 42);
    let params = SequentialParams::new(SequentialRule::Md, alpha, t1.delta()).unwrap();
    let seq = ExperimentConfig::sequential(t1, params, true, 1_000, 42);
    let mut ok = true;
    let mut counts = Vec::new();
    for config in [fixed, seq] {
        let a = estimate_pis(&config, 1).unwrap();
        let b = estimate_pis(&config, 8).unwrap();
        ok &= a.incorrect_count == b.incorrect_count && a.stops == b.stops;
        counts.push(format!("{}={}", a.incorrect_count, b.incorrect_count));
    }
    Outcome::new(ok, format!("incorrect counts (1 vs 8 workers) {}", counts.join(", ")))
}

fn main() -> ExitCode {
    let smoke = std::env::var_os("ACCEPTANCE_SMOKE").is_some_and(|v| v != "0" && !v.is_empty());
    let mut ctx = Ctx {
        reps: if smoke { 100_000 } else { 1_000_000 },
        widen: if smoke { 10f64.sqrt() } else { 1.0 },
        workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        table1: None,
    };
    println!("acceptance: R = {}, {} worker(s)", ctx.reps, ctx.workers);
    let mut failures = 0;
    let mut report = |id: u32, name: &str, o: Outcome| {
        println!("{} {id:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failures += u32::from(!o.pass);
    };
    report(1, "table 1 plans", plans_match(1, [598, 1320, 1325]));
    report(2, "table 2 plans", plans_match(2, [111, 477, 188]));
    report(3, "table 1 PIS", c3(&mut ctx));
    report(4, "table 2 PIS", c4(&ctx));
    report(5, "Gaussian CLT exactness", c5(&ctx));
    report(6, "sequential rules", c6(&ctx));
    report(7, "rate-function oracles", c7());
    report(8, "quantile ratio", c8());
    report(9, "Taylor remainder order", c9());
    report(10, "approximation quality", c10(&ctx));
    report(11, "determinism", c11());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
