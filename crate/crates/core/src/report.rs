//! Suite configuration files, the `plan`/`estimate`/`table`/`check` commands
//! and their CSV and plain-text output.
//!
//! Data goes to the writer handed to each command; progress and diagnostics go
//! to standard error. Reals in CSV use the shortest representation that parses
//! back to the same `f64`.

use crate::approximations::{
    bahadur_rao_pis, bahadur_rao_shape, chernoff_pis, edgeworth_pis, lemma1_ratio, lemma2_check,
};
use crate::distributions::{DistributionSpec, SystemPair};
use crate::montecarlo::{estimate_pis, CoverageFlag, ExperimentConfig, ExperimentResult};
use crate::rate_functions::{g_allocation, g_e, g_hat};
use crate::regimes::{plan, AllocationPolicy, PolicyKind, Regime, SamplePlan};
use crate::sequential::{SequentialParams, SequentialRule};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

const TABLE1_JSON: &str = include_str!("../configs/table1.json");
const TABLE2_JSON: &str = include_str!("../configs/table2.json");

fn default_replications() -> u64 {
    1_000_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub name: String,
    pub dist1: DistributionSpec,
    pub dist2: DistributionSpec,
    /// Defaults to the difference of the means.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl PairEntry {
    pub fn build(&self) -> Result<SystemPair> {
        let (d1, d2) = (self.dist1.clone(), self.dist2.clone());
        match self.delta {
            Some(delta) => SystemPair::with_delta(d1, d2, delta),
            None => SystemPair::new(d1, d2),
        }
        .map_err(|e| Error::Config(format!("pair '{}': {e}", self.name)))
    }
}

/// One planner to run. Without `pair` the entry applies to every pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    pub regime: Regime,
    pub policy: PolicyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_b: Option<f64>,
}

impl RegimeEntry {
    pub fn policy(&self) -> AllocationPolicy {
        AllocationPolicy {
            kind: self.policy,
            anchor_b: self.anchor_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub pairs: Vec<PairEntry>,
    pub regimes: Vec<RegimeEntry>,
    pub alpha: f64,
    #[serde(default = "default_replications")]
    pub replications: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
}

/// A resolved `(pair, regime, policy)` combination.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub pair_name: String,
    pub pair: SystemPair,
    pub regime: Regime,
    pub policy: AllocationPolicy,
}

impl SuiteRow {
    fn label(&self) -> String {
        format!("{}/{}/{}", self.pair_name, self.regime, self.policy.kind)
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: SuiteConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Built-in configuration for published table 1 or 2.
    pub fn builtin(which: u8) -> Result<Self> {
        match which {
            1 => Self::from_json(TABLE1_JSON),
            2 => Self::from_json(TABLE2_JSON),
            _ => Err(Error::Config(format!("unknown table {which}; expected 1 or 2"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha = {} must lie in (0, 1)", self.alpha)));
        }
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.pairs.is_empty() {
            return Err(Error::Config("no pairs defined".into()));
        }
        let mut names = HashSet::new();
        for p in &self.pairs {
            if !names.insert(p.name.as_str()) {
                return Err(Error::Config(format!("duplicate pair name '{}'", p.name)));
            }
            p.build()?;
        }
        for (i, r) in self.regimes.iter().enumerate() {
            if let Some(name) = &r.pair {
                if !names.contains(name.as_str()) {
                    return Err(Error::Config(format!(
                        "regimes[{i}] references unknown pair '{name}'"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> Result<Vec<SuiteRow>> {
        let mut rows = Vec::new();
        for p in &self.pairs {
            let pair = p.build()?;
            for r in &self.regimes {
                if r.pair.as_deref().is_some_and(|n| n != p.name) {
                    continue;
                }
                rows.push(SuiteRow {
                    pair_name: p.name.clone(),
                    pair: pair.clone(),
                    regime: r.regime,
                    policy: r.policy(),
                });
            }
        }
        Ok(rows)
    }
}

/// Published row of a reference table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedRow {
    pub regime: Regime,
    pub n: u64,
    pub pis: f64,
    pub se: f64,
}

pub fn published_rows(which: u8) -> Result<[PublishedRow; 3]> {
    let row = |regime, n, pis, se| PublishedRow { regime, n, pis, se };
    match which {
        1 => Ok([
            row(Regime::Clt, 598, 0.0497, 0.0002),
            row(Regime::Ld, 1320, 0.0072, 0.0001),
            row(Regime::Md, 1325, 0.0071, 0.0001),
        ]),
        2 => Ok([
            row(Regime::Clt, 111, 0.1057, 0.0003),
            row(Regime::Ld, 477, 0.0015, 0.00003),
            row(Regime::Md, 188, 0.0156, 0.0001),
        ]),
        _ => Err(Error::Config(format!("unknown table {which}; expected 1 or 2"))),
    }
}

/// Formats `x` with `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn with_context(label: &str, e: Error) -> Error {
    eprintln!("error in {label}: {e}");
    e
}

pub const PLAN_HEADER: [&str; 7] = ["pair", "regime", "policy", "n1", "n2", "raw1", "raw2"];
pub const ESTIMATE_HEADER: [&str; 10] = [
    "pair", "regime", "policy", "n1", "n2", "reps", "pis", "se", "seed", "wall_time_s",
];

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Plans every row of the suite.
pub fn plan_suite(config: &SuiteConfig) -> Result<Vec<(SuiteRow, SamplePlan)>> {
    config
        .rows()?
        .into_iter()
        .map(|row| {
            let p = plan(&row.pair, config.alpha, row.regime, row.policy)
                .map_err(|e| with_context(&row.label(), e))?;
            Ok((row, p))
        })
        .collect()
}

/// Writes one CSV row per planned `(pair, regime, policy)`.
pub fn cmd_plan<W: Write>(config: &SuiteConfig, out: W) -> Result<()> {
    let planned = plan_suite(config)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PLAN_HEADER).map_err(csv_error)?;
    for (row, p) in planned {
        w.write_record([
            row.pair_name,
            row.regime.to_string(),
            row.policy.kind.to_string(),
            p.n1.to_string(),
            p.n2.to_string(),
            p.raw1.to_string(),
            p.raw2.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Options shared by the simulation commands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub replications: u64,
    pub master_seed: u64,
    pub workers: usize,
}

impl RunOptions {
    pub fn from_config(config: &SuiteConfig, workers: usize) -> Self {
        RunOptions {
            replications: config.replications,
            master_seed: config.master_seed,
            workers,
        }
    }
}

/// One row of an estimate run.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub pair_name: String,
    pub regime: Regime,
    /// `equal`, `optimal`, `independent`, or `sequential-joint` / `sequential-independent`.
    pub policy: String,
    /// Plan sizes, or mean stopping sizes for sequential rules.
    pub n1: f64,
    pub n2: f64,
    pub result: ExperimentResult,
}

impl EstimateRow {
    fn record(&self) -> [String; 10] {
        [
            self.pair_name.clone(),
            self.regime.to_string(),
            self.policy.clone(),
            self.n1.to_string(),
            self.n2.to_string(),
            self.result.replications.to_string(),
            self.result.pis_estimate.to_string(),
            self.result.std_error.to_string(),
            self.result.master_seed.to_string(),
            self.result.wall_time.to_string(),
        ]
    }
}

/// Estimates the PIS of every planned row with a fixed-size procedure.
pub fn estimate_suite(config: &SuiteConfig, opts: RunOptions) -> Result<Vec<EstimateRow>> {
    let planned = plan_suite(config)?;
    planned
        .into_iter()
        .map(|(row, p)| {
            eprintln!(
                "estimating {} with n = ({}, {}), R = {}",
                row.label(),
                p.n1,
                p.n2,
                opts.replications
            );
            let exp = ExperimentConfig::fixed(row.pair.clone(), p, opts.replications, opts.master_seed);
            let result = estimate_pis(&exp, opts.workers).map_err(|e| with_context(&row.label(), e))?;
            Ok(EstimateRow {
                pair_name: row.pair_name,
                regime: row.regime,
                policy: row.policy.kind.to_string(),
                n1: p.n1 as f64,
                n2: p.n2 as f64,
                result,
            })
        })
        .collect()
}

/// Runs the joint and independent variants of `rule` on every pair, at the
/// suite's α and each pair's own gap.
pub fn estimate_sequential(config: &SuiteConfig, rule: SequentialRule, opts: RunOptions) -> Result<Vec<EstimateRow>> {
    let regime = match rule {
        SequentialRule::Clt => Regime::Clt,
        SequentialRule::Md => Regime::Md,
    };
    let mut rows = Vec::new();
    for entry in &config.pairs {
        let pair = entry.build()?;
        let params = SequentialParams::new(rule, config.alpha, pair.delta())?;
        for independent in [false, true] {
            let policy = if independent { "sequential-independent" } else { "sequential-joint" };
            let label = format!("{}/{regime}/{policy}", entry.name);
            eprintln!("estimating {label}, R = {}", opts.replications);
            let exp = ExperimentConfig::sequential(pair.clone(), params, independent, opts.replications, opts.master_seed);
            let result = estimate_pis(&exp, opts.workers).map_err(|e| with_context(&label, e))?;
            let stops = result.stops.as_ref().expect("sequential runs record stopping sizes");
            rows.push(EstimateRow {
                pair_name: entry.name.clone(),
                regime,
                policy: policy.to_string(),
                n1: stops.mean_n1(result.replications),
                n2: stops.mean_n2(result.replications),
                result,
            });
        }
    }
    Ok(rows)
}

pub fn write_estimate_csv<W: Write>(rows: &[EstimateRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ESTIMATE_HEADER).map_err(csv_error)?;
    for row in rows {
        w.write_record(row.record()).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the stopping-size histograms of sequential rows as
/// `pair,policy,n1,n2,count`.
pub fn write_stop_histogram<W: Write>(rows: &[EstimateRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pair", "policy", "n1", "n2", "count"]).map_err(csv_error)?;
    for row in rows {
        let Some(stops) = &row.result.stops else { continue };
        for (&(n1, n2), &count) in &stops.histogram {
            w.write_record([
                row.pair_name.clone(),
                row.policy.clone(),
                n1.to_string(),
                n2.to_string(),
                count.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Runs the estimate command and writes its CSV to `out`.
pub fn cmd_estimate<W: Write>(
    config: &SuiteConfig,
    sequential: Option<SequentialRule>,
    opts: RunOptions,
    out: W,
) -> Result<Vec<EstimateRow>> {
    let rows = match sequential {
        Some(rule) => estimate_sequential(config, rule, opts)?,
        None => estimate_suite(config, opts)?,
    };
    write_estimate_csv(&rows, out)?;
    Ok(rows)
}

/// A simulated table row next to its published counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub regime: Regime,
    pub n: u64,
    pub result: ExperimentResult,
    pub flag: CoverageFlag,
    pub published: PublishedRow,
}

/// Re-runs built-in table `which` (1 or 2).
pub fn run_table(which: u8, opts: RunOptions) -> Result<(SuiteConfig, Vec<TableRow>)> {
    let config = SuiteConfig::builtin(which)?;
    let published = published_rows(which)?;
    let rows = estimate_suite(&config, opts)?;
    let table = rows
        .into_iter()
        .zip(published)
        .map(|(r, published)| TableRow {
            regime: r.regime,
            n: r.n1 as u64,
            flag: CoverageFlag::classify(r.result.pis_estimate, r.result.std_error, config.alpha),
            result: r.result,
            published,
        })
        .collect();
    Ok((config, table))
}

pub fn write_table<W: Write>(which: u8, config: &SuiteConfig, rows: &[TableRow], mut out: W) -> Result<()> {
    let pair = config.pairs[0].build()?;
    writeln!(
        out,
        "Table {which}: {} vs {}, alpha = {}, R = {}",
        describe(pair.dist1()),
        describe(pair.dist2()),
        config.alpha,
        rows.first().map_or(0, |r| r.result.replications)
    )?;
    writeln!(
        out,
        "{:<8}{:>7}  {:<22}{:<12}{:>7}  pub PIS ± SE",
        "Regime", "n", "PIS ± SE", "flag", "pub n"
    )?;
    for r in rows {
        let pis = format!(
            "{} ± {}",
            format_sig(r.result.pis_estimate, 4),
            format_sig(r.result.std_error, 4)
        );
        writeln!(
            out,
            "{:<8}{:>7}  {:<22}{:<12}{:>7}  {} ± {}",
            r.regime.to_string(),
            r.n,
            pis,
            r.flag.to_string(),
            r.published.n,
            r.published.pis,
            r.published.se
        )?;
    }
    Ok(())
}

fn describe(d: &DistributionSpec) -> String {
    match d {
        DistributionSpec::Normal { mean, stddev } => format!("Normal({}, {})", format_sig(*mean, 4), format_sig(*stddev, 4)),
        DistributionSpec::Exponential { mean } => format!("Exponential(mean {})", format_sig(*mean, 4)),
        DistributionSpec::Bernoulli { success_prob } => format!("Bernoulli({success_prob})"),
        DistributionSpec::Constant { value } => format!("Constant({value})"),
        DistributionSpec::Shifted { base, offset } => format!("{} + {offset}", describe(base)),
    }
}

pub fn cmd_table<W: Write>(which: u8, opts: RunOptions, out: W) -> Result<Vec<TableRow>> {
    let (config, rows) = run_table(which, opts)?;
    write_table(which, &config, &rows, out)?;
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckTopic {
    Lemma1,
    Lemma2,
    Edgeworth,
    Bahadur,
    Identities,
}

impl FromStr for CheckTopic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(CheckTopic::Lemma1),
            "lemma2" => Ok(CheckTopic::Lemma2),
            "edgeworth" => Ok(CheckTopic::Edgeworth),
            "bahadur" => Ok(CheckTopic::Bahadur),
            "identities" => Ok(CheckTopic::Identities),
            other => Err(Error::Config(format!(
                "unknown check '{other}'; expected lemma1, lemma2, edgeworth, bahadur or identities"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub status: CheckStatus,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckReport {
    /// Informational lines printed before the verdicts.
    pub notes: Vec<String>,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn check(&mut self, ok: bool, message: String) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        self.lines.push(CheckLine { status, message });
    }

    fn skip(&mut self, message: String) {
        self.lines.push(CheckLine {
            status: CheckStatus::Skipped,
            message,
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != CheckStatus::Fail)
    }
}

fn table_pair(which: u8) -> Result<(SystemPair, f64)> {
    let c = SuiteConfig::builtin(which)?;
    Ok((c.pairs[0].build()?, c.alpha))
}

fn gaussian_pair(delta: f64) -> Result<SystemPair> {
    SystemPair::new(DistributionSpec::normal(0.0, 1.0)?, DistributionSpec::normal(-delta, 1.0)?)
}

const LEMMA2_GRID: [f64; 3] = [0.1, 0.05, 0.025];

pub fn run_check(topic: CheckTopic) -> Result<CheckReport> {
    let mut r = CheckReport::default();
    match topic {
        CheckTopic::Lemma1 => {
            let grid: Vec<(f64, f64)> = (2..=12)
                .map(|k| {
                    let a = 10f64.powi(-k);
                    lemma1_ratio(a).map(|v| (a, v))
                })
                .collect::<Result<_>>()?;
            for (a, v) in &grid {
                r.note(format!("alpha = {a:e}: z^2/(2 log(1/alpha)) = {}", format_sig(*v, 4)));
            }
            r.check(grid.iter().all(|(_, v)| *v > 0.0 && *v < 1.0), "ratio in (0, 1) on the grid".into());
            r.check(
                grid.windows(2).all(|w| w[1].1 > w[0].1),
                "ratio strictly increases as alpha decreases".into(),
            );
            let at8 = lemma1_ratio(1e-8)?;
            r.check((0.83..=0.88).contains(&at8), format!("ratio at 1e-8 = {} in [0.83, 0.88]", format_sig(at8, 4)));
        }
        CheckTopic::Lemma2 => {
            let (t1, _) = table_pair(1)?;
            let exp = lemma2_check(&t1, &LEMMA2_GRID)?;
            for row in &exp.rows {
                r.note(format!("exponential delta = {}: G_e = {:e}, taylor = {:e}, |err| = {:e}", row.delta, row.g_e, row.taylor, row.abs_error));
            }
            match exp.slope {
                Some(s) => r.check((3.5..=4.5).contains(&s), format!("exponential remainder slope {} in [3.5, 4.5]", format_sig(s, 4))),
                None => r.check(false, "exponential remainder slope unresolvable".into()),
            }
            let gauss = lemma2_check(&gaussian_pair(0.1)?, &LEMMA2_GRID)?;
            r.check(
                gauss.max_abs_error() < 1e-15,
                format!("Gaussian remainder {:e} is zero to rounding", gauss.max_abs_error()),
            );
            let bern = SystemPair::new(DistributionSpec::constant(0.6)?, DistributionSpec::bernoulli(0.5)?)?;
            match lemma2_check(&bern, &LEMMA2_GRID)?.slope {
                Some(s) => r.check((3.5..=4.5).contains(&s), format!("Bernoulli-difference remainder slope {} in [3.5, 4.5]", format_sig(s, 4))),
                None => r.check(false, "Bernoulli-difference remainder slope unresolvable".into()),
            }
        }
        CheckTopic::Edgeworth => {
            let g = edgeworth_pis(&gaussian_pair(0.1)?, 0.05)?;
            r.check(g.value == 0.05, format!("Gaussian pair: prediction {} equals alpha", g.value));
            for which in [1, 2] {
                let (pair, alpha) = table_pair(which)?;
                let e = edgeworth_pis(&pair, alpha)?;
                match e.invalid {
                    None => {
                        r.note(format!("table {which}: Edgeworth PIS at the CLT plan = {}", format_sig(e.value, 4)));
                        r.check((0.0..=1.0).contains(&e.value), format!("table {which}: prediction in [0, 1]"));
                    }
                    Some(reason) => r.skip(format!("table {which}: VALIDITY: {reason}")),
                }
            }
        }
        CheckTopic::Bahadur => {
            for d in [0.1, 0.01] {
                let s = bahadur_rao_shape(&gaussian_pair(d)?)?;
                r.check(
                    (s - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6,
                    format!("Gaussian delta = {d}: shape factor {} = 1/sqrt(2)", format_sig(s, 7)),
                );
            }
            for which in [1, 2] {
                let (pair, alpha) = table_pair(which)?;
                let br = bahadur_rao_pis(&pair, alpha)?;
                let ch = chernoff_pis(&pair, alpha)?;
                if let Some(reason) = br.invalid {
                    r.skip(format!("table {which}: VALIDITY: {reason}"));
                    continue;
                }
                r.note(format!("table {which}: Bahadur-Rao PIS at the LD plan = {}", format_sig(br.value, 4)));
                r.check(br.value < ch.value, format!("table {which}: refinement below the Chernoff bound {}", format_sig(ch.value, 4)));
            }
        }
        CheckTopic::Identities => identities(&mut r)?,
    }
    Ok(r)
}

fn identities(r: &mut CheckReport) -> Result<()> {
    for (name, pair) in [("table 1", table_pair(1)?.0), ("Gaussian", gaussian_pair(0.3)?)] {
        let lhs = 2.0 * g_allocation(&pair, 0.5, 0.5)?.g_value;
        let rhs = g_e(&pair)?.value;
        r.check((lhs - rhs).abs() < 1e-8, format!("{name}: 2 G(1/2, 1/2) = G_e (diff {:e})", (lhs - rhs).abs()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let s1 = rng.random_range(0.2..3.0);
        let s2 = rng.random_range(0.2..3.0);
        let p1 = rng.random_range(0.05..0.95);
        let delta = rng.random_range(0.05..1.0);
        let pair = SystemPair::new(DistributionSpec::normal(delta, s1)?, DistributionSpec::normal(0.0, s2)?)?;
        let g = g_allocation(&pair, p1, 1.0 - p1)?.g_value;
        let closed = delta * delta * g_hat(s1, s2, p1, 1.0 - p1)?;
        worst = worst.max((g - closed).abs());
    }
    r.check(worst < 1e-10, format!("Gaussian G = delta^2 G_hat on 100 random points (max diff {worst:e})"));
    for which in [1, 2] {
        let (pair, alpha) = table_pair(which)?;
        let c = chernoff_pis(&pair, alpha)?.value;
        r.check((c - alpha).abs() < 1e-10, format!("table {which}: exp(-n G_e) = alpha at the raw LD size"));
    }
    Ok(())
}

pub fn write_check<W: Write>(report: &CheckReport, mut out: W) -> Result<()> {
    for n in &report.notes {
        writeln!(out, "  {n}")?;
    }
    for l in &report.lines {
        writeln!(out, "{} {}", l.status, l.message)?;
    }
    Ok(())
}

/// Prints the diagnostics for `topic` and reports whether all assertions held.
pub fn cmd_check<W: Write>(topic: CheckTopic, out: W) -> Result<bool> {
    let report = run_check(topic)?;
    write_check(&report, out)?;
    Ok(report.passed())
}
