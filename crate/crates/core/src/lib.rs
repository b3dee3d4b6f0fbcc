//! Sample-size planning and validation for two-system ranking and selection.
//!
//! Three asymptotic regimes drive the planners: the central-limit regime
//! (PIS target fixed, gap shrinking), the large-deviation regime (gap fixed,
//! PIS target shrinking) and the moderate-deviation regime (both shrinking
//! together). Each regime comes with fixed-size planners under three
//! allocation policies, and the CLT and MD regimes also have unknown-variance
//! sequential stopping rules.
//!
//! Module map:
//!
//! - [`distributions`]: sample laws, exact moments and cumulant generating functions.
//! - [`rate_functions`]: numerical Legendre transforms and the allocation objectives.
//! - [`regimes`]: fixed-sample-size planners.
//! - [`sequential`]: streaming statistics and stopping rules.
//! - [`approximations`]: pre-limit PIS approximations (Edgeworth, Chernoff, Bahadur-Rao).
//! - [`montecarlo`]: deterministic parallel PIS estimation.
//! - [`report`]: configuration files, built-in experiment tables and CSV output.

pub mod approximations;
pub mod distributions;
mod error;
pub mod montecarlo;
pub mod normal;
mod optimize;
pub mod rate_functions;
pub mod regimes;
pub mod report;
pub mod sequential;

pub use distributions::{DistributionSpec, MomentSummary, SystemPair};
pub use error::{Error, Result};
pub use montecarlo::{ExperimentConfig, ExperimentResult, Procedure};
pub use rate_functions::{AllocationResult, RateEvaluation};
pub use regimes::{AllocationPolicy, PolicyKind, Regime, SamplePlan};
