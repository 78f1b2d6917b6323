//! Registry of named verification scenarios. Each scenario binds a claim to
//! fixed operators, orders and thresholds and reports every comparison it
//! makes.

mod catalog;
pub mod fixtures;
pub mod oracle;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::DEFAULT_TOL;
use crate::space::SpaceSpec;

/// Where a threshold comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdSource {
    /// Structural fact (diagonal operators, exact identities of the algebra).
    Exact,
    /// A proven statement fixes the sign or identity; the tolerance is
    /// numerical headroom.
    Proven,
    /// Magnitude pinned by the independent oracle table.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparator {
    Le,
    Lt,
    Ge,
    Gt,
    /// Recorded, never gated.
    Report,
}

impl Comparator {
    pub fn holds(self, value: f64, threshold: f64) -> Option<bool> {
        match self {
            Comparator::Le => Some(value <= threshold),
            Comparator::Lt => Some(value < threshold),
            Comparator::Ge => Some(value >= threshold),
            Comparator::Gt => Some(value > threshold),
            Comparator::Report => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Le => "<=",
            Comparator::Lt => "<",
            Comparator::Ge => ">=",
            Comparator::Gt => ">",
            Comparator::Report => "~",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub space: Option<SpaceSpec>,
    #[serde(with = "crate::serde_ext")]
    pub value: f64,
    pub comparator: Comparator,
    pub threshold: f64,
    pub source: ThresholdSource,
    /// `None` for report-only checks.
    pub passed: Option<bool>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Exploratory scenario: results recorded without a verdict.
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub id: String,
    pub claim: String,
    pub exploratory: bool,
    pub verdict: Verdict,
    pub checks: Vec<CheckResult>,
    pub overrides: Overrides,
    pub runtime_ms: f64,
}

impl ScenarioReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.passed == Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioInfo {
    pub id: String,
    pub claim: String,
    pub exploratory: bool,
}

/// Order and tolerance overrides. `order`/`internal_order` replace the
/// single-order parameters of every probe (internal orders are raised to each
/// probe's policy minimum); `multiplier` scales all built-in orders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Overrides {
    pub order: Option<usize>,
    pub internal_order: Option<usize>,
    pub multiplier: Option<usize>,
    pub tol: Option<f64>,
}

impl Overrides {
    pub fn validate(&self) -> Result<()> {
        if self.multiplier == Some(0) {
            return Err(Error::InvalidArgument("multiplier must be >= 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {t}")));
            }
        }
        if let Some(n) = self.order {
            if n < 4 {
                return Err(Error::InvalidArgument(format!("order must be >= 4, got {n}")));
            }
        }
        Ok(())
    }
}

/// Resolved orders for one run.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Ctx {
    mult: usize,
    order: Option<usize>,
    internal: Option<usize>,
    pub tol: f64,
}

impl Ctx {
    fn new(o: &Overrides) -> Self {
        Ctx { mult: o.multiplier.unwrap_or(1), order: o.order, internal: o.internal_order, tol: o.tol.unwrap_or(DEFAULT_TOL) }
    }

    /// Compression order for a probe whose built-in order is `base`.
    pub fn n(&self, base: usize) -> usize {
        self.order.unwrap_or(base * self.mult)
    }

    /// Internal order, at least `min`.
    pub fn m(&self, base: usize, min: usize) -> usize {
        self.internal.unwrap_or(base * self.mult).max(min)
    }

    /// Orders of a sweep over several compressions; only the multiplier applies.
    pub fn sweep(&self, base: &[usize]) -> Vec<usize> {
        base.iter().map(|n| n * self.mult).collect()
    }
}

type Runner = fn(&Ctx) -> Result<Vec<CheckResult>>;

struct Entry {
    id: &'static str,
    claim: &'static str,
    exploratory: bool,
    run: Runner,
}

fn registry() -> &'static [Entry] {
    catalog::ENTRIES
}

/// All registered scenarios in id order.
pub fn list() -> Vec<ScenarioInfo> {
    registry()
        .iter()
        .map(|e| ScenarioInfo { id: e.id.to_string(), claim: e.claim.to_string(), exploratory: e.exploratory })
        .collect()
}

pub fn run(id: &str, overrides: &Overrides) -> Result<ScenarioReport> {
    overrides.validate()?;
    let entry = registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownScenario(id.to_string()))?;
    let start = Instant::now();
    let checks = (entry.run)(&Ctx::new(overrides))?;
    let verdict = if entry.exploratory {
        Verdict::Report
    } else if checks.iter().all(|c| c.passed != Some(false)) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ScenarioReport {
        id: entry.id.to_string(),
        claim: entry.claim.to_string(),
        exploratory: entry.exploratory,
        verdict,
        checks,
        overrides: *overrides,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs every scenario in parallel; results come back in id order.
pub fn run_all(overrides: &Overrides) -> Result<Vec<ScenarioReport>> {
    overrides.validate()?;
    registry().par_iter().map(|e| run(e.id, overrides)).collect()
}
