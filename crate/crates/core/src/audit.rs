//! Runtime audit events raised by strategies while they play.
//!
//! Every quantitative guarantee a strategy relies on is re-checked during
//! play. Checks of a deterministic bound are `hard` when the run is inside
//! the parameter regime where the bound is guaranteed and the audit mode is
//! [`AuditMode::Hard`]; everything else is logged as a flag.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Connectivity walker: Breaker degree of the chosen target `a`
    /// against `2b ln n - b`.
    TargetDegree,
    /// Connectivity walker: `d_B(w) + d_B(a)` against `4b ln n - b`.
    ConnectorDegreeSum,
    /// Connectivity walker: `d_B(w) + d_B(a) < n - 2`.
    ConnectorFeasible,
    /// Simulated MinBox: adversary elements between two Maker claims
    /// against the declared per-exchange budget.
    ExchangeBudget,
    /// Simulated MinBox: `w_M(F_v) < (1 + 2p) n` and `w_B(F_v) < n`.
    BoxLoad,
    /// Simulated MinBox: an increment hit a box with no free element.
    BoxExhausted,
    /// Active boxes belong to vertices of small Breaker degree.
    ActiveBoxDegree,
    /// Walker found a connector to the next exposure vertex.
    ConnectorExists,
    /// A vertex had at most one exposure round without success.
    TypeIOnce,
    /// Max-danger play keeps `dang(F) <= budget (ln n + 1)` on active boxes.
    DangerBound,
    /// Every pair exposed exactly once by the end of the game.
    ExposureComplete,
    /// `G'` is contained in both `H` and Walker's graph.
    ExposedSubgraph,
    /// Isolation breaker: clique pairwise Breaker-owned, Walker-free, and
    /// shrinking by at most one vertex per round.
    CliqueIntegrity,
    /// Statistical: per-vertex failures of type II above `0.9 eps (n-1) p`.
    TypeIIExcess,
    /// Statistical: some pairs were left for the end-of-game sweep instead
    /// of being exposed during the main stage.
    DeferredExposure,
}

impl Check {
    pub const ALL: [Check; 15] = [
        Check::TargetDegree,
        Check::ConnectorDegreeSum,
        Check::ConnectorFeasible,
        Check::ExchangeBudget,
        Check::BoxLoad,
        Check::BoxExhausted,
        Check::ActiveBoxDegree,
        Check::ConnectorExists,
        Check::TypeIOnce,
        Check::DangerBound,
        Check::ExposureComplete,
        Check::ExposedSubgraph,
        Check::CliqueIntegrity,
        Check::TypeIIExcess,
        Check::DeferredExposure,
    ];

    pub fn is_statistical(self) -> bool {
        matches!(self, Check::TypeIIExcess | Check::DeferredExposure)
    }

    pub fn label(self) -> &'static str {
        match self {
            Check::TargetDegree => "target_degree",
            Check::ConnectorDegreeSum => "connector_degree_sum",
            Check::ConnectorFeasible => "connector_feasible",
            Check::ExchangeBudget => "exchange_budget",
            Check::BoxLoad => "box_load",
            Check::BoxExhausted => "box_exhausted",
            Check::ActiveBoxDegree => "active_box_degree",
            Check::ConnectorExists => "connector_exists",
            Check::TypeIOnce => "type_i_once",
            Check::DangerBound => "danger_bound",
            Check::ExposureComplete => "exposure_complete",
            Check::ExposedSubgraph => "exposed_subgraph",
            Check::CliqueIntegrity => "clique_integrity",
            Check::TypeIIExcess => "type_ii_excess",
            Check::DeferredExposure => "deferred_exposure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Hard,
    Flag,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditMode {
    #[default]
    Hard,
    Flag,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditEvent {
    pub check: Check,
    pub severity: Severity,
    pub in_regime: bool,
    pub round: u32,
    /// Observed value and the bound it was compared with.
    pub value: f64,
    pub bound: f64,
    /// Number of offending items folded into this event (e.g. vertices).
    pub count: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Decides the severity of events for one strategy instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditPolicy {
    pub mode: AuditMode,
    pub in_regime: bool,
}

impl AuditPolicy {
    pub fn new(mode: AuditMode, in_regime: bool) -> Self {
        AuditPolicy { mode, in_regime }
    }

    pub fn severity(&self, check: Check) -> Severity {
        if self.mode == AuditMode::Hard && self.in_regime && !check.is_statistical() {
            Severity::Hard
        } else {
            Severity::Flag
        }
    }

    pub fn event(
        &self,
        check: Check,
        round: u32,
        value: f64,
        bound: f64,
        count: u32,
        detail: impl Into<String>,
    ) -> AuditEvent {
        AuditEvent {
            check,
            severity: self.severity(check),
            in_regime: self.in_regime,
            round,
            value,
            bound,
            count,
            detail: detail.into(),
        }
    }
}

/// `b <= (1/4 - eps) n / ln n` with `0 < eps < 1/4`.
pub fn connectivity_regime(n: usize, b: usize, eps: f64) -> bool {
    eps > 0.0 && eps < 0.25 && (b as f64) <= (0.25 - eps) * n as f64 / (n as f64).ln()
}

/// `0 < eps <= 1/100`, `10 ln n / (eps n) <= p < 1` and `b <= eps / (60 p)`.
pub fn hamiltonicity_regime(n: usize, b: usize, p: f64, eps: f64) -> bool {
    let nf = n as f64;
    eps > 0.0 && eps <= 0.01 && p < 1.0 && p >= 10.0 * nf.ln() / (eps * nf) && (b as f64) <= eps / (60.0 * p)
}
