use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentError;
use crate::audit::{Check, Severity};
use crate::board::Transcript;
use crate::boxgame::{
    exact_box_game_winner, f, near_equal_sizes, rational_to_f64, BoundsTable, BoxPlayer, ORACLE_MAX_ELEMENTS,
};

/// Audit events of one check summed over many games.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckTally {
    pub check: String,
    pub statistical: bool,
    pub events: u64,
    pub hard: u64,
    pub flag: u64,
    pub in_regime: u64,
    pub out_of_regime: u64,
    /// Sum of the per-event item counts.
    pub items: u64,
    /// Games with at least one event.
    pub games: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AuditReport {
    pub games: usize,
    pub checks: Vec<CheckTally>,
}

impl AuditReport {
    pub fn hard_total(&self) -> u64 {
        self.checks.iter().map(|c| c.hard).sum()
    }

    pub fn tally(&self, check: Check) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.check == check.label())
    }
}

/// Per-check violation counts; checks without events are left out.
pub fn audit_report<'a>(transcripts: impl IntoIterator<Item = &'a Transcript>) -> AuditReport {
    let mut by: BTreeMap<Check, CheckTally> = BTreeMap::new();
    let mut games = 0;
    for t in transcripts {
        games += 1;
        let mut seen = Vec::new();
        for e in t.audit_events() {
            let c = by.entry(e.check).or_insert_with(|| CheckTally {
                check: e.check.label().to_string(),
                statistical: e.check.is_statistical(),
                ..Default::default()
            });
            c.events += 1;
            match e.severity {
                Severity::Hard => c.hard += 1,
                Severity::Flag => c.flag += 1,
            }
            if e.in_regime {
                c.in_regime += 1;
            } else {
                c.out_of_regime += 1;
            }
            c.items += e.count as u64;
            if !seen.contains(&e.check) {
                seen.push(e.check);
                c.games += 1;
            }
        }
    }
    AuditReport {
        games,
        checks: by.into_values().collect(),
    }
}

/// Reads every `*.jsonl` file in `dir`, in file-name order.
pub fn read_transcript_dir(dir: &Path) -> Result<Vec<Transcript>, ExperimentError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let f = std::io::BufReader::new(std::fs::File::open(p)?);
            Transcript::read_jsonl(f).map_err(|e| ExperimentError::InvalidConfig(format!("{}: {e}", p.display())))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxTableRow {
    pub k: u64,
    pub a: u64,
    pub lower: f64,
    pub f: String,
    pub upper: f64,
    /// `ok` when the oracle agrees at `t = f` and `t = f + 1`, `mismatch`
    /// otherwise, `NA` when the instance is too large for it.
    pub oracle_check: String,
}

/// `f(k, a)` with its harmonic bounds for `1 <= k <= k_max`, `1 <= a <= a_max`.
pub fn boxgame_tables(k_max: u64, a_max: u64) -> Vec<BoxTableRow> {
    let table = BoundsTable::new(k_max.max(1));
    let mut rows = Vec::new();
    for k in 1..=k_max {
        for a in 1..=a_max {
            let (lo, hi) = table.bounds(k, a);
            let fv = f(k, a);
            let oracle_check = match fv {
                Ok(v) if (v as u64) < ORACLE_MAX_ELEMENTS => {
                    let v = v as u64;
                    let at = exact_box_game_winner(&near_equal_sizes(k, v), a);
                    let above = exact_box_game_winner(&near_equal_sizes(k, v + 1), a);
                    if at == Ok(BoxPlayer::Maker) && above == Ok(BoxPlayer::Breaker) {
                        "ok"
                    } else {
                        "mismatch"
                    }
                }
                _ => "NA",
            };
            rows.push(BoxTableRow {
                k,
                a,
                lower: rational_to_f64(&lo),
                f: fv.map(|v| v.to_string()).unwrap_or_else(|_| "overflow".into()),
                upper: rational_to_f64(&hi),
                oracle_check: oracle_check.into(),
            });
        }
    }
    rows
}
