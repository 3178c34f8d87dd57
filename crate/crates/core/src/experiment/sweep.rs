use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::batch::{run_specs, trial_seed, TrialRecord, TrialSpec};
use super::config::{ExperimentConfig, ExperimentError};

/// Threshold bracket for one `n`. `b_lower` is the largest probed bias with
/// a Walker win rate of at least one half and `b_upper` the smallest probed
/// bias above it with a lower rate; either is empty when the range has no
/// such bias.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub b_lower: Option<usize>,
    pub b_upper: Option<usize>,
    pub rate_lower: Option<f64>,
    pub rate_upper: Option<f64>,
    /// False when some probe below the bracket lost or some probe above it
    /// won; the widened bracket then spans every crossing seen.
    pub monotone: bool,
    pub widened_lower: Option<usize>,
    pub widened_upper: Option<usize>,
    pub probes: usize,
    /// `0.25 n / ln n` and `n / ln n`.
    pub ref_quarter: f64,
    pub ref_full: f64,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub records: Vec<TrialRecord>,
}

/// Binary search on the Walker win rate over `b_range`, separately for each
/// `n`. Probing bias `b` at the `i`-th `n` uses cell index
/// `i * 2^32 + b` for the trial seeds.
pub fn bias_sweep(cfg: &ExperimentConfig) -> Result<SweepResult, ExperimentError> {
    cfg.validate()?;
    let [lo, hi] = cfg
        .b_range
        .ok_or_else(|| ExperimentError::InvalidConfig("sweep needs b_range".into()))?;
    let mut rows = Vec::new();
    let mut records = Vec::new();
    let mut next_id = 0u64;
    for (ni, &n) in cfg.n.iter().enumerate() {
        let mut rates: BTreeMap<usize, f64> = BTreeMap::new();
        let mut probe = |b: usize, records: &mut Vec<TrialRecord>| -> Result<f64, ExperimentError> {
            if let Some(&r) = rates.get(&b) {
                return Ok(r);
            }
            let cell = ((ni as u64) << 32) | b as u64;
            let specs: Vec<TrialSpec> = (0..cfg.trials)
                .map(|t| {
                    let spec = TrialSpec {
                        trial_id: next_id,
                        n,
                        b,
                        seed: trial_seed(cfg.master_seed, cell, t as u64),
                    };
                    next_id += 1;
                    spec
                })
                .collect();
            let out = run_specs(cfg, &specs)?;
            let wins = out.iter().filter(|(r, _)| r.winner == "walker").count();
            records.extend(out.into_iter().map(|(r, _)| r));
            let rate = wins as f64 / cfg.trials as f64;
            rates.insert(b, rate);
            Ok(rate)
        };
        let wins = |r: f64| r >= 0.5;
        let (mut good, mut bad) = (None, None);
        if wins(probe(lo, &mut records)?) {
            good = Some(lo);
            if wins(probe(hi, &mut records)?) {
                good = Some(hi);
            } else {
                bad = Some(hi);
            }
        } else {
            bad = Some(lo);
        }
        if let (Some(mut g), Some(mut b)) = (good, bad) {
            while b - g > 1 {
                let mid = g + (b - g) / 2;
                if wins(probe(mid, &mut records)?) {
                    g = mid;
                } else {
                    b = mid;
                }
            }
            good = Some(g);
            bad = Some(b);
        }
        let last_good = rates.iter().filter(|(_, &r)| wins(r)).map(|(&b, _)| b).max();
        let first_bad = rates.iter().filter(|(_, &r)| !wins(r)).map(|(&b, _)| b).min();
        let monotone = match (last_good, first_bad) {
            (Some(g), Some(b)) => g < b,
            _ => true,
        };
        let nf = n as f64;
        rows.push(SweepRow {
            n,
            b_lower: good,
            b_upper: bad,
            rate_lower: good.map(|b| rates[&b]),
            rate_upper: bad.map(|b| rates[&b]),
            monotone,
            widened_lower: if monotone {
                None
            } else {
                first_bad.map(|b| b.saturating_sub(1).max(lo))
            },
            widened_upper: if monotone {
                None
            } else {
                last_good.map(|g| (g + 1).min(hi))
            },
            probes: rates.len(),
            ref_quarter: 0.25 * nf / nf.ln(),
            ref_full: nf / nf.ln(),
        });
    }
    Ok(SweepResult { rows, records })
}
