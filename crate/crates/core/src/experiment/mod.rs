//! Seeded batches, bias sweeps, audit reports and Box game tables.
//!
//! Records are CSV with a leading `#schema=trial-records/1` line; the
//! columns are [`RECORD_COLUMNS`]. `wallclock_ms` is `NA` unless the config
//! sets `timing = true`, so a rerun with the same master seed reproduces
//! every output byte for byte.

mod batch;
mod config;
mod report;
mod sweep;

pub use batch::{
    read_records, run_batch, run_specs, run_trial, splitmix64, summarize, trial_seed, write_batch, write_csv,
    write_records, BatchResult, CellSummary, TrialRecord, TrialSpec, RECORDS_SCHEMA, RECORD_COLUMNS,
};
pub use config::{parse_ratio, ExperimentConfig, ExperimentError, OUTPUT_DIR_ENV};
pub use report::{audit_report, boxgame_tables, read_transcript_dir, AuditReport, BoxTableRow, CheckTally};
pub use sweep::{bias_sweep, SweepResult, SweepRow};
