//! Monte-Carlo experiments over random channel draws, with deterministic
//! CSV output.

mod config;
mod csv_out;
mod experiment;

pub use config::{load_config, parse_config};
pub use csv_out::{emit_csv, fmt_sig6, write_csv, HEADER};
pub use experiment::{
    best_relay_at, gap_pct, run_experiment, summarize, CellSummary, ExperimentKind, ExperimentSpec, ResultRow,
};
