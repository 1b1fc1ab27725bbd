use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::ResultRow;

pub const HEADER: [&str; 19] = [
    "experiment",
    "scenario",
    "zeta",
    "ibar_db",
    "pmax_db",
    "fixed_db",
    "sweep_db",
    "seed",
    "channel_digest",
    "relay",
    "rate",
    "oracle_rate",
    "gap_pct",
    "p_s",
    "p_r",
    "feasible",
    "check",
    "checked",
    "failures",
];

/// Six significant digits: plain decimals for moderate magnitudes,
/// scientific notation otherwise.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn record(r: &ResultRow) -> [String; 19] {
    [
        r.experiment.name().to_string(),
        opt(r.scenario, |s| s.name().to_string()),
        fmt_sig6(r.zeta),
        opt(r.ibar_db, fmt_sig6),
        opt(r.pmax_db, fmt_sig6),
        opt(r.fixed_db, fmt_sig6),
        opt(r.sweep_db, fmt_sig6),
        opt(r.seed, |s| s.to_string()),
        opt(r.channel_digest, |d| format!("{d:016x}")),
        opt(r.relay, |k| k.to_string()),
        fmt_sig6(r.rate),
        opt(r.oracle_rate, fmt_sig6),
        opt(r.gap_pct, fmt_sig6),
        opt(r.p_s, fmt_sig6),
        opt(r.p_r, fmt_sig6),
        opt(r.feasible, |b| b.to_string()),
        r.check.clone().unwrap_or_default(),
        opt(r.checked, |n| n.to_string()),
        opt(r.failures, |n| n.to_string()),
    ]
}

/// Writes the header and one line per row, LF-terminated.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record(record(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(rows, std::io::BufWriter::new(file)).map_err(|source| Error::Csv {
        path: path.to_path_buf(),
        source,
    })
}
