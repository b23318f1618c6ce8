//! Sweep records and their CSV serialization.
//!
//! Data files are byte-deterministic: fixed column order, 12 significant
//! digits, newline-terminated rows, no timestamps. Wall times are
//! measurement noise, so they go to a `<stem>.timing.csv` sidecar instead of
//! the data file.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::CliError;

/// One (N, alpha) sweep point; `n_qubits == 0` tags a thermodynamic-limit
/// row, whose `epsilon0` column holds the energy per qubit (the total
/// diverges with N).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n_qubits: u32,
    pub big_d: f64,
    pub alpha: f64,
    pub gamma_per_n: f64,
    pub sx_per_n: f64,
    pub epsilon0: f64,
    pub q_max: f64,
    pub m_points: usize,
    pub refinement_steps: usize,
    pub wall_time_ms: f64,
}

pub const CSV_HEADER: &str =
    "n_qubits,big_d,alpha,gamma_per_n,sx_per_n,epsilon0,q_max,m_points,refinement_steps";

/// 12 significant digits, compact scientific form, '.' decimal point.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

fn record_line(r: &SweepRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}\n",
        r.n_qubits,
        fmt_sig(r.big_d),
        fmt_sig(r.alpha),
        fmt_sig(r.gamma_per_n),
        fmt_sig(r.sx_per_n),
        fmt_sig(r.epsilon0),
        fmt_sig(r.q_max),
        r.m_points,
        r.refinement_steps,
    )
}

/// Render the deterministic data CSV.
pub fn render_csv(records: &[SweepRecord]) -> String {
    let mut out = String::with_capacity(64 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&record_line(r));
    }
    out
}

/// Data CSV with extra per-record numeric columns appended (scaling
/// predictions, derivatives).
pub fn render_csv_extended(
    records: &[SweepRecord],
    extra_names: &[&str],
    extra_cols: &[Vec<f64>],
) -> String {
    assert_eq!(extra_names.len(), extra_cols.len());
    for col in extra_cols {
        assert_eq!(col.len(), records.len());
    }
    let mut out = String::with_capacity(80 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    for name in extra_names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, r) in records.iter().enumerate() {
        let mut line = record_line(r);
        line.pop();
        out.push_str(&line);
        for col in extra_cols {
            out.push(',');
            out.push_str(&fmt_sig(col[i]));
        }
        out.push('\n');
    }
    out
}

/// Write the data CSV to `path`.
pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create '{}': {e}", path.display())))?;
    file.write_all(render_csv(records).as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))?;
    Ok(())
}

/// Sidecar path for wall times: `sweep.csv` -> `sweep.timing.csv`.
pub fn timing_path(data_path: &Path) -> PathBuf {
    data_path.with_extension("timing.csv")
}

/// Write the wall-time sidecar next to the data file.
pub fn emit_timing_sidecar(records: &[SweepRecord], data_path: &Path) -> Result<(), CliError> {
    let path = timing_path(data_path);
    let mut out = String::from("n_qubits,big_d,alpha,wall_time_ms\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{:.3}\n",
            r.n_qubits,
            fmt_sig(r.big_d),
            fmt_sig(r.alpha),
            r.wall_time_ms
        ));
    }
    std::fs::write(&path, out)
        .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))?;
    Ok(())
}

/// Parse a data CSV produced by `render_csv` (wall times read back as 0).
pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(CliError::Io(format!(
                "unexpected CSV header: {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 9 {
            return Err(CliError::Io(format!(
                "line {}: expected 9 columns, found {}",
                lineno + 2,
                cols.len()
            )));
        }
        let bad = |what: &str| CliError::Io(format!("line {}: bad {what}", lineno + 2));
        records.push(SweepRecord {
            n_qubits: cols[0].parse().map_err(|_| bad("n_qubits"))?,
            big_d: cols[1].parse().map_err(|_| bad("big_d"))?,
            alpha: cols[2].parse().map_err(|_| bad("alpha"))?,
            gamma_per_n: cols[3].parse().map_err(|_| bad("gamma_per_n"))?,
            sx_per_n: cols[4].parse().map_err(|_| bad("sx_per_n"))?,
            epsilon0: cols[5].parse().map_err(|_| bad("epsilon0"))?,
            q_max: cols[6].parse().map_err(|_| bad("q_max"))?,
            m_points: cols[7].parse().map_err(|_| bad("m_points"))?,
            refinement_steps: cols[8].parse().map_err(|_| bad("refinement_steps"))?,
            wall_time_ms: 0.0,
        });
    }
    Ok(records)
}
