//! Batch front-end for the dicke-berry library: parameter sweeps, scaling
//! runs, oracle comparisons, CSV persistence and SVG plots.

pub mod config;
pub mod pool;
pub mod record;
pub mod runs;
pub mod svg;

use std::path::Path;

use config::{CliError, Command, Options};
use record::SweepRecord;
use svg::{Axes, Series};

fn series_label(n: u32) -> String {
    if n == 0 {
        "N→∞".to_string()
    } else {
        format!("N={n}")
    }
}

fn group_series<F: Fn(&SweepRecord) -> (f64, f64)>(
    records: &[SweepRecord],
    point: F,
) -> Vec<Series> {
    let mut series: Vec<Series> = Vec::new();
    for r in records {
        let label = series_label(r.n_qubits);
        if series.last().map(|s| s.label != label).unwrap_or(true) {
            series.push(Series {
                label,
                points: Vec::new(),
            });
        }
        series.last_mut().unwrap().points.push(point(r));
    }
    // Sentinel rows sort first; draw the limit curve last so it sits on top
    // of the legend in reading order.
    let shift = usize::from(!series.is_empty() && series[0].label == "N→∞");
    series.rotate_left(shift);
    series
}

fn write_outputs(
    records: &[SweepRecord],
    extra: Option<(&[&str], &[Vec<f64>])>,
    opts: &Options,
    plot: Option<(&[Series], &str, &str, Axes)>,
) -> Result<(), CliError> {
    if let Some(out) = &opts.out {
        match extra {
            None => record::emit_csv(records, out)?,
            Some((names, cols)) => {
                let text = record::render_csv_extended(records, names, cols);
                std::fs::write(out, text)
                    .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", out.display())))?;
            }
        }
        record::emit_timing_sidecar(records, out)?;
        println!("wrote {} records to {}", records.len(), out.display());
    } else {
        match extra {
            None => print!("{}", record::render_csv(records)),
            Some((names, cols)) => print!("{}", record::render_csv_extended(records, names, cols)),
        }
    }
    if let (Some(path), Some((series, xl, yl, axes))) = (&opts.svg, plot) {
        svg::emit_svg(series, path, xl, yl, axes)?;
        println!("wrote plot to {}", path.display());
    }
    Ok(())
}

fn run_sweep_alpha(opts: &Options) -> Result<(), CliError> {
    let records = runs::sweep_alpha(opts)?;
    let series = group_series(&records, |r| (r.alpha, r.gamma_per_n));
    write_outputs(
        &records,
        None,
        opts,
        Some((&series, "alpha", "gamma/N", Axes::Linear)),
    )
}

fn run_derivative(opts: &Options) -> Result<(), CliError> {
    let (records, deriv) = runs::derivative_run(opts)?;
    let series: Vec<Series> = {
        let pairs: Vec<(u32, f64, f64)> = records
            .iter()
            .zip(&deriv)
            .map(|(r, &d)| (r.n_qubits, r.alpha, d))
            .collect();
        let mut out: Vec<Series> = Vec::new();
        for (n, a, d) in pairs {
            let label = series_label(n);
            if out.last().map(|s| s.label != label).unwrap_or(true) {
                out.push(Series {
                    label,
                    points: Vec::new(),
                });
            }
            out.last_mut().unwrap().points.push((a, d));
        }
        out
    };
    write_outputs(
        &records,
        Some((&["dgamma_dalpha"], std::slice::from_ref(&deriv))),
        opts,
        Some((&series, "alpha", "d(gamma/N)/d(alpha)", Axes::Linear)),
    )
}

fn run_scaling(opts: &Options) -> Result<(), CliError> {
    let out = runs::scaling_run(opts)?;
    let mut series = vec![
        Series {
            label: "computed".into(),
            points: out
                .records
                .iter()
                .map(|r| (f64::from(r.n_qubits), r.gamma_per_n))
                .collect(),
        },
        Series {
            label: "two-term prediction".into(),
            points: out
                .records
                .iter()
                .zip(&out.pred_two_term)
                .map(|(r, &p)| (f64::from(r.n_qubits), p))
                .collect(),
        },
        Series {
            label: "leading N^(-2/3)".into(),
            points: out
                .records
                .iter()
                .zip(&out.pred_leading)
                .map(|(r, &p)| (f64::from(r.n_qubits), p))
                .collect(),
        },
    ];
    series.retain(|s| !s.points.is_empty());

    println!(
        "quartic constants: c0 = {:.6}, c1 = {:.6}",
        out.constants.c0, out.constants.c1
    );
    println!(
        "log-log fit over {} points: slope = {:.5}, intercept = {:.5}, rms residual = {:.2e}",
        out.records.len(),
        out.fit.slope,
        out.fit.intercept,
        out.fit.rms_residual
    );
    write_outputs(
        &out.records,
        Some((
            &["pred_leading", "pred_two_term"],
            &[out.pred_leading.clone(), out.pred_two_term.clone()],
        )),
        opts,
        Some((&series, "N", "gamma/N", Axes::LogLog)),
    )
}

fn run_quartic(opts: &Options) -> Result<(), CliError> {
    let out = runs::quartic_run(opts.tol)?;
    println!("c0 = {:.8}", out.constants.c0);
    println!("c1 = {:.8}", out.constants.c1);
    println!(
        "Hellmann-Feynman de0/dzeta|0 = {:.8} (must match c1)",
        out.hellmann_feynman
    );
    if let Some(path) = &opts.out {
        let text = format!(
            "c0,c1,hellmann_feynman\n{},{},{}\n",
            record::fmt_sig(out.constants.c0),
            record::fmt_sig(out.constants.c1),
            record::fmt_sig(out.hellmann_feynman),
        );
        std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))?;
        println!("wrote constants to {}", path.display());
    }
    Ok(())
}

const ORACLE_HEADER: &str = "n_qubits,big_d,alpha,n_max,gap,sx_per_n_bo,sx_per_n_exact,\
gamma_bo_mod2pi,gamma_disc,epsilon0_bo,e0_exact_offset";

fn oracle_csv(rows: &[runs::OracleRow]) -> String {
    let mut out = String::from(ORACLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.n_qubits,
            record::fmt_sig(r.big_d),
            record::fmt_sig(r.alpha),
            r.n_max,
            record::fmt_sig(r.gap),
            record::fmt_sig(r.sx_per_n_bo),
            record::fmt_sig(r.sx_per_n_exact),
            record::fmt_sig(r.gamma_bo_mod_2pi),
            record::fmt_sig(r.gamma_disc),
            record::fmt_sig(r.epsilon0_bo),
            record::fmt_sig(r.e0_exact_offset),
        ));
    }
    out
}

fn run_oracle_compare(opts: &Options) -> Result<(), CliError> {
    let rows = runs::oracle_compare(opts)?;
    println!(
        "{:>3} {:>6} {:>6} {:>6} {:>10} {:>12} {:>12} {:>10} {:>10} {:>12} {:>12}",
        "N",
        "D",
        "alpha",
        "n_max",
        "gap",
        "sx/N (BO)",
        "sx/N (ex)",
        "g_BO%2pi",
        "g_disc",
        "eps0 (BO)",
        "E0+1/2 (ex)"
    );
    for r in &rows {
        println!(
            "{:>3} {:>6} {:>6} {:>6} {:>10.3e} {:>12.8} {:>12.8} {:>10.6} {:>10.6} {:>12.6} {:>12.6}",
            r.n_qubits,
            r.big_d,
            r.alpha,
            r.n_max,
            r.gap,
            r.sx_per_n_bo,
            r.sx_per_n_exact,
            r.gamma_bo_mod_2pi,
            r.gamma_disc,
            r.epsilon0_bo,
            r.e0_exact_offset,
        );
    }
    if let Some(path) = &opts.out {
        std::fs::write(path, oracle_csv(&rows))
            .map_err(|e| CliError::Io(format!("cannot write '{}': {e}", path.display())))?;
        println!("wrote {} rows to {}", rows.len(), path.display());
    }
    Ok(())
}

/// Parse argv (without the program name) and run the requested command.
pub fn run(args: &[String]) -> Result<(), CliError> {
    let (command, opts) = config::parse_args(args)?;
    for path in opts.out.iter().chain(opts.svg.iter()) {
        preflight_out_path(path)?;
    }
    match command {
        Command::SweepAlpha => run_sweep_alpha(&opts),
        Command::Scaling => run_scaling(&opts),
        Command::Quartic => run_quartic(&opts),
        Command::OracleCompare => run_oracle_compare(&opts),
        Command::Derivative => run_derivative(&opts),
    }
}

/// Check that a path's parent directory exists before a long run starts.
pub fn preflight_out_path(path: &Path) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() && !parent.is_dir() {
            return Err(CliError::Io(format!(
                "output directory '{}' does not exist",
                parent.display()
            )));
        }
    }
    Ok(())
}
