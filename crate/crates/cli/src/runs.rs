//! Batch drivers behind the subcommands.

use std::f64::consts::PI;
use std::time::Instant;

use dicke_berry::scaling::{QuarticConstants, QuarticOptions};
use dicke_berry::schrodinger::{solve_ground_with, KINETIC_QUARTIC};
use dicke_berry::{
    berry_phase, discrete_berry, exact_sx, expectation, fit_critical_exponent, fock_convergence,
    quartic_constants, thermo_berry, thermo_sx, BerryOptions, Error, ExponentFit, ModelParams,
    RefineOptions,
};

use crate::config::{CliError, Options};
use crate::pool::parallel_map;
use crate::record::SweepRecord;

fn berry_opts(tol: f64) -> BerryOptions {
    BerryOptions {
        refine: RefineOptions {
            tol,
            ..Default::default()
        },
        ..Default::default()
    }
}

fn compute_record(n: u32, d: f64, alpha: f64, tol: f64) -> Result<SweepRecord, CliError> {
    let start = Instant::now();
    let p = ModelParams::new(n, d, alpha)?;
    let r = berry_phase(&p, &berry_opts(tol))?;
    let grid = r.spectral.wavefunction.grid();
    Ok(SweepRecord {
        n_qubits: n,
        big_d: d,
        alpha,
        gamma_per_n: r.gamma_per_n,
        sx_per_n: r.sx_per_n,
        epsilon0: r.spectral.energy,
        q_max: grid.q_max(),
        m_points: grid.len(),
        refinement_steps: r.spectral.refinement_steps,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Thermodynamic-limit row (sentinel N = 0); epsilon0 holds the energy per
/// qubit, which is the only finite choice in the limit.
fn thermo_record(d: f64, alpha: f64) -> SweepRecord {
    let e_per_qubit = if alpha <= 1.0 {
        -d / 2.0
    } else {
        -(d / 4.0) * (alpha + 1.0 / alpha)
    };
    SweepRecord {
        n_qubits: 0,
        big_d: d,
        alpha,
        gamma_per_n: thermo_berry(alpha),
        sx_per_n: thermo_sx(alpha),
        epsilon0: e_per_qubit,
        q_max: 0.0,
        m_points: 0,
        refinement_steps: 0,
        wall_time_ms: 0.0,
    }
}

fn sort_records(records: &mut [SweepRecord]) {
    records.sort_by(|a, b| {
        a.n_qubits
            .cmp(&b.n_qubits)
            .then(a.alpha.partial_cmp(&b.alpha).unwrap())
    });
}

/// One record per (N, alpha) plus the limit curve, sorted by (N, alpha) with
/// the N = 0 sentinel rows first. Identical configs give byte-identical data
/// regardless of the worker count.
pub fn sweep_alpha(opts: &Options) -> Result<Vec<SweepRecord>, CliError> {
    let d = opts.single_d()?;
    let tasks: Vec<(u32, f64)> = opts
        .n_list
        .iter()
        .flat_map(|&n| opts.alphas.iter().map(move |&a| (n, a)))
        .collect();
    let computed = parallel_map(tasks.len(), opts.workers, |i| {
        let (n, alpha) = tasks[i];
        compute_record(n, d, alpha, opts.tol)
    });
    let mut records: Vec<SweepRecord> =
        computed.into_iter().collect::<Result<Vec<_>, CliError>>()?;
    records.extend(opts.alphas.iter().map(|&a| thermo_record(d, a)));
    sort_records(&mut records);
    Ok(records)
}

/// Scaling-run output: per-N records at fixed alpha, the closed-form
/// prediction columns and the fitted exponent.
pub struct ScalingOutput {
    pub records: Vec<SweepRecord>,
    pub pred_leading: Vec<f64>,
    pub pred_two_term: Vec<f64>,
    pub fit: ExponentFit,
    pub constants: QuarticConstants,
}

pub fn scaling_run(opts: &Options) -> Result<ScalingOutput, CliError> {
    let d = opts.single_d()?;
    let alpha = opts.alphas[0];
    let qc = quartic_constants(&QuarticOptions::default())?;

    let n_list = opts.n_list.clone();
    let computed = parallel_map(n_list.len(), opts.workers, |i| {
        compute_record(n_list[i], d, alpha, opts.tol)
    });
    let mut records: Vec<SweepRecord> =
        computed.into_iter().collect::<Result<Vec<_>, CliError>>()?;
    sort_records(&mut records);

    let mut pred_leading = Vec::with_capacity(records.len());
    let mut pred_two_term = Vec::with_capacity(records.len());
    for r in &records {
        let p = ModelParams::new(r.n_qubits, r.big_d, r.alpha)?;
        pred_leading.push(dicke_berry::finite_size_berry_prediction_leading(&p, &qc));
        pred_two_term.push(dicke_berry::finite_size_berry_prediction(&p, &qc));
    }
    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (f64::from(r.n_qubits), r.gamma_per_n))
        .collect();
    let fit = fit_critical_exponent(&points)?;
    Ok(ScalingOutput {
        records,
        pred_leading,
        pred_two_term,
        fit,
        constants: qc,
    })
}

/// Quartic-constant run: the two ground-state constants and the first-order
/// perturbation cross-check de0/dzeta at zeta = 0 (equal to c1).
pub struct QuarticOutput {
    pub constants: QuarticConstants,
    pub hellmann_feynman: f64,
}

pub fn quartic_run(tol: f64) -> Result<QuarticOutput, CliError> {
    let opts = QuarticOptions {
        tol: tol.min(1e-8),
        ..Default::default()
    };
    let base = dicke_berry::scaling::quartic_family_ground(0.0, &opts)?;
    let c0 = base.energy;
    let c1 = expectation(|x| x * x, &base.wavefunction);

    let grid = *base.wavefunction.grid();
    let delta = 1e-3;
    let solve_at = |zeta: f64| -> Result<f64, CliError> {
        let v: Vec<f64> = grid.nodes().map(|x| zeta * x * x + x * x * x * x).collect();
        Ok(solve_ground_with(&v, &grid, KINETIC_QUARTIC)?.energy)
    };
    let hf = (solve_at(delta)? - solve_at(-delta)?) / (2.0 * delta);
    Ok(QuarticOutput {
        constants: QuarticConstants { c0, c1 },
        hellmann_feynman: hf,
    })
}

/// One Born-Oppenheimer vs exact-diagonalization comparison row.
pub struct OracleRow {
    pub n_qubits: u32,
    pub big_d: f64,
    pub alpha: f64,
    pub n_max: usize,
    pub gap: f64,
    pub sx_per_n_bo: f64,
    pub sx_per_n_exact: f64,
    pub gamma_bo_mod_2pi: f64,
    /// NaN when the overlap loop refuses a quasi-degenerate ground state.
    pub gamma_disc: f64,
    pub epsilon0_bo: f64,
    /// Exact ground energy shifted by the oscillator zero point (+1/2), the
    /// convention of the adiabatic energy.
    pub e0_exact_offset: f64,
}

/// Loop steps used by the comparison table.
pub const ORACLE_LOOP_STEPS: usize = 2000;

pub fn oracle_compare(opts: &Options) -> Result<Vec<OracleRow>, CliError> {
    let mut rows = Vec::new();
    for &d in &opts.d_list {
        for &n in &opts.n_list {
            for &alpha in &opts.alphas {
                let p = ModelParams::new(n, d, alpha)?;
                let conv = fock_convergence(&p, 16)?;
                let sx_exact = exact_sx(&conv.ground.vector, &conv.basis) / f64::from(n);
                let gamma_disc = match discrete_berry(&p, &conv.basis, ORACLE_LOOP_STEPS) {
                    Ok(g) => g,
                    Err(Error::QuasiDegenerate { .. }) => f64::NAN,
                    Err(e) => return Err(e.into()),
                };
                let bo = berry_phase(&p, &berry_opts(opts.tol))?;
                rows.push(OracleRow {
                    n_qubits: n,
                    big_d: d,
                    alpha,
                    n_max: conv.basis.n_max(),
                    gap: conv.ground.gap,
                    sx_per_n_bo: bo.sx_per_n,
                    sx_per_n_exact: sx_exact,
                    gamma_bo_mod_2pi: bo.gamma.rem_euclid(2.0 * PI),
                    gamma_disc,
                    epsilon0_bo: bo.spectral.energy,
                    e0_exact_offset: conv.ground.energy + 0.5,
                });
            }
        }
    }
    Ok(rows)
}

/// Sweep plus the per-curve finite-difference derivative d(gamma/N)/d(alpha),
/// grouped by N (the limit curve included).
pub fn derivative_run(opts: &Options) -> Result<(Vec<SweepRecord>, Vec<f64>), CliError> {
    let records = sweep_alpha(opts)?;
    let mut derivative = vec![0.0; records.len()];
    let mut start = 0;
    while start < records.len() {
        let n = records[start].n_qubits;
        let end = records[start..]
            .iter()
            .position(|r| r.n_qubits != n)
            .map(|p| start + p)
            .unwrap_or(records.len());
        let group = &records[start..end];
        let alphas: Vec<f64> = group.iter().map(|r| r.alpha).collect();
        let gammas: Vec<f64> = group.iter().map(|r| r.gamma_per_n).collect();
        let deriv = dicke_berry::berry_derivative(&alphas, &gammas).map_err(|e| match e {
            Error::NonUniformSpacing { .. } => {
                CliError::Usage("derivative needs a uniformly spaced --alpha range".into())
            }
            other => CliError::from(other),
        })?;
        derivative[start..end].copy_from_slice(&deriv);
        start = end;
    }
    Ok((records, derivative))
}
