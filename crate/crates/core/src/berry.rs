//! Magnetization and Berry phase of the Born-Oppenheimer ground state.
//!
//! The production route evaluates gamma = N*pi*(1 + `<Sx>/N`) with
//! `<Sx>/N` = -integral of phi0(q)^2 * D/E(q): a single 1D quadrature over the
//! converged oscillator ground state. The direct route integrates the
//! connection A(q, phi) over the full (q, phi) loop and is kept as a
//! cross-check; the two must agree after one global orientation factor.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::schrodinger::{
    build_grid, expectation, refine_until_converged, GridOptions, RefineOptions, SpectralResult,
    WaveFunction,
};

/// Number of phi nodes of the periodic trapezoid used by the direct route.
pub const DEFAULT_PHI_NODES: usize = 720;

/// Orientation factor aligning the direct (q, phi) quadrature with the
/// reduced formula: traversing phi from 0 to 2*pi integrates the connection
/// to -N*pi*(1 - D/E(q)) per unit of |phi0|^2, the reverse orientation of the
/// loop behind gamma = N*pi*(1 + `<Sx>/N`). Fixed once, globally.
pub const BERRY_LOOP_SIGN: f64 = -1.0;

/// Options bundle for the ground-state solve behind the Berry phase.
#[derive(Debug, Clone, Copy, Default)]
pub struct BerryOptions {
    pub grid: GridOptions,
    pub refine: RefineOptions,
}

/// Bloch angles of one qubit of the product ground state at fixed (q, phi):
/// cos(beta) = L q cos(phi) / (sqrt(N) E(q)),
/// zeta_qubit = arctan(L q sin(phi) / (sqrt(N) D)).
#[derive(Debug, Clone, Copy)]
pub struct QubitBlochState {
    pub beta: f64,
    pub zeta_qubit: f64,
}

impl QubitBlochState {
    pub fn new(p: &ModelParams, q: f64, phi: f64) -> Self {
        let u = p.big_l() * q / p.n_f().sqrt();
        let cos_beta = (u * phi.cos() / p.adiabatic_energy(q)).clamp(-1.0, 1.0);
        QubitBlochState {
            beta: cos_beta.acos(),
            zeta_qubit: (u * phi.sin() / p.big_d()).atan(),
        }
    }
}

/// Berry connection A(q, phi) of the qubit register:
/// A = -(N D / 2E) * (L q cos(phi)/sqrt(N)) / (E - L q cos(phi)/sqrt(N)).
/// The denominator is bounded below by D^2/(2E) > 0, so A is finite
/// everywhere; A(0, phi) = A(q, pi/2) = 0.
pub fn connection(p: &ModelParams, q: f64, phi: f64) -> f64 {
    let e = p.adiabatic_energy(q);
    let u = p.big_l() * q * phi.cos() / p.n_f().sqrt();
    -(p.n_f() * p.big_d() / (2.0 * e)) * u / (e - u)
}

/// Loop integral of the connection over phi in [0, 2*pi) by the periodic
/// trapezoid rule with `phi_nodes` nodes. Reduces in closed form to
/// -N*pi*(1 - D/E(q)).
pub fn phi_loop_integral(p: &ModelParams, q: f64, phi_nodes: usize) -> f64 {
    let k = phi_nodes.max(4);
    let dphi = 2.0 * PI / k as f64;
    let mut acc = 0.0;
    for i in 0..k {
        acc += connection(p, q, i as f64 * dphi);
    }
    acc * dphi
}

/// Magnetization per qubit `<Sx>/N` = -integral phi0^2(q) D/E(q) dq over a
/// converged ground state of the adiabatic potential of `p`. Dividing by the
/// quadrature of phi0^2 itself keeps the value at exactly -1 for zero
/// coupling instead of -1 plus summation rounding.
pub fn sx_mean(p: &ModelParams, wf: &WaveFunction) -> f64 {
    let params = *p;
    let num = expectation(move |q| params.big_d() / params.adiabatic_energy(q), wf);
    -num / expectation(|_| 1.0, wf)
}

/// Berry phase of the ground-state loop, with provenance.
#[derive(Debug, Clone)]
pub struct BerryResult {
    /// Raw phase N*pi*(1 + `<Sx>/N`), not reduced mod 2*pi.
    pub gamma: f64,
    pub gamma_per_n: f64,
    pub sx_per_n: f64,
    pub spectral: SpectralResult,
}

/// Solve the adiabatic ground state of `p` and evaluate the Berry phase
/// through the reduced magnetization formula.
pub fn berry_phase(p: &ModelParams, opts: &BerryOptions) -> Result<BerryResult> {
    let grid = build_grid(p, &opts.grid);
    let params = *p;
    let spectral =
        refine_until_converged(move |q| params.adiabatic_potential(q), grid, &opts.refine)?;
    Ok(berry_from_spectral(p, spectral))
}

/// Assemble a `BerryResult` from an already converged solve.
pub fn berry_from_spectral(p: &ModelParams, spectral: SpectralResult) -> BerryResult {
    let sx_per_n = sx_mean(p, &spectral.wavefunction);
    let gamma = p.n_f() * PI * (1.0 + sx_per_n);
    BerryResult {
        gamma,
        gamma_per_n: gamma / p.n_f(),
        sx_per_n,
        spectral,
    }
}

/// Direct-route Berry phase: q-trapezoid of phi0^2 times the phi-loop
/// integral of the connection, aligned by the global orientation factor.
pub fn berry_phase_direct_from(p: &ModelParams, wf: &WaveFunction, phi_nodes: usize) -> f64 {
    let grid = wf.grid();
    let values = wf.values();
    let m = values.len();
    let h = grid.spacing();
    let peak = values.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let cut = 1e-9 * peak;
    let mut acc = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if v.abs() <= cut {
            continue;
        }
        let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
        acc += w * v * v * phi_loop_integral(p, grid.node(i), phi_nodes);
    }
    BERRY_LOOP_SIGN * acc * h
}

/// Direct-route Berry phase from a fresh ground-state solve.
pub fn berry_phase_direct(p: &ModelParams, opts: &BerryOptions) -> Result<f64> {
    let result = berry_phase(p, opts)?;
    Ok(berry_phase_direct_from(
        p,
        &result.spectral.wavefunction,
        DEFAULT_PHI_NODES,
    ))
}

/// Finite-difference derivative d(gamma)/d(alpha) of a uniformly spaced
/// sweep: central differences inside, one-sided at the ends.
pub fn berry_derivative(alphas: &[f64], gammas: &[f64]) -> Result<Vec<f64>> {
    if alphas.len() != gammas.len() {
        return Err(Error::InvalidParameter(format!(
            "{} alphas vs {} gamma samples",
            alphas.len(),
            gammas.len()
        )));
    }
    let n = alphas.len();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "derivative needs at least two sweep points".into(),
        ));
    }
    let step = alphas[1] - alphas[0];
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::NonUniformSpacing {
            index: 1,
            expected: step,
            found: step,
        });
    }
    for i in 1..n {
        let found = alphas[i] - alphas[i - 1];
        if (found - step).abs() > 1e-9 * step.max(1.0) {
            return Err(Error::NonUniformSpacing {
                index: i,
                expected: step,
                found,
            });
        }
    }
    let mut out = Vec::with_capacity(n);
    out.push((gammas[1] - gammas[0]) / step);
    for i in 1..n - 1 {
        out.push((gammas[i + 1] - gammas[i - 1]) / (2.0 * step));
    }
    out.push((gammas[n - 1] - gammas[n - 2]) / step);
    Ok(out)
}
