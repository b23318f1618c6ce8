//! One-dimensional time-independent Schroedinger solver on a uniform grid.
//!
//! The Hamiltonian -kinetic * d^2/dq^2 + V(q) is discretized with 3-point
//! central differences and Dirichlet boundaries, giving a symmetric
//! tridiagonal matrix (diagonal 2*kinetic/h^2 + V_i, off-diagonal
//! -kinetic/h^2). The lowest eigenpair comes from Sturm bisection plus
//! inverse iteration; `refine_until_converged` halves the spacing (and
//! doubles the box on boundary leakage) until the ground energy stabilizes.
//!
//! With kinetic = omega/2 = 1/2 this is the adiabatic oscillator problem;
//! kinetic = 1 gives the convention used by the quartic scaling family.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::tridiag;

/// Kinetic prefactor omega/2 with omega = 1.
pub const KINETIC_OSCILLATOR: f64 = 0.5;
/// Kinetic prefactor of the -d^2/dx^2 + zeta x^2 + x^4 family.
pub const KINETIC_QUARTIC: f64 = 1.0;

/// Uniform symmetric grid on [-q_max, +q_max] with an odd number of nodes,
/// so that q = 0 is a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGrid {
    q_max: f64,
    m_points: usize,
}

impl QGrid {
    pub fn new(q_max: f64, m_points: usize) -> Result<Self> {
        if !q_max.is_finite() || q_max <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "q_max must be positive, got {q_max}"
            )));
        }
        if m_points < 3 || m_points.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "m_points must be an odd integer >= 3, got {m_points}"
            )));
        }
        Ok(Self { q_max, m_points })
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn len(&self) -> usize {
        self.m_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing h = 2 q_max / (m - 1).
    pub fn spacing(&self) -> f64 {
        2.0 * self.q_max / (self.m_points as f64 - 1.0)
    }

    /// Coordinate of node i. Built around the central node so mirror nodes
    /// are exact negatives of each other in floating point; even potentials
    /// then sample exactly symmetrically.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.mid() as f64) * self.spacing()
    }

    /// Index of the q = 0 node.
    pub fn mid(&self) -> usize {
        (self.m_points - 1) / 2
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.m_points).map(move |i| self.node(i))
    }

    /// Same box with spacing halved.
    fn halved(&self) -> Self {
        Self {
            q_max: self.q_max,
            m_points: 2 * self.m_points - 1,
        }
    }

    /// Box doubled at equal spacing.
    fn widened(&self) -> Self {
        Self {
            q_max: 2.0 * self.q_max,
            m_points: 2 * self.m_points - 1,
        }
    }
}

/// Real ground-state wavefunction sampled on a grid, normalized to
/// sum(values^2) * h = 1 with the largest-amplitude component positive.
#[derive(Debug, Clone)]
pub struct WaveFunction {
    grid: QGrid,
    values: Vec<f64>,
}

impl WaveFunction {
    fn from_raw(grid: QGrid, mut values: Vec<f64>) -> Self {
        let h = grid.spacing();
        let ss: f64 = values.iter().map(|v| v * v).sum();
        let norm = (ss * h).sqrt();
        let peak = values
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().total_cmp(&b.abs()))
            .unwrap_or(1.0);
        let sign = if peak < 0.0 { -1.0 } else { 1.0 };
        for v in &mut values {
            *v = sign * *v / norm;
        }
        Self { grid, values }
    }

    pub fn grid(&self) -> &QGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// sum(values^2) * h; 1 up to rounding by construction.
    pub fn discrete_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() * self.grid.spacing()
    }

    /// abs value at the grid edges; certifies that the box is large enough.
    pub fn boundary_amplitude(&self) -> f64 {
        self.values[0]
            .abs()
            .max(self.values[self.values.len() - 1].abs())
    }
}

/// Lowest eigenpair plus convergence diagnostics.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    pub energy: f64,
    pub wavefunction: WaveFunction,
    pub refinement_steps: usize,
    pub boundary_leak: f64,
    /// Distance to the second eigenvalue (clamped at zero when the ground
    /// doublet is degenerate to rounding).
    pub gap: f64,
}

/// Options for the initial grid construction.
#[derive(Debug, Clone, Copy)]
pub struct GridOptions {
    pub m_points: usize,
    /// Multiplier on the local ground-state width used as box padding.
    pub safety: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            m_points: 2001,
            safety: 8.0,
        }
    }
}

/// Options for `refine_until_converged`.
#[derive(Debug, Clone, Copy)]
pub struct RefineOptions {
    /// Stop when successive ground energies differ by less than this.
    pub tol: f64,
    /// Maximum tolerated wavefunction amplitude at the grid edges.
    pub leak_tol: f64,
    pub max_steps: usize,
    pub max_points: usize,
    pub kinetic: f64,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            leak_tol: 1e-12,
            max_steps: 24,
            max_points: (1 << 23) + 1,
            kinetic: KINETIC_OSCILLATOR,
        }
    }
}

/// Initial grid for the adiabatic potential of `p`: the box spans the well
/// minima plus a padding of `safety` local ground-state widths. The width is
/// the harmonic one, (1-alpha)^(-1/4) below resp. (1-alpha^-2)^(-1/4) above
/// the transition, capped by the quartic scale (2ND/alpha^2)^(1/6) which
/// stays finite at alpha = 1. The box is certified after the solve by the
/// boundary-leak check, so this only has to be a sound starting point.
pub fn build_grid(p: &ModelParams, opts: &GridOptions) -> QGrid {
    let alpha = p.alpha();
    let two_nd = 2.0 * p.n_f() * p.big_d();
    let quartic_width = if alpha > 0.0 {
        (two_nd / (alpha * alpha)).powf(1.0 / 6.0)
    } else {
        f64::INFINITY
    };
    let harmonic_width = if alpha < 1.0 {
        (1.0 - alpha).powf(-0.25)
    } else if alpha > 1.0 {
        (1.0 - 1.0 / (alpha * alpha)).powf(-0.25)
    } else {
        f64::INFINITY
    };
    let width = harmonic_width.min(quartic_width).max(1.0);
    let q_max = p.q_m() + opts.safety * width;
    let m = if opts.m_points.is_multiple_of(2) {
        opts.m_points + 1
    } else {
        opts.m_points
    };
    QGrid::new(q_max, m.max(3)).expect("grid parameters are valid by construction")
}

/// Ground-state energy as the explicit quadratic form
/// kinetic/h^2 * [sum (x_{i+1}-x_i)^2 + x_0^2 + x_{m-1}^2] + sum V_i x_i^2
/// for a unit vector x. Evaluating the kinetic part through differences
/// avoids the 1/h^2-scale cancellation of the naive Rayleigh quotient.
fn rayleigh_energy(potential: &[f64], x: &[f64], h: f64, kinetic: f64) -> f64 {
    let m = x.len();
    let c = kinetic / (h * h);
    let mut kin = x[0] * x[0] + x[m - 1] * x[m - 1];
    for i in 0..m - 1 {
        let d = x[i + 1] - x[i];
        kin += d * d;
    }
    let mut pot = 0.0;
    for i in 0..m {
        pot += potential[i] * x[i] * x[i];
    }
    c * kin + pot
}

fn assemble_matrix(potential: &[f64], c: f64) -> (Vec<f64>, Vec<f64>) {
    let diag: Vec<f64> = potential.iter().map(|&v| 2.0 * c + v).collect();
    let off = vec![-c; potential.len() - 1];
    (diag, off)
}

/// Ground solve without the second-eigenvalue diagnostic; `hint` optionally
/// brackets the ground energy (e.g. the value from a coarser grid).
fn solve_core(
    potential: &[f64],
    grid: &QGrid,
    kinetic: f64,
    hint: Option<(f64, f64)>,
) -> Result<(f64, WaveFunction)> {
    let m = grid.len();
    if potential.len() != m {
        return Err(Error::InvalidParameter(format!(
            "potential has {} samples for a {}-node grid",
            potential.len(),
            m
        )));
    }
    let interior_min = potential[1..m - 1]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let edge = potential[0].min(potential[m - 1]);
    if edge <= interior_min {
        return Err(Error::NonConfining {
            edge_value: edge,
            interior_min,
        });
    }

    let h = grid.spacing();
    let c = kinetic / (h * h);
    let (diag, off) = assemble_matrix(potential, c);

    let (_, mut vector) = tridiag::lowest_eigenpair_hinted(&diag, &off, hint)?;
    // For an exactly mirror-symmetric potential the ground state is the even,
    // node-free member of the spectrum. Inverse iteration cannot separate it
    // from its odd partner once the double-well doublet is degenerate to
    // rounding, so project onto the even sector explicitly.
    let mirror_symmetric =
        (0..m / 2).all(|i| potential[i].to_bits() == potential[m - 1 - i].to_bits());
    if mirror_symmetric {
        for i in 0..m / 2 {
            let s = 0.5 * (vector[i] + vector[m - 1 - i]);
            vector[i] = s;
            vector[m - 1 - i] = s;
        }
        let norm = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut vector {
            *v /= norm;
        }
    }
    let energy = rayleigh_energy(potential, &vector, h, kinetic);
    Ok((energy, WaveFunction::from_raw(*grid, vector)))
}

fn second_eigenvalue(potential: &[f64], grid: &QGrid, kinetic: f64) -> f64 {
    let c = kinetic / (grid.spacing() * grid.spacing());
    let (diag, off) = assemble_matrix(potential, c);
    let scale = diag.iter().fold(0.0f64, |a, &d| a.max(d.abs())) + 2.0 * c;
    let (lo, hi) = tridiag::kth_eigenvalue_interval(&diag, &off, 1, 1e-10 * scale.max(1.0));
    0.5 * (lo + hi)
}

/// Lowest eigenpair of the discretized -kinetic d^2/dq^2 + V with Dirichlet
/// boundaries. `potential` must be sampled on the grid nodes and confining
/// (both edge values strictly above the interior minimum).
pub fn solve_ground_with(potential: &[f64], grid: &QGrid, kinetic: f64) -> Result<SpectralResult> {
    let (energy, wavefunction) = solve_core(potential, grid, kinetic, None)?;
    let lambda1 = second_eigenvalue(potential, grid, kinetic);
    let boundary_leak = wavefunction.boundary_amplitude();
    Ok(SpectralResult {
        energy,
        gap: (lambda1 - energy).max(0.0),
        wavefunction,
        refinement_steps: 0,
        boundary_leak,
    })
}

/// `solve_ground_with` at the oscillator convention kinetic = omega/2.
pub fn solve_ground(potential: &[f64], grid: &QGrid) -> Result<SpectralResult> {
    solve_ground_with(potential, grid, KINETIC_OSCILLATOR)
}

/// Trapezoidal quadrature of f(q) |psi(q)|^2 over the grid.
pub fn expectation<F: Fn(f64) -> f64>(f: F, wf: &WaveFunction) -> f64 {
    let grid = wf.grid();
    let values = wf.values();
    let m = values.len();
    let h = grid.spacing();
    let mut acc = 0.0;
    for (i, &v) in values.iter().enumerate() {
        let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
        acc += w * f(grid.node(i)) * v * v;
    }
    acc * h
}

fn sample<F: Fn(f64) -> f64>(potential: &F, grid: &QGrid) -> Vec<f64> {
    grid.nodes().map(potential).collect()
}

/// Refine the grid until successive ground energies differ by less than
/// `opts.tol`: the box is doubled while the wavefunction leaks past the
/// edges, the spacing halved otherwise. Fails with the best result so far if
/// the step or size budget runs out.
pub fn refine_until_converged<F: Fn(f64) -> f64>(
    potential: F,
    initial: QGrid,
    opts: &RefineOptions,
) -> Result<SpectralResult> {
    let mut grid = initial;
    let mut steps = 0usize;
    let v = sample(&potential, &grid);
    let (mut energy, mut wf) = solve_core(&v, &grid, opts.kinetic, None)?;
    let mut delta = f64::INFINITY;

    let finish = |energy: f64, wf: WaveFunction, grid: &QGrid, steps: usize, pot: &F| {
        let v = sample(pot, grid);
        let lambda1 = second_eigenvalue(&v, grid, opts.kinetic);
        let boundary_leak = wf.boundary_amplitude();
        SpectralResult {
            energy,
            gap: (lambda1 - energy).max(0.0),
            wavefunction: wf,
            refinement_steps: steps,
            boundary_leak,
        }
    };

    loop {
        if steps >= opts.max_steps || grid.len() > opts.max_points {
            let best = finish(energy, wf, &grid, steps, &potential);
            return Err(Error::MaxRefinementExceeded {
                steps,
                best: Box::new(best),
            });
        }
        let prev_leak = wf.boundary_amplitude();
        let next_grid = if prev_leak > opts.leak_tol {
            grid.widened()
        } else {
            grid.halved()
        };
        // Bracket the next eigenvalue by the current one plus the observed
        // convergence scale; verified inside the bisection.
        let slack = (4.0 * delta.abs()).max(1e-6 * (1.0 + energy.abs()));
        let hint = if delta.is_finite() {
            Some((energy - slack, energy + slack))
        } else {
            None
        };
        let v = sample(&potential, &next_grid);
        let (next_energy, next_wf) = solve_core(&v, &next_grid, opts.kinetic, hint)?;
        steps += 1;
        delta = next_energy - energy;
        let converged = delta.abs() < opts.tol
            && next_wf.boundary_amplitude() <= opts.leak_tol
            && prev_leak <= opts.leak_tol;
        grid = next_grid;
        energy = next_energy;
        wf = next_wf;
        if converged {
            return Ok(finish(energy, wf, &grid, steps, &potential));
        }
    }
}

/// Convenience: converged ground state of the adiabatic potential of `p`.
pub fn solve_adiabatic(
    p: &ModelParams,
    grid_opts: &GridOptions,
    refine_opts: &RefineOptions,
) -> Result<SpectralResult> {
    let grid = build_grid(p, grid_opts);
    let params = *p;
    refine_until_converged(move |q| params.adiabatic_potential(q), grid, refine_opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelParams;

    fn harmonic_grid(m: usize) -> QGrid {
        QGrid::new(8.0, m).unwrap()
    }

    #[test]
    fn grid_properties() {
        let g = QGrid::new(5.0, 11).unwrap();
        assert_eq!(g.spacing(), 1.0);
        assert_eq!(g.node(0), -5.0);
        assert_eq!(g.node(10), 5.0);
        assert_eq!(g.node(g.mid()), 0.0);
        assert!(QGrid::new(5.0, 10).is_err());
        assert!(QGrid::new(-1.0, 11).is_err());
        assert!(QGrid::new(5.0, 1).is_err());
    }

    #[test]
    fn build_grid_covers_wells() {
        // Single well: padding alone dominates.
        let p = ModelParams::new(4, 10.0, 0.5).unwrap();
        let g = build_grid(&p, &GridOptions::default());
        assert!(g.q_max() >= 8.0);

        // Double well at N=64: box must reach past q_m = sqrt(480) = 21.9.
        let p = ModelParams::new(64, 10.0, 2.0).unwrap();
        let g = build_grid(&p, &GridOptions::default());
        let q_m = 480.0f64.sqrt();
        assert!((q_m - 21.908902300206645).abs() < 1e-12);
        assert!(g.q_max() > q_m);
        assert!(g.q_max() >= q_m + 8.0);

        // Critical point stays finite thanks to the quartic cap.
        let p = ModelParams::new(16, 10.0, 1.0).unwrap();
        let g = build_grid(&p, &GridOptions::default());
        assert!(g.q_max().is_finite() && g.q_max() > 0.0);

        let even = GridOptions {
            m_points: 2000,
            ..GridOptions::default()
        };
        assert_eq!(build_grid(&p, &even).len() % 2, 1);
    }

    #[test]
    fn harmonic_ground_energy() {
        let opts = RefineOptions::default();
        let res = refine_until_converged(|q| 0.5 * q * q, harmonic_grid(501), &opts).unwrap();
        assert!(
            (res.energy - 0.5).abs() < 1e-8,
            "harmonic ground energy {} off by {:.2e}",
            res.energy,
            (res.energy - 0.5).abs()
        );
        assert!(res.boundary_leak < opts.leak_tol);
        assert!(res.gap > 0.0);
    }

    #[test]
    fn quartic_ground_energy_matches_known_constant() {
        let opts = RefineOptions {
            kinetic: KINETIC_QUARTIC,
            tol: 1e-8,
            ..Default::default()
        };
        let res = refine_until_converged(|x| x.powi(4), harmonic_grid(2001), &opts).unwrap();
        assert!(
            (res.energy - 1.06036).abs() < 2e-5,
            "quartic e0 = {}",
            res.energy
        );
    }

    #[test]
    fn decoupled_potential_is_shifted_harmonic() {
        // L = 0 leaves V = q^2/2 - N*D/2 exactly.
        let p = ModelParams::new(4, 10.0, 0.0).unwrap();
        let res = solve_adiabatic(&p, &GridOptions::default(), &RefineOptions::default()).unwrap();
        assert!((res.energy - (0.5 - 20.0)).abs() < 1e-8);
    }

    #[test]
    fn expectation_normalization_and_parity() {
        let res = refine_until_converged(
            |q| 0.5 * q * q,
            harmonic_grid(1001),
            &RefineOptions::default(),
        )
        .unwrap();
        let wf = &res.wavefunction;
        assert!((expectation(|_| 1.0, wf) - 1.0).abs() < 1e-10);
        assert!(expectation(|q| q, wf).abs() < 1e-9);
        assert!((wf.discrete_norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quartic_position_variance_matches_known_constant() {
        let opts = RefineOptions {
            kinetic: KINETIC_QUARTIC,
            tol: 1e-8,
            ..Default::default()
        };
        let res = refine_until_converged(|x| x.powi(4), harmonic_grid(2001), &opts).unwrap();
        let c1 = expectation(|x| x * x, &res.wavefunction);
        assert!((c1 - 0.36203).abs() < 2e-5, "c1 = {c1}");
    }

    #[test]
    fn second_order_convergence_on_harmonic_well() {
        // Fixed box, spacing halved twice: the energy error is O(h^2), so the
        // successive differences shrink by ~4.
        let sample = |g: &QGrid| -> f64 {
            let v: Vec<f64> = g.nodes().map(|q| 0.5 * q * q).collect();
            solve_ground(&v, g).unwrap().energy
        };
        let e1 = sample(&harmonic_grid(801));
        let e2 = sample(&harmonic_grid(1601));
        let e3 = sample(&harmonic_grid(3201));
        let ratio = (e1 - e2) / (e2 - e3);
        assert!(
            (3.6..=4.4).contains(&ratio),
            "h-halving error ratio {ratio} outside [3.6, 4.4]"
        );
    }

    #[test]
    fn refinement_errors_shrink_monotonically() {
        // The FD ground energy approaches its limit from below (the 3-point
        // kinetic stencil softens high momenta), so the ladder rungs climb
        // toward the converged value with |error| shrinking monotonically,
        // and the rungs that trigger the stopping rule sit within the
        // 10*tol guard of the converged energy.
        let tol = 1e-9;
        let mut m = 401usize;
        let mut energies = Vec::new();
        loop {
            let g = harmonic_grid(m);
            let v: Vec<f64> = g.nodes().map(|q| 0.5 * q * q).collect();
            energies.push(solve_ground(&v, &g).unwrap().energy);
            let k = energies.len();
            if k >= 2 && (energies[k - 1] - energies[k - 2]).abs() < tol {
                break;
            }
            m = 2 * m - 1;
        }
        let e_conv = *energies.last().unwrap();
        assert!((e_conv - 0.5).abs() < 1e-8);
        for w in energies.windows(2) {
            assert!(
                w[0] <= w[1] + 1e-13,
                "energies should rise under refinement"
            );
            assert!((w[1] - e_conv).abs() <= (w[0] - e_conv).abs() + 1e-13);
        }
        for &e in energies.iter().rev().take(2) {
            assert!(e >= e_conv - 10.0 * tol);
        }
    }

    #[test]
    fn double_well_ground_state_is_stable_and_even() {
        let p = ModelParams::new(16, 10.0, 2.0).unwrap();
        let res = solve_adiabatic(&p, &GridOptions::default(), &RefineOptions::default()).unwrap();

        // Two further refinements move the energy by less than tol each.
        let grid = *res.wavefunction.grid();
        let v: Vec<f64> = grid.nodes().map(|q| p.adiabatic_potential(q)).collect();
        let refined_grid = QGrid::new(grid.q_max(), 2 * grid.len() - 1).unwrap();
        let v2: Vec<f64> = refined_grid
            .nodes()
            .map(|q| p.adiabatic_potential(q))
            .collect();
        let e1 = solve_ground(&v, &grid).unwrap().energy;
        let e2 = solve_ground(&v2, &refined_grid).unwrap().energy;
        assert!((e1 - res.energy).abs() < 1e-9);
        assert!((e2 - e1).abs() < 1e-9);

        // Even potential: the converged state is even to high accuracy.
        let vals = res.wavefunction.values();
        let m = vals.len();
        for i in 0..m {
            assert!((vals[i] - vals[m - 1 - i]).abs() < 1e-7);
        }
    }

    #[test]
    fn ground_state_is_node_free() {
        for &(n, alpha) in &[(4u32, 0.5f64), (16, 2.0), (8, 1.0)] {
            let p = ModelParams::new(n, 10.0, alpha).unwrap();
            let res =
                solve_adiabatic(&p, &GridOptions::default(), &RefineOptions::default()).unwrap();
            let vals = res.wavefunction.values();
            let peak = vals.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
            // No sign change among components above the noise floor.
            let significant: Vec<f64> = vals
                .iter()
                .cloned()
                .filter(|v| v.abs() > 1e-13 * peak)
                .collect();
            assert!(significant.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn non_confining_potential_is_rejected() {
        let g = harmonic_grid(101);
        let v: Vec<f64> = g.nodes().map(|q| -q).collect();
        match solve_ground(&v, &g) {
            Err(Error::NonConfining { .. }) => {}
            other => panic!("expected NonConfining, got {other:?}"),
        }
    }

    #[test]
    fn leaking_box_is_doubled_until_contained() {
        // A 2-unit box cannot hold the harmonic ground state; refinement must
        // widen it (doubling q_max) until the edge amplitude is negligible.
        let tight = QGrid::new(2.0, 101).unwrap();
        let opts = RefineOptions::default();
        let res = refine_until_converged(|q| 0.5 * q * q, tight, &opts).unwrap();
        assert!(res.wavefunction.grid().q_max() >= 8.0);
        assert!(res.boundary_leak <= opts.leak_tol);
        assert!((res.energy - 0.5).abs() < 1e-8);
    }

    #[test]
    fn refinement_budget_error_carries_best_result() {
        let opts = RefineOptions {
            tol: 1e-300,
            max_steps: 2,
            ..Default::default()
        };
        match refine_until_converged(|q| 0.5 * q * q, harmonic_grid(101), &opts) {
            Err(Error::MaxRefinementExceeded { steps, best }) => {
                assert_eq!(steps, 2);
                assert!((best.energy - 0.5).abs() < 1e-4);
            }
            other => panic!("expected MaxRefinementExceeded, got {other:?}"),
        }
    }

    #[test]
    fn gap_is_reported_nonnegative() {
        for &(n, alpha) in &[(4u32, 0.5f64), (16, 2.0)] {
            let p = ModelParams::new(n, 10.0, alpha).unwrap();
            let res =
                solve_adiabatic(&p, &GridOptions::default(), &RefineOptions::default()).unwrap();
            assert!(res.gap >= 0.0);
        }
    }
}
