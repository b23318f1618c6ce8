//! Ground states, Berry phases and finite-size scaling of the adiabatic
//! Dicke model: N qubits collectively coupled to one slow oscillator mode.

pub mod berry;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scaling;
pub mod schrodinger;
pub mod tridiag;

pub use berry::{
    berry_derivative, berry_from_spectral, berry_phase, berry_phase_direct,
    berry_phase_direct_from, connection, phi_loop_integral, sx_mean, BerryOptions, BerryResult,
    QubitBlochState,
};
pub use error::{Error, Result};
pub use model::{thermo_berry, thermo_sx, ModelParams};
pub use oracle::{
    build_hamiltonian, dicke_ground_state, discrete_berry, discrete_berry_gauged, exact_sx,
    fock_convergence, ground_state, FockConvergence, FockSpinBasis, GroundState, SymSparse,
};
pub use scaling::{
    asymptotic_correction, finite_size_berry_prediction, finite_size_berry_prediction_leading,
    fit_critical_exponent, quartic_constants, scaled_energy_prediction, sx_finite_size_prediction,
    symanzik_map, ExponentFit, Prediction, QuarticConstants, QuarticOptions, SymanzikMap,
    ValidityWarning,
};
pub use schrodinger::{
    build_grid, expectation, refine_until_converged, solve_adiabatic, solve_ground,
    solve_ground_with, GridOptions, QGrid, RefineOptions, SpectralResult, WaveFunction,
};
