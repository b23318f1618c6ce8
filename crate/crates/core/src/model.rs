//! Dimensionless parameters of the Dicke model and the closed-form
//! adiabatic potential of the slow oscillator.
//!
//! Everything is expressed in units of the oscillator frequency (omega = 1).
//! The model is fully specified by the qubit count `N`, the frequency ratio
//! `D = 2*Delta/omega` and the coupling parameter `alpha = L^2/(2D)` with
//! `L = 2*sqrt(2)*lambda/omega`. The super-radiant transition sits at
//! `alpha = 1`, i.e. `lambda_c = sqrt(Delta*omega/2)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Dimensionless Dicke-model parameters (omega = 1 internally).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n_qubits: u32,
    big_d: f64,
    alpha: f64,
}

impl ModelParams {
    /// Build from the dimensionless triple (N, D, alpha).
    pub fn new(n_qubits: u32, big_d: f64, alpha: f64) -> Result<Self> {
        if n_qubits < 1 {
            return Err(Error::InvalidParameter("n_qubits must be >= 1".into()));
        }
        if !big_d.is_finite() || big_d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "D must be positive and finite, got {big_d}"
            )));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "alpha must be non-negative and finite, got {alpha}"
            )));
        }
        Ok(Self {
            n_qubits,
            big_d,
            alpha,
        })
    }

    /// Build from physical frequencies: oscillator `omega`, qubit splitting
    /// `delta` and coupling `lam`. Yields D = 2*delta/omega and
    /// alpha = 2*lam^2/(omega*delta).
    pub fn from_physical(omega: f64, delta: f64, lam: f64, n: u32) -> Result<Self> {
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive, got {omega}"
            )));
        }
        if !delta.is_finite() || delta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta must be positive, got {delta}"
            )));
        }
        if !lam.is_finite() || lam < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "lam must be non-negative, got {lam}"
            )));
        }
        let big_d = 2.0 * delta / omega;
        let alpha = 2.0 * lam * lam / (omega * delta);
        Self::new(n, big_d, alpha)
    }

    pub fn n_qubits(&self) -> u32 {
        self.n_qubits
    }

    pub fn n_f(&self) -> f64 {
        f64::from(self.n_qubits)
    }

    pub fn big_d(&self) -> f64 {
        self.big_d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Dimensionless coupling L = sqrt(2*D*alpha).
    pub fn big_l(&self) -> f64 {
        (2.0 * self.big_d * self.alpha).sqrt()
    }

    /// Qubit splitting Delta = D/2 in units of omega.
    pub fn delta(&self) -> f64 {
        self.big_d / 2.0
    }

    /// Coupling lambda = L/(2*sqrt(2)) in units of omega.
    pub fn lam(&self) -> f64 {
        self.big_l() / (2.0 * std::f64::consts::SQRT_2)
    }

    /// Qubit energy scale E(q) = sqrt(D^2 + L^2 q^2 / N); E(q) >= D, even in q.
    pub fn adiabatic_energy(&self, q: f64) -> f64 {
        let lq = self.big_l() * q;
        (self.big_d * self.big_d + lq * lq / self.n_f()).sqrt()
    }

    /// Adiabatic oscillator potential V_l(q) = (q^2 - N E(q)) / 2.
    pub fn adiabatic_potential(&self, q: f64) -> f64 {
        0.5 * (q * q - self.n_f() * self.adiabatic_energy(q))
    }

    /// Location(s) of the potential minimum: `[0]` in the normal phase
    /// (alpha <= 1), `[-q_m, +q_m]` with
    /// q_m = (sqrt(N) D / L) sqrt(alpha^2 - 1) in the super-radiant phase.
    pub fn well_minima(&self) -> Vec<f64> {
        if self.alpha <= 1.0 {
            vec![0.0]
        } else {
            let q_m = self.n_f().sqrt() * self.big_d / self.big_l()
                * (self.alpha * self.alpha - 1.0).sqrt();
            vec![-q_m, q_m]
        }
    }

    /// Largest minimizing coordinate (0 in the normal phase, q_m above it).
    pub fn q_m(&self) -> f64 {
        *self
            .well_minima()
            .last()
            .expect("well_minima is never empty")
    }
}

/// Magnetization per qubit `<Sx>/N` in the thermodynamic limit:
/// -1 in the normal phase, -1/alpha in the super-radiant phase.
pub fn thermo_sx(alpha: f64) -> f64 {
    if alpha <= 1.0 {
        -1.0
    } else {
        -1.0 / alpha
    }
}

/// Scaled Berry phase gamma/N in the thermodynamic limit:
/// 0 for alpha <= 1, pi*(1 - 1/alpha) above the transition.
pub fn thermo_berry(alpha: f64) -> f64 {
    if alpha <= 1.0 {
        0.0
    } else {
        PI * (1.0 - 1.0 / alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32, d: f64, alpha: f64) -> ModelParams {
        ModelParams::new(n, d, alpha).unwrap()
    }

    #[test]
    fn from_physical_critical_coupling() {
        // lambda_c = sqrt(Delta*omega/2) puts the system exactly at alpha = 1.
        let p = ModelParams::from_physical(1.0, 5.0, 2.5f64.sqrt(), 8).unwrap();
        assert!((p.alpha() - 1.0).abs() < 1e-12);
        assert_eq!(p.n_qubits(), 8);
        assert!((p.big_d() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn from_physical_zero_and_generic_coupling() {
        let p0 = ModelParams::from_physical(1.0, 5.0, 0.0, 4).unwrap();
        assert_eq!(p0.alpha(), 0.0);

        let p = ModelParams::from_physical(1.0, 5.0, 2.0, 4).unwrap();
        assert!((p.alpha() - 1.6).abs() < 1e-12);
    }

    #[test]
    fn from_physical_round_trip() {
        let (delta, lam, n) = (7.3, 1.9, 12);
        let p = ModelParams::from_physical(1.0, delta, lam, n).unwrap();
        assert!((p.delta() - delta).abs() < 1e-12);
        assert!((p.lam() - lam).abs() < 1e-12);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(ModelParams::from_physical(0.0, 5.0, 1.0, 4).is_err());
        assert!(ModelParams::from_physical(1.0, -5.0, 1.0, 4).is_err());
        assert!(ModelParams::from_physical(1.0, 5.0, -1.0, 4).is_err());
        assert!(ModelParams::from_physical(1.0, 5.0, 1.0, 0).is_err());
        assert!(ModelParams::new(4, 10.0, f64::NAN).is_err());
    }

    #[test]
    fn adiabatic_energy_values() {
        let p = params(4, 10.0, 1.0);
        assert_eq!(p.adiabatic_energy(0.0), 10.0);

        // D=10, alpha=1, N=1: E(1) = sqrt(100 + 20) = sqrt(120).
        let p = params(1, 10.0, 1.0);
        assert!((p.adiabatic_energy(1.0) - 120.0f64.sqrt()).abs() < 1e-12);
        assert!((120.0f64.sqrt() - 10.954451150103322).abs() < 1e-12);

        // Even in q, bounded below by D.
        for &q in &[0.3, 1.7, 4.2, 9.9] {
            assert_eq!(p.adiabatic_energy(q), p.adiabatic_energy(-q));
            assert!(p.adiabatic_energy(q) >= p.big_d());
        }
    }

    #[test]
    fn potential_at_origin_and_minimum() {
        // V(0) = -N*D/2 = -N*Delta.
        let p = params(4, 10.0, 2.0);
        assert!((p.adiabatic_potential(0.0) + 20.0).abs() < 1e-12);

        // alpha=2, D=10, N=4: V(q_m) = -(N*Delta/2)(alpha + 1/alpha) = -25.
        let q_m = p.q_m();
        assert!((p.adiabatic_potential(q_m) + 25.0).abs() < 1e-10);

        // Scan confirms q_m is the global minimum.
        let scan_min = (0..4000)
            .map(|i| p.adiabatic_potential(-10.0 + i as f64 * 0.005))
            .fold(f64::INFINITY, f64::min);
        assert!(p.adiabatic_potential(q_m) <= scan_min + 1e-10);
    }

    #[test]
    fn single_well_regime_has_minimum_at_origin() {
        let p = params(4, 10.0, 0.5);
        assert_eq!(p.well_minima(), vec![0.0]);
        for &q in &[0.25, 0.9, 3.0] {
            assert!(p.adiabatic_potential(q) > p.adiabatic_potential(0.0));
        }
    }

    #[test]
    fn well_minima_positions() {
        // alpha=2, D=10, N=4: q_m = sqrt(30).
        let p = params(4, 10.0, 2.0);
        let minima = p.well_minima();
        assert_eq!(minima.len(), 2);
        assert!((minima[1] - 30.0f64.sqrt()).abs() < 1e-12);
        assert!((minima[1] - 5.477225575051661).abs() < 1e-12);
        assert_eq!(minima[0], -minima[1]);

        // Stationarity at q_m by central differences.
        let h = 1e-6;
        let dv = (p.adiabatic_potential(minima[1] + h) - p.adiabatic_potential(minima[1] - h))
            / (2.0 * h);
        assert!(dv.abs() < 1e-6);

        // Boundary case alpha = 1 degenerates to the single-well branch.
        assert_eq!(params(4, 10.0, 1.0).well_minima(), vec![0.0]);
    }

    #[test]
    fn minimized_potential_matches_closed_form() {
        // Golden-section search against the closed-form q_m for random
        // super-radiant parameters.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand01 = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        for _ in 0..50 {
            let alpha = 1.05 + 3.0 * rand01();
            let d = 2.0 + 40.0 * rand01();
            let n = 1 + (rand01() * 200.0) as u32;
            let p = params(n, d, alpha);
            let q_m = p.q_m();

            // Bisect on the central-difference slope; V' changes sign only
            // once on (0, 2.5 q_m + 1] in the super-radiant phase.
            let fd = 1e-4 * q_m.max(1.0);
            let slope = |q: f64| {
                (p.adiabatic_potential(q + fd) - p.adiabatic_potential(q - fd)) / (2.0 * fd)
            };
            let (mut a, mut b) = (1e-3 * q_m.max(1.0), 2.5 * q_m + 1.0);
            assert!(slope(a) < 0.0 && slope(b) > 0.0);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if slope(mid) < 0.0 {
                    a = mid;
                } else {
                    b = mid;
                }
                if b - a < 1e-12 * q_m {
                    break;
                }
            }
            let found = 0.5 * (a + b);
            assert!(
                (found - q_m).abs() <= 1e-8 * q_m.max(1.0),
                "alpha={alpha} D={d} N={n}: found {found}, expected {q_m}"
            );
        }
    }

    #[test]
    fn thermo_sx_branches() {
        assert_eq!(thermo_sx(0.5), -1.0);
        assert_eq!(thermo_sx(2.0), -0.5);
        // Continuous at the critical point.
        assert_eq!(thermo_sx(1.0), -1.0);
        assert!((thermo_sx(1.0 + 1e-13) - -1.0).abs() < 1e-12);
        for &a in &[0.0, 0.3, 1.0, 1.5, 7.0, 300.0] {
            let v = thermo_sx(a);
            assert!((-1.0..0.0).contains(&v));
        }
    }

    #[test]
    fn thermo_berry_branches() {
        assert_eq!(thermo_berry(0.9), 0.0);
        assert!((thermo_berry(2.0) - PI / 2.0).abs() < 1e-15);
        // Tends to pi from below for strong coupling.
        assert!(thermo_berry(1e6) > PI - 1e-5);
        assert!(thermo_berry(1e6) < PI);
        // Strictly increasing above the transition.
        let mut prev = 0.0;
        for i in 1..200 {
            let v = thermo_berry(1.0 + i as f64 * 0.05);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn berry_identity_with_magnetization() {
        // gamma/N = pi*(1 + <Sx>/N) holds across both phases.
        for i in 0..=600 {
            let alpha = i as f64 * 0.01;
            let lhs = thermo_berry(alpha);
            let rhs = PI * (1.0 + thermo_sx(alpha));
            assert!((lhs - rhs).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_jump_at_critical_point() {
        // Left/right finite differences at alpha = 1 +- 1e-6 differ by pi.
        let eps = 1e-6;
        let right = (thermo_berry(1.0 + eps) - thermo_berry(1.0)) / eps;
        let left = (thermo_berry(1.0) - thermo_berry(1.0 - eps)) / eps;
        assert!((right - left - PI).abs() < 1e-5);
    }
}
