//! Physical parameters of the two-body dot Hamiltonian, its reduction to the
//! dimensionless radial problem, and the closed-form energy expressions
//! (the published ones and the corrected one) that the rest of the crate
//! puts on trial.
//!
//! Internally everything downstream works in scaled units where the radial
//! equation reads
//!
//! ```text
//! phi'' + phi'/rho - (m^2/rho^2) phi + (alpha_bar - rho^2 + g/rho) phi = 0
//! ```
//!
//! with `alpha_bar = 2 E_r / (hbar omega0)` and a single dimensionless
//! coupling `g`. Physical units enter only at the I/O boundary.

use crate::error::{Error, Result};
use crate::series;

/// Raw inputs of the two-particle Hamiltonian: masses in electron-mass
/// units, parabolic confinement frequency, dielectric screening.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub m_e: f64,
    pub m_h: f64,
    pub omega0: f64,
    pub epsilon: f64,
    pub hbar: f64,
    pub e2: f64,
}

impl PhysicalParams {
    pub fn new(m_e: f64, m_h: f64, omega0: f64, epsilon: f64) -> Result<Self> {
        Self::with_constants(m_e, m_h, omega0, epsilon, 1.0, 1.0)
    }

    pub fn with_constants(
        m_e: f64,
        m_h: f64,
        omega0: f64,
        epsilon: f64,
        hbar: f64,
        e2: f64,
    ) -> Result<Self> {
        if !(m_e > 0.0) {
            return Err(Error::Domain(format!("m_e must be positive, got {m_e}")));
        }
        if !(m_h > 0.0) {
            return Err(Error::Domain(format!("m_h must be positive, got {m_h}")));
        }
        if !(omega0 > 0.0) {
            return Err(Error::Domain(format!(
                "omega0 must be positive, got {omega0}"
            )));
        }
        if !(epsilon > 0.0) {
            return Err(Error::Domain(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if !(hbar > 0.0) {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        if !(e2 >= 0.0) {
            return Err(Error::Domain(format!("e2 must be non-negative, got {e2}")));
        }
        Ok(Self {
            m_e,
            m_h,
            omega0,
            epsilon,
            hbar,
            e2,
        })
    }
}

/// Quantities derived from [`PhysicalParams`]: reduced mass and the
/// alpha/beta/gamma combinations of the radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Reduced mass mu = m_e m_h / M.
    pub mu: f64,
    /// Total mass M = m_e + m_h.
    pub total_mass: f64,
    /// 2 mu / hbar^2, converts a relative-motion energy E_r to alpha.
    pub alpha_scale: f64,
    /// beta = mu^2 omega0^2 / hbar^2.
    pub beta: f64,
    /// gamma = 2 mu e^2 / (hbar^2 epsilon).
    pub gamma: f64,
    /// s = sqrt(beta) = mu omega0 / hbar, the inverse squared oscillator length.
    pub s: f64,
    pub hbar: f64,
    pub omega0: f64,
}

/// The dimensionless face of the problem: one coupling `g`, plus the units
/// needed to map back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledParams {
    /// g = gamma * beta^(-1/4).
    pub g: f64,
    /// hbar * omega0; alpha_bar maps to E_r = alpha_bar * energy_unit / 2.
    pub energy_unit: f64,
    /// beta^(-1/4) = sqrt(hbar / (mu omega0)).
    pub length_unit: f64,
}

impl ScaledParams {
    /// E_r corresponding to a dimensionless eigenvalue alpha_bar.
    pub fn energy_from_alpha_bar(&self, alpha_bar: f64) -> f64 {
        alpha_bar * self.energy_unit / 2.0
    }

    pub fn alpha_bar_from_energy(&self, e_r: f64) -> f64 {
        2.0 * e_r / self.energy_unit
    }
}

/// Angular quantum number (stored as |m|) and radial family index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub m: u32,
    pub n_r: u32,
}

impl QuantumNumbers {
    /// Normalizes a signed angular number; the spectrum depends only on |m|.
    pub fn new(m: i32, n_r: u32) -> Self {
        Self {
            m: m.unsigned_abs(),
            n_r,
        }
    }
}

pub fn reduced_mass(m_e: f64, m_h: f64) -> Result<f64> {
    if !(m_e > 0.0) || !(m_h > 0.0) {
        return Err(Error::Domain(format!(
            "masses must be positive, got m_e={m_e}, m_h={m_h}"
        )));
    }
    Ok(m_e * m_h / (m_e + m_h))
}

/// Reduces the physical problem to its derived and dimensionless forms.
pub fn to_scaled(p: &PhysicalParams) -> Result<(DerivedParams, ScaledParams)> {
    let mu = reduced_mass(p.m_e, p.m_h)?;
    let total_mass = p.m_e + p.m_h;
    let beta = mu * mu * p.omega0 * p.omega0 / (p.hbar * p.hbar);
    let gamma = 2.0 * mu * p.e2 / (p.hbar * p.hbar * p.epsilon);
    let s = beta.sqrt();
    let d = DerivedParams {
        mu,
        total_mass,
        alpha_scale: 2.0 * mu / (p.hbar * p.hbar),
        beta,
        gamma,
        s,
        hbar: p.hbar,
        omega0: p.omega0,
    };
    let sc = ScaledParams {
        g: gamma / s.sqrt(),
        energy_unit: p.hbar * p.omega0,
        length_unit: 1.0 / beta.powf(0.25),
    };
    Ok((d, sc))
}

/// The published closed-form energy, exactly as printed:
/// `2 hbar omega0 (m+1) + 4 mu e^4 / (epsilon hbar^2 (2m+1))`.
pub fn claimed_energy_eq7(m: u32, p: &PhysicalParams) -> f64 {
    let mu = p.m_e * p.m_h / (p.m_e + p.m_h);
    let mf = m as f64;
    2.0 * p.hbar * p.omega0 * (mf + 1.0)
        + 4.0 * mu * p.e2 * p.e2 / (p.epsilon * p.hbar * p.hbar * (2.0 * mf + 1.0))
}

/// The energy that actually follows algebraically from the published
/// quantization condition `alpha = 2 sqrt(beta)(m+n_r+1) - gamma a_{n_r+1}/a_{n_r}`.
///
/// For `n_r = 0` the coefficient ratio is `-gamma/(2m+1)` and the result is
/// closed-form. For `n_r > 0` the coefficients themselves depend on alpha,
/// so the condition is implicit; it is solved by a damped fixed-point
/// iteration and non-convergence is reported.
pub fn claimed_energy_from_eq6(m: u32, n_r: u32, d: &DerivedParams) -> Result<f64> {
    let g = d.gamma / d.s.sqrt();
    let alpha_bar = scaled_quantization_condition(m, n_r, g)?;
    Ok(alpha_bar * d.hbar * d.omega0 / 2.0)
}

/// Scaled form of the published quantization condition:
/// `alpha_bar = 2(m+n_r+1) - g a_{n_r+1}/a_{n_r}` with coefficients taken
/// at that same alpha_bar. Returns the alpha_bar at which `a_{n_r+2} = 0`
/// (and only that coefficient).
pub fn scaled_quantization_condition(m: u32, n_r: u32, g: f64) -> Result<f64> {
    let mf = m as f64;
    if n_r == 0 {
        // a_1/a_0 = -g/(2m+1) independent of alpha.
        return Ok(2.0 * (mf + 1.0) + g * g / (2.0 * mf + 1.0));
    }
    let nf = n_r as f64;
    let n = n_r as usize;
    if g == 0.0 {
        // Oscillator limit: the Coulomb term drops out of the condition
        // a_{n_r+2} = 0 and the fixed point is reached immediately (the
        // iteration itself would divide by an identically-zero odd
        // coefficient).
        return Ok(2.0 * (mf + nf + 1.0));
    }
    let mut alpha = 2.0 * (mf + nf + 1.0);
    let damping = 0.5;
    let tol = 1e-12;
    for _ in 0..200 {
        let coeffs = series::coefficients(m, g, alpha, n + 2)?.coeffs;
        let a_nr = coeffs[n];
        if a_nr.abs() < 1e-300 {
            return Err(Error::Degenerate(format!(
                "a_{n_r} vanishes at alpha_bar={alpha}; quantization condition undefined"
            )));
        }
        let target = 2.0 * (mf + nf + 1.0) - g * coeffs[n + 1] / a_nr;
        let next = (1.0 - damping) * alpha + damping * target;
        if (next - alpha).abs() <= tol * (1.0 + alpha.abs()) {
            return Ok(next);
        }
        alpha = next;
    }
    Err(Error::Convergence(format!(
        "quantization-condition fixed point did not converge for m={m}, n_r={n_r}, g={g}"
    )))
}

/// The corrected energy of the lone constrained state: `hbar omega0 (m+2)`.
pub fn corrected_energy_eq10(m: u32, omega0: f64, hbar: f64) -> f64 {
    hbar * omega0 * (m as f64 + 2.0)
}

/// Center-of-mass oscillator ladder `hbar omega0 (2 n_R + |m_R| + 1)`.
pub fn cm_energy(n_big_r: u32, m_big_r: i32, omega0: f64, hbar: f64) -> f64 {
    hbar * omega0 * (2.0 * n_big_r as f64 + m_big_r.unsigned_abs() as f64 + 1.0)
}
