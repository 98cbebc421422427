//! Physical constants, beam parameters and spacetime points.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ScalarKind;

/// The triple (ħ, m, c). The reduced Compton wavelength is always derived.
///
/// Keeping `c` configurable is what makes the nonrelativistic limit
/// reachable numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    hbar: f64,
    mass: f64,
    c: f64,
}

impl PhysicalConstants {
    pub fn new(hbar: f64, mass: f64, c: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("mass", mass), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be finite and positive, got {v}")));
            }
        }
        Ok(Self { hbar, mass, c })
    }

    /// ħ = m = c = 1.
    pub fn natural() -> Self {
        Self { hbar: 1.0, mass: 1.0, c: 1.0 }
    }

    /// Natural ħ and m with a different speed of light.
    pub fn with_c(c: f64) -> Result<Self> {
        Self::new(1.0, 1.0, c)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Reduced Compton wavelength ħ/(mc).
    pub fn lambda_bar(&self) -> f64 {
        self.hbar / (self.mass * self.c)
    }

    /// mc, the momentum scale.
    pub fn mc(&self) -> f64 {
        self.mass * self.c
    }

    /// mc², the rest energy.
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// mc/ħ, the mass term of the Klein-Gordon operator.
    pub fn inverse_lambda_bar(&self) -> f64 {
        self.mass * self.c / self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::natural()
    }
}

/// Quantum numbers and shape parameters labelling a packet.
///
/// Momenta and energies are absolute quantities in the unit system of the
/// accompanying [`PhysicalConstants`]; with the natural defaults they are
/// in units of mc and mc².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamParams {
    /// Azimuthal index, the exponent of `e^{ilφ}`.
    pub l: i32,
    /// Longitudinal momentum.
    pub p_z: f64,
    /// Dimensionless width parameter of the exponential packet.
    pub b: f64,
    /// Total energy, required by the Bessel and relativistic Laguerre-Gauss beams.
    pub energy: Option<f64>,
    /// Radial index of the Laguerre-Gauss beams.
    pub n: u32,
    /// Transverse width of the Laguerre-Gauss beams.
    pub w: f64,
}

impl Default for BeamParams {
    fn default() -> Self {
        Self { l: 10, p_z: 0.75, b: 40.0, energy: None, n: 0, w: 10.0 }
    }
}

impl BeamParams {
    pub fn exponential(l: i32, b: f64, p_z: f64) -> Self {
        Self { l, b, p_z, ..Self::default() }
    }

    pub fn bessel(l: i32, energy: f64, p_z: f64) -> Self {
        Self { l, p_z, energy: Some(energy), ..Self::default() }
    }

    pub fn laguerre_gauss(l: i32, n: u32, w: f64, energy: Option<f64>, p_z: f64) -> Self {
        Self { l, n, w, energy, p_z, ..Self::default() }
    }

    /// Checks the invariants required by `kind`.
    pub fn validate(&self, kind: ScalarKind, constants: &PhysicalConstants) -> Result<()> {
        if !self.p_z.is_finite() {
            return Err(Error::InvalidParams(format!("p_z must be finite, got {}", self.p_z)));
        }
        match kind {
            ScalarKind::Exponential => {
                if !(self.b.is_finite() && self.b > 0.0) {
                    return Err(Error::InvalidParams(format!("b must be positive, got {}", self.b)));
                }
            }
            ScalarKind::Bessel => {
                let energy = self.require_energy()?;
                derived_quantities(self, constants)?;
                if !energy.is_finite() {
                    return Err(Error::InvalidParams("energy must be finite".into()));
                }
            }
            ScalarKind::LgNonrel | ScalarKind::LgRel => {
                if !(self.w.is_finite() && self.w > 0.0) {
                    return Err(Error::InvalidParams(format!("w must be positive, got {}", self.w)));
                }
                if self.n > 100 {
                    return Err(Error::InvalidParams(format!("radial index n = {} exceeds 100", self.n)));
                }
                if kind == ScalarKind::LgRel {
                    let energy = self.require_energy()?;
                    if !(energy.is_finite() && energy > 0.0) {
                        return Err(Error::InvalidParams(format!("energy must be positive, got {energy}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn require_energy(&self) -> Result<f64> {
        self.energy
            .ok_or_else(|| Error::InvalidParams("this beam needs an energy".into()))
    }
}

/// Quantities derived once from [`BeamParams`] and [`PhysicalConstants`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedBeamQuantities {
    /// Relativistic factor √(1+(p_z/mc)²).
    pub gamma: f64,
    /// γ/(bλ̄), the inverse length of the exponential packet.
    pub q: f64,
    /// γmc², the energy carried by the longitudinal motion alone.
    pub e_parallel: f64,
    /// Transverse momentum √((E/c)² − (mc)² − p_z²), when an energy is set.
    pub p_perp: Option<f64>,
}

pub fn derived_quantities(params: &BeamParams, constants: &PhysicalConstants) -> Result<DerivedBeamQuantities> {
    let mc = constants.mc();
    let ratio = params.p_z / mc;
    let gamma = (1.0 + ratio * ratio).sqrt();
    let q = gamma / (params.b * constants.lambda_bar());
    let e_parallel = gamma * constants.rest_energy();
    let p_perp = match params.energy {
        None => None,
        Some(energy) => {
            let e_over_c = energy / constants.c();
            let p_perp_sq = e_over_c * e_over_c - mc * mc - params.p_z * params.p_z;
            if energy < e_parallel || p_perp_sq < 0.0 {
                // A sub-ulp negative square at E == E_parallel still means p_perp = 0.
                if energy >= e_parallel * (1.0 - 4.0 * f64::EPSILON) {
                    Some(0.0)
                } else {
                    return Err(Error::ImaginaryTransverseMomentum { energy, e_parallel });
                }
            } else {
                Some(p_perp_sq.sqrt())
            }
        }
    };
    Ok(DerivedBeamQuantities { gamma, q, e_parallel, p_perp })
}

/// A spacetime event in cylindrical coordinates (ρ, φ, z, t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    /// Builds a point, folding a negative radius into the opposite azimuth
    /// and reducing φ to [0, 2π).
    pub fn new(rho: f64, phi: f64, z: f64, t: f64) -> Self {
        let (rho, phi) = if rho < 0.0 { (-rho, phi + std::f64::consts::PI) } else { (rho, phi) };
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { rho, phi, z, t }
    }

    pub fn from_cartesian(x: f64, y: f64, z: f64, t: f64) -> Self {
        Self::new(x.hypot(y), y.atan2(x), z, t)
    }

    pub fn x(&self) -> f64 {
        self.rho * self.phi.cos()
    }

    pub fn y(&self) -> f64 {
        self.rho * self.phi.sin()
    }

    /// t + z/c.
    pub fn t_plus(&self, c: f64) -> f64 {
        self.t + self.z / c
    }

    /// t − z/c.
    pub fn t_minus(&self, c: f64) -> f64 {
        self.t - self.z / c
    }

    pub fn with_rho(self, rho: f64) -> Self {
        Self { rho, ..self }
    }

    pub fn with_z(self, z: f64) -> Self {
        Self { z, ..self }
    }

    pub fn with_t(self, t: f64) -> Self {
        Self { t, ..self }
    }

    pub fn with_phi(self, phi: f64) -> Self {
        Self::new(self.rho, phi, self.z, self.t)
    }
}
