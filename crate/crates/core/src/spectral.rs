//! The exponential packet as a superposition of Bessel beams.
//!
//! With `E∥ = γmc²` and
//! `g(E) = b e^{−bE/E∥}/E∥ · ((E − E∥)/(E + E∥))^{|l|/2}`,
//! the energy integral of Bessel beams at fixed `p_z`
//!
//! ```text
//! ∫_{E∥}^∞ dE e^{−i(Et − p_z z)/ħ} e^{ilφ} g(E) J_l(√(E² − E∥²) ρ/ħc)
//! ```
//!
//! reproduces the closed-form exponential packet. Only `E ≥ E∥` at a single
//! `p_z` enters, so there is no counterpropagating content.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{derived_quantities, BeamParams, PhysicalConstants, SpacetimePoint};
use crate::quadrature::{integrate, QuadratureEstimate, QuadratureOptions};
use crate::special::bessel_j_signed;

/// Decades by which `e^{−bE/E∥}` falls below its `E∥` value at the cutoff.
pub const CUTOFF_DECADES: f64 = 18.0;

/// Absolute error floor of the superposition relative to ∫g dE, matched to
/// the size of the discarded tail.
const ABS_FLOOR: f64 = 1e-18;

fn e_parallel(params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    if !(params.b > 0.0 && params.b.is_finite()) {
        return Err(Error::InvalidParams(format!("b must be positive, got {}", params.b)));
    }
    Ok(derived_quantities(params, constants)?.e_parallel)
}

/// ln g(E); `-inf` at `E = E∥` when `l ≠ 0`.
pub fn ln_spectral_g(energy: f64, params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    let e_par = e_parallel(params, constants)?;
    if !(energy >= e_par) || !energy.is_finite() {
        return Err(Error::Domain(format!("spectral function needs E ≥ E∥ = {e_par}, got {energy}")));
    }
    let b = params.b;
    let mut ln = b.ln() - b * energy / e_par - e_par.ln();
    let abs_l = params.l.unsigned_abs();
    if abs_l > 0 {
        ln += 0.5 * abs_l as f64 * ((energy - e_par) / (energy + e_par)).ln();
    }
    Ok(ln)
}

/// The spectral weight g(E).
pub fn spectral_g(energy: f64, params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    Ok(ln_spectral_g(energy, params, constants)?.exp())
}

/// Location of the maximum of g, `E∥√(1 + |l|/b)`.
pub fn spectral_peak(params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    let e_par = e_parallel(params, constants)?;
    Ok(e_par * (1.0 + params.l.unsigned_abs() as f64 / params.b).sqrt())
}

/// Energy where `e^{−bE/E∥}` has dropped by [`CUTOFF_DECADES`] decades.
pub fn e_cut(params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    let e_par = e_parallel(params, constants)?;
    Ok(e_par * (1.0 + CUTOFF_DECADES * std::f64::consts::LN_10 / params.b))
}

/// Uniform grid from `E∥` to `E_cut` with spacing at most `step`.
pub fn energy_grid(params: &BeamParams, constants: &PhysicalConstants, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) {
        return Err(Error::InvalidGrid(format!("energy step must be positive, got {step}")));
    }
    let lo = e_parallel(params, constants)?;
    let hi = e_cut(params, constants)?;
    let count = ((hi - lo) / step).ceil() as usize + 1;
    let h = (hi - lo) / (count - 1) as f64;
    Ok((0..count).map(|k| if k + 1 == count { hi } else { lo + k as f64 * h }).collect())
}

/// Quadrature settings for [`superpose_bessel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionOptions {
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for SuperpositionOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, max_intervals: 4000 }
    }
}

/// The Bessel superposition evaluated by adaptive quadrature on
/// `[E∥, E_cut]`. For `l < 0` the result equals `(−1)^l` times the
/// closed-form packet, since `J_{−n} = (−1)ⁿ J_n` while the closed form
/// carries `|l|` in its radial power.
pub fn superpose_bessel(
    params: &BeamParams,
    constants: &PhysicalConstants,
    point: &SpacetimePoint,
    options: &SuperpositionOptions,
) -> Result<QuadratureEstimate> {
    if !(options.rel_tol >= 1e-12) {
        return Err(Error::InvalidParams(format!(
            "superposition tolerance must be at least 1e-12, got {}",
            options.rel_tol
        )));
    }
    let e_par = e_parallel(params, constants)?;
    let hi = e_cut(params, constants)?;
    let (hbar, c) = (constants.hbar(), constants.c());
    let l = params.l;
    let weight = |e: f64| -> Result<f64> {
        if e <= e_par && l != 0 {
            return Ok(0.0);
        }
        spectral_g(e.max(e_par), params, constants)
    };
    let norm = integrate(|e| Ok(Complex64::new(weight(e)?, 0.0)), e_par, hi, &QuadratureOptions::with_rel_tol(1e-12))?;
    let azimuth = Complex64::from_polar(1.0, l as f64 * point.phi);
    let integrand = |e: f64| -> Result<Complex64> {
        let g = weight(e)?;
        if g == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k_perp = (e * e - e_par * e_par).max(0.0).sqrt() / (hbar * c);
        let phase = Complex64::from_polar(1.0, (params.p_z * point.z - e * point.t) / hbar);
        Ok(phase * azimuth * g * bessel_j_signed(l, k_perp * point.rho)?)
    };
    let quad = QuadratureOptions {
        abs_tol: ABS_FLOOR * norm.value.re,
        rel_tol: options.rel_tol,
        initial_intervals: 16,
        max_intervals: options.max_intervals,
    };
    integrate(integrand, e_par, hi, &quad)
}

/// Sampled spectral weights on an energy grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralProfile {
    pub energies: Vec<f64>,
    pub weights: Vec<f64>,
    pub normalized: bool,
}

impl SpectralProfile {
    /// Trapezoidal integral of the weights.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.energies, &self.weights)
    }

    pub fn argmax(&self) -> usize {
        self.weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| k)
            .unwrap_or(0)
    }

    pub fn peak_energy(&self) -> f64 {
        self.energies[self.argmax()]
    }

    /// Full width at half maximum with linear interpolation of the two
    /// crossings. A crossing that falls off the grid is clamped to the
    /// grid end.
    pub fn fwhm(&self) -> f64 {
        let k = self.argmax();
        let half = 0.5 * self.weights[k];
        let e = &self.energies;
        let w = &self.weights;
        let mut left = e[0];
        for j in (0..k).rev() {
            if w[j] <= half {
                left = e[j] + (half - w[j]) / (w[j + 1] - w[j]) * (e[j + 1] - e[j]);
                break;
            }
        }
        let mut right = e[e.len() - 1];
        for j in k + 1..w.len() {
            if w[j] <= half {
                right = e[j - 1] + (w[j - 1] - half) / (w[j - 1] - w[j]) * (e[j] - e[j - 1]);
                break;
            }
        }
        right - left
    }

    /// True when the discrete derivative changes sign at most once, from
    /// rising to falling.
    pub fn is_unimodal(&self) -> bool {
        let mut falling = false;
        for pair in self.weights.windows(2) {
            let d = pair[1] - pair[0];
            if d < 0.0 {
                falling = true;
            } else if d > 0.0 && falling {
                return false;
            }
        }
        true
    }
}

fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2).zip(y.windows(2)).map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1])).sum()
}

fn check_energy_grid(grid: &[f64], e_par: f64) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::InvalidGrid(format!("energy grid needs at least 2 points, got {}", grid.len())));
    }
    if grid[0] < e_par {
        return Err(Error::InvalidGrid(format!("energy grid starts at {} below E∥ = {e_par}", grid[0])));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) || !grid.iter().all(|e| e.is_finite()) {
        return Err(Error::InvalidGrid("energy grid must be finite and strictly increasing".into()));
    }
    Ok(())
}

/// Raw weights g(E) on `grid`.
pub fn profile(params: &BeamParams, constants: &PhysicalConstants, grid: &[f64]) -> Result<SpectralProfile> {
    check_energy_grid(grid, e_parallel(params, constants)?)?;
    let weights = grid.iter().map(|&e| spectral_g(e, params, constants)).collect::<Result<Vec<_>>>()?;
    Ok(SpectralProfile { energies: grid.to_vec(), weights, normalized: false })
}

/// g_N = g/∫g on `grid`, formed in log space so that large `b` does not
/// underflow.
pub fn normalized_profile(params: &BeamParams, constants: &PhysicalConstants, grid: &[f64]) -> Result<SpectralProfile> {
    check_energy_grid(grid, e_parallel(params, constants)?)?;
    let ln = grid.iter().map(|&e| ln_spectral_g(e, params, constants)).collect::<Result<Vec<_>>>()?;
    let top = ln.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = ln.iter().map(|v| (v - top).exp()).collect();
    let total = trapezoid(grid, &scaled);
    if !(total > 0.0) {
        return Err(Error::InvalidGrid("spectral weight vanishes on the grid".into()));
    }
    Ok(SpectralProfile {
        energies: grid.to_vec(),
        weights: scaled.iter().map(|w| w / total).collect(),
        normalized: true,
    })
}
