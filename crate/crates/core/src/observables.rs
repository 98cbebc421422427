//! Probability densities, currents and velocities, the Gordon split of the
//! Dirac current, vorticity and circulation.
//!
//! Vectors are Cartesian unless a function says otherwise. The Dirac current
//! in the spinorial basis is `j = c(φ†σφ − χ†σχ)` with density `Ψ†Ψ`.
//! Using the Dirac equation twice it splits exactly into
//!
//! ```text
//! j_orb  = (ħ/m)[Im(φ†∇χ) + Im(χ†∇φ)]
//! j_spin = (ħ/m)[∇×Re(φ†σχ) − (1/c)∂_t Im(φ†σχ)]
//! ```
//!
//! The shorter orbital form `(2ħ/m)Im(φ†∇χ)` agrees with the symmetric one
//! only where `Im(φ†χ)` is constant; it is kept as
//! [`gordon_orbital_printed`] for comparison.

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::dirac::{Bispinor, DiracBeam, SpinorField};
use crate::error::{Error, Result};
use crate::model::{PhysicalConstants, SpacetimePoint};
use crate::scalar::{check_step, ScalarBeam, ScalarJet, ScalarKind};

pub type Vec3 = Vector3<f64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coefficient of the orbital part, in units of ħ/m. Fixed by
/// [`calibrate_gordon`].
pub const ORBITAL_COEFFICIENT: f64 = 1.0;

/// Coefficient of the spin part, in units of ħ/m. Fixed by
/// [`calibrate_gordon`].
pub const SPIN_COEFFICIENT: f64 = 1.0;

/// Minimum number of samples on a circulation contour.
pub const MIN_CIRCULATION_SAMPLES: usize = 64;

/// (ρ̂, φ̂, ẑ) components of a Cartesian vector at azimuth `phi`.
pub fn to_cylindrical(v: &Vec3, phi: f64) -> Vec3 {
    let (s, c) = phi.sin_cos();
    Vec3::new(c * v.x + s * v.y, -s * v.x + c * v.y, v.z)
}

/// Cartesian components of a vector given in (ρ̂, φ̂, ẑ) at azimuth `phi`.
pub fn from_cylindrical(v: &Vec3, phi: f64) -> Vec3 {
    let (s, c) = phi.sin_cos();
    Vec3::new(c * v.x - s * v.y, s * v.x + c * v.y, v.z)
}

/// `a†σb` for two-component spinors.
fn sigma_bilinear(a: [Complex64; 2], b: [Complex64; 2]) -> [Complex64; 3] {
    let (a0, a1) = (a[0].conj(), a[1].conj());
    [a0 * b[1] + a1 * b[0], -I * a0 * b[1] + I * a1 * b[0], a0 * b[0] - a1 * b[1]]
}

fn dot(a: [Complex64; 2], b: [Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

/// Velocity of the Schrödinger probability flow, `(ħ/m)Im(ψ*∇ψ)/|ψ|²`.
/// The azimuthal component is the exact `ħl/(mρ)`.
pub fn nonrel_velocity(jet: &ScalarJet, point: &SpacetimePoint, constants: &PhysicalConstants) -> Result<Vec3> {
    let density = jet.value.norm_sqr();
    if density == 0.0 || !density.is_finite() {
        return Err(Error::ZeroDensity);
    }
    if point.rho <= 0.0 {
        return Err(Error::Domain("nonrelativistic velocity is singular on the axis".into()));
    }
    let k = constants.hbar() / constants.mass();
    let cyl = Vec3::new(
        k * (jet.value.conj() * jet.d_rho).im / density,
        k * jet.azimuthal_index as f64 / point.rho,
        k * (jet.value.conj() * jet.d_z).im / density,
    );
    Ok(from_cylindrical(&cyl, point.phi))
}

/// The spatial Dirac current `c(φ†σφ − χ†σχ)`.
pub fn dirac_current(psi: &Bispinor, constants: &PhysicalConstants) -> Vec3 {
    let up = sigma_bilinear(psi.upper(), psi.upper());
    let down = sigma_bilinear(psi.lower(), psi.lower());
    constants.c() * Vec3::new(up[0].re - down[0].re, up[1].re - down[1].re, up[2].re - down[2].re)
}

/// Velocity and density at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocitySample {
    pub v: Vec3,
    pub density: f64,
}

/// `v_D = j/Ψ†Ψ`.
pub fn dirac_velocity(psi: &Bispinor, constants: &PhysicalConstants) -> Result<VelocitySample> {
    let density = psi.density();
    if density == 0.0 || !density.is_finite() {
        return Err(Error::ZeroDensity);
    }
    Ok(VelocitySample { v: dirac_current(psi, constants) / density, density })
}

/// Value and first derivatives of a bispinor field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BispinorGradient {
    pub value: Bispinor,
    pub dx: Bispinor,
    pub dy: Bispinor,
    pub dz: Bispinor,
    pub dt: Bispinor,
}

impl BispinorGradient {
    fn spatial(&self) -> [Bispinor; 3] {
        [self.dx, self.dy, self.dz]
    }
}

/// Fourth-order central differences of a bispinor field along x, y, z and t
/// (time step `step/c`).
pub fn bispinor_gradient<F: SpinorField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<BispinorGradient> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::StepUnderflow { step, rho: point.rho });
    }
    let (x, y, z, t) = (point.x(), point.y(), point.z, point.t);
    let dt = step / field.constants().c();
    let stencil = |at: &dyn Fn(f64) -> SpacetimePoint, h: f64| -> Result<Bispinor> {
        let f = |s: f64| field.bispinor(&at(s));
        Ok((f(-2.0 * h)? - f(2.0 * h)? + (f(h)? - f(-h)?) * 8.0) * (1.0 / (12.0 * h)))
    };
    Ok(BispinorGradient {
        value: field.bispinor(point)?,
        dx: stencil(&|s| SpacetimePoint::from_cartesian(x + s, y, z, t), step)?,
        dy: stencil(&|s| SpacetimePoint::from_cartesian(x, y + s, z, t), step)?,
        dz: stencil(&|s| SpacetimePoint::from_cartesian(x, y, z + s, t), step)?,
        dt: stencil(&|s| SpacetimePoint::from_cartesian(x, y, z, t + s), dt)?,
    })
}

/// Symmetric orbital current `(ħ/m)[Im(φ†∇χ) + Im(χ†∇φ)]`.
pub fn gordon_orbital(grad: &BispinorGradient, constants: &PhysicalConstants) -> Vec3 {
    let k = ORBITAL_COEFFICIENT * constants.hbar() / constants.mass();
    let v = grad.value;
    let parts = grad.spatial().map(|d| (dot(v.upper(), d.lower()) + dot(v.lower(), d.upper())).im);
    k * Vec3::from(parts)
}

/// The one-sided orbital form `(2ħ/m)Im(φ†∇χ)`.
pub fn gordon_orbital_printed(grad: &BispinorGradient, constants: &PhysicalConstants) -> Vec3 {
    let k = 2.0 * constants.hbar() / constants.mass();
    let v = grad.value;
    k * Vec3::from(grad.spatial().map(|d| dot(v.upper(), d.lower()).im))
}

/// Spin current from derivatives alone (product rule on the bilinears).
pub fn gordon_spin_from_gradient(grad: &BispinorGradient, constants: &PhysicalConstants) -> Vec3 {
    let v = grad.value;
    let d_bilinear = |d: &Bispinor| -> [Complex64; 3] {
        let a = sigma_bilinear(d.upper(), v.lower());
        let b = sigma_bilinear(v.upper(), d.lower());
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    };
    let [jx, jy, jz] = grad.spatial().map(|d| d_bilinear(&d));
    let m_x = |k: usize| jx[k].re;
    let m_y = |k: usize| jy[k].re;
    let m_z = |k: usize| jz[k].re;
    let curl = Vec3::new(m_y(2) - m_z(1), m_z(0) - m_x(2), m_x(1) - m_y(0));
    let dt = d_bilinear(&grad.dt);
    let time = Vec3::new(dt[0].im, dt[1].im, dt[2].im) / constants.c();
    SPIN_COEFFICIENT * constants.hbar() / constants.mass() * (curl - time)
}

/// Spin current `(ħ/m)[∇×M − (1/c)∂_t N]` with `M = Re(φ†σχ)` and
/// `N = Im(φ†σχ)` differenced directly (second-order central stencils).
pub fn gordon_spin<F: SpinorField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<Vec3> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::StepUnderflow { step, rho: point.rho });
    }
    let constants = field.constants();
    let bilinear = |p: SpacetimePoint| -> Result<[Complex64; 3]> {
        let psi = field.bispinor(&p)?;
        Ok(sigma_bilinear(psi.upper(), psi.lower()))
    };
    let (x, y, z, t) = (point.x(), point.y(), point.z, point.t);
    let diff = |a: SpacetimePoint, b: SpacetimePoint, h: f64| -> Result<[Complex64; 3]> {
        let (fa, fb) = (bilinear(a)?, bilinear(b)?);
        Ok(std::array::from_fn(|k| (fa[k] - fb[k]) / (2.0 * h)))
    };
    let cart = SpacetimePoint::from_cartesian;
    let dx = diff(cart(x + step, y, z, t), cart(x - step, y, z, t), step)?;
    let dy = diff(cart(x, y + step, z, t), cart(x, y - step, z, t), step)?;
    let dz = diff(cart(x, y, z + step, t), cart(x, y, z - step, t), step)?;
    let ht = step / constants.c();
    let dt = diff(cart(x, y, z, t + ht), cart(x, y, z, t - ht), ht)?;
    let curl = Vec3::new(dy[2].re - dz[1].re, dz[0].re - dx[2].re, dx[1].re - dy[0].re);
    let time = Vec3::new(dt[0].im, dt[1].im, dt[2].im) / constants.c();
    Ok(SPIN_COEFFICIENT * constants.hbar() / constants.mass() * (curl - time))
}

/// The total current with its orbital and spin parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentSplit {
    pub total: Vec3,
    pub orbital: Vec3,
    pub spin: Vec3,
}

impl CurrentSplit {
    /// |total − orbital − spin| relative to the largest of the three.
    pub fn mismatch(&self) -> f64 {
        let scale = self.total.norm().max(self.orbital.norm()).max(self.spin.norm());
        if scale == 0.0 {
            0.0
        } else {
            (self.total - self.orbital - self.spin).norm() / scale
        }
    }
}

/// Orbital and spin parts from a fourth-order gradient at `point`.
pub fn current_split<F: SpinorField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<CurrentSplit> {
    let grad = bispinor_gradient(field, point, step)?;
    let constants = field.constants();
    Ok(CurrentSplit {
        total: dirac_current(&grad.value, constants),
        orbital: gordon_orbital(&grad, constants),
        spin: gordon_spin_from_gradient(&grad, constants),
    })
}

/// A free positive-energy plane wave `φ = u e^{i(p·x − Et)/ħ}`,
/// `χ = (E/c − σ·p)φ/mc`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub momentum: Vec3,
    pub amplitude: [Complex64; 2],
}

impl PlaneWave {
    pub fn energy(&self, constants: &PhysicalConstants) -> f64 {
        let (mc2, c) = (constants.rest_energy(), constants.c());
        (mc2 * mc2 + (c * self.momentum.norm()).powi(2)).sqrt()
    }

    fn lower(&self, phi: [Complex64; 2], constants: &PhysicalConstants) -> [Complex64; 2] {
        let e_c = self.energy(constants) / constants.c();
        let p = self.momentum;
        let sp = [
            [Complex64::new(p.z, 0.0), Complex64::new(p.x, -p.y)],
            [Complex64::new(p.x, p.y), Complex64::new(-p.z, 0.0)],
        ];
        let mc = constants.mc();
        [
            (e_c * phi[0] - sp[0][0] * phi[0] - sp[0][1] * phi[1]) / mc,
            (e_c * phi[1] - sp[1][0] * phi[0] - sp[1][1] * phi[1]) / mc,
        ]
    }

    pub fn bispinor(&self, point: &SpacetimePoint, constants: &PhysicalConstants) -> Bispinor {
        let p = self.momentum;
        let arg = (p.x * point.x() + p.y * point.y() + p.z * point.z - self.energy(constants) * point.t) / constants.hbar();
        let e = Complex64::from_polar(1.0, arg);
        let phi = [self.amplitude[0] * e, self.amplitude[1] * e];
        let chi = self.lower(phi, constants);
        Bispinor::new(phi[0], phi[1], chi[0], chi[1])
    }

    /// Exact derivatives: ∂_k → ip_k/ħ, ∂_t → −iE/ħ.
    pub fn gradient(&self, point: &SpacetimePoint, constants: &PhysicalConstants) -> BispinorGradient {
        let value = self.bispinor(point, constants);
        let hbar = constants.hbar();
        let p = self.momentum;
        BispinorGradient {
            value,
            dx: value * (I * p.x / hbar),
            dy: value * (I * p.y / hbar),
            dz: value * (I * p.z / hbar),
            dt: value * (-I * self.energy(constants) / hbar),
        }
    }
}

/// A finite sum of plane waves.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWavePacket {
    pub waves: Vec<PlaneWave>,
    pub constants: PhysicalConstants,
}

impl PlaneWavePacket {
    pub fn gradient(&self, point: &SpacetimePoint) -> BispinorGradient {
        let zero = Bispinor::zero();
        let mut g = BispinorGradient { value: zero, dx: zero, dy: zero, dz: zero, dt: zero };
        for w in &self.waves {
            let d = w.gradient(point, &self.constants);
            g.value = g.value + d.value;
            g.dx = g.dx + d.dx;
            g.dy = g.dy + d.dy;
            g.dz = g.dz + d.dz;
            g.dt = g.dt + d.dt;
        }
        g
    }
}

impl SpinorField for PlaneWavePacket {
    fn bispinor(&self, point: &SpacetimePoint) -> Result<Bispinor> {
        Ok(self.waves.iter().fold(Bispinor::zero(), |acc, w| acc + w.bispinor(point, &self.constants)))
    }

    fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }
}

/// Least-squares coefficients of the orbital and spin parts, in units of
/// ħ/m, that reproduce the total current of plane-wave fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GordonCalibration {
    pub orbital: f64,
    pub spin: f64,
    /// Largest |total − fit| / |total| over the calibration samples.
    pub residual: f64,
}

/// Fits `total = a·orbital + b·spin` on a single plane wave (which has no
/// spin current and so fixes `a`) and on a two-wave superposition (which
/// fixes `b`), using exact plane-wave derivatives.
pub fn calibrate_gordon(constants: &PhysicalConstants) -> Result<GordonCalibration> {
    let mc = constants.mc();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let single = PlaneWavePacket {
        waves: vec![PlaneWave { momentum: Vec3::new(0.3, -0.2, 0.7) * mc, amplitude: [c(0.8, 0.1), c(-0.3, 0.5)] }],
        constants: *constants,
    };
    let pair = PlaneWavePacket {
        waves: vec![
            PlaneWave { momentum: Vec3::new(0.4, 0.1, 0.9) * mc, amplitude: [c(1.0, 0.0), c(0.2, -0.4)] },
            PlaneWave { momentum: Vec3::new(-0.6, 0.5, 0.2) * mc, amplitude: [c(0.1, 0.7), c(0.6, 0.3)] },
        ],
        constants: *constants,
    };
    let lambda = constants.lambda_bar();
    let points: Vec<SpacetimePoint> = (0..8)
        .map(|k| {
            let s = k as f64;
            SpacetimePoint::from_cartesian(lambda * (0.7 * s - 2.0), lambda * (1.3 - 0.4 * s), lambda * 0.9 * s, lambda / constants.c() * (0.5 * s - 1.0))
        })
        .collect();
    let mut rows: Vec<(Vec3, Vec3, Vec3)> = Vec::new();
    for packet in [&single, &pair] {
        for p in &points {
            let g = packet.gradient(p);
            rows.push((
                dirac_current(&g.value, constants),
                gordon_orbital(&g, constants) / ORBITAL_COEFFICIENT,
                gordon_spin_from_gradient(&g, constants) / SPIN_COEFFICIENT,
            ));
        }
    }
    let (mut oo, mut os, mut ss, mut to, mut ts) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (t, o, s) in &rows {
        oo += o.dot(o);
        os += o.dot(s);
        ss += s.dot(s);
        to += t.dot(o);
        ts += t.dot(s);
    }
    let det = oo * ss - os * os;
    if det.abs() <= f64::EPSILON * oo * ss {
        return Err(Error::Convergence { estimate: det, error: f64::INFINITY, intervals: rows.len() });
    }
    let a = (to * ss - ts * os) / det;
    let b = (ts * oo - to * os) / det;
    let residual = rows
        .iter()
        .map(|(t, o, s)| (t - a * o - b * s).norm() / t.norm())
        .fold(0.0, f64::max);
    Ok(GordonCalibration { orbital: a, spin: b, residual })
}

/// A velocity field sampled pointwise.
pub trait VelocityField: Sync {
    fn velocity(&self, point: &SpacetimePoint) -> Result<Vec3>;
}

/// Schrödinger-style flow of a scalar beam.
#[derive(Debug, Clone, Copy)]
pub struct NonrelFlow(pub ScalarBeam);

impl VelocityField for NonrelFlow {
    fn velocity(&self, point: &SpacetimePoint) -> Result<Vec3> {
        let beam = rescaled_scalar(&self.0, point);
        nonrel_velocity(&beam.jet(point)?, point, &beam.constants)
    }
}

/// The Dirac velocity `v_D`.
#[derive(Debug, Clone, Copy)]
pub struct DiracFlow(pub DiracBeam);

impl VelocityField for DiracFlow {
    fn velocity(&self, point: &SpacetimePoint) -> Result<Vec3> {
        let beam = rescaled(&self.0, point);
        Ok(dirac_velocity(&beam.bispinor(point)?, &beam.scalar.constants)?.v)
    }
}

/// Orbital velocity `j_orb/Ψ†Ψ`, with the gradient taken at `step`.
#[derive(Debug, Clone, Copy)]
pub struct OrbitalFlow {
    pub beam: DiracBeam,
    pub step: f64,
}

impl VelocityField for OrbitalFlow {
    fn velocity(&self, point: &SpacetimePoint) -> Result<Vec3> {
        let beam = rescaled(&self.beam, point);
        let grad = bispinor_gradient(&beam, point, self.step)?;
        let density = grad.value.density();
        if density == 0.0 || !density.is_finite() {
            return Err(Error::ZeroDensity);
        }
        Ok(gordon_orbital(&grad, &beam.scalar.constants) / density)
    }
}

/// Velocities are ratios, so the exponential packet is rescaled to unit
/// modulus at the sampled point before evaluation. Other kinds are left as
/// they are.
fn rescaled_scalar(beam: &ScalarBeam, point: &SpacetimePoint) -> ScalarBeam {
    if beam.kind != ScalarKind::Exponential {
        return *beam;
    }
    match beam.ln_modulus(point) {
        Ok(ln) if ln.is_finite() => beam.with_log_shift(-ln),
        _ => *beam,
    }
}

fn rescaled(beam: &DiracBeam, point: &SpacetimePoint) -> DiracBeam {
    DiracBeam { scalar: rescaled_scalar(&beam.scalar, point), ..*beam }
}

/// Curl of a velocity field at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vorticity {
    pub cartesian: Vec3,
    /// (ρ̂, φ̂, ẑ) components.
    pub cylindrical: Vec3,
}

impl Vorticity {
    pub fn magnitude(&self) -> f64 {
        self.cartesian.norm()
    }

    pub fn azimuthal(&self) -> f64 {
        self.cylindrical.y
    }
}

/// Second-order central-difference curl in Cartesian coordinates.
pub fn curl<F: VelocityField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<Vorticity> {
    check_step(point, step)?;
    let (x, y, z, t) = (point.x(), point.y(), point.z, point.t);
    let v = |p: SpacetimePoint| field.velocity(&p);
    let cart = SpacetimePoint::from_cartesian;
    let h2 = 2.0 * step;
    let dx = (v(cart(x + step, y, z, t))? - v(cart(x - step, y, z, t))?) / h2;
    let dy = (v(cart(x, y + step, z, t))? - v(cart(x, y - step, z, t))?) / h2;
    let dz = (v(cart(x, y, z + step, t))? - v(cart(x, y, z - step, t))?) / h2;
    let w = Vec3::new(dy.z - dz.y, dz.x - dx.z, dx.y - dy.x);
    Ok(Vorticity { cartesian: w, cylindrical: to_cylindrical(&w, point.phi) })
}

/// [`curl`] over many points, evaluated in parallel.
pub fn vorticity_field<F: VelocityField + ?Sized>(field: &F, points: &[SpacetimePoint], step: f64) -> Vec<Result<Vorticity>> {
    points.par_iter().map(|p| curl(field, p, step)).collect()
}

/// Trapezoidal `∮v·dl` around the circle of `radius` centred on the axis.
pub fn circulation<F: VelocityField + ?Sized>(field: &F, radius: f64, z: f64, t: f64, n_samples: usize) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParams(format!("circulation radius must be positive, got {radius}")));
    }
    if n_samples < MIN_CIRCULATION_SAMPLES {
        return Err(Error::InvalidParams(format!(
            "circulation needs at least {MIN_CIRCULATION_SAMPLES} samples, got {n_samples}"
        )));
    }
    let dphi = std::f64::consts::TAU / n_samples as f64;
    let mut sum = 0.0;
    for k in 0..n_samples {
        let p = SpacetimePoint::new(radius, k as f64 * dphi, z, t);
        let v = field.velocity(&p)?;
        sum += to_cylindrical(&v, p.phi).y;
    }
    Ok(sum * radius * dphi)
}

/// Relative residual of `∂_t(Ψ†Ψ) + ∇·j = 0` by central differences,
/// normalized by the summed magnitudes of the four terms.
pub fn continuity_residual<F: SpinorField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::StepUnderflow { step, rho: point.rho });
    }
    let constants = field.constants();
    let (x, y, z, t) = (point.x(), point.y(), point.z, point.t);
    let cart = SpacetimePoint::from_cartesian;
    let j = |p: SpacetimePoint| -> Result<Vec3> { Ok(dirac_current(&field.bispinor(&p)?, constants)) };
    let rho = |p: SpacetimePoint| -> Result<f64> { Ok(field.bispinor(&p)?.density()) };
    let h2 = 2.0 * step;
    let ht = step / constants.c();
    let terms = [
        (rho(cart(x, y, z, t + ht))? - rho(cart(x, y, z, t - ht))?) / (2.0 * ht),
        (j(cart(x + step, y, z, t))?.x - j(cart(x - step, y, z, t))?.x) / h2,
        (j(cart(x, y + step, z, t))?.y - j(cart(x, y - step, z, t))?.y) / h2,
        (j(cart(x, y, z + step, t))?.z - j(cart(x, y, z - step, t))?.z) / h2,
    ];
    let scale: f64 = terms.iter().map(|v| v.abs()).sum();
    Ok(if scale == 0.0 { 0.0 } else { terms.iter().sum::<f64>().abs() / scale })
}
