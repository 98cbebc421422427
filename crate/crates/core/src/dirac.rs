//! Dirac bispinors built from scalar Klein-Gordon solutions.
//!
//! A scalar `f` is placed in one slot of the upper spinor φ and the lower
//! spinor is generated as χ = iλ̄𝒟φ, where
//!
//! ```text
//! 𝒟 = [ ∂_t/c + ∂_z    ∂_x − i∂_y ]      𝒟̃ = [ ∂_t/c − ∂_z    −∂_x + i∂_y ]
//!     [ ∂_x + i∂_y    ∂_t/c − ∂_z ]          [ −∂_x − i∂_y   ∂_t/c + ∂_z  ]
//! ```
//!
//! The pair iħ𝒟φ = mcχ, iħ𝒟̃χ = mcφ is the Dirac equation in the
//! spinorial basis. Transverse derivatives use the cylindrical identity
//! ∂_x ± i∂_y = e^{±iφ}(∂_ρ ± (i/ρ)∂_φ) with each component's azimuthal
//! index, so no derivative is ever taken numerically in φ.

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::model::{PhysicalConstants, SpacetimePoint};
use crate::scalar::{check_step, ScalarBeam, ScalarJet};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Minimum ring size for the azimuthal analysis.
pub const MIN_RING_SAMPLES: usize = 64;

/// Relative power above which a harmonic counts as present.
pub const HARMONIC_POWER_THRESHOLD: f64 = 1e-10;

/// Four complex components Ψ = (φ₁, φ₂, χ₁, χ₂).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Bispinor {
    pub phi1: Complex64,
    pub phi2: Complex64,
    pub chi1: Complex64,
    pub chi2: Complex64,
}

impl Bispinor {
    pub fn new(phi1: Complex64, phi2: Complex64, chi1: Complex64, chi2: Complex64) -> Self {
        Self { phi1, phi2, chi1, chi2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_components(c: [Complex64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.phi1, self.phi2, self.chi1, self.chi2]
    }

    pub fn upper(&self) -> [Complex64; 2] {
        [self.phi1, self.phi2]
    }

    pub fn lower(&self) -> [Complex64; 2] {
        [self.chi1, self.chi2]
    }

    /// Ψ†Ψ = φ†φ + χ†χ.
    pub fn density(&self) -> f64 {
        self.components().iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.density().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.components().iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    fn map2(self, other: Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let (a, b) = (self.components(), other.components());
        Self::from_components([f(a[0], b[0]), f(a[1], b[1]), f(a[2], b[2]), f(a[3], b[3])])
    }
}

impl Add for Bispinor {
    type Output = Bispinor;
    fn add(self, rhs: Self) -> Self {
        self.map2(rhs, |a, b| a + b)
    }
}

impl Sub for Bispinor {
    type Output = Bispinor;
    fn sub(self, rhs: Self) -> Self {
        self.map2(rhs, |a, b| a - b)
    }
}

impl Mul<Complex64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, k: Complex64) -> Self {
        let c = self.components();
        Self::from_components([c[0] * k, c[1] * k, c[2] * k, c[3] * k])
    }
}

impl Mul<f64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, k: f64) -> Self {
        self * Complex64::new(k, 0.0)
    }
}

/// Which slot of φ carries the scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinChoice {
    /// φ = (f, 0); total angular momentum ħ(l + 1/2).
    Up,
    /// φ = (0, f); total angular momentum ħ(l − 1/2).
    Down,
}

impl SpinChoice {
    pub const BOTH: [SpinChoice; 2] = [Self::Up, Self::Down];

    /// Azimuthal index of each component (φ₁, φ₂, χ₁, χ₂). The index of the
    /// identically zero slot is the one J_z bookkeeping requires.
    pub fn harmonics(self, l: i32) -> [i32; 4] {
        match self {
            Self::Up => [l, l + 1, l, l + 1],
            Self::Down => [l - 1, l, l - 1, l],
        }
    }

    /// J_z eigenvalue in units of ħ.
    pub fn jz_over_hbar(self, l: i32) -> f64 {
        match self {
            Self::Up => l as f64 + 0.5,
            Self::Down => l as f64 - 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Up => "up",
            Self::Down => "down",
        }
    }
}

impl std::str::FromStr for SpinChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Self::Up),
            "down" => Ok(Self::Down),
            other => Err(Error::Parse(format!("unknown spin choice `{other}`"))),
        }
    }
}

/// KG→D: builds Ψ = (φ, iλ̄𝒟φ) from a scalar jet evaluated at `point`.
pub fn build_bispinor(jet: &ScalarJet, spin: SpinChoice, point: &SpacetimePoint, constants: &PhysicalConstants) -> Bispinor {
    let i_lambda = I * constants.lambda_bar();
    let c = constants.c();
    let l = jet.azimuthal_index as f64;
    let v_over_rho = jet.value_over_rho(point.rho);
    let e_phi = Complex64::from_polar(1.0, point.phi);
    match spin {
        SpinChoice::Up => Bispinor {
            phi1: jet.value,
            phi2: ZERO,
            chi1: i_lambda * (jet.d_t / c + jet.d_z),
            chi2: i_lambda * e_phi * (jet.d_rho - l * v_over_rho),
        },
        SpinChoice::Down => Bispinor {
            phi1: ZERO,
            phi2: jet.value,
            chi1: i_lambda * e_phi.conj() * (jet.d_rho + l * v_over_rho),
            chi2: i_lambda * (jet.d_t / c - jet.d_z),
        },
    }
}

/// A bispinor-valued field sampled pointwise.
pub trait SpinorField: Sync {
    fn bispinor(&self, point: &SpacetimePoint) -> Result<Bispinor>;
    fn constants(&self) -> &PhysicalConstants;
}

/// A field whose components are single azimuthal harmonics.
pub trait CylindricalField: SpinorField {
    fn harmonics(&self) -> [i32; 4];
}

/// A scalar beam lifted to a Dirac bispinor field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracBeam {
    pub scalar: ScalarBeam,
    pub spin: SpinChoice,
}

impl DiracBeam {
    pub fn new(scalar: ScalarBeam, spin: SpinChoice) -> Result<Self> {
        if !scalar.kind.is_relativistic() {
            return Err(Error::InvalidParams(format!(
                "{} solves the Schrödinger equation and has no Dirac lift",
                scalar.kind
            )));
        }
        Ok(Self { scalar, spin })
    }

    pub fn l(&self) -> i32 {
        self.scalar.l()
    }

    pub fn with_log_shift(self, shift: f64) -> Self {
        Self { scalar: self.scalar.with_log_shift(shift), ..self }
    }

    pub fn jz_over_hbar(&self) -> f64 {
        self.spin.jz_over_hbar(self.l())
    }
}

impl SpinorField for DiracBeam {
    fn bispinor(&self, point: &SpacetimePoint) -> Result<Bispinor> {
        let jet = self.scalar.jet(point)?;
        Ok(build_bispinor(&jet, self.spin, point, &self.scalar.constants))
    }

    fn constants(&self) -> &PhysicalConstants {
        &self.scalar.constants
    }
}

impl CylindricalField for DiracBeam {
    fn harmonics(&self) -> [i32; 4] {
        self.spin.harmonics(self.l())
    }
}

/// Central differences of every component along t, z and ρ.
struct ComponentDifferences {
    value: [Complex64; 4],
    d_t: [Complex64; 4],
    d_z: [Complex64; 4],
    d_rho: [Complex64; 4],
}

fn component_differences<F: SpinorField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<ComponentDifferences> {
    check_step(point, step)?;
    let p = *point;
    let dt = step / field.constants().c();
    let diff = |a: SpacetimePoint, b: SpacetimePoint, h: f64| -> Result<[Complex64; 4]> {
        let (fa, fb) = (field.bispinor(&a)?.components(), field.bispinor(&b)?.components());
        Ok(std::array::from_fn(|k| (fa[k] - fb[k]) / (2.0 * h)))
    };
    Ok(ComponentDifferences {
        value: field.bispinor(&p)?.components(),
        d_t: diff(p.with_t(p.t + dt), p.with_t(p.t - dt), dt)?,
        d_z: diff(p.with_z(p.z + step), p.with_z(p.z - step), step)?,
        d_rho: diff(p.with_rho(p.rho + step), p.with_rho(p.rho - step), step)?,
    })
}

/// (∂_x + i∂_y) and (∂_x − i∂_y) of component `k`.
fn transverse(d: &ComponentDifferences, harmonics: &[i32; 4], k: usize, point: &SpacetimePoint) -> (Complex64, Complex64) {
    let m = harmonics[k] as f64;
    let e = Complex64::from_polar(1.0, point.phi);
    let rho = point.rho;
    let raising = e * (d.d_rho[k] - m * d.value[k] / rho);
    let lowering = e.conj() * (d.d_rho[k] + m * d.value[k] / rho);
    (raising, lowering)
}

/// 𝒟 applied to the upper spinor of `field` by finite differences.
pub fn apply_d<F: CylindricalField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<[Complex64; 2]> {
    let d = component_differences(field, point, step)?;
    Ok(apply_d_with(&d, &field.harmonics(), point, field.constants().c()))
}

fn apply_d_with(d: &ComponentDifferences, h: &[i32; 4], point: &SpacetimePoint, c: f64) -> [Complex64; 2] {
    d_rows(d, h, point, c).map(|row| row.iter().sum())
}

// The three terms of each row of 𝒟 acting on (φ₁, φ₂).
fn d_rows(d: &ComponentDifferences, h: &[i32; 4], point: &SpacetimePoint, c: f64) -> [[Complex64; 3]; 2] {
    let (_, lower2) = transverse(d, h, 1, point);
    let (raise1, _) = transverse(d, h, 0, point);
    [
        [d.d_t[0] / c, d.d_z[0], lower2],
        [raise1, d.d_t[1] / c, -d.d_z[1]],
    ]
}

/// 𝒟̃ applied to the lower spinor of `field` by finite differences.
pub fn apply_dtilde<F: CylindricalField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<[Complex64; 2]> {
    let d = component_differences(field, point, step)?;
    Ok(apply_dtilde_with(&d, &field.harmonics(), point, field.constants().c()))
}

fn apply_dtilde_with(d: &ComponentDifferences, h: &[i32; 4], point: &SpacetimePoint, c: f64) -> [Complex64; 2] {
    dtilde_rows(d, h, point, c).map(|row| row.iter().sum())
}

// The three terms of each row of 𝒟̃ acting on (χ₁, χ₂).
fn dtilde_rows(d: &ComponentDifferences, h: &[i32; 4], point: &SpacetimePoint, c: f64) -> [[Complex64; 3]; 2] {
    let (_, lower4) = transverse(d, h, 3, point);
    let (raise3, _) = transverse(d, h, 2, point);
    [
        [d.d_t[2] / c, -d.d_z[2], -lower4],
        [-raise3, d.d_t[3] / c, d.d_z[3]],
    ]
}

/// |Σ terms − rhs| over the total magnitude of everything involved, so that
/// nodes of the field do not inflate the measure.
fn row_residual(rows: [[Complex64; 3]; 2], scale_terms: Complex64, rhs: [Complex64; 2], scale_rhs: Complex64) -> f64 {
    let mut diff = 0.0;
    let mut size = 0.0;
    for (row, r) in rows.iter().zip(rhs) {
        let lhs: Complex64 = row.iter().sum::<Complex64>() * scale_terms;
        diff += (lhs - r * scale_rhs).norm_sqr();
        let s = row.iter().map(|t| t.norm()).sum::<f64>() * scale_terms.norm() + r.norm() * scale_rhs.norm();
        size += s * s;
    }
    if size == 0.0 {
        0.0
    } else {
        (diff / size).sqrt()
    }
}

/// Relative residuals of the two halves of the Dirac equation,
/// iħ𝒟φ = mcχ and iħ𝒟̃χ = mcφ. Each is the norm of the difference divided
/// by the summed magnitudes of the individual derivative terms and of the
/// right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracResiduals {
    pub upper: f64,
    pub lower: f64,
}

impl DiracResiduals {
    pub fn max(&self) -> f64 {
        self.upper.max(self.lower)
    }
}

pub fn dirac_residuals<F: CylindricalField + ?Sized>(field: &F, point: &SpacetimePoint, step: f64) -> Result<DiracResiduals> {
    let d = component_differences(field, point, step)?;
    let h = field.harmonics();
    let consts = field.constants();
    let (ihbar, mc, c) = (I * consts.hbar(), consts.mc(), consts.c());
    Ok(DiracResiduals {
        upper: row_residual(d_rows(&d, &h, point, c), ihbar, [d.value[2], d.value[3]], Complex64::new(mc, 0.0)),
        lower: row_residual(dtilde_rows(&d, &h, point, c), ihbar, [d.value[0], d.value[1]], Complex64::new(mc, 0.0)),
    })
}

/// Relative residual of 𝒟̃χ = −(i/λ̄)φ, with φ rebuilt from the scalar
/// alone; normalized like [`dirac_residuals`].
pub fn kg_to_dirac_residual(beam: &DiracBeam, point: &SpacetimePoint, step: f64) -> Result<f64> {
    let d = component_differences(beam, point, step)?;
    let f = beam.scalar.value(point)?;
    let constants = &beam.scalar.constants;
    let phi = match beam.spin {
        SpinChoice::Up => [f, ZERO],
        SpinChoice::Down => [ZERO, f],
    };
    let rows = dtilde_rows(&d, &beam.harmonics(), point, constants.c());
    Ok(row_residual(rows, Complex64::new(1.0, 0.0), phi, -I / constants.lambda_bar()))
}

/// Max componentwise |J_zΨ − ħjΨ|/|Ψ| with J_z = −iħ∂_φ + (ħ/2)diag(σ_z, σ_z)
/// evaluated from the components' azimuthal indices.
pub fn jz_residual(psi: &Bispinor, harmonics: [i32; 4], jz_over_hbar: f64, hbar: f64) -> f64 {
    let norm = psi.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let spin_half = [0.5, -0.5, 0.5, -0.5];
    psi.components()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let applied = *c * (hbar * (harmonics[k] as f64 + spin_half[k]));
            (applied - *c * (hbar * jz_over_hbar)).norm() / norm
        })
        .fold(0.0, f64::max)
}

/// [`jz_residual`] for a beam at a point, with the eigenvalue ħ(l ± 1/2).
pub fn jz_eigencheck(beam: &DiracBeam, point: &SpacetimePoint) -> Result<f64> {
    let psi = beam.bispinor(point)?;
    Ok(jz_residual(&psi, beam.harmonics(), beam.jz_over_hbar(), beam.scalar.constants.hbar()))
}

/// Bispinor samples on the ring ρ = const at `n` equally spaced angles.
pub fn ring_samples<F: SpinorField + ?Sized>(field: &F, rho: f64, z: f64, t: f64, n: usize) -> Result<Vec<Bispinor>> {
    (0..n)
        .map(|k| {
            let phi = std::f64::consts::TAU * k as f64 / n as f64;
            field.bispinor(&SpacetimePoint::new(rho, phi, z, t))
        })
        .collect()
}

/// Discrete Fourier power of each component; `spectra[k][m]` is the power in
/// harmonic `signed(m)` of component `k`.
fn ring_spectra(samples: &[Bispinor]) -> Result<[Vec<f64>; 4]> {
    let n = samples.len();
    if n < MIN_RING_SAMPLES {
        return Err(Error::InvalidParams(format!(
            "ring needs at least {MIN_RING_SAMPLES} samples, got {n}"
        )));
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let mut out: [Vec<f64>; 4] = Default::default();
    for (k, spectrum) in out.iter_mut().enumerate() {
        let mut buf: Vec<Complex64> = samples.iter().map(|b| b.components()[k]).collect();
        fft.process(&mut buf);
        *spectrum = buf.iter().map(|c| c.norm_sqr()).collect();
    }
    Ok(out)
}

fn signed_harmonic(m: usize, n: usize) -> i32 {
    if m > n / 2 {
        m as i32 - n as i32
    } else {
        m as i32
    }
}

/// Azimuthal harmonics present in each component, relative to the total
/// power of the whole ring.
pub fn azimuthal_content_per_component(samples: &[Bispinor]) -> Result<[BTreeSet<i32>; 4]> {
    let spectra = ring_spectra(samples)?;
    let n = samples.len();
    let total: f64 = spectra.iter().flat_map(|s| s.iter()).sum();
    let mut out: [BTreeSet<i32>; 4] = Default::default();
    if total == 0.0 {
        return Ok(out);
    }
    for (k, spectrum) in spectra.iter().enumerate() {
        for (m, p) in spectrum.iter().enumerate() {
            if p / total > HARMONIC_POWER_THRESHOLD {
                out[k].insert(signed_harmonic(m, n));
            }
        }
    }
    Ok(out)
}

/// Union of the harmonics present in any component; empty for an all-zero ring.
pub fn azimuthal_content(samples: &[Bispinor]) -> Result<BTreeSet<i32>> {
    Ok(azimuthal_content_per_component(samples)?.into_iter().flatten().collect())
}

/// Relative power of every harmonic summed over the four components, as
/// `(m, power / total)` in ascending `m`. Empty for an all-zero ring.
pub fn harmonic_powers(samples: &[Bispinor]) -> Result<Vec<(i32, f64)>> {
    let spectra = ring_spectra(samples)?;
    let n = samples.len();
    let total: f64 = spectra.iter().flat_map(|s| s.iter()).sum();
    if total == 0.0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<(i32, f64)> = (0..n)
        .map(|m| (signed_harmonic(m, n), spectra.iter().map(|s| s[m]).sum::<f64>() / total))
        .collect();
    out.sort_by_key(|(m, _)| *m);
    Ok(out)
}

/// Spectral J_z check on a ring: applies −iħ∂_φ in Fourier space to each
/// component and returns max|J_zΨ − ħjΨ| / max|Ψ| over the ring. Unlike
/// [`jz_residual`] this uses only the sampled values.
pub fn jz_residual_ring(samples: &[Bispinor], jz_over_hbar: f64) -> Result<f64> {
    let n = samples.len();
    if n < MIN_RING_SAMPLES {
        return Err(Error::InvalidParams(format!(
            "ring needs at least {MIN_RING_SAMPLES} samples, got {n}"
        )));
    }
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let spin_half = [0.5, -0.5, 0.5, -0.5];
    let scale = samples.iter().map(|b| b.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut worst: f64 = 0.0;
    for k in 0..4 {
        let mut buf: Vec<Complex64> = samples.iter().map(|b| b.components()[k]).collect();
        fwd.process(&mut buf);
        for (m, c) in buf.iter_mut().enumerate() {
            let eig = signed_harmonic(m, n) as f64 + spin_half[k] - jz_over_hbar;
            *c *= eig / n as f64;
        }
        inv.process(&mut buf);
        for c in buf {
            worst = worst.max(c.norm() / scale);
        }
    }
    Ok(worst)
}
