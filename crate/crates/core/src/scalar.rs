//! Scalar wave functions and their analytic first derivatives.
//!
//! Four closed-form solutions are provided: the Bessel beam, the
//! nonrelativistic and relativistic Laguerre-Gauss packets, and the
//! exponential packet. Each is evaluated as a [`ScalarJet`], which carries the
//! value together with ∂_t, ∂_z and ∂_ρ. The azimuthal dependence is always a
//! single harmonic `e^{ilφ}`, so ∂_φ is `il·value` and is never differenced.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{derived_quantities, BeamParams, PhysicalConstants, SpacetimePoint};
use crate::special::{bessel_j_triplet, laguerre, laguerre_derivative, principal_sqrt};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Which closed-form scalar solution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScalarKind {
    Bessel,
    LgNonrel,
    LgRel,
    Exponential,
}

impl ScalarKind {
    pub const ALL: [ScalarKind; 4] = [Self::Bessel, Self::LgNonrel, Self::LgRel, Self::Exponential];

    pub fn name(self) -> &'static str {
        match self {
            Self::Bessel => "bessel",
            Self::LgNonrel => "lg-nonrel",
            Self::LgRel => "lg-rel",
            Self::Exponential => "exp",
        }
    }

    /// True for the solutions of the Klein-Gordon equation; the
    /// nonrelativistic Laguerre-Gauss packet solves the Schrödinger equation.
    pub fn is_relativistic(self) -> bool {
        self != Self::LgNonrel
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bessel" => Ok(Self::Bessel),
            "lg-nonrel" => Ok(Self::LgNonrel),
            "lg-rel" => Ok(Self::LgRel),
            "exp" | "exponential" => Ok(Self::Exponential),
            other => Err(Error::Parse(format!("unknown scalar kind `{other}`"))),
        }
    }
}

/// A complex scalar value with its first derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarJet {
    pub value: Complex64,
    pub d_t: Complex64,
    pub d_z: Complex64,
    pub d_rho: Complex64,
    /// The exponent `l` of the `e^{ilφ}` factor in `value`.
    pub azimuthal_index: i32,
}

impl ScalarJet {
    pub fn zero(azimuthal_index: i32) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { value: z, d_t: z, d_z: z, d_rho: z, azimuthal_index }
    }

    /// ∂_φ of the value.
    pub fn d_phi(&self) -> Complex64 {
        I * self.azimuthal_index as f64 * self.value
    }

    pub fn scaled(self, k: Complex64) -> Self {
        Self {
            value: self.value * k,
            d_t: self.d_t * k,
            d_z: self.d_z * k,
            d_rho: self.d_rho * k,
            ..self
        }
    }

    /// `value/ρ`, continued to the axis. A packet with `|l| = 1` vanishes
    /// linearly there, so the limit is ∂_ρ; for `|l| ≥ 2` it is zero.
    pub fn value_over_rho(&self, rho: f64) -> Complex64 {
        if rho > 0.0 {
            self.value / rho
        } else if self.azimuthal_index.abs() == 1 {
            self.d_rho
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.value, self.d_t, self.d_z, self.d_rho]
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// A configured scalar solution, ready to be evaluated at points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarBeam {
    pub kind: ScalarKind,
    pub params: BeamParams,
    pub constants: PhysicalConstants,
    log_shift: f64,
}

impl ScalarBeam {
    pub fn new(kind: ScalarKind, params: BeamParams, constants: PhysicalConstants) -> Result<Self> {
        params.validate(kind, &constants)?;
        Ok(Self { kind, params, constants, log_shift: 0.0 })
    }

    /// Multiplies the field by `e^{shift}`. For the exponential packet the
    /// shift is folded into the `e^{−bh}` exponent, which keeps wide packets
    /// (large `b`) and far-field points clear of underflow.
    pub fn with_log_shift(mut self, shift: f64) -> Self {
        self.log_shift = shift;
        self
    }

    pub fn log_shift(&self) -> f64 {
        self.log_shift
    }

    pub fn l(&self) -> i32 {
        self.params.l
    }

    pub fn jet(&self, point: &SpacetimePoint) -> Result<ScalarJet> {
        let (p, c) = (&self.params, &self.constants);
        match self.kind {
            ScalarKind::Exponential => exp_jet(p, c, point, self.log_shift),
            ScalarKind::Bessel => Ok(eval_bessel_scalar(p, c, point)?.scaled(self.shift_factor())),
            ScalarKind::LgNonrel => Ok(eval_lg_nonrel(p, c, point)?.scaled(self.shift_factor())),
            ScalarKind::LgRel => Ok(eval_lg_rel(p, c, point)?.scaled(self.shift_factor())),
        }
    }

    pub fn value(&self, point: &SpacetimePoint) -> Result<Complex64> {
        Ok(self.jet(point)?.value)
    }

    /// ln|f| of the unshifted field; `−∞` where the field vanishes.
    /// For the exponential packet this is evaluated in closed form, so it is
    /// accurate far beyond the range where |f| itself underflows.
    pub fn ln_modulus(&self, point: &SpacetimePoint) -> Result<f64> {
        match self.kind {
            ScalarKind::Exponential => exp_ln_modulus(&self.params, &self.constants, point),
            _ => {
                let v = self.jet(point)?.value.norm();
                Ok(v.ln() - self.log_shift)
            }
        }
    }

    fn shift_factor(&self) -> Complex64 {
        Complex64::new(self.log_shift.exp(), 0.0)
    }
}

/// The Bessel beam `e^{−i(Et−p_z z)/ħ} e^{ilφ} J_l(p_⊥ρ/ħ)`.
pub fn eval_bessel_scalar(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<ScalarJet> {
    let energy = params.require_energy()?;
    let derived = derived_quantities(params, constants)?;
    let p_perp = derived.p_perp.unwrap_or(0.0);
    let hbar = constants.hbar();
    let k = p_perp / hbar;
    let l = params.l;
    let phase = (I * ((params.p_z * point.z - energy * point.t) / hbar + l as f64 * point.phi)).exp();
    let [below, center, above] = bessel_j_triplet(l, k * point.rho)?;
    let value = phase * center;
    Ok(ScalarJet {
        value,
        d_t: -I * (energy / hbar) * value,
        d_z: I * (params.p_z / hbar) * value,
        d_rho: phase * (k * 0.5 * (below - above)),
        azimuthal_index: l,
    })
}

/// ρ^{|l|} a^{−(n+|l|+1)} e^{−ρ²/a} L_n^{|l|}(ρ²/a) together with its
/// ρ- and a-derivatives.
struct LgEnvelope {
    value: Complex64,
    d_rho: Complex64,
    d_a: Complex64,
}

fn lg_envelope(rho: f64, a: Complex64, n: u32, abs_l: u32) -> Result<LgEnvelope> {
    let big_n = (n + abs_l + 1) as i32;
    let x = rho * rho / a;
    let base = a.powi(-big_n) * (-x).exp();
    let lag = laguerre(n, abs_l, x)?;
    let lag_d = laguerre_derivative(n, abs_l, x)?;
    let rho_pow = rho.powi(abs_l as i32);
    let rho_pow_below = if abs_l == 0 { 0.0 } else { abs_l as f64 * rho.powi(abs_l as i32 - 1) };
    Ok(LgEnvelope {
        value: base * rho_pow * lag,
        d_rho: base * (rho_pow_below * lag + rho_pow * (2.0 * rho / a) * (lag_d - lag)),
        d_a: base * rho_pow * (-(big_n as f64) * lag / a + (x / a) * (lag - lag_d)),
    })
}

/// The nonrelativistic Laguerre-Gauss packet with `a(t) = w² + 2iħt/m`,
/// normalized exactly as written (no extra constant).
pub fn eval_lg_nonrel(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<ScalarJet> {
    let (hbar, m) = (constants.hbar(), constants.mass());
    let l = params.l;
    let p_z = params.p_z;
    let a_dot = I * (2.0 * hbar / m);
    let a = params.w * params.w + a_dot * point.t;
    let env = lg_envelope(point.rho, a, params.n, l.unsigned_abs())?;
    let kinetic = p_z * p_z / (2.0 * m * hbar);
    let phase = (I * (-kinetic * point.t + p_z * point.z / hbar + l as f64 * point.phi)).exp();
    let value = phase * env.value;
    Ok(ScalarJet {
        value,
        d_t: -I * kinetic * value + phase * env.d_a * a_dot,
        d_z: I * (p_z / hbar) * value,
        d_rho: phase * env.d_rho,
        azimuthal_index: l,
    })
}

/// The relativistic extension of the Laguerre-Gauss packet. It depends on
/// both light-cone times `t± = t ± z/c`; the `t₊` dependence is the
/// counterpropagating content.
pub fn eval_lg_rel(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<ScalarJet> {
    let energy = params.require_energy()?;
    let (hbar, m, c) = (constants.hbar(), constants.mass(), constants.c());
    let l = params.l;
    let t_plus = point.t_plus(c);
    let t_minus = point.t_minus(c);
    let a_dot = I * (2.0 * hbar * c * c / energy);
    let a = params.w * params.w + a_dot * t_plus;
    let env = lg_envelope(point.rho, a, params.n, l.unsigned_abs())?;
    let omega_minus = energy / (2.0 * hbar);
    let omega_plus = m * m * c.powi(4) / (2.0 * energy * hbar);
    let phase = (I * (-omega_minus * t_minus - omega_plus * t_plus + l as f64 * point.phi)).exp();
    let value = phase * env.value;
    Ok(ScalarJet {
        value,
        d_t: -I * (omega_minus + omega_plus) * value + phase * env.d_a * a_dot,
        d_z: I * ((omega_minus - omega_plus) / c) * value + phase * env.d_a * (a_dot / c),
        d_rho: phase * env.d_rho,
        azimuthal_index: l,
    })
}

/// The exponential packet
/// `e^{ip_z z/ħ} e^{ilφ} e^{−bh}/h · (qρ/(h+1+iqct))^{|l|}` with
/// `h = √((1+iqct)² + (qρ)²)` on the principal branch.
pub fn eval_exp_scalar(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<ScalarJet> {
    exp_jet(params, constants, point, 0.0)
}

struct ExpParts {
    s: Complex64,
    h: Complex64,
    u: Complex64,
    q: f64,
}

fn exp_parts(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<ExpParts> {
    if !(params.b > 0.0) {
        return Err(Error::InvalidParams(format!("b must be positive, got {}", params.b)));
    }
    let q = derived_quantities(params, constants)?.q;
    let s = Complex64::new(1.0, q * constants.c() * point.t);
    let qr = q * point.rho;
    let h = principal_sqrt(s * s + qr * qr);
    Ok(ExpParts { s, h, u: h + s, q })
}

fn exp_jet(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint, log_shift: f64) -> Result<ScalarJet> {
    let ExpParts { s, h, u, q } = exp_parts(params, constants, point)?;
    let (b, l) = (params.b, params.l);
    let abs_l = l.unsigned_abs() as i32;
    let c = constants.c();
    let phase = (I * (params.p_z * point.z / constants.hbar() + l as f64 * point.phi)).exp();
    let env = (-b * h + log_shift).exp() / h;
    let ratio = q * point.rho / u;
    let pow = ratio.powi(abs_l);
    let pow_below = if abs_l == 0 { Complex64::new(0.0, 0.0) } else { ratio.powi(abs_l - 1) };

    let h_rho = q * q * point.rho / h;
    let h_t = I * q * c * s / h;
    let outer = -b - 1.0 / h;
    let lf = abs_l as f64;

    let value = phase * env * pow;
    let d_rho = phase * env * ((outer - lf / u) * h_rho * pow + lf * (q / u) * pow_below);
    let d_t = phase * env * pow * (outer * h_t - lf * (h_t + I * q * c) / u);
    Ok(ScalarJet {
        value,
        d_t,
        d_z: I * (params.p_z / constants.hbar()) * value,
        d_rho,
        azimuthal_index: l,
    })
}

fn exp_ln_modulus(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<f64> {
    let ExpParts { h, u, q, .. } = exp_parts(params, constants, point)?;
    let abs_l = params.l.unsigned_abs() as f64;
    let mut ln = -params.b * h.re - h.norm().ln();
    if abs_l > 0.0 {
        ln += abs_l * ((q * point.rho).ln() - u.norm().ln());
    }
    Ok(ln)
}

/// Central-difference (second-order) jet of an arbitrary complex field.
/// `step` is a length; the time step is `step/c`.
pub fn fd_jet_of<F>(field: F, c: f64, point: &SpacetimePoint, step: f64, azimuthal_index: i32) -> Result<ScalarJet>
where
    F: Fn(&SpacetimePoint) -> Result<Complex64>,
{
    check_step(point, step)?;
    let dt = step / c;
    let diff = |plus: SpacetimePoint, minus: SpacetimePoint, h: f64| -> Result<Complex64> {
        Ok((field(&plus)? - field(&minus)?) / (2.0 * h))
    };
    let p = *point;
    Ok(ScalarJet {
        value: field(point)?,
        d_t: diff(p.with_t(p.t + dt), p.with_t(p.t - dt), dt)?,
        d_z: diff(p.with_z(p.z + step), p.with_z(p.z - step), step)?,
        d_rho: diff(p.with_rho(p.rho + step), p.with_rho(p.rho - step), step)?,
        azimuthal_index,
    })
}

/// Finite-difference oracle for the analytic jets.
pub fn finite_difference_jet(beam: &ScalarBeam, point: &SpacetimePoint, step: f64) -> Result<ScalarJet> {
    fd_jet_of(|p| beam.value(p), beam.constants.c(), point, step, beam.l())
}

pub(crate) fn check_step(point: &SpacetimePoint, step: f64) -> Result<()> {
    if !(step > 0.0 && step.is_finite()) || point.rho < 2.0 * step {
        return Err(Error::StepUnderflow { step, rho: point.rho });
    }
    Ok(())
}

/// Second derivatives of the value along t, z and ρ by three-point stencils.
struct SecondDifferences {
    value: Complex64,
    d_tt: Complex64,
    d_zz: Complex64,
    d_rr: Complex64,
    d_t: Complex64,
    d_r: Complex64,
}

fn second_differences(beam: &ScalarBeam, point: &SpacetimePoint, step: f64) -> Result<SecondDifferences> {
    check_step(point, step)?;
    let p = *point;
    let dt = step / beam.constants.c();
    let f0 = beam.value(&p)?;
    let (tp, tm) = (beam.value(&p.with_t(p.t + dt))?, beam.value(&p.with_t(p.t - dt))?);
    let (zp, zm) = (beam.value(&p.with_z(p.z + step))?, beam.value(&p.with_z(p.z - step))?);
    let (rp, rm) = (beam.value(&p.with_rho(p.rho + step))?, beam.value(&p.with_rho(p.rho - step))?);
    Ok(SecondDifferences {
        value: f0,
        d_tt: (tp - 2.0 * f0 + tm) / (dt * dt),
        d_zz: (zp - 2.0 * f0 + zm) / (step * step),
        d_rr: (rp - 2.0 * f0 + rm) / (step * step),
        d_t: (tp - tm) / (2.0 * dt),
        d_r: (rp - rm) / (2.0 * step),
    })
}

/// Relative Klein-Gordon residual `|(1/c²)∂_t² − Δ + (mc/ħ)²| f` by central
/// differences, divided by the sum of the magnitudes of its terms. The
/// azimuthal part of the Laplacian is the analytic `−l²/ρ²`.
pub fn kg_residual(beam: &ScalarBeam, point: &SpacetimePoint, step: f64) -> Result<f64> {
    let d = second_differences(beam, point, step)?;
    let c = beam.constants.c();
    let kappa = beam.constants.inverse_lambda_bar();
    let l = beam.l() as f64;
    let rho = point.rho;
    let terms = [
        d.d_tt / (c * c),
        -d.d_rr,
        -d.d_r / rho,
        d.value * (l * l / (rho * rho)),
        -d.d_zz,
        d.value * (kappa * kappa),
    ];
    Ok(relative_sum(&terms))
}

/// Relative residual of the free Schrödinger equation
/// `iħ∂_t ψ + (ħ²/2m)Δψ`.
pub fn schrodinger_residual(beam: &ScalarBeam, point: &SpacetimePoint, step: f64) -> Result<f64> {
    let d = second_differences(beam, point, step)?;
    let (hbar, m) = (beam.constants.hbar(), beam.constants.mass());
    let l = beam.l() as f64;
    let rho = point.rho;
    let k = hbar * hbar / (2.0 * m);
    let terms = [
        I * hbar * d.d_t,
        k * d.d_rr,
        k * d.d_r / rho,
        -k * d.value * (l * l / (rho * rho)),
        k * d.d_zz,
    ];
    Ok(relative_sum(&terms))
}

/// The residual of the wave equation each kind actually solves.
pub fn wave_equation_residual(beam: &ScalarBeam, point: &SpacetimePoint, step: f64) -> Result<f64> {
    if beam.kind.is_relativistic() {
        kg_residual(beam, point, step)
    } else {
        schrodinger_residual(beam, point, step)
    }
}

fn relative_sum(terms: &[Complex64]) -> f64 {
    let sum: Complex64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    if scale == 0.0 {
        0.0
    } else {
        sum.norm() / scale
    }
}
