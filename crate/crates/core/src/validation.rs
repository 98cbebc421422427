//! The validation suite: every residual, oracle and limit check run from a
//! single seeded configuration into a TOML report.

use std::f64::consts::TAU;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac::{
    azimuthal_content, dirac_residuals, harmonic_powers, jz_eigencheck, jz_residual_ring, kg_to_dirac_residual,
    ring_samples, DiracBeam, SpinChoice, SpinorField, MIN_RING_SAMPLES,
};
use crate::error::{Error, Result};
use crate::model::{derived_quantities, BeamParams, PhysicalConstants, SpacetimePoint};
use crate::observables::{
    calibrate_gordon, circulation, continuity_residual, current_split, dirac_velocity, DiracFlow, NonrelFlow,
    OrbitalFlow,
};
use crate::scalar::{eval_lg_nonrel, wave_equation_residual, ScalarBeam, ScalarKind};
use crate::spectral::{energy_grid, profile, spectral_peak, superpose_bessel, SuperpositionOptions};

/// Step used for every finite-difference residual.
pub const FD_STEP: f64 = 1e-3;

/// Speeds of light used by both nonrelativistic-limit checks.
pub const LIMIT_C_VALUES: [f64; 3] = [10.0, 20.0, 40.0];

/// Identifier of one check in the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    KgResiduals,
    DiracResiduals,
    KgToDiracConsistency,
    JzEigenvalues,
    AzimuthalContent,
    SpectralOracle,
    SpectralPeak,
    ZFactorization,
    FalloffSlope,
    GordonConsistency,
    CirculationDichotomy,
    Subluminality,
    ChargeConservation,
    NonrelLimitLg,
    NonrelLimitExp,
}

impl CheckId {
    pub const ALL: [CheckId; 15] = [
        CheckId::KgResiduals,
        CheckId::DiracResiduals,
        CheckId::KgToDiracConsistency,
        CheckId::JzEigenvalues,
        CheckId::AzimuthalContent,
        CheckId::SpectralOracle,
        CheckId::SpectralPeak,
        CheckId::ZFactorization,
        CheckId::FalloffSlope,
        CheckId::GordonConsistency,
        CheckId::CirculationDichotomy,
        CheckId::Subluminality,
        CheckId::ChargeConservation,
        CheckId::NonrelLimitLg,
        CheckId::NonrelLimitExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::KgResiduals => "kg_residuals",
            CheckId::DiracResiduals => "dirac_residuals",
            CheckId::KgToDiracConsistency => "kg_to_dirac_consistency",
            CheckId::JzEigenvalues => "jz_eigenvalues",
            CheckId::AzimuthalContent => "azimuthal_content",
            CheckId::SpectralOracle => "spectral_oracle",
            CheckId::SpectralPeak => "spectral_peak",
            CheckId::ZFactorization => "z_factorization",
            CheckId::FalloffSlope => "falloff_slope",
            CheckId::GordonConsistency => "gordon_consistency",
            CheckId::CirculationDichotomy => "circulation_dichotomy",
            CheckId::Subluminality => "subluminality",
            CheckId::ChargeConservation => "charge_conservation",
            CheckId::NonrelLimitLg => "nonrel_limit_lg",
            CheckId::NonrelLimitExp => "nonrel_limit_exp",
        }
    }

    /// Checks whose residual comes from finite differences or quadrature.
    pub fn is_numerical(self) -> bool {
        !matches!(self, CheckId::Subluminality)
    }

    fn index(self) -> usize {
        CheckId::ALL.iter().position(|&c| c == self).expect("listed")
    }

    fn default_tolerance(self) -> f64 {
        match self {
            CheckId::KgResiduals | CheckId::DiracResiduals | CheckId::KgToDiracConsistency => 1e-5,
            CheckId::ChargeConservation => 1e-5,
            CheckId::JzEigenvalues => 1e-13,
            CheckId::AzimuthalContent => 1e-10,
            CheckId::SpectralOracle => 1e-6,
            CheckId::SpectralPeak => SPECTRAL_GRID_STEP,
            CheckId::ZFactorization => 1e-12,
            CheckId::FalloffSlope => 1e-2,
            CheckId::GordonConsistency => 1e-6,
            CheckId::CirculationDichotomy => 1e-10,
            CheckId::Subluminality => 1e-12,
            CheckId::NonrelLimitLg | CheckId::NonrelLimitExp => 1e-2,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check id '{s}'")))
    }
}

const SPECTRAL_GRID_STEP: f64 = 1e-4;

/// Suite configuration. Every field has a default, so an empty TOML
/// document is the default run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidationConfig {
    pub seed: u64,
    /// Random interior points per beam for the residual checks.
    pub points: usize,
    /// Replaces every check's own tolerance when set.
    pub tolerance: Option<f64>,
    pub checks: Vec<String>,
    pub l: i32,
    pub b: f64,
    pub p_z: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_917,
            points: 100,
            tolerance: None,
            checks: CheckId::ALL.iter().map(|c| c.name().to_string()).collect(),
            l: 10,
            b: 40.0,
            p_z: 0.75,
        }
    }
}

impl ValidationConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        config.check_ids()?;
        if config.points == 0 {
            return Err(Error::InvalidParams("points must be at least 1".into()));
        }
        if let Some(t) = config.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidParams(format!("tolerance must be finite and non-negative, got {t}")));
            }
        }
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// The listed checks in order; repeated ids are rejected.
    pub fn check_ids(&self) -> Result<Vec<CheckId>> {
        let mut ids: Vec<CheckId> = Vec::with_capacity(self.checks.len());
        for name in &self.checks {
            let id: CheckId = name.parse()?;
            if ids.contains(&id) {
                return Err(Error::Parse(format!("check '{name}' listed twice")));
            }
            ids.push(id);
        }
        Ok(ids)
    }

    /// Seed of one check, independent of which other checks run. Kept below
    /// 2⁶³ because TOML integers are signed.
    pub fn check_seed(&self, id: CheckId) -> u64 {
        self.seed.wrapping_add((id.index() as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)) & (i64::MAX as u64)
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    pub parameters: String,
    pub seed: u64,
    /// Absent when the check raised an error.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    /// Named side conditions, each `name=true|false`.
    pub conditions: Vec<String>,
    pub error: Option<String>,
    pub runtime_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub pass: bool,
    pub checks: usize,
    pub failed: usize,
    pub seed: u64,
    pub points: usize,
    pub version: String,
}

/// The suite's report: a summary record and one record per check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub summary: ReportSummary,
    #[serde(rename = "check", default)]
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn get(&self, id: CheckId) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id.name())
    }

    /// The report as TOML. Runtimes are dropped unless `timing` is set so
    /// that repeated runs are byte-identical.
    pub fn to_toml(&self, timing: bool) -> Result<String> {
        let mut copy = self.clone();
        if !timing {
            for c in &mut copy.checks {
                c.runtime_s = None;
            }
        }
        toml::to_string(&copy).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// What a check computes before the tolerance is applied.
struct Measured {
    residual: f64,
    parameters: String,
    conditions: Vec<(String, bool)>,
}

impl Measured {
    fn new(residual: f64, parameters: String) -> Self {
        Self { residual, parameters, conditions: Vec::new() }
    }

    fn condition(mut self, name: impl Into<String>, ok: bool) -> Self {
        self.conditions.push((name.into(), ok));
        self
    }
}

/// Runs the configured checks concurrently and assembles the report.
/// Check failures and errors are recorded, never returned.
pub fn run_full_validation(config: &ValidationConfig) -> Result<ValidationReport> {
    let ids = config.check_ids()?;
    let checks: Vec<CheckResult> = ids.par_iter().map(|&id| run_check(config, id)).collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    Ok(ValidationReport {
        summary: ReportSummary {
            pass: failed == 0,
            checks: checks.len(),
            failed,
            seed: config.seed,
            points: config.points,
            version: crate::VERSION.to_string(),
        },
        checks,
    })
}

/// Runs a single check.
pub fn run_check(config: &ValidationConfig, id: CheckId) -> CheckResult {
    let seed = config.check_seed(id);
    let tolerance = config.tolerance.unwrap_or_else(|| id.default_tolerance());
    let start = Instant::now();
    let measured = measure(config, id, seed);
    let runtime_s = Some(start.elapsed().as_secs_f64());
    match measured {
        Ok(m) => {
            let conditions_ok = m.conditions.iter().all(|(_, ok)| *ok);
            let residual_ok = m.residual.is_finite() && m.residual < tolerance;
            CheckResult {
                id: id.name().to_string(),
                pass: residual_ok && conditions_ok,
                parameters: m.parameters,
                seed,
                max_residual: m.residual.is_finite().then_some(m.residual),
                tolerance,
                conditions: m.conditions.iter().map(|(n, ok)| format!("{n}={ok}")).collect(),
                error: (!m.residual.is_finite()).then(|| "non-finite residual".to_string()),
                runtime_s,
            }
        }
        Err(e) => CheckResult {
            id: id.name().to_string(),
            pass: false,
            parameters: String::new(),
            seed,
            max_residual: None,
            tolerance,
            conditions: Vec::new(),
            error: Some(e.to_string()),
            runtime_s,
        },
    }
}

fn measure(config: &ValidationConfig, id: CheckId, seed: u64) -> Result<Measured> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match id {
        CheckId::KgResiduals => check_kg_residuals(config, &mut rng),
        CheckId::DiracResiduals => check_dirac_residuals(config, &mut rng),
        CheckId::KgToDiracConsistency => check_kg_to_dirac(config, &mut rng),
        CheckId::JzEigenvalues => check_jz(config, &mut rng),
        CheckId::AzimuthalContent => check_azimuthal(config, &mut rng),
        CheckId::SpectralOracle => check_spectral_oracle(config),
        CheckId::SpectralPeak => check_spectral_peak(&mut rng),
        CheckId::ZFactorization => check_z_factorization(config, &mut rng),
        CheckId::FalloffSlope => check_falloff(config),
        CheckId::GordonConsistency => check_gordon(config, &mut rng),
        CheckId::CirculationDichotomy => check_circulation(config),
        CheckId::Subluminality => check_subluminality(config, &mut rng),
        CheckId::ChargeConservation => check_charge(config, &mut rng),
        CheckId::NonrelLimitLg => check_nonrel_lg(),
        CheckId::NonrelLimitExp => check_nonrel_exp(),
    }
}

/// Seeded points with ρ ∈ [5, 25], φ ∈ [0, 2π), z, t ∈ [−10, 10], clear of
/// the axis so that the ρ-stencil stays accurate.
pub fn interior_points(rng: &mut impl Rng, n: usize) -> Vec<SpacetimePoint> {
    (0..n)
        .map(|_| {
            SpacetimePoint::new(
                rng.gen_range(5.0..25.0),
                rng.gen_range(0.0..TAU),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            )
        })
        .collect()
}

fn nat() -> PhysicalConstants {
    PhysicalConstants::natural()
}

fn bessel_energy(config: &ValidationConfig) -> f64 {
    1.2 * (1.0 + config.p_z * config.p_z).sqrt()
}

/// The four scalar solutions at the configured (l, b, p_z).
pub fn suite_scalars(config: &ValidationConfig) -> Result<Vec<ScalarBeam>> {
    let (l, p_z) = (config.l, config.p_z);
    Ok(vec![
        ScalarBeam::new(ScalarKind::Bessel, BeamParams::bessel(l, bessel_energy(config), p_z), nat())?,
        ScalarBeam::new(ScalarKind::LgNonrel, BeamParams::laguerre_gauss(l, 1, 10.0, None, p_z), nat())?,
        ScalarBeam::new(
            ScalarKind::LgRel,
            BeamParams::laguerre_gauss(l, 1, 10.0, Some(bessel_energy(config)), p_z),
            nat(),
        )?,
        ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, config.b, p_z), nat())?,
    ])
}

/// Every Dirac packet of the suite: each relativistic scalar under both spins.
pub fn suite_packets(config: &ValidationConfig) -> Result<Vec<DiracBeam>> {
    let mut out = Vec::new();
    for scalar in suite_scalars(config)? {
        if !scalar.kind.is_relativistic() {
            continue;
        }
        for spin in SpinChoice::BOTH {
            out.push(DiracBeam::new(scalar, spin)?);
        }
    }
    Ok(out)
}

fn describe(config: &ValidationConfig) -> String {
    format!("l={} b={} p_z={} points={} step={FD_STEP}", config.l, config.b, config.p_z, config.points)
}

fn packet_label(beam: &DiracBeam) -> String {
    format!("{}/{}", beam.scalar.kind, beam.spin.name())
}

fn max_over<T>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64>
where
    T: Sync,
{
    items.par_iter().map(f).try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

fn in_order_band(ratio: f64) -> bool {
    (3.5..=4.5).contains(&ratio)
}

fn check_kg_residuals(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut m = Measured::new(0.0, describe(config));
    for beam in suite_scalars(config)? {
        let pts = interior_points(rng, config.points);
        let at = |h: f64| max_over(&pts, |p| wave_equation_residual(&beam, p, h));
        worst = worst.max(at(FD_STEP)?);
        // Second differences reach roundoff below 1e-3, so the order is
        // read off a pair of larger steps.
        let ratio = at(4e-3)? / at(2e-3)?;
        m = m.condition(format!("order_ratio[{}]={ratio:.3}", beam.kind), in_order_band(ratio));
    }
    m.residual = worst;
    Ok(m)
}

fn check_dirac_residuals(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut m = Measured::new(0.0, describe(config));
    for beam in suite_packets(config)? {
        let pts = interior_points(rng, config.points);
        let at = |h: f64| max_over(&pts, |p| dirac_residuals(&beam, p, h).map(|r| r.max()));
        worst = worst.max(at(FD_STEP)?);
        let ratio = at(2e-3)? / at(FD_STEP)?;
        m = m.condition(format!("order_ratio[{}]={ratio:.3}", packet_label(&beam)), in_order_band(ratio));
    }
    m.residual = worst;
    Ok(m)
}

fn check_kg_to_dirac(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst: f64 = 0.0;
    for beam in suite_packets(config)? {
        let pts = interior_points(rng, config.points);
        worst = worst.max(max_over(&pts, |p| kg_to_dirac_residual(&beam, p, FD_STEP))?);
    }
    Ok(Measured::new(worst, describe(config)))
}

/// Bessel and exponential packets at several `l`, both spins.
fn jz_packets(config: &ValidationConfig) -> Result<Vec<DiracBeam>> {
    let mut out = Vec::new();
    for l in [-3, 0, 10] {
        let bessel = ScalarBeam::new(ScalarKind::Bessel, BeamParams::bessel(l, bessel_energy(config), config.p_z), nat())?;
        let exp = ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, config.b, config.p_z), nat())?;
        let lg = ScalarBeam::new(
            ScalarKind::LgRel,
            BeamParams::laguerre_gauss(l, 1, 10.0, Some(bessel_energy(config)), config.p_z),
            nat(),
        )?;
        for scalar in [bessel, exp, lg] {
            for spin in SpinChoice::BOTH {
                out.push(DiracBeam::new(scalar, spin)?);
            }
        }
    }
    Ok(out)
}

fn check_jz(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let packets = jz_packets(config)?;
    let pts: Vec<SpacetimePoint> = (0..20)
        .map(|_| SpacetimePoint::new(rng.gen_range(0.05..30.0), rng.gen_range(0.0..TAU), rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)))
        .collect();
    let mut worst: f64 = 0.0;
    let mut ring_worst: f64 = 0.0;
    for beam in &packets {
        worst = worst.max(max_over(&pts, |p| jz_eigencheck(beam, p))?);
        let samples = ring_samples(beam, 3.0, 1.0, 0.5, MIN_RING_SAMPLES)?;
        ring_worst = ring_worst.max(jz_residual_ring(&samples, beam.jz_over_hbar())?);
    }
    Ok(Measured::new(worst, "l in {-3,0,10}; bessel, exponential, lg-rel; up, down; 20 points".into())
        .condition(format!("ring_spectral_residual={ring_worst:.3e}"), ring_worst < 1e-11))
}

fn check_azimuthal(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let packets = jz_packets(config)?;
    let rings: Vec<(f64, f64, f64)> =
        (0..3).map(|_| (rng.gen_range(1.0..10.0), rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))).collect();
    let mut worst: f64 = 0.0;
    let mut all_exact = true;
    for beam in &packets {
        let h = beam.spin.harmonics(beam.l());
        let expected = [h[0], h[1]];
        for &(rho, z, t) in &rings {
            let samples = ring_samples(beam, rho, z, t, MIN_RING_SAMPLES)?;
            let content = azimuthal_content(&samples)?;
            all_exact &= content.len() == 2 && expected.iter().all(|m| content.contains(m));
            for (m, power) in harmonic_powers(&samples)? {
                if !expected.contains(&m) {
                    worst = worst.max(power);
                }
            }
        }
    }
    Ok(Measured::new(worst, "l in {-3,0,10}; bessel, exponential, lg-rel; up, down; 3 rings x 64 samples".into())
        .condition("exactly_two_harmonics", all_exact))
}

/// Oracle points placed relative to the packet's transverse scale.
pub fn oracle_points(l: i32, b: f64, p_z: f64) -> Vec<SpacetimePoint> {
    let gamma = (1.0 + p_z * p_z).sqrt();
    let scale = (b * (1.0 + l.unsigned_abs() as f64)).sqrt() / gamma;
    [(0.4, 1.0, 5.0, 3.0), (1.0, 2.5, -7.0, 20.0), (1.7, 4.0, 11.0, -15.0)]
        .iter()
        .map(|&(s, phi, z, t)| SpacetimePoint::new(s * scale, phi, z, t))
        .collect()
}

/// Relative gap between the spectral superposition and the closed form.
/// For negative `l` the superposition carries the Bessel parity `(−1)^l`.
pub fn oracle_gap(params: &BeamParams, constants: &PhysicalConstants, point: &SpacetimePoint) -> Result<f64> {
    let exact = ScalarBeam::new(ScalarKind::Exponential, *params, *constants)?.value(point)?;
    let sign = if params.l < 0 && params.l % 2 != 0 { -1.0 } else { 1.0 };
    let sum = superpose_bessel(params, constants, point, &SuperpositionOptions::default())?;
    Ok((sum.value - exact * sign).norm() / exact.norm())
}

fn check_spectral_oracle(config: &ValidationConfig) -> Result<Measured> {
    let mut cases = Vec::new();
    for l in [0, 1, 10] {
        for b in [20.0, 40.0, 100.0] {
            for p in oracle_points(l, b, config.p_z) {
                cases.push((BeamParams::exponential(l, b, config.p_z), p));
            }
        }
    }
    let reference = BeamParams::exponential(config.l, config.b, config.p_z);
    cases.push((reference, SpacetimePoint::new(30.0, 1.0, 5.0, 0.0)));
    cases.push((reference, SpacetimePoint::new(30.0, 1.0, 5.0, 50.0)));
    let worst = max_over(&cases, |(params, p)| oracle_gap(params, &nat(), p))?;
    Ok(Measured::new(worst, format!("l in {{0,1,10}} x b in {{20,40,100}} x 3 points + 2 reference points, p_z={}", config.p_z)))
}

fn check_spectral_peak(rng: &mut ChaCha8Rng) -> Result<Measured> {
    let draws: Vec<BeamParams> = (0..10)
        .map(|_| BeamParams::exponential(rng.gen_range(0..=20), rng.gen_range(10.0..200.0), rng.gen_range(0.0..2.0)))
        .collect();
    let results: Vec<Result<(f64, bool)>> = draws
        .par_iter()
        .map(|params| {
            let grid = energy_grid(params, &nat(), SPECTRAL_GRID_STEP)?;
            let prof = profile(params, &nat(), &grid)?;
            Ok(((prof.peak_energy() - spectral_peak(params, &nat())?).abs(), prof.is_unimodal()))
        })
        .collect();
    let mut worst: f64 = 0.0;
    let mut unimodal = true;
    for r in results {
        let (gap, uni) = r?;
        worst = worst.max(gap);
        unimodal &= uni;
    }
    Ok(Measured::new(worst, format!("10 draws l in [0,20], b in [10,200), p_z in [0,2); grid step {SPECTRAL_GRID_STEP}"))
        .condition("unimodal", unimodal))
}

fn check_z_factorization(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let scalars = suite_scalars(config)?;
    let pts = interior_points(rng, config.points);
    let mut worst: f64 = 0.0;
    for beam in scalars.iter().filter(|b| matches!(b.kind, ScalarKind::Bessel | ScalarKind::Exponential)) {
        worst = worst.max(max_over(&pts, |p| {
            let m0 = beam.value(&p.with_z(0.0))?.norm();
            let m1 = beam.value(p)?.norm();
            Ok((m1 - m0).abs() / m0)
        })?);
    }
    let witness = lg_rel_witness()?;
    Ok(Measured::new(worst, describe(config)).condition(format!("lg_rel_z_variation={witness:.3e}"), witness > 1e-3))
}

/// Relative change of |f| for the relativistic Laguerre-Gauss beam between
/// z = 0 and z = 50 at ρ = 5, t = 0 (l = 1, n = 0, w = 10, E = 1.2).
pub fn lg_rel_witness() -> Result<f64> {
    let lg = ScalarBeam::new(ScalarKind::LgRel, BeamParams::laguerre_gauss(1, 0, 10.0, Some(1.2), 0.0), nat())?;
    let p = SpacetimePoint::new(5.0, 0.0, 0.0, 0.0);
    let m0 = lg.value(&p)?.norm();
    let m1 = lg.value(&p.with_z(50.0))?.norm();
    Ok((m1 - m0).abs() / m0)
}

/// Least-squares slope of ln|f_Exp| over ρ ∈ [500, 1000] at t = z = 0.
pub fn falloff_slope(params: &BeamParams, constants: &PhysicalConstants) -> Result<f64> {
    let beam = ScalarBeam::new(ScalarKind::Exponential, *params, *constants)?;
    let lb = constants.lambda_bar();
    let rhos: Vec<f64> = (0..=50).map(|k| (500.0 + 10.0 * k as f64) * lb).collect();
    let lns = rhos.iter().map(|&r| beam.ln_modulus(&SpacetimePoint::new(r, 0.0, 0.0, 0.0))).collect::<Result<Vec<_>>>()?;
    let n = rhos.len() as f64;
    let (mx, my) = (rhos.iter().sum::<f64>() / n, lns.iter().sum::<f64>() / n);
    let sxy: f64 = rhos.iter().zip(&lns).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = rhos.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

fn check_falloff(config: &ValidationConfig) -> Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut slopes = Vec::new();
    for p_z in [0.0, config.p_z] {
        let params = BeamParams::exponential(config.l, config.b, p_z);
        let expected = -derived_quantities(&params, &nat())?.gamma / nat().lambda_bar();
        let slope = falloff_slope(&params, &nat())?;
        slopes.push(format!("{slope:.6}"));
        worst = worst.max((slope / expected - 1.0).abs());
    }
    Ok(Measured::new(
        worst,
        format!("l={} b={} p_z in {{0,{}}}; rho in [500,1000]; slopes {}", config.l, config.b, config.p_z, slopes.join(",")),
    ))
}

fn check_gordon(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let calibration = calibrate_gordon(&nat())?;
    let mut worst: f64 = 0.0;
    for beam in suite_packets(config)?.iter().filter(|b| b.scalar.kind != ScalarKind::LgRel) {
        let pts = interior_points(rng, 50);
        worst = worst.max(max_over(&pts, |p| current_split(beam, p, 1e-2).map(|s| s.mismatch()))?);
    }
    Ok(Measured::new(worst, format!("{}; 50 points per packet; step 1e-2", describe(config)))
        .condition(format!("calibration_orbital={:.15}", calibration.orbital), (calibration.orbital - 1.0).abs() < 1e-12)
        .condition(format!("calibration_spin={:.15}", calibration.spin), (calibration.spin - 1.0).abs() < 1e-12))
}

fn check_circulation(config: &ValidationConfig) -> Result<Measured> {
    let l = config.l;
    let quantum = TAU * nat().hbar() / nat().mass();
    let expected = quantum * l as f64;
    let radii = [10.0, 1.0, 0.1];

    let lg = ScalarBeam::new(ScalarKind::LgNonrel, BeamParams::laguerre_gauss(l, 0, 20.0, None, 0.1), nat())?;
    let mut worst: f64 = 0.0;
    for r in radii {
        let circ = circulation(&NonrelFlow(lg), r, 0.5, 1.0, 1024)?;
        worst = worst.max((circ - expected).abs() / quantum.max(expected.abs()));
    }

    let exp = DiracBeam::new(
        ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, config.b, 0.0), nat())?,
        SpinChoice::Up,
    )?;
    let dirac: Vec<f64> =
        radii.iter().map(|&r| circulation(&DiracFlow(exp), r, 0.0, 0.0, 1024)).collect::<Result<_>>()?;
    let magnitudes: Vec<f64> = dirac.iter().map(|c| c.abs()).collect();
    let decreasing = magnitudes.windows(2).all(|w| w[1] < w[0]) || magnitudes.iter().all(|&c| c < 1e-12);
    let vanishing = magnitudes[2] < 0.05 * quantum * (l.unsigned_abs().max(1) as f64);

    let bessel = DiracBeam::new(
        ScalarBeam::new(ScalarKind::Bessel, BeamParams::bessel(l, 1.005, 0.0), nat())?,
        SpinChoice::Up,
    )?;
    let orbital_nonrel = circulation(&OrbitalFlow { beam: bessel, step: 1e-3 }, 0.05, 0.0, 0.0, 256)?;
    let orbital_ok = (orbital_nonrel - expected).abs() <= 1e-2 * quantum.max(expected.abs());
    let orbital_exp = circulation(&OrbitalFlow { beam: exp, step: 1e-3 }, 0.1, 0.0, 0.0, 256)?;

    let parameters = format!(
        "l={l}; nonrel lg w=20 radii {{10,1,0.1}} 1024 samples; v_D circulations [{}] (b={}, p_z=0); \
         v_orb bessel E=1.005 rho=0.05: {orbital_nonrel:.6}; v_orb exponential rho=0.1 (finite c, reported only): {orbital_exp:.6}",
        dirac.iter().map(|c| format!("{c:.6e}")).collect::<Vec<_>>().join(", "),
        config.b,
    );
    Ok(Measured::new(worst, parameters)
        .condition("v_D_decreasing", decreasing)
        .condition("v_D_vanishing", vanishing)
        .condition("v_orb_nonrel_within_1pct", orbital_ok))
}

fn check_subluminality(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let packets = suite_packets(config)?;
    let pts: Vec<SpacetimePoint> = (0..10_000)
        .map(|_| SpacetimePoint::new(rng.gen_range(0.01..40.0), rng.gen_range(0.0..TAU), rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0)))
        .collect();
    let c = nat().c();
    let worst = max_over(&pts, |p| {
        let mut w: f64 = 0.0;
        for beam in &packets {
            match dirac_velocity(&beam.bispinor(p)?, &nat()) {
                Ok(s) => w = w.max(s.v.norm() / c - 1.0),
                Err(Error::ZeroDensity) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(w)
    })?;
    Ok(Measured::new(worst.max(0.0), format!("{}; 10000 points x {} packets; residual = max(|v|/c - 1, 0)", describe(config), packets.len())))
}

fn check_charge(config: &ValidationConfig, rng: &mut ChaCha8Rng) -> Result<Measured> {
    let mut worst: f64 = 0.0;
    for beam in suite_packets(config)? {
        let pts = interior_points(rng, 30);
        worst = worst.max(max_over(&pts, |p| continuity_residual(&beam, p, FD_STEP))?);
    }
    Ok(Measured::new(worst, format!("{}; 30 points per packet", describe(config))))
}

/// Deviation of a relativistic family from its nonrelativistic limit, per c.
#[derive(Debug, Clone, PartialEq)]
pub struct NonrelLimitReport {
    pub c_values: Vec<f64>,
    /// Max deviation over the full point set, one per c.
    pub deviations: Vec<f64>,
    /// Max deviation over the reference slice, one per c.
    pub slice_deviations: Vec<f64>,
}

impl NonrelLimitReport {
    pub fn is_monotone(&self) -> bool {
        strictly_decreasing(&self.deviations) && strictly_decreasing(&self.slice_deviations)
    }

    /// Deviation on the reference slice at the largest c.
    pub fn final_deviation(&self) -> f64 {
        *self.slice_deviations.last().expect("at least three c values")
    }
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn check_c_sequence(c_values: &[f64]) -> Result<()> {
    if c_values.len() < 3 {
        return Err(Error::InvalidParams("the limit needs at least three values of c".into()));
    }
    if c_values.iter().any(|c| !(c.is_finite() && *c > 0.0)) || !c_values.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::InvalidParams("c values must be positive and strictly increasing".into()));
    }
    Ok(())
}

/// max|a − b| / max|b| over paired samples.
fn relative_deviation(pairs: &[(Complex64, Complex64)]) -> f64 {
    let diff = pairs.iter().map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let scale = pairs.iter().map(|(_, b)| b.norm()).fold(0.0, f64::max);
    diff / scale
}

fn rest_phase(constants: &PhysicalConstants, t: f64) -> Complex64 {
    Complex64::new(0.0, constants.rest_energy() * t / constants.hbar()).exp()
}

/// Relativistic Laguerre-Gauss beam with E = mc² + c·p_z against the
/// nonrelativistic beam with the same (l, n, w, p_z), after removing the
/// rest-energy phase. Both point sets should avoid t = z = 0, where the two
/// agree identically.
pub fn nonrel_limit_lg(
    params: &BeamParams,
    c_values: &[f64],
    points: &[SpacetimePoint],
    slice: &[SpacetimePoint],
) -> Result<NonrelLimitReport> {
    check_c_sequence(c_values)?;
    let mut deviations = Vec::new();
    let mut slice_deviations = Vec::new();
    for &c in c_values {
        let constants = PhysicalConstants::with_c(c)?;
        let rel_params = BeamParams { energy: Some(constants.rest_energy() + c * params.p_z), ..*params };
        let rel = ScalarBeam::new(ScalarKind::LgRel, rel_params, constants)?;
        let nonrel_params = BeamParams { energy: None, ..*params };
        let pairs = |set: &[SpacetimePoint]| -> Result<Vec<(Complex64, Complex64)>> {
            set.iter()
                .map(|p| Ok((rel.value(p)? * rest_phase(&constants, p.t), eval_lg_nonrel(&nonrel_params, &constants, p)?.value)))
                .collect()
        };
        deviations.push(relative_deviation(&pairs(points)?));
        slice_deviations.push(relative_deviation(&pairs(slice)?));
    }
    Ok(NonrelLimitReport { c_values: c_values.to_vec(), deviations, slice_deviations })
}

/// Exponential packet with b = βc² against the nonrelativistic
/// Laguerre-Gauss packet with n = 0 and w = ħ√(2β)/m. The rest-energy phase
/// is removed and one complex normalization is fitted at `reference`.
pub fn nonrel_limit_exp(
    l: i32,
    beta: f64,
    p_z: f64,
    c_values: &[f64],
    reference: &SpacetimePoint,
    points: &[SpacetimePoint],
    slice: &[SpacetimePoint],
) -> Result<NonrelLimitReport> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParams(format!("beta must be positive, got {beta}")));
    }
    check_c_sequence(c_values)?;
    let mut deviations = Vec::new();
    let mut slice_deviations = Vec::new();
    for &c in c_values {
        let constants = PhysicalConstants::with_c(c)?;
        let b = beta * c * c;
        // e^{−bh} with Re h ≥ 1 underflows for large b; shifting by b keeps
        // the values near unit size and is absorbed by the fitted scale.
        let exp = ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, b, p_z), constants)?.with_log_shift(b);
        let w = constants.hbar() * (2.0 * beta).sqrt() / constants.mass();
        let lg = BeamParams::laguerre_gauss(l, 0, w, None, p_z);
        let stripped = |p: &SpacetimePoint| -> Result<Complex64> { Ok(exp.value(p)? * rest_phase(&constants, p.t)) };
        let scale = eval_lg_nonrel(&lg, &constants, reference)?.value / stripped(reference)?;
        let pairs = |set: &[SpacetimePoint]| -> Result<Vec<(Complex64, Complex64)>> {
            set.iter().map(|p| Ok((stripped(p)? * scale, eval_lg_nonrel(&lg, &constants, p)?.value))).collect()
        };
        deviations.push(relative_deviation(&pairs(points)?));
        slice_deviations.push(relative_deviation(&pairs(slice)?));
    }
    Ok(NonrelLimitReport { c_values: c_values.to_vec(), deviations, slice_deviations })
}

fn grid_points(rhos: &[f64], zs: &[f64], ts: &[f64], phi: f64) -> Vec<SpacetimePoint> {
    let mut out = Vec::new();
    for &rho in rhos {
        for &z in zs {
            for &t in ts {
                out.push(SpacetimePoint::new(rho, phi, z, t));
            }
        }
    }
    out
}

/// Point sets of the Laguerre-Gauss limit: (full set, reference slice).
/// The two families agree identically at t = z = 0, so the reference slice
/// sits at z = 4, t = 10.
pub fn lg_limit_points() -> (Vec<SpacetimePoint>, Vec<SpacetimePoint>) {
    (grid_points(&[3.0, 8.0, 14.0], &[-3.0, 4.0], &[2.0, 10.0], 0.7), grid_points(&[3.0, 8.0, 14.0, 20.0], &[4.0], &[10.0], 0.7))
}

/// Point sets of the exponential-packet limit (β = 0.5, so w = 1): (full
/// set, t = z = 0 slice).
pub fn exp_limit_points() -> (Vec<SpacetimePoint>, Vec<SpacetimePoint>) {
    (
        grid_points(&[0.5, 1.0, 1.8], &[-2.0, 1.5], &[0.3, 1.0], 0.7),
        grid_points(&[0.3, 0.6, 1.0, 1.5, 2.0], &[0.0], &[0.0], 0.7),
    )
}

fn format_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ")
}

fn limit_measured(report: &NonrelLimitReport, parameters: String) -> Measured {
    let parameters = format!(
        "{parameters}; c=[{}]; deviations=[{}]; slice=[{}]",
        format_list(&report.c_values),
        format_list(&report.deviations),
        format_list(&report.slice_deviations)
    );
    Measured::new(report.final_deviation(), parameters).condition("monotone", report.is_monotone())
}

fn check_nonrel_lg() -> Result<Measured> {
    let params = BeamParams::laguerre_gauss(2, 1, 10.0, None, 0.1);
    let (points, slice) = lg_limit_points();
    let report = nonrel_limit_lg(&params, &LIMIT_C_VALUES, &points, &slice)?;
    Ok(limit_measured(&report, "l=2 n=1 w=10 p_z=0.1 E=mc^2+c*p_z".into()))
}

fn check_nonrel_exp() -> Result<Measured> {
    let (points, slice) = exp_limit_points();
    let reference = SpacetimePoint::new(0.8, 0.0, 0.0, 0.0);
    let report = nonrel_limit_exp(2, 0.5, 0.1, &LIMIT_C_VALUES, &reference, &points, &slice)?;
    Ok(limit_measured(&report, "l=2 beta=0.5 p_z=0.1 b=beta*c^2 reference rho=0.8".into()))
}
