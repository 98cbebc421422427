//! Grids, the delimited dataset format, and the figure and sampling
//! commands behind the CLI.

use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dirac::{DiracBeam, SpinChoice, SpinorField};
use crate::error::{Error, Result};
use crate::model::{BeamParams, PhysicalConstants, SpacetimePoint};
use crate::observables::{curl, dirac_velocity, DiracFlow};
use crate::scalar::{ScalarBeam, ScalarKind};
use crate::spectral::{e_cut, normalized_profile};

/// Token written in place of an absent value.
pub const NA: &str = "NA";

/// Curl step for the vorticity maps, in units of λ̄.
pub const VORTICITY_STEP: f64 = 1e-3;

/// A uniform range `min:max:count`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || !(min < max) {
            return Err(Error::InvalidGrid(format!("range needs finite min < max, got {min}:{max}")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid(format!("range needs at least 2 points, got {count}")));
        }
        Ok(Self { min, max, count })
    }

    pub fn values(&self) -> Vec<f64> {
        let h = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|k| if k + 1 == self.count { self.max } else { self.min + k as f64 * h }).collect()
    }
}

impl FromStr for AxisRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts.as_slice() else {
            return Err(Error::InvalidGrid(format!("expected min:max:count, got '{s}'")));
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|_| Error::InvalidGrid(format!("bad number '{v}' in '{s}'")));
        let count = count.trim().parse::<usize>().map_err(|_| Error::InvalidGrid(format!("bad count in '{s}'")))?;
        Self::new(num(min)?, num(max)?, count)
    }
}

impl fmt::Display for AxisRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.count)
    }
}

/// A sampling grid in units of λ̄ (lengths) and λ̄/c (time).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub rho: AxisRange,
    pub z: AxisRange,
    pub t: f64,
}

impl GridSpec {
    pub fn new(rho: AxisRange, z: AxisRange, t: f64) -> Result<Self> {
        if rho.min < 0.0 {
            return Err(Error::InvalidGrid(format!("rho_min must be non-negative, got {}", rho.min)));
        }
        if !t.is_finite() {
            return Err(Error::InvalidGrid(format!("t must be finite, got {t}")));
        }
        Ok(Self { rho, z, t })
    }
}

/// Column-named numeric records with a metadata header. `None` entries are
/// written as [`NA`].
#[derive(Debug, Clone, PartialEq)]
pub struct FigureDataset {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl FigureDataset {
    pub fn new(columns: Vec<String>) -> Self {
        Self { metadata: vec![("tool".into(), format!("dirac-vortex {}", crate::VERSION))], columns, rows: Vec::new() }
    }

    pub fn meta(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn metadata_value(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// One column with absent entries kept as `None`.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Unique non-empty headers, rectangular rows, finite entries.
    pub fn validate(&self) -> Result<()> {
        for (k, name) in self.columns.iter().enumerate() {
            if name.is_empty() || name.contains([',', '\n', '#']) || self.columns[..k].contains(name) {
                return Err(Error::InvalidGrid(format!("bad or repeated column name '{name}'")));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.columns.len() {
                return Err(Error::InvalidGrid(format!("row {i} has {} fields, expected {}", row.len(), self.columns.len())));
            }
            if row.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::InvalidGrid(format!("row {i} holds a non-finite value")));
            }
        }
        for (k, v) in &self.metadata {
            if k.contains(['\n', ':']) || v.contains('\n') {
                return Err(Error::InvalidGrid(format!("bad metadata entry '{k}'")));
            }
        }
        Ok(())
    }

    /// Writes `# key: value` lines, the header and the records. Floats use
    /// 17 significant digits in scientific notation.
    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        self.validate()?;
        let mut out = out;
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(|v| format_value(*v))).map_err(csv_error)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn write_path(&self, path: &Path) -> Result<()> {
        let text = self.to_text()?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read_from<R: Read>(input: R) -> Result<Self> {
        let mut reader = BufReader::new(input);
        let mut metadata = Vec::new();
        let mut body = String::new();
        let mut line = String::new();
        loop {
            line.clear();
            if reader.read_line(&mut line)? == 0 {
                break;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some((k, v)) = rest.split_once(':') {
                    metadata.push((k.trim().to_string(), v.trim().to_string()));
                }
            } else {
                body.push_str(&line);
                reader.read_to_string(&mut body)?;
                break;
            }
        }
        let mut csv_reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
        let columns: Vec<String> = csv_reader.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for record in csv_reader.records() {
            let record = record.map_err(csv_error)?;
            rows.push(record.iter().map(parse_value).collect::<Result<Vec<_>>>()?);
        }
        let data = Self { metadata, columns, rows };
        data.validate()?;
        Ok(data)
    }

    pub fn read_path(path: &Path) -> Result<Self> {
        Self::read_from(std::fs::File::open(path)?)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// 17 significant digits, or [`NA`].
pub fn format_value(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.16e}"),
        _ => NA.to_string(),
    }
}

fn parse_value(s: &str) -> Result<Option<f64>> {
    if s == NA {
        return Ok(None);
    }
    let v: f64 = s.parse().map_err(|_| Error::Parse(format!("bad number '{s}'")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("non-finite value '{s}'")));
    }
    Ok(Some(v))
}

fn constants_meta(data: FigureDataset, constants: &PhysicalConstants) -> FigureDataset {
    data.meta("units", "lengths in lambda_bar = hbar/(m c), times in lambda_bar/c, energies in m c^2")
        .meta("hbar", constants.hbar())
        .meta("mass", constants.mass())
        .meta("c", constants.c())
}

fn b_column(prefix: &str, b: f64) -> String {
    format!("{prefix}_b{b}")
}

fn check_b_list(b_list: &[f64]) -> Result<()> {
    if b_list.is_empty() {
        return Err(Error::InvalidParams("the b list is empty".into()));
    }
    if b_list.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
        return Err(Error::InvalidParams("every b must be positive".into()));
    }
    for (k, b) in b_list.iter().enumerate() {
        if b_list[..k].contains(b) {
            return Err(Error::InvalidParams(format!("b = {b} listed twice")));
        }
    }
    Ok(())
}

/// Radial profile of |f_Exp| at t = z = 0, one column per `b`, each scaled
/// to a unit maximum on the grid.
pub fn cmd_fig1(l: i32, b_list: &[f64], p_z: f64, constants: &PhysicalConstants, rho: &AxisRange) -> Result<FigureDataset> {
    check_b_list(b_list)?;
    if rho.min < 0.0 {
        return Err(Error::InvalidGrid(format!("rho_min must be non-negative, got {}", rho.min)));
    }
    let lb = constants.lambda_bar();
    let rhos = rho.values();
    let mut columns = vec!["rho_over_lambda".to_string()];
    let mut values = Vec::with_capacity(b_list.len());
    for &b in b_list {
        let beam = ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, b, p_z), *constants)?;
        let ln: Vec<f64> = rhos
            .par_iter()
            .map(|&r| beam.ln_modulus(&SpacetimePoint::new(r * lb, 0.0, 0.0, 0.0)))
            .collect::<Result<_>>()?;
        let top = ln.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !top.is_finite() {
            return Err(Error::InvalidGrid(format!("|f| vanishes on the whole grid for b = {b}")));
        }
        values.push(ln.iter().map(|v| (v - top).exp()).collect::<Vec<f64>>());
        columns.push(b_column("modulus", b));
    }
    let mut data = constants_meta(FigureDataset::new(columns), constants)
        .meta("figure", "fig1 normalized modulus |f_Exp| at t=0, z=0")
        .meta("l", l)
        .meta("b_list", join(b_list))
        .meta("p_z", p_z)
        .meta("grid_rho", rho);
    data.rows = rhos
        .iter()
        .enumerate()
        .map(|(i, &r)| std::iter::once(Some(r)).chain(values.iter().map(|col| Some(col[i]))).collect())
        .collect();
    Ok(data)
}

/// Normalized spectral functions on a shared energy grid from E∥ to the
/// largest cutoff of the listed `b`.
pub fn cmd_fig2(l: i32, b_list: &[f64], p_z: f64, constants: &PhysicalConstants, step: f64) -> Result<FigureDataset> {
    check_b_list(b_list)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidGrid(format!("energy step must be positive, got {step}")));
    }
    let rest = constants.rest_energy();
    let params: Vec<BeamParams> = b_list.iter().map(|&b| BeamParams::exponential(l, b, p_z)).collect();
    let lo = crate::model::derived_quantities(&params[0], constants)?.e_parallel;
    let mut hi = lo;
    for p in &params {
        hi = hi.max(e_cut(p, constants)?);
    }
    let grid = AxisRange::new(lo, hi, ((hi - lo) / (step * rest)).ceil() as usize + 1)?.values();
    let mut columns = vec!["E_over_mc2".to_string()];
    let mut profiles = Vec::new();
    for (p, &b) in params.iter().zip(b_list) {
        // Per-unit-energy weights in units of 1/(mc²).
        let prof = normalized_profile(p, constants, &grid)?;
        profiles.push(prof.weights.iter().map(|w| w * rest).collect::<Vec<f64>>());
        columns.push(b_column("gN", b));
    }
    let mut data = constants_meta(FigureDataset::new(columns), constants)
        .meta("figure", "fig2 normalized spectral functions g_N(E)")
        .meta("l", l)
        .meta("b_list", join(b_list))
        .meta("p_z", p_z)
        .meta("energy_step", step)
        .meta("E_parallel", lo / rest);
    data.rows = grid
        .iter()
        .enumerate()
        .map(|(i, &e)| std::iter::once(Some(e / rest)).chain(profiles.iter().map(|col| Some(col[i]))).collect())
        .collect();
    Ok(data)
}

/// Plane of the vorticity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slice {
    /// (ρ, z) half-plane at φ = 0.
    Meridional,
    /// (x, y) plane at the grid's first z value, x, y ∈ [−ρ_max, ρ_max].
    Transverse,
}

impl FromStr for Slice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "meridional" => Ok(Slice::Meridional),
            "transverse" => Ok(Slice::Transverse),
            other => Err(Error::Parse(format!("unknown slice '{other}' (meridional | transverse)"))),
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slice::Meridional => "meridional",
            Slice::Transverse => "transverse",
        })
    }
}

/// Vorticity of `v_D` for the exponential packet, UP spin. Rows where the
/// density underflows to zero, or the curl stencil does not fit, carry
/// density 0 or the computed density with absent vorticity.
pub fn cmd_fig3(
    l: i32,
    b: f64,
    p_z: f64,
    constants: &PhysicalConstants,
    grid: &GridSpec,
    slice: Slice,
) -> Result<FigureDataset> {
    let scalar = ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(l, b, p_z), *constants)?;
    let beam = DiracBeam::new(scalar, SpinChoice::Up)?;
    let lb = constants.lambda_bar();
    let tc = grid.t * lb / constants.c();
    let (names, points): ([&str; 2], Vec<(f64, f64, SpacetimePoint)>) = match slice {
        Slice::Meridional => {
            let mut pts = Vec::new();
            for &z in &grid.z.values() {
                for &r in &grid.rho.values() {
                    pts.push((r, z, SpacetimePoint::new(r * lb, 0.0, z * lb, tc)));
                }
            }
            (["rho_over_lambda", "z_over_lambda"], pts)
        }
        Slice::Transverse => {
            let axis = AxisRange::new(-grid.rho.max, grid.rho.max, grid.rho.count)?.values();
            let z = grid.z.min;
            let mut pts = Vec::new();
            for &y in &axis {
                for &x in &axis {
                    pts.push((x, y, SpacetimePoint::from_cartesian(x * lb, y * lb, z * lb, tc)));
                }
            }
            (["x_over_lambda", "y_over_lambda"], pts)
        }
    };
    let flow = DiracFlow(beam);
    let step = VORTICITY_STEP * lb;
    let rows: Vec<Vec<Option<f64>>> = points
        .par_iter()
        .map(|(a, c, p)| {
            let density = beam.bispinor(p).map(|psi| psi.density()).unwrap_or(0.0);
            let density = if density.is_finite() { density } else { 0.0 };
            let w = if density > 0.0 { curl(&flow, p, step).ok().filter(|w| w.magnitude().is_finite()) } else { None };
            vec![Some(*a), Some(*c), w.map(|w| w.magnitude()), w.map(|w| w.azimuthal()), Some(density)]
        })
        .collect();
    let mut data = constants_meta(
        FigureDataset::new(
            names.iter().map(|s| s.to_string()).chain(["w_abs", "w_phi", "density"].map(String::from)).collect(),
        ),
        constants,
    )
    .meta("figure", "fig3 vorticity of the Dirac velocity, exponential packet, spin up")
    .meta("l", l)
    .meta("b", b)
    .meta("p_z", p_z)
    .meta("slice", slice)
    .meta("grid_rho", grid.rho)
    .meta("grid_z", grid.z)
    .meta("t", grid.t)
    .meta("curl_step", VORTICITY_STEP)
    .meta("absent", "w_abs and w_phi are NA where the density vanishes or the curl stencil does not fit");
    data.rows = rows;
    Ok(data)
}

/// Reads `rho, phi, z, t` rows from a dataset.
pub fn read_points(path: &Path) -> Result<Vec<SpacetimePoint>> {
    points_from_dataset(&FigureDataset::read_path(path)?)
}

pub fn points_from_dataset(data: &FigureDataset) -> Result<Vec<SpacetimePoint>> {
    let idx = ["rho", "phi", "z", "t"].map(|n| data.column_index(n));
    let [Some(r), Some(p), Some(z), Some(t)] = idx else {
        return Err(Error::Parse("points file needs columns rho, phi, z, t".into()));
    };
    data.rows
        .iter()
        .enumerate()
        .map(|(i, row)| match (row[r], row[p], row[z], row[t]) {
            (Some(r), Some(p), Some(z), Some(t)) => Ok(SpacetimePoint::new(r, p, z, t)),
            _ => Err(Error::Parse(format!("points row {i} has an absent value"))),
        })
        .collect()
}

/// Columns of [`cmd_sample`].
pub const SAMPLE_COLUMNS: [&str; 18] = [
    "rho", "phi", "z", "t", "f_re", "f_im", "phi1_re", "phi1_im", "phi2_re", "phi2_im", "chi1_re", "chi1_im", "chi2_re",
    "chi2_im", "density", "v_x", "v_y", "v_z",
];

/// Scalar value, bispinor, density and Dirac velocity at each point. The
/// nonrelativistic Laguerre-Gauss beam has no bispinor, so its Dirac columns
/// are absent; so is `v_D` where the density vanishes.
pub fn cmd_sample(
    kind: ScalarKind,
    spin: SpinChoice,
    params: &BeamParams,
    constants: &PhysicalConstants,
    points: &[SpacetimePoint],
) -> Result<FigureDataset> {
    let scalar = ScalarBeam::new(kind, *params, *constants)?;
    let beam = kind.is_relativistic().then(|| DiracBeam::new(scalar, spin)).transpose()?;
    let rows = points
        .par_iter()
        .map(|p| -> Result<Vec<Option<f64>>> {
            let f = scalar.value(p)?;
            let mut row = vec![Some(p.rho), Some(p.phi), Some(p.z), Some(p.t), Some(f.re), Some(f.im)];
            match &beam {
                Some(beam) => {
                    let psi = beam.bispinor(p)?;
                    for c in psi.components() {
                        row.extend([Some(c.re), Some(c.im)]);
                    }
                    row.push(Some(psi.density()));
                    match dirac_velocity(&psi, constants) {
                        Ok(s) => row.extend([Some(s.v.x), Some(s.v.y), Some(s.v.z)]),
                        Err(Error::ZeroDensity) => row.extend([None; 3]),
                        Err(e) => return Err(e),
                    }
                }
                None => row.extend([None; 12]),
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut data = constants_meta(FigureDataset::new(SAMPLE_COLUMNS.map(String::from).to_vec()), constants)
        .meta("kind", kind)
        .meta("spin", spin.name())
        .meta("l", params.l)
        .meta("p_z", params.p_z)
        .meta("b", params.b)
        .meta("energy", params.energy.map_or(NA.to_string(), |e| e.to_string()))
        .meta("n", params.n)
        .meta("w", params.w);
    data.rows = rows;
    if data.rows.iter().flatten().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Domain("a sampled value is not finite".into()));
    }
    Ok(data)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
