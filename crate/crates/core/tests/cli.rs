use std::path::Path;
use std::process::Command;

use dirac_vortex::io::{cmd_fig1, cmd_fig2, cmd_fig3, cmd_sample, AxisRange, FigureDataset, GridSpec, Slice};
use dirac_vortex::{BeamParams, PhysicalConstants, ScalarKind, SpacetimePoint, SpinChoice};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dirac-vortex"))
}

fn run_to(args: &[&str], out: &Path) -> std::process::ExitStatus {
    bin().args(args).arg("--out").arg(out).status().unwrap()
}

fn nat() -> PhysicalConstants {
    PhysicalConstants::natural()
}

fn column(d: &FigureDataset, name: &str) -> Vec<f64> {
    d.column(name).unwrap().into_iter().map(|v| v.unwrap()).collect()
}

fn argmax(v: &[f64]) -> usize {
    v.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0
}

#[test]
fn fig1_columns_peak_at_one_and_widen_with_b() {
    let d = cmd_fig1(10, &[20.0, 100.0, 500.0], 0.0, &nat(), &"0:300:601".parse().unwrap()).unwrap();
    let mut last_peak = 0.0;
    let rho = column(&d, "rho_over_lambda");
    for b in ["20", "100", "500"] {
        let col = column(&d, &format!("modulus_b{b}"));
        assert_eq!(col.iter().cloned().fold(0.0, f64::max), 1.0);
        assert_eq!(col[0], 0.0);
        let peak = rho[argmax(&col)];
        assert!(peak > last_peak, "b={b}");
        last_peak = peak;
    }
}

#[test]
fn fig2_columns_are_normalized_peaked_and_narrowing() {
    let step = 1e-4;
    let d = cmd_fig2(10, &[20.0, 100.0, 500.0], 0.0, &nat(), step).unwrap();
    let e = column(&d, "E_over_mc2");
    let mut last_width = f64::INFINITY;
    for b in [20.0f64, 100.0, 500.0] {
        let g = column(&d, &format!("gN_b{b}"));
        let integral: f64 = e.windows(2).zip(g.windows(2)).map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1])).sum();
        assert!((integral - 1.0).abs() < 1e-6, "b={b}: {integral}");
        let peak = e[argmax(&g)];
        assert!((peak - (1.0 + 10.0 / b).sqrt()).abs() < step, "b={b}: {peak}");
        let half = 0.5 * g[argmax(&g)];
        let above: Vec<f64> = e.iter().zip(&g).filter(|(_, v)| **v >= half).map(|(x, _)| *x).collect();
        let width = above.last().unwrap() - above[0];
        assert!(width < last_width);
        last_width = width;
    }
}

#[test]
fn fig3_vorticity_is_finite_and_decays_outward() {
    let grid = GridSpec::new("0.5:100:60".parse().unwrap(), "-20:20:5".parse().unwrap(), 0.0).unwrap();
    let d = cmd_fig3(10, 40.0, 0.75, &nat(), &grid, Slice::Meridional).unwrap();
    let w = column(&d, "w_abs");
    assert!(w.iter().all(|v| v.is_finite()));
    let rho = column(&d, "rho_over_lambda");
    let outer = w.iter().zip(&rho).filter(|(_, r)| **r == 100.0).map(|(v, _)| *v).fold(0.0, f64::max);
    let top = w.iter().cloned().fold(0.0, f64::max);
    assert!(outer < 0.1 * top, "{outer} vs {top}");

    let t = cmd_fig3(10, 40.0, 0.75, &nat(), &GridSpec::new("0:30:31".parse().unwrap(), "0:1:2".parse().unwrap(), 0.0).unwrap(), Slice::Transverse).unwrap();
    assert_eq!(t.rows.len(), 31 * 31);
    assert_eq!(t.columns[..2], ["x_over_lambda", "y_over_lambda"]);
}

#[test]
fn fig3_marks_underflowed_rows_absent() {
    // Far outside a very wide packet the density underflows.
    let grid = GridSpec::new("1:5000:3".parse().unwrap(), "0:1:2".parse().unwrap(), 0.0).unwrap();
    let d = cmd_fig3(10, 400.0, 0.0, &nat(), &grid, Slice::Meridional).unwrap();
    let density = column(&d, "density");
    let w = d.column("w_abs").unwrap();
    assert!(density.iter().zip(&w).any(|(rho, w)| *rho == 0.0 && w.is_none()));
    assert!(d.to_text().unwrap().contains(",NA,NA,"));
    assert!(!d.to_text().unwrap().contains("NaN"));
}

#[test]
fn sample_reference_values() {
    let origin = [SpacetimePoint::new(0.0, 0.0, 0.0, 0.0)];
    let d = cmd_sample(ScalarKind::Bessel, SpinChoice::Up, &BeamParams::bessel(0, 1.0, 0.0), &nat(), &origin).unwrap();
    assert_eq!((column(&d, "f_re")[0], column(&d, "f_im")[0]), (1.0, 0.0));
    // Rest plane wave: no flow.
    for v in ["v_x", "v_y", "v_z"] {
        assert!(column(&d, v)[0].abs() < 1e-15);
    }
    let ring: Vec<SpacetimePoint> = (0..16).map(|k| SpacetimePoint::new(4.0, k as f64 * 0.39, 1.0, 2.0)).collect();
    let d = cmd_sample(ScalarKind::Exponential, SpinChoice::Down, &BeamParams::exponential(3, 20.0, 0.4), &nat(), &ring).unwrap();
    let density = column(&d, "density");
    assert!(density.iter().all(|v| (v - density[0]).abs() <= 1e-14 * density[0]));
    let d = cmd_sample(ScalarKind::LgNonrel, SpinChoice::Up, &BeamParams::laguerre_gauss(1, 0, 5.0, None, 0.0), &nat(), &ring).unwrap();
    assert!(d.column("phi1_re").unwrap().iter().all(Option::is_none));
}

#[test]
fn grid_validation() {
    assert!("5:1:10".parse::<AxisRange>().is_err());
    assert!(cmd_fig1(10, &[], 0.0, &nat(), &"0:1:2".parse().unwrap()).is_err());
    assert!(cmd_fig2(10, &[20.0], 0.0, &nat(), 0.0).is_err());
}

#[test]
fn commands_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["fig1"],
        vec!["fig2", "--b", "20,100"],
        vec!["fig3", "--grid-rho", "0.5:50:20", "--grid-z", "-10:10:5"],
        vec!["fig3", "--slice", "transverse", "--grid-rho", "0.5:50:11", "--grid-z", "0:1:2"],
    ] {
        let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        assert!(run_to(&args, &a).success(), "{args:?}");
        assert!(run_to(&args, &b).success(), "{args:?}");
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{args:?}");
        let d = FigureDataset::read_path(&a).unwrap();
        assert_eq!(d.metadata_value("tool"), Some(concat!("dirac-vortex ", env!("CARGO_PKG_VERSION"))));
    }
}

#[test]
fn sample_command_reads_a_points_file() {
    let dir = tempfile::tempdir().unwrap();
    let points = dir.path().join("points.csv");
    std::fs::write(&points, "# ring\nrho,phi,z,t\n0,0,0,0\n3.5,1.2,-2,4\n").unwrap();
    let out = dir.path().join("out.csv");
    let status = run_to(
        &["sample", "--kind", "bessel", "--l", "0", "--energy", "1", "--pz", "0", "--points", points.to_str().unwrap()],
        &out,
    );
    assert!(status.success());
    let d = FigureDataset::read_path(&out).unwrap();
    assert_eq!(d.rows.len(), 2);
    assert_eq!(d.rows[0][4], Some(1.0));

    let missing = bin().args(["sample", "--kind", "exp", "--points", "/nonexistent/points.csv"]).output().unwrap();
    assert!(!missing.status.success());
    assert!(missing.stdout.is_empty());
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = dir.path().join("ok.toml");
    std::fs::write(&ok, "points = 20\n").unwrap();
    let report = dir.path().join("report.toml");
    let status = bin().args(["validate", "--config", ok.to_str().unwrap(), "--out", report.to_str().unwrap()]).status().unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("[summary]") && text.contains("[[check]]") && !text.contains("runtime_s"));

    let zero = dir.path().join("zero.toml");
    std::fs::write(&zero, "points = 5\ntolerance = 0.0\n").unwrap();
    assert_eq!(bin().args(["validate", "--config", zero.to_str().unwrap()]).output().unwrap().status.code(), Some(1));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "points = \"many\"\n").unwrap();
    let bad_out = dir.path().join("bad_report.toml");
    let r = bin().args(["validate", "--config", bad.to_str().unwrap(), "--out", bad_out.to_str().unwrap()]).output().unwrap();
    assert_eq!(r.status.code(), Some(2));
    assert!(r.stdout.is_empty() && !bad_out.exists());
}
