use std::f64::consts::TAU;

use dirac_vortex::dirac::{azimuthal_content, dirac_residuals, jz_eigencheck, kg_to_dirac_residual, ring_samples, SpinorField};
use dirac_vortex::observables::{current_split, dirac_velocity};
use dirac_vortex::scalar::wave_equation_residual;
use dirac_vortex::spectral::{energy_grid, normalized_profile, profile, spectral_peak};
use dirac_vortex::{
    derived_quantities, BeamParams, DiracBeam, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint, SpinChoice,
};
use proptest::prelude::*;

fn nat() -> PhysicalConstants {
    PhysicalConstants::natural()
}

fn spin() -> impl Strategy<Value = SpinChoice> {
    prop_oneof![Just(SpinChoice::Up), Just(SpinChoice::Down)]
}

fn interior_point() -> impl Strategy<Value = SpacetimePoint> {
    (5.0f64..25.0, 0.0..TAU, -10.0f64..10.0, -10.0f64..10.0).prop_map(|(r, p, z, t)| SpacetimePoint::new(r, p, z, t))
}

/// Relativistic scalar of a random kind; `e_factor` scales E above E∥.
fn relativistic_scalar(kind: u8, l: i32, b: f64, p_z: f64, e_factor: f64) -> ScalarBeam {
    let e_par = (1.0 + p_z * p_z).sqrt();
    let params = match kind % 3 {
        0 => (ScalarKind::Exponential, BeamParams::exponential(l, b, p_z)),
        1 => (ScalarKind::Bessel, BeamParams::bessel(l, e_factor * e_par, p_z)),
        _ => (ScalarKind::LgRel, BeamParams::laguerre_gauss(l, 1, 8.0, Some(e_factor * e_par), p_z)),
    };
    ScalarBeam::new(params.0, params.1, nat()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_is_at_least_one(p_z in -1e6f64..1e6) {
        let g = derived_quantities(&BeamParams::exponential(0, 1.0, p_z), &nat()).unwrap().gamma;
        prop_assert!(g >= 1.0);
    }

    #[test]
    fn gamma_tends_to_one(p_z in -1e-4f64..1e-4) {
        let g = derived_quantities(&BeamParams::exponential(0, 1.0, p_z), &nat()).unwrap().gamma;
        prop_assert!((g - 1.0).abs() <= 0.5 * p_z * p_z + f64::EPSILON);
    }

    #[test]
    fn wave_equation_holds_for_random_beams(
        kind in 0u8..3, l in -12i32..=12, b in 10.0f64..100.0, p_z in -1.5f64..1.5, e in 1.05f64..2.0, p in interior_point()
    ) {
        let beam = relativistic_scalar(kind, l, b, p_z, e);
        prop_assert!(wave_equation_residual(&beam, &p, 1e-3).unwrap() < 1e-5);
    }

    #[test]
    fn dirac_and_kg_to_dirac_hold_for_random_packets(
        kind in 0u8..3, l in -12i32..=12, b in 10.0f64..100.0, p_z in -1.5f64..1.5, e in 1.05f64..2.0,
        s in spin(), p in interior_point()
    ) {
        let beam = DiracBeam::new(relativistic_scalar(kind, l, b, p_z, e), s).unwrap();
        prop_assert!(dirac_residuals(&beam, &p, 1e-3).unwrap().max() < 1e-5);
        prop_assert!(kg_to_dirac_residual(&beam, &p, 1e-3).unwrap() < 1e-5);
    }

    #[test]
    fn total_angular_momentum_is_half_integer(
        kind in 0u8..3, l in -20i32..=20, b in 10.0f64..100.0, p_z in -1.5f64..1.5, e in 1.05f64..2.0,
        s in spin(), rho in 0.01f64..40.0, phi in 0.0..TAU, z in -10.0f64..10.0, t in -10.0f64..10.0
    ) {
        let beam = DiracBeam::new(relativistic_scalar(kind, l, b, p_z, e), s).unwrap();
        prop_assert!(jz_eigencheck(&beam, &SpacetimePoint::new(rho, phi, z, t)).unwrap() < 1e-13);
    }

    #[test]
    fn packets_carry_exactly_two_orbital_harmonics(
        kind in 0u8..3, l in -12i32..=12, b in 10.0f64..100.0, p_z in -1.5f64..1.5, e in 1.05f64..2.0,
        s in spin(), rho in 1.0f64..10.0, z in -10.0f64..10.0, t in -10.0f64..10.0
    ) {
        let beam = DiracBeam::new(relativistic_scalar(kind, l, b, p_z, e), s).unwrap();
        let content = azimuthal_content(&ring_samples(&beam, rho, z, t, 64).unwrap()).unwrap();
        let h = s.harmonics(l);
        prop_assert_eq!(content.into_iter().collect::<Vec<_>>(), vec![h[0], h[1]]);
    }

    #[test]
    fn exp_and_bessel_moduli_are_z_independent(
        bessel in any::<bool>(), l in -12i32..=12, b in 10.0f64..100.0, p_z in -1.5f64..1.5, p in interior_point()
    ) {
        let beam = relativistic_scalar(if bessel { 1 } else { 0 }, l, b, p_z, 1.3);
        let m0 = beam.value(&p.with_z(0.0)).unwrap().norm();
        let m1 = beam.value(&p).unwrap().norm();
        prop_assert!((m1 - m0).abs() <= 1e-12 * m0);
    }

    #[test]
    fn dirac_velocity_never_exceeds_c(
        kind in 0u8..3, l in -12i32..=12, b in 5.0f64..100.0, p_z in -3.0f64..3.0, e in 1.0f64..4.0,
        s in spin(), rho in 0.01f64..40.0, phi in 0.0..TAU, z in -20.0f64..20.0, t in -20.0f64..20.0
    ) {
        let beam = DiracBeam::new(relativistic_scalar(kind, l, b, p_z, e), s).unwrap();
        let psi = beam.bispinor(&SpacetimePoint::new(rho, phi, z, t)).unwrap();
        if let Ok(sample) = dirac_velocity(&psi, &nat()) {
            prop_assert!(sample.v.norm() <= 1.0 + 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn gordon_split_is_exact(
        exp in any::<bool>(), l in -12i32..=12, b in 10.0f64..100.0, p_z in -1.5f64..1.5, e in 1.05f64..2.0,
        s in spin(), p in interior_point()
    ) {
        let beam = DiracBeam::new(relativistic_scalar(if exp { 0 } else { 1 }, l, b, p_z, e), s).unwrap();
        prop_assert!(current_split(&beam, &p, 1e-2).unwrap().mismatch() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spectral_peak_sits_on_the_grid_maximum(l in 0i32..=20, b in 10.0f64..200.0, p_z in 0.0f64..2.0) {
        let params = BeamParams::exponential(l, b, p_z);
        let step = 1e-4;
        let grid = energy_grid(&params, &nat(), step).unwrap();
        let prof = profile(&params, &nat(), &grid).unwrap();
        prop_assert!((prof.peak_energy() - spectral_peak(&params, &nat()).unwrap()).abs() < step);
        prop_assert!(prof.is_unimodal());
    }
}

#[test]
fn h_argument_stays_off_the_branch_cut() {
    // (1 + iqct)² + (qρ)² has imaginary part 2qct and real part
    // 1 − (qct)² + (qρ)²; it may only touch the negative real axis at t = 0,
    // where the real part is 1 + (qρ)² > 0.
    for &q in &[1e-3, 0.03, 1.0, 40.0] {
        for i in 0..=200 {
            let rho = 50.0 * i as f64 / 200.0;
            for j in -100..=100 {
                let t = j as f64 / 10.0;
                let s = num_complex::Complex64::new(1.0, q * t);
                let arg = s * s + (q * rho) * (q * rho);
                assert!(arg.im != 0.0 || arg.re > 0.0, "q={q} rho={rho} t={t}");
            }
        }
    }
    // Crossing t = 0 leaves the packet continuous.
    let beam = ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(3, 20.0, 0.4), nat()).unwrap();
    let p = SpacetimePoint::new(7.0, 0.2, 1.0, 0.0);
    let f0 = beam.value(&p).unwrap();
    for eps in [1e-9, -1e-9] {
        assert!((beam.value(&p.with_t(eps)).unwrap() - f0).norm() < 1e-6 * f0.norm());
    }
}

#[test]
fn fwhm_shrinks_as_b_grows() {
    let mut last = f64::INFINITY;
    for b in [20.0, 40.0, 100.0, 200.0] {
        let params = BeamParams::exponential(10, b, 0.0);
        let grid = energy_grid(&params, &nat(), 1e-4).unwrap();
        let w = normalized_profile(&params, &nat(), &grid).unwrap().fwhm();
        assert!(w < last, "b={b}: {w} !< {last}");
        last = w;
    }
}
