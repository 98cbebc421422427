//! Finite-difference residuals of the Dirac equations and of the KG to
//! Dirac construction, with the second-order convergence ratio.

use dirac_vortex::dirac::{dirac_residuals, kg_to_dirac_residual};
use dirac_vortex::{BeamParams, DiracBeam, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint, SpinChoice};

fn main() -> dirac_vortex::Result<()> {
    let constants = PhysicalConstants::natural();
    let point = SpacetimePoint::new(12.0, 0.8, -3.0, 4.0);
    let cases = [
        (ScalarKind::Bessel, BeamParams::bessel(10, 1.5, 0.75)),
        (ScalarKind::LgRel, BeamParams::laguerre_gauss(10, 1, 10.0, Some(1.5), 0.75)),
        (ScalarKind::Exponential, BeamParams::exponential(10, 40.0, 0.75)),
    ];
    println!("{:<12} {:<5} {:>12} {:>12} {:>8} {:>12}", "kind", "spin", "h=2e-3", "h=1e-3", "ratio", "KG->D");
    for (kind, params) in cases {
        for spin in SpinChoice::BOTH {
            let beam = DiracBeam::new(ScalarBeam::new(kind, params, constants)?, spin)?;
            let coarse = dirac_residuals(&beam, &point, 2e-3)?.max();
            let fine = dirac_residuals(&beam, &point, 1e-3)?.max();
            let kg = kg_to_dirac_residual(&beam, &point, 1e-3)?;
            println!("{:<12} {:<5} {coarse:>12.3e} {fine:>12.3e} {:>8.3} {kg:>12.3e}", kind.name(), spin.name(), coarse / fine);
        }
    }
    Ok(())
}
