//! Build UP and DOWN Bessel bispinors and print their components, density
//! and total angular momentum.

use dirac_vortex::dirac::SpinorField;
use dirac_vortex::{BeamParams, DiracBeam, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint, SpinChoice};

fn main() -> dirac_vortex::Result<()> {
    let constants = PhysicalConstants::natural();
    let scalar = ScalarBeam::new(ScalarKind::Bessel, BeamParams::bessel(3, 1.5, 0.5), constants)?;
    let point = SpacetimePoint::new(2.0, 0.4, 1.0, 0.5);
    for spin in SpinChoice::BOTH {
        let beam = DiracBeam::new(scalar, spin)?;
        let psi = beam.bispinor(&point)?;
        println!("{} (J_z = {} hbar, harmonics {:?})", spin.name(), beam.jz_over_hbar(), spin.harmonics(3));
        for (name, c) in ["phi1", "phi2", "chi1", "chi2"].iter().zip(psi.components()) {
            println!("  {name} = {:+.6e} {:+.6e}i", c.re, c.im);
        }
        println!("  density = {:.6e}", psi.density());
    }
    Ok(())
}
