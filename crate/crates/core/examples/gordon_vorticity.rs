//! Gordon split of the Dirac current, and vorticity and circulation of the
//! Dirac velocity compared with the nonrelativistic flow.

use dirac_vortex::observables::{calibrate_gordon, circulation, current_split, curl, DiracFlow, NonrelFlow};
use dirac_vortex::{BeamParams, DiracBeam, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint, SpinChoice};

fn main() -> dirac_vortex::Result<()> {
    let constants = PhysicalConstants::natural();
    let cal = calibrate_gordon(&constants)?;
    println!("plane-wave calibration: orbital {} spin {} (residual {:.1e})", cal.orbital, cal.spin, cal.residual);

    let exp = DiracBeam::new(
        ScalarBeam::new(ScalarKind::Exponential, BeamParams::exponential(10, 40.0, 0.0), constants)?,
        SpinChoice::Up,
    )?;
    let split = current_split(&exp, &SpacetimePoint::new(15.0, 0.2, 0.0, 1.0), 1e-2)?;
    println!("total   {:?}\norbital {:?}\nspin    {:?}\nmismatch {:.2e}", split.total, split.orbital, split.spin, split.mismatch());

    let lg = ScalarBeam::new(ScalarKind::LgNonrel, BeamParams::laguerre_gauss(10, 0, 20.0, None, 0.0), constants)?;
    println!("radius   nonrel circulation   Dirac circulation   |w_D|");
    for r in [10.0, 1.0, 0.1] {
        let nonrel = circulation(&NonrelFlow(lg), r, 0.0, 0.0, 1024)?;
        let dirac = circulation(&DiracFlow(exp), r, 0.0, 0.0, 1024)?;
        let w = curl(&DiracFlow(exp), &SpacetimePoint::new(r, 0.0, 0.0, 0.0), 1e-3)?;
        println!("{r:6.1}   {nonrel:18.12}   {dirac:17.6e}   {:.6e}", w.magnitude());
    }
    Ok(())
}
