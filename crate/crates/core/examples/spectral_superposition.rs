//! Superpose Bessel beams with the spectral weight g(E) and compare with
//! the closed-form exponential packet.

use dirac_vortex::spectral::{spectral_peak, superpose_bessel, SuperpositionOptions};
use dirac_vortex::{BeamParams, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint};

fn main() -> dirac_vortex::Result<()> {
    let constants = PhysicalConstants::natural();
    let params = BeamParams::exponential(10, 40.0, 0.75);
    let closed = ScalarBeam::new(ScalarKind::Exponential, params, constants)?;
    println!("spectral peak at E = {:.6} mc^2", spectral_peak(&params, &constants)?);
    for point in [SpacetimePoint::new(30.0, 1.0, 5.0, 0.0), SpacetimePoint::new(30.0, 1.0, 5.0, 50.0)] {
        let sum = superpose_bessel(&params, &constants, &point, &SuperpositionOptions::default())?;
        let exact = closed.value(&point)?;
        println!(
            "{point:?}\n  superposition {:.12e}\n  closed form   {:.12e}\n  relative gap {:.2e} ({} intervals, {} evaluations)",
            sum.value,
            exact,
            (sum.value - exact).norm() / exact.norm(),
            sum.intervals,
            sum.evaluations
        );
    }
    Ok(())
}
