//! The exponential packet: radial profile, z-independence of |f| and the
//! asymptotic fall-off rate.

use dirac_vortex::validation::falloff_slope;
use dirac_vortex::{derived_quantities, BeamParams, PhysicalConstants, ScalarBeam, ScalarKind, SpacetimePoint};

fn main() -> dirac_vortex::Result<()> {
    let constants = PhysicalConstants::natural();
    let params = BeamParams::exponential(10, 40.0, 0.75);
    let beam = ScalarBeam::new(ScalarKind::Exponential, params, constants)?;
    let derived = derived_quantities(&params, &constants)?;
    println!("gamma = {:.6}, q = {:.6}, E_parallel = {:.6}", derived.gamma, derived.q, derived.e_parallel);

    println!("rho      ln|f|");
    for rho in [1.0, 5.0, 10.0, 20.0, 40.0, 80.0] {
        println!("{rho:6.1}  {:.6}", beam.ln_modulus(&SpacetimePoint::new(rho, 0.0, 0.0, 0.0))?);
    }

    let p = SpacetimePoint::new(15.0, 0.3, 0.0, 2.0);
    let (m0, m1) = (beam.value(&p)?.norm(), beam.value(&p.with_z(37.0))?.norm());
    println!("|f| at z=0 and z=37: {m0:.15e} {m1:.15e}");

    let slope = falloff_slope(&params, &constants)?;
    println!("d ln|f| / d rho over [500, 1000]: {slope:.5} (expected {:.5})", -derived.gamma);
    Ok(())
}
