//! Deviation of the relativistic packets from their nonrelativistic limits
//! as the speed of light grows.

use dirac_vortex::validation::{exp_limit_points, lg_limit_points, nonrel_limit_exp, nonrel_limit_lg};
use dirac_vortex::{BeamParams, SpacetimePoint};

fn main() -> dirac_vortex::Result<()> {
    let c_values = [10.0, 20.0, 40.0, 80.0];
    let (points, slice) = lg_limit_points();
    let lg = nonrel_limit_lg(&BeamParams::laguerre_gauss(2, 1, 10.0, None, 0.1), &c_values, &points, &slice)?;
    let (points, slice) = exp_limit_points();
    let exp = nonrel_limit_exp(2, 0.5, 0.1, &c_values, &SpacetimePoint::new(0.8, 0.0, 0.0, 0.0), &points, &slice)?;
    println!("{:>6} {:>12} {:>12}", "c", "LG", "exponential");
    for (k, c) in c_values.iter().enumerate() {
        println!("{c:>6} {:>12.3e} {:>12.3e}", lg.deviations[k], exp.deviations[k]);
    }
    println!("monotone: LG {} exponential {}", lg.is_monotone(), exp.is_monotone());
    Ok(())
}
