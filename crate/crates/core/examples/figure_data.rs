//! Write the three figure datasets into a directory (default: the system
//! temporary directory).

use std::path::PathBuf;

use dirac_vortex::io::{cmd_fig1, cmd_fig2, cmd_fig3, GridSpec, Slice};
use dirac_vortex::PhysicalConstants;

fn main() -> dirac_vortex::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let constants = PhysicalConstants::natural();
    let bs = [20.0, 100.0, 500.0];
    let fig1 = cmd_fig1(10, &bs, 0.0, &constants, &"0:300:601".parse()?)?;
    let fig2 = cmd_fig2(10, &bs, 0.0, &constants, 1e-4)?;
    let grid = GridSpec::new("0.5:100:200".parse()?, "-50:50:101".parse()?, 0.0)?;
    let fig3 = cmd_fig3(10, 40.0, 0.75, &constants, &grid, Slice::Meridional)?;
    for (name, data) in [("fig1.csv", fig1), ("fig2.csv", fig2), ("fig3.csv", fig3)] {
        let path = dir.join(name);
        data.write_path(&path)?;
        println!("{} rows -> {}", data.rows.len(), path.display());
    }
    Ok(())
}
