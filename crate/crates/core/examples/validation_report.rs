//! Run the validation suite on its defaults and print the TOML report.

use dirac_vortex::validation::{run_full_validation, ValidationConfig};

fn main() -> dirac_vortex::Result<()> {
    let report = run_full_validation(&ValidationConfig::default())?;
    print!("{}", report.to_toml(true)?);
    eprintln!("overall: {}", if report.pass() { "pass" } else { "fail" });
    Ok(())
}
