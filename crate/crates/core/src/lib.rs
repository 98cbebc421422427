//! Exact relativistic electron wave packets carrying angular momentum.
//!
//! Scalar Klein-Gordon solutions (Bessel, Laguerre-Gauss, exponential) are
//! lifted to Dirac bispinors by a first-order matrix operator. On top of
//! that the crate provides the Bessel-spectral representation of the
//! exponential packet, probability currents with their Gordon split,
//! vorticity and circulation, a validation harness and figure-data emitters.
//!
//! All quantities are expressed in a unit system fixed by
//! [`PhysicalConstants`]; the default `ħ = m = c = 1` measures lengths in
//! reduced Compton wavelengths.

pub mod dirac;
pub mod error;
pub mod io;
pub mod model;
pub mod observables;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod spectral;
pub mod validation;

pub use dirac::{Bispinor, DiracBeam, SpinChoice};
pub use error::{Error, Result};
pub use model::{derived_quantities, BeamParams, DerivedBeamQuantities, PhysicalConstants, SpacetimePoint};
pub use scalar::{ScalarBeam, ScalarJet, ScalarKind};

pub use num_complex::Complex64;

/// Version string written into emitted file headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
