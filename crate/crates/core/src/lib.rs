//! Exact arithmetic on the rank-2 Picard lattice `ZH + ZC` of a K3 surface
//! of type (2,3) in P^4 containing a smooth curve `C` of genus `g` and
//! degree `d = g - s`, together with the enumerations and inequality checks
//! that bound the Clifford index of `C` and the rank-2 Clifford index.
//!
//! Modules, bottom-up:
//!
//! * [`lattice`]: parameters, divisor classes, the intersection pairing.
//! * [`classifier`]: `(-2)`-classes, isotropic classes, ampleness of `C`.
//! * [`fixedcomp`]: exclusion of fixed components and isotropic splittings.
//! * [`clifford`]: the objective `f(m, n) = D.C - D^2 - 2`, its admissible
//!   region, and the resulting Clifford-index certificates.
//!
//! All arithmetic is exact. Intermediate values are `i128` with checked
//! operations; an overflow surfaces as [`Error::Overflow`] and never wraps.

pub mod classifier;
pub mod clifford;
mod error;
pub mod fixedcomp;
pub mod lattice;
pub mod par;
pub mod ratio;

pub use error::{Error, Result};
pub use lattice::{DivisorClass, Int, Regime, RegimeCondition, SurfaceParams};
