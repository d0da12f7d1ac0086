//! Compact E7 in three explicit matrix realizations.
//!
//! The crate builds the Lie algebra of the compact group E7 as explicit
//! matrices in three bases:
//!
//! - `tits`: the Freudenthal–Tits construction over the quaternions and the
//!   exceptional Jordan algebra, in the adjoint 133 and the fundamental 56;
//! - `split`: the 56 realized on `∧²V ⊕ ∧²V*` with `V = C⁸`, adapted to the
//!   maximal compact `SU(8)/Z₂` of the split real form;
//! - `evi`: a rebasing of the tits 56 adapted to `Spin(12)×SU(2)`.
//!
//! On top of these it provides structure constants, Killing signatures,
//! root systems, Euler-chart densities, Macdonald volumes and a Haar sampler.

pub mod chevalley;
pub mod composition_algebras;
pub mod e7mat;
pub mod error;
pub mod euler;
pub mod f4e6;
pub mod generators;
pub mod jordan;
pub mod measures;
pub mod model;
pub mod ranges;
pub mod rep133;
pub mod rep56;
pub mod roots;
pub mod scalars;
pub mod sparse;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::ExactScalar;
