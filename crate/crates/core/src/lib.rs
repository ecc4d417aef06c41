//! Exact symbolic computation of the invariant Gauss–Manin cohomology of
//! Dwork families, together with the operator, syzygy and arrangement
//! oracles that cross-check it.

pub mod arrangement;
pub mod dwork;
pub mod factor;
pub mod hypergeom;
pub mod rational;
pub mod syzygy;
pub mod upoly;
pub mod weyl;

pub use rational::Rational;
pub use upoly::UPoly;
pub use weyl::{LaurentPoly, WeylOp};
