//! Multiple gamma functions, Dirichlet L-functions, congruence-subgroup
//! scattering data and the gamma factors of Selberg and higher Selberg zeta
//! functions, evaluated in MPFR arithmetic and checked against their
//! functional identities.

pub mod congruence;
pub mod ctx;
pub mod cx;
pub mod dirichlet;
pub mod error;
pub mod multigamma;
pub mod divisor;
pub mod higher;
pub mod higher_l;
pub mod numcore;
pub mod quad;
pub mod selberg;
pub mod verify;

pub use ctx::PrecisionContext;
pub use cx::Cx;
pub use error::{Error, Result};
