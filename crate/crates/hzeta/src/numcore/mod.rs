//! Foundations: integer helpers, Bernoulli numbers, Hurwitz and Riemann zeta,
//! log Γ with its derivatives, and the constants γ, ζ′(0), ζ′(−1), log A.

pub mod arith;
pub mod bernoulli;
pub mod constants;
pub mod gamma;
pub mod hurwitz;

pub use arith::von_mangoldt;
pub use constants::{constants, Constants};
pub use gamma::{digamma, log_gamma, nonpos_int, trigamma};
pub use hurwitz::{hurwitz_zeta, riemann_zeta};
