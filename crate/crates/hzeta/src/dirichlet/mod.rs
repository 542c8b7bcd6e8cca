//! Dirichlet characters with exact values, L(s, χ), the completed ξ(s, χ)
//! and zero-ordinate lists.

pub mod character;
pub mod lfunc;
pub mod zeros;

pub use character::{combine, enumerate_characters, primitive_characters, DirichletCharacter};
pub use lfunc::{dirichlet_l, gauss_sum, root_number, xi_complete};
pub use zeros::{bundled_mod4_zeros, bundled_zeta_zeros, load_zero_list, parse_zero_list, ZeroList};
