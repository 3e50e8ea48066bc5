//! Exact q-deformed representation theory of `U_q(su(l+1))` and Dirac spectra
//! on quantum projective spaces.

pub mod check;
pub mod cli;
pub mod combinatorics;
pub mod grassmann;
pub mod matrix;
pub mod qscalar;
pub mod spectra;
pub mod sphere_algebra;
pub mod uqsl;
