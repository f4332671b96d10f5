//! Exact-arithmetic toolkit for coadjoint-orbit quantization of nilpotent
//! Lie algebras and the representation theory that grows out of it: Weyl
//! operators from polarized functionals, Virasoro Verma modules with Gram
//! matrices and singular vectors, a Sugawara construction on a one-field
//! Fock space, centrally extended loop algebras, and parabolic subgroup
//! towers in `GL(n)`. Everything runs over arbitrary-precision rationals —
//! no floating point anywhere — so all outputs are exact and reproducible.

pub mod cli;
pub mod fock;
pub mod lie;
pub mod loops;
pub mod matrix;
pub mod orbit;
pub mod partitions;
pub mod rational;
pub mod towers;
pub mod verma;
pub mod weyl;
