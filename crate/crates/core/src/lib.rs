//! Exact desk-scale computations around coadjoint orbits of Sylow
//! p-subgroups of finite orthogonal groups.
//!
//! The library works with root systems of types B and D, orthogonal rook
//! placements inside them, and everything those placements generate:
//!
//! * the battleship marking procedure and the polarization it produces
//!   ([`placement`]),
//! * signed-permutation involutions and the length statistics entering the
//!   dimension formula `dim Ω = l(σ) − s(σ) − 2d(σ)` ([`weyl`]),
//! * the matrix model of the nilpotent algebra over a prime field, with
//!   exact `exp`/`ln` and root subgroups ([`algebra`]),
//! * brute-force coadjoint orbits and their characters in the cyclotomic
//!   field Q(ζ_p) ([`coadjoint`], [`characters`]),
//! * the semidirect decomposition `U = U₁ ⋊ V` and the little-group
//!   verification of the character decomposition ([`mackey`]).
//!
//! All arithmetic is exact: matrices live over F_p, character values in
//! Q(ζ_p) with big-rational coefficients. Everything is deterministic;
//! sampled checks take an explicit seed.

pub mod algebra;
pub mod characters;
pub mod coadjoint;
pub mod field;
pub mod mackey;
pub mod placement;
pub mod roots;
pub mod weyl;

pub use field::PrimeField;
pub use placement::{BattleshipDiagram, Mark, RookPlacement};
pub use roots::{Family, Root, RootSystem};
pub use weyl::SignedPermutation;
