//! Exact computation of the number of irreducible constituents of the
//! plethysm `s_λ[s_m]`.
//!
//! Three independent routes are provided:
//!
//! - [`fixed`]: the class function `N^m(σ) = #{A ∈ M(n, m) : σ Aᵀ = A}` and
//!   its inner products with irreducible characters;
//! - [`symfunc`]: a brute-force power-sum expansion of `s_λ[s_m]`;
//! - [`orbits`]: permutation-equivalence classes of `M(n, m)` fixed by
//!   transposition.
//!
//! [`ehrhart`] fits the quasipolynomials `m ↦ N^m(ρ)` and checks their degree,
//! parity and reciprocity.

pub mod characters;
pub mod ehrhart;
pub mod error;
pub mod fixed;
pub mod matrix;
pub mod orbits;
pub mod partition;
pub mod permutation;
pub mod serial;
pub mod suite;
pub mod symfunc;

pub use characters::{
    character_table, inner_product, irreducible_character, sqrt_count, theta_identity_check,
    CharacterTable, ClassFunction,
};

pub use ehrhart::{degree_formula, EhrhartFits, FitOptions, Quasipolynomial};
pub use error::{Error, Result};
pub use fixed::{count_fixed, fiber_check, n_class_function, plethysm_sum};
pub use matrix::{count_m, enumerate_m, IntMatrix};

pub use orbits::{
    canonical_form, n_c, orbit_classes, transpose_fixed_decomposition, ClassDecomposition, OrbitClass,
};
pub use partition::{count_odd_part_partitions, partition_count, partitions_of, Partition};
pub use permutation::Permutation;
pub use symfunc::{oracle_sum, plethysm_schur, PSymFunc, PlethysmResult};

