//! Infinitesimal and static rigidity of symmetric bar-and-joint frameworks.
//!
//! The rigidity matrix of a framework with point-group symmetry splits into
//! one block per real irreducible representation of the group. This crate
//! builds those blocks, counts symmetric flexes and self-stresses per block
//! and evaluates the symmetry-extended Maxwell rule. Rank decisions made in
//! floating point can be cross-checked exactly when coordinates are
//! rational.

pub mod blockdiag;
pub mod error;
pub mod exact;
pub mod framework;
pub mod linalg;
pub mod maxwell;
pub mod representations;
pub mod rigidity;
pub mod statics;
pub mod symmetry;

pub use blockdiag::{
    block_diagonalize, block_diagonalize_with_bases, block_rank_analysis, isotypic_basis,
    motion_space_decomposition, stiffness_blockdiag, BlockDiagonalForm, BlockRank,
    MotionDecomposition, SymmetryAdaptedBasis,
};
pub use error::{Error, Result};
pub use framework::{Configuration, Framework, Graph};
pub use linalg::Tolerance;
pub use maxwell::{interpret_gaps, symmetry_maxwell, Finding, FindingKind, MaxwellReport};
pub use representations::{
    character, character_table, decompose, external_rep, internal_rep, Character, CharacterTable,
    Irrep, MatrixRep, Multiplicities,
};
pub use rigidity::{
    infinitesimal_analysis, is_isostatic, maxwell_count, self_stresses, InfinitesimalAnalysis,
};
pub use statics::{
    flex_load_duality_check, is_equilibrium_load, pair_load, resolve_load, Resolution,
};
pub use symmetry::{
    builtin_group_2d, find_type_maps, fixed_counts, group_from_generators, is_compatible,
    validate_type_map, GroupKind, Permutation, SymmetryGroup, TypeMap,
};
