//! Invariance group of the Hamiltonian, its irreducible representations and
//! the symmetry-adapted basis of the low-energy subspace.

pub mod group;
pub mod irreps;
pub mod projection;

pub use group::{
    generate_group, scalar_transform_grid, scalar_transform_labels, Group, GroupElement,
};
pub use irreps::{build_irreps, ExchangeSymmetry, Irrep, IrrepLabel, IrrepTable, ALL_LABELS};
pub use projection::{
    decompose_classes, expected_class_count, label_flat, project_basis, KClass,
    SymmetryAdaptedVector, SymmetryBasis,
};
