//! Spectra, densities and entanglement of two interacting particles in a
//! two-dimensional box.
//!
//! The configuration space is the 4D hypercube [-b,b]^4. The Laplacian is
//! discretized with an 89-point sixth-order scheme whose matrices are
//! direct polynomials of one tridiagonal factor, the order-32 invariance
//! group block-diagonalizes the problem, and the generalized eigenproblems
//! are solved in a low-energy basis of confined-oscillator products.
//!
//! Modules:
//! - [`grid`]: the lattice and flat-indexed grid functions
//! - [`stencil`]: difference operators and the coefficient systems
//! - [`kron`]: scheme matrices, lazy matvec, CSR, closed-form spectra
//! - [`oscillator`]: confined-oscillator levels and wavefunctions
//! - [`symmetry`]: the group, its irreps, the symmetry-adapted basis
//! - [`solver`]: pencil assembly and block eigensolution
//! - [`observables`]: densities, DOS, entanglement

pub mod cli;
pub mod error;
pub mod grid;
pub mod kron;
pub mod observables;
pub mod oscillator;
pub mod solver;
pub mod stencil;
pub mod symmetry;

pub use error::{Error, Result};
