//! Post-processing of eigenpairs: densities, densities of states, reduced
//! density matrices and entanglement measures.

pub mod density;
pub mod dos;
pub mod entanglement;

pub use density::{density_2d, Density2d};
pub use dos::{
    dos_noninteracting_g1, dos_noninteracting_g2_total, dos_one_particle_interacting,
    dos_two_particle, DeltaSpectrum, InteractingG1Input,
};
pub use entanglement::{
    reduce_density, reduce_density_second, EntanglementSummary, ReducedDensity,
};
