//! Assembly and solution of the symmetry-reduced generalized eigenproblem.

pub mod blocks;
pub mod convergence;
pub mod potential;
pub mod subspace;

pub use blocks::{
    assemble_block_pencil, solve_all_blocks, solve_block, BlockPencil, EigenResult, SolvedBlock,
};
pub use potential::{build_potential_grid, Regularization};
pub use subspace::{assemble_subspace_operators, PencilForm, SubspaceOperators};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};
use crate::kron::MatvecWorkspace;
use crate::oscillator::{find_levels, OscillatorBasis, OscillatorSpec, WavefunctionTable};
use crate::symmetry::{
    build_irreps, generate_group, project_basis, Group, IrrepLabel, IrrepTable, SymmetryBasis,
};

/// Full problem parameters.
#[derive(Debug, Clone)]
pub struct ProblemConfig {
    pub n: usize,
    pub m: usize,
    pub omega2_half: f64,
    pub b: f64,
    pub coulomb_c: f64,
    pub gamma_p: Ratio<i64>,
    pub regularization: Regularization,
    pub pencil_form: PencilForm,
    pub memory_budget: u64,
}

impl Default for ProblemConfig {
    fn default() -> Self {
        ProblemConfig {
            n: 30,
            m: 8,
            omega2_half: 500.0,
            b: 1.0,
            coulomb_c: 0.0,
            gamma_p: Ratio::new(23, 3840),
            regularization: Regularization::Excluded,
            pencil_form: PencilForm::NSandwich,
            memory_budget: 2 * 1024 * 1024 * 1024,
        }
    }
}

impl ProblemConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m > self.n {
            return Err(Error::InvalidArgument(format!(
                "m = {} must not exceed n = {}",
                self.m, self.n
            )));
        }
        if self.coulomb_c < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "interaction strength must be nonnegative, got {}",
                self.coulomb_c
            )));
        }
        Ok(())
    }

    pub fn gamma_p_f64(&self) -> f64 {
        *self.gamma_p.numer() as f64 / *self.gamma_p.denom() as f64
    }
}

/// All precomputed machinery for one problem configuration.
pub struct Solver {
    pub config: ProblemConfig,
    pub grid: GridSpec,
    pub basis: OscillatorBasis,
    pub table: WavefunctionTable,
    pub group: Group,
    pub irreps: IrrepTable,
    pub sym_basis: SymmetryBasis,
    pub ops: SubspaceOperators,
}

impl Solver {
    pub fn new(config: ProblemConfig) -> Result<Self> {
        config.validate()?;
        let grid = GridSpec::new(config.n, config.b)?;
        let basis = find_levels(OscillatorSpec::from_omega2_half(
            config.omega2_half,
            config.b,
            config.m,
        )?)?;
        let table = basis.sample_wavefunctions(&grid)?;
        let group = generate_group()?;
        let irreps = build_irreps(&group)?;
        let sym_basis = project_basis(config.m, &group, &irreps)?;
        let input = subspace::AssemblyInput {
            grid: &grid,
            table: &table,
            omega: basis.spec().omega,
            coulomb_c: config.coulomb_c,
            gamma_p: config.gamma_p_f64(),
            rule: config.regularization,
            form: config.pencil_form,
            memory_budget: config.memory_budget,
        };
        let ops = subspace::assemble_subspace_operators(&input)?;
        Ok(Solver {
            config,
            grid,
            basis,
            table,
            group,
            irreps,
            sym_basis,
            ops,
        })
    }

    pub fn omega(&self) -> f64 {
        self.basis.spec().omega
    }

    /// Solve every block (first rows only in production).
    pub fn solve(&self, filter: Option<&[IrrepLabel]>) -> Result<EigenResult> {
        solve_all_blocks(
            &self.ops,
            &self.sym_basis,
            &self.irreps,
            self.omega(),
            filter,
            false,
        )
    }

    /// Solve both rows of two-dimensional irreps (used by consistency tests).
    pub fn solve_all_rows(&self) -> Result<EigenResult> {
        solve_all_blocks(
            &self.ops,
            &self.sym_basis,
            &self.irreps,
            self.omega(),
            None,
            true,
        )
    }

    /// Reconstruct the normalized grid wave function of one solved state.
    pub fn state_grid(
        &self,
        result: &EigenResult,
        label: IrrepLabel,
        row: usize,
        rank: usize,
    ) -> Result<GridFunction> {
        let block = result
            .block(label, row)
            .ok_or_else(|| Error::UnknownSelector {
                selector: format!("{label} row {row}"),
                available: result
                    .blocks
                    .iter()
                    .map(|b| format!("{} row {}", b.label, b.row))
                    .collect::<Vec<_>>()
                    .join(", "),
            })?;
        if rank >= block.energies.len() {
            return Err(Error::UnknownSelector {
                selector: format!("{label} row {row} rank {rank}"),
                available: format!("ranks 0..{}", block.energies.len()),
            });
        }
        let y = block.label_coefficients(rank);
        let n = self.config.n;
        let dim = n.pow(4);
        let mut grid_vec = vec![0.0; dim];
        let (mut s1, mut s2) = (Vec::new(), Vec::new());
        subspace::expand_to_grid(
            &self.table,
            n,
            y.as_slice(),
            &mut grid_vec,
            &mut s1,
            &mut s2,
        );
        if matches!(self.config.pencil_form, PencilForm::NSandwich) {
            // the trial space of the sandwich pencil is N * span(v), so the
            // physical state carries one factor of N
            let n_poly = crate::kron::build_n_matrix(n, self.config.gamma_p_f64())?;
            let mut ws = MatvecWorkspace::new(n);
            let mut out = vec![0.0; dim];
            n_poly.matvec_into(&grid_vec, &mut out, &mut ws)?;
            grid_vec = out;
        }
        let norm = grid_vec.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in grid_vec.iter_mut() {
            *v /= norm;
        }
        GridFunction::from_values(&self.grid, grid_vec)
    }

    /// Exact noninteracting per-block spectrum (tensor sums of oscillator
    /// levels arranged by symmetry), used as the reference of convergence
    /// studies and the noninteracting tables.
    pub fn exact_block_levels(&self, label: IrrepLabel) -> Vec<f64> {
        let m = self.config.m;
        let md = m.pow(4);
        let mut diag = vec![0.0; md];
        for k4 in 0..m {
            for k3 in 0..m {
                for k2 in 0..m {
                    for k1 in 0..m {
                        let idx = k1 + m * k2 + m * m * k3 + m * m * m * k4;
                        diag[idx] = self.basis.nu()[k1]
                            + self.basis.nu()[k2]
                            + self.basis.nu()[k3]
                            + self.basis.nu()[k4]
                            + 2.0;
                    }
                }
            }
        }
        // the symmetry-adapted vectors are supported on single orbits whose
        // members share one energy, so the block spectrum is read off as the
        // energy of each vector's orbit
        let vecs = self.sym_basis.vectors(label, 0);
        let mut evs: Vec<f64> = vecs.iter().map(|v| diag[v.coeffs[0].0]).collect();
        evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        evs
    }
}
