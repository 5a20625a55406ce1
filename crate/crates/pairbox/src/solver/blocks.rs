//! Per-symmetry-block pencils and their generalized eigensolutions.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::solver::subspace::SubspaceOperators;
use crate::symmetry::{IrrepLabel, SymmetryBasis, ALL_LABELS};

/// The pencil of one (irrep, row) block.
#[derive(Debug, Clone)]
pub struct BlockPencil {
    pub label: IrrepLabel,
    pub row: usize,
    pub h_mat: DMatrix<f64>,
    pub b_mat: DMatrix<f64>,
    /// max|H - H^T| of the block before symmetrization (inherits the
    /// label-space value; zero for the sandwich form).
    pub asym: f64,
    /// Basis size before the coincidence-plane constraint, if one applied.
    pub unconstrained_dim: usize,
    /// Constraint null-space basis (r x r'), present when plane-excluded.
    pub constraint: Option<DMatrix<f64>>,
    /// Label-space coefficients of the block's symmetry-adapted vectors.
    pub coeffs: DMatrix<f64>,
}

impl BlockPencil {
    pub fn dim(&self) -> usize {
        self.h_mat.nrows()
    }
}

/// Congruence C^T Op C exploiting the sparsity of the coefficient columns.
fn sparse_congruence(op: &DMatrix<f64>, cols: &[Vec<(usize, f64)>]) -> DMatrix<f64> {
    let r = cols.len();
    let dim = op.nrows();
    // T = Op * C, column by column
    let mut t: DMatrix<f64> = DMatrix::zeros(dim, r);
    for (j, col) in cols.iter().enumerate() {
        for &(idx, w) in col {
            let src = op.column(idx);
            let mut dst = t.column_mut(j);
            for i in 0..dim {
                dst[i] += w * src[i];
            }
        }
    }
    // C^T * T
    let mut out = DMatrix::zeros(r, r);
    for (i, col) in cols.iter().enumerate() {
        for j in 0..r {
            let mut acc = 0.0;
            for &(idx, w) in col {
                acc += w * t[(idx, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Orthonormal basis of the null space of `a`. Rank decisions come from the
/// eigenvalues of the Gram matrix a^T a; the plane-evaluation maps this is
/// used on have a wide spectral gap, so the relative threshold is not
/// delicate.
pub(crate) fn null_space_basis(a: &DMatrix<f64>, rel_tol: f64) -> DMatrix<f64> {
    let r = a.ncols();
    if r == 0 {
        return DMatrix::zeros(0, 0);
    }
    let gram = a.transpose() * a;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let lmax = eig.eigenvalues.iter().cloned().fold(0.0f64, f64::max);
    let tol = rel_tol * rel_tol * lmax.max(1e-300);
    let keep: Vec<usize> = (0..r).filter(|&i| eig.eigenvalues[i] <= tol).collect();
    let mut z = DMatrix::zeros(r, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        for j in 0..r {
            z[(j, col)] = eig.eigenvectors[(j, i)];
        }
    }
    z
}

/// Assemble the pencil of one (irrep, row) block from the label-space
/// operators, applying the coincidence constraint when active.
pub fn assemble_block_pencil(
    ops: &SubspaceOperators,
    basis: &SymmetryBasis,
    label: IrrepLabel,
    row: usize,
) -> Result<BlockPencil> {
    let vecs = basis.vectors(label, row);
    let cols: Vec<Vec<(usize, f64)>> = vecs.iter().map(|v| v.coeffs.clone()).collect();
    let r = cols.len();
    let mut h = sparse_congruence(&ops.h_label, &cols);
    let mut b = sparse_congruence(&ops.b_label, &cols);
    // the label operators are already symmetric; block congruence preserves
    // that, re-symmetrize only to kill rounding
    let mut asym_blk = 0.0f64;
    for c in 0..r {
        for rr in 0..c {
            asym_blk = asym_blk.max((h[(rr, c)] - h[(c, rr)]).abs());
            let s = 0.5 * (h[(rr, c)] + h[(c, rr)]);
            h[(rr, c)] = s;
            h[(c, rr)] = s;
            let sb = 0.5 * (b[(rr, c)] + b[(c, rr)]);
            b[(rr, c)] = sb;
            b[(c, rr)] = sb;
        }
    }
    let coeffs = basis.coefficient_matrix(label, row);
    let mut constraint = None;
    if let Some(plane) = &ops.plane_map {
        // rows of the plane map restricted to this block's columns
        let mut a_blk = DMatrix::zeros(plane.nrows(), r);
        for (j, col) in cols.iter().enumerate() {
            for &(idx, w) in col {
                let src = plane.column(idx);
                let mut dst = a_blk.column_mut(j);
                for i in 0..plane.nrows() {
                    dst[i] += w * src[i];
                }
            }
        }
        // channels whose states vanish at coincident sites by symmetry have
        // an all-noise plane map; the constraint is vacuous there
        let blk_scale = (0..r)
            .map(|j| a_blk.column(j).norm())
            .fold(0.0f64, f64::max);
        if blk_scale > 1e-8 * ops.plane_scale {
            let z = null_space_basis(&a_blk, 1e-6);
            h = z.transpose() * &h * &z;
            b = z.transpose() * &b * &z;
            constraint = Some(z);
        }
    }
    Ok(BlockPencil {
        label,
        row,
        h_mat: h,
        b_mat: b,
        asym: ops.asym.max(asym_blk),
        unconstrained_dim: r,
        constraint,
        coeffs,
    })
}

/// Eigensolution of one block.
#[derive(Debug, Clone)]
pub struct SolvedBlock {
    pub label: IrrepLabel,
    pub row: usize,
    /// Ascending eigenvalues in absolute units (divide by omega to compare
    /// with the tables).
    pub energies: Vec<f64>,
    /// B-orthonormal eigenvectors, one column per energy, in the block's
    /// (possibly constrained) coordinates.
    pub vectors: DMatrix<f64>,
    pub pencil: BlockPencil,
}

impl SolvedBlock {
    /// Label-space coefficients of the t-th eigenstate.
    pub fn label_coefficients(&self, t: usize) -> nalgebra::DVector<f64> {
        let x = self.vectors.column(t);
        match &self.pencil.constraint {
            Some(z) => &self.pencil.coeffs * (z * x),
            None => &self.pencil.coeffs * x,
        }
    }
}

/// Solve H x = E B x for a symmetric pencil with B positive definite.
pub fn solve_block(pencil: BlockPencil) -> Result<SolvedBlock> {
    let r = pencil.dim();
    if r == 0 {
        return Ok(SolvedBlock {
            label: pencil.label,
            row: pencil.row,
            energies: Vec::new(),
            vectors: DMatrix::zeros(0, 0),
            pencil,
        });
    }
    let chol = match pencil.b_mat.clone().cholesky() {
        Some(c) => c,
        None => {
            let min_ritz = nalgebra::SymmetricEigen::new(pencil.b_mat.clone())
                .eigenvalues
                .iter()
                .cloned()
                .fold(f64::INFINITY, f64::min);
            return Err(Error::OverlapNotSpd {
                block: format!("{} row {}", pencil.label, pencil.row),
                min_ritz,
            });
        }
    };
    // T = L^-1 H L^-T
    let l = chol.l();
    let mut t = pencil.h_mat.clone();
    l.solve_lower_triangular_mut(&mut t);
    t.transpose_mut();
    l.solve_lower_triangular_mut(&mut t);
    // T is symmetric up to rounding
    for c in 0..r {
        for rr in 0..c {
            let s = 0.5 * (t[(rr, c)] + t[(c, rr)]);
            t[(rr, c)] = s;
            t[(c, rr)] = s;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("real eigenvalues")
    });
    let mut energies = Vec::with_capacity(r);
    let mut vectors = DMatrix::zeros(r, r);
    for (out_col, &src) in order.iter().enumerate() {
        energies.push(eig.eigenvalues[src]);
        let y = eig.eigenvectors.column(src).into_owned();
        // x = L^-T y
        let x = l
            .transpose()
            .solve_upper_triangular(&y)
            .expect("triangular solve");
        vectors.set_column(out_col, &x);
    }
    Ok(SolvedBlock {
        label: pencil.label,
        row: pencil.row,
        energies,
        vectors,
        pencil,
    })
}

/// Eigensolutions of all requested blocks.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub omega: f64,
    pub blocks: Vec<SolvedBlock>,
}

impl EigenResult {
    pub fn block(&self, label: IrrepLabel, row: usize) -> Option<&SolvedBlock> {
        self.blocks
            .iter()
            .find(|b| b.label == label && b.row == row)
    }

    /// Energies over omega of one block.
    pub fn levels_over_omega(&self, label: IrrepLabel, row: usize) -> Option<Vec<f64>> {
        self.block(label, row)
            .map(|b| b.energies.iter().map(|e| e / self.omega).collect())
    }
}

/// Assemble and solve row 0 of every irrep (optionally filtered); row 1 of
/// two-dimensional irreps is solved only when `all_rows` is set.
pub fn solve_all_blocks(
    ops: &SubspaceOperators,
    basis: &SymmetryBasis,
    irreps: &crate::symmetry::IrrepTable,
    omega: f64,
    filter: Option<&[IrrepLabel]>,
    all_rows: bool,
) -> Result<EigenResult> {
    let mut jobs: Vec<(IrrepLabel, usize)> = Vec::new();
    for &label in ALL_LABELS.iter() {
        if let Some(f) = filter {
            if !f.contains(&label) {
                continue;
            }
        }
        let d = irreps.get(label).dim;
        let rows = if all_rows { d } else { 1 };
        for row in 0..rows {
            jobs.push((label, row));
        }
    }
    let blocks: Result<Vec<SolvedBlock>> = jobs
        .into_par_iter()
        .map(|(label, row)| {
            let pencil = assemble_block_pencil(ops, basis, label, row)?;
            solve_block(pencil)
        })
        .collect();
    Ok(EigenResult {
        omega,
        blocks: blocks?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_solve_on_known_pencil() {
        // H = diag(1, 2), B = diag(1, 4): eigenvalues 1 and 1/2
        let h = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 4.0]);
        let pencil = BlockPencil {
            label: IrrepLabel { q: 1, p: 1 },
            row: 0,
            h_mat: h,
            b_mat: b.clone(),
            asym: 0.0,
            unconstrained_dim: 2,
            constraint: None,
            coeffs: DMatrix::identity(2, 2),
        };
        let solved = solve_block(pencil).unwrap();
        assert!((solved.energies[0] - 0.5).abs() < 1e-14);
        assert!((solved.energies[1] - 1.0).abs() < 1e-14);
        // B-orthonormality
        let v = &solved.vectors;
        let g = v.transpose() * &b * v;
        assert!((g - DMatrix::identity(2, 2)).abs().max() < 1e-12);
    }

    #[test]
    fn non_spd_overlap_rejected() {
        let h = DMatrix::identity(2, 2);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let pencil = BlockPencil {
            label: IrrepLabel { q: 1, p: 1 },
            row: 0,
            h_mat: h,
            b_mat: b,
            asym: 0.0,
            unconstrained_dim: 2,
            constraint: None,
            coeffs: DMatrix::identity(2, 2),
        };
        match solve_block(pencil) {
            Err(Error::OverlapNotSpd { min_ritz, .. }) => assert!(min_ritz < 0.0),
            other => panic!("expected SPD failure, got {other:?}"),
        }
    }

    #[test]
    fn null_space_of_rank_one_map() {
        let a = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let z = null_space_basis(&a, 1e-9);
        assert_eq!(z.ncols(), 2);
        let az = &a * &z;
        assert!(az.abs().max() < 1e-12);
        let g = z.transpose() * &z;
        assert!((g - DMatrix::identity(2, 2)).abs().max() < 1e-12);
    }
}
