//! Assembly of the low-energy-subspace operators.
//!
//! The trial space is spanned by products of confined-oscillator
//! wavefunctions v(k). Matrix elements of any direct polynomial in A reduce
//! to products of 1-D Gram matrices, assembled hierarchically axis by axis.
//! The Coulomb part is not separable and is streamed one n^4 column at a
//! time: build v(k'), apply N lazily, multiply pointwise, contract back.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::kron::{build_m, build_n_matrix, DirectPolyMatrix, MatvecWorkspace, Term};
use crate::oscillator::WavefunctionTable;
use crate::solver::potential::{coincidence_indices, coulomb_grid, harmonic_axis, Regularization};

/// Which generalized pencil the solver assembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PencilForm {
    /// (h^-2 M N + N diag(U) N, N^2). Exactly symmetric because [M, N] = 0,
    /// so no symmetrization bias enters the spectra. Default.
    NSandwich,
    /// (h^-2 M + N diag(U), N). First-order form; genuinely nonsymmetric in
    /// a truncated subspace, symmetrized after assembly with the asymmetry
    /// recorded.
    Plain,
}

impl PencilForm {
    pub fn name(&self) -> &'static str {
        match self {
            PencilForm::NSandwich => "n-sandwich",
            PencilForm::Plain => "plain",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "n-sandwich" | "nsandwich" => Ok(PencilForm::NSandwich),
            "plain" => Ok(PencilForm::Plain),
            other => Err(Error::InvalidArgument(format!(
                "pencil form must be 'n-sandwich' or 'plain', got {other:?}"
            ))),
        }
    }
}

/// Dense label-space operators of the pencil.
pub struct SubspaceOperators {
    pub form: PencilForm,
    pub m: usize,
    pub n: usize,
    pub h: f64,
    /// Left-hand operator on the m^4 label space (symmetrized).
    pub h_label: DMatrix<f64>,
    /// Right-hand (overlap side) operator.
    pub b_label: DMatrix<f64>,
    /// Pre-symmetrization asymmetry max|H - H^T|.
    pub asym: f64,
    /// Plane evaluation of the reconstructed states (n^2 x m^4), present
    /// when the coincidence-excluded rule is active.
    pub plane_map: Option<DMatrix<f64>>,
    /// Largest column norm of the plane map; blocks whose own plane columns
    /// are smaller than ~1e-8 of this vanish at coincident sites identically
    /// and are left unconstrained.
    pub plane_scale: f64,
}

/// 1-D Gram tables Phi^T A^s W A^s' Phi for the separable assembly.
struct GramTables {
    /// plain[s] = Phi^T A^s Phi, s = 0..=8
    plain: Vec<DMatrix<f64>>,
    /// weighted[s][s'] = Phi^T A^s diag(u_harm) A^s' Phi, s, s' = 0..=2
    weighted: Vec<Vec<DMatrix<f64>>>,
}

fn gram_tables(table: &WavefunctionTable, grid: &GridSpec, omega: f64) -> GramTables {
    let n = grid.n();
    let m = table.n_levels();
    let a = crate::kron::build_a(n).expect("n >= 1");
    // A^s Phi^T as n x m matrices
    let mut phi_t = DMatrix::zeros(n, m);
    for lev in 0..m {
        for p in 0..n {
            phi_t[(p, lev)] = table.level(lev)[p];
        }
    }
    let mut apow_phi = vec![phi_t.clone()];
    for _ in 0..8 {
        let next = &a * apow_phi.last().unwrap();
        apow_phi.push(next);
    }
    let plain: Vec<DMatrix<f64>> = (0..=8)
        .map(|s| apow_phi[0].transpose() * &apow_phi[s])
        .collect();
    let u = harmonic_axis(grid, omega);
    let weighted: Vec<Vec<DMatrix<f64>>> = (0..=2)
        .map(|s| {
            (0..=2)
                .map(|sp| {
                    let mut left = apow_phi[s].clone();
                    for p in 0..n {
                        for lev in 0..m {
                            left[(p, lev)] *= u[p];
                        }
                    }
                    left.transpose() * &apow_phi[sp]
                })
                .collect()
        })
        .collect();
    GramTables { plain, weighted }
}

/// Per-axis key into the gram list used by the hierarchical assembler.
type Key = u8;

/// Assemble sum_t z_t G3[key3] (x) G2[key2] (x) G1[key1] (x) G0[key0]
/// hierarchically (label index k1 fastest, matching grid order).
fn assemble_separable(
    m: usize,
    terms: &[(f64, [Key; 4])],
    grams: &[&[DMatrix<f64>]; 4],
) -> DMatrix<f64> {
    fn recurse(
        m: usize,
        axes: usize,
        terms: &[(f64, Vec<Key>)],
        grams: &[&[DMatrix<f64>]],
    ) -> DMatrix<f64> {
        let dim = m.pow(axes as u32);
        if axes == 0 {
            let total: f64 = terms.iter().map(|(z, _)| z).sum();
            return DMatrix::from_element(1, 1, total);
        }
        let top = axes - 1;
        let mut out = DMatrix::zeros(dim, dim);
        let mut keys: Vec<Key> = terms.iter().map(|(_, k)| k[top]).collect();
        keys.sort_unstable();
        keys.dedup();
        let sub_dim = m.pow(top as u32);
        for key in keys {
            let sub_terms: Vec<(f64, Vec<Key>)> = terms
                .iter()
                .filter(|(_, k)| k[top] == key)
                .map(|(z, k)| (*z, k[..top].to_vec()))
                .collect();
            let sub = recurse(m, top, &sub_terms, grams);
            let g = &grams[top][key as usize];
            for ct in 0..m {
                for rt in 0..m {
                    let w = g[(rt, ct)];
                    if w == 0.0 {
                        continue;
                    }
                    for cs in 0..sub_dim {
                        let col = ct * sub_dim + cs;
                        let row0 = rt * sub_dim;
                        for rs in 0..sub_dim {
                            out[(row0 + rs, col)] += w * sub[(rs, cs)];
                        }
                    }
                }
            }
        }
        out
    }
    let terms_vec: Vec<(f64, Vec<Key>)> = terms.iter().map(|(z, k)| (*z, k.to_vec())).collect();
    recurse(m, 4, &terms_vec, &[grams[0], grams[1], grams[2], grams[3]])
}

fn poly_term_keys(p: &DirectPolyMatrix) -> Vec<(f64, [Key; 4])> {
    p.terms().iter().map(|t: &Term| (t.coeff, t.exps)).collect()
}

/// (v(k), Op v(k')) for a direct polynomial Op, via plain grams.
fn assemble_poly(m: usize, p: &DirectPolyMatrix, g: &GramTables) -> DMatrix<f64> {
    let plain: &[DMatrix<f64>] = &g.plain;
    assemble_separable(m, &poly_term_keys(p), &[plain, plain, plain, plain])
}

/// (v(k), P diag(U_harm) Q v(k')) where U_harm = sum over axes of u(x_axis)
/// and P, Q are direct polynomials with per-axis exponents <= 2.
fn assemble_weighted(
    m: usize,
    p: &DirectPolyMatrix,
    q: &DirectPolyMatrix,
    g: &GramTables,
) -> DMatrix<f64> {
    let dim = m.pow(4);
    let mut out = DMatrix::zeros(dim, dim);
    // flatten the weighted pair (s, s') into key = 3 s + s'
    let wtab: Vec<DMatrix<f64>> = (0..3)
        .flat_map(|s| (0..3).map(move |sp| (s, sp)))
        .map(|(s, sp)| g.weighted[s][sp].clone())
        .collect();
    for axis_w in 0..4 {
        let mut terms: Vec<(f64, [Key; 4])> = Vec::new();
        for tp in p.terms() {
            for tq in q.terms() {
                let mut keys = [0u8; 4];
                for ax in 0..4 {
                    if ax == axis_w {
                        keys[ax] = 3 * tp.exps[ax] + tq.exps[ax];
                    } else {
                        keys[ax] = tp.exps[ax] + tq.exps[ax];
                    }
                }
                terms.push((tp.coeff * tq.coeff, keys));
            }
        }
        // merge duplicate keys
        terms.sort_unstable_by(|a, b| a.1.cmp(&b.1));
        let mut merged: Vec<(f64, [Key; 4])> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = merged.last_mut() {
                if last.1 == t.1 {
                    last.0 += t.0;
                    continue;
                }
            }
            merged.push(t);
        }
        let plain: &[DMatrix<f64>] = &g.plain;
        let wslice: &[DMatrix<f64>] = &wtab;
        let mut gram_refs: [&[DMatrix<f64>]; 4] = [plain, plain, plain, plain];
        gram_refs[axis_w] = wslice;
        out += assemble_separable(m, &merged, &gram_refs);
    }
    out
}

/// Contract a grid vector against the oscillator table on every axis,
/// producing the m^4 label vector of inner products (v(k), w).
pub fn contract_to_labels(
    table: &WavefunctionTable,
    n: usize,
    w: &[f64],
    out: &mut [f64],
    scratch: &mut Vec<f64>,
    scratch2: &mut Vec<f64>,
) {
    let m = table.n_levels();
    debug_assert_eq!(w.len(), n.pow(4));
    debug_assert_eq!(out.len(), m.pow(4));
    // repeatedly contract the fastest axis and rotate it to the slowest slot
    let mut cur_len = w.len();
    scratch.clear();
    scratch.extend_from_slice(w);
    for _step in 0..4 {
        let rest = cur_len / n;
        // contract leading axis: tmp[a + m r] = sum_p phi[a][p] cur[p + n r]
        scratch2.clear();
        scratch2.resize(m * rest, 0.0);
        for r in 0..rest {
            let base_in = r * n;
            let base_out = r * m;
            for a in 0..m {
                let phi = table.level(a);
                let mut acc = 0.0;
                for p in 0..n {
                    acc += phi[p] * scratch[base_in + p];
                }
                scratch2[base_out + a] = acc;
            }
        }
        // rotate leading to slowest: cur[r + rest a] = tmp[a + m r]
        cur_len = m * rest;
        scratch.clear();
        scratch.resize(cur_len, 0.0);
        for r in 0..rest {
            for a in 0..m {
                scratch[r + rest * a] = scratch2[a + m * r];
            }
        }
    }
    out.copy_from_slice(&scratch[..cur_len]);
}

/// Expand label coefficients into the grid tensor sum_k y_k v(k).
pub fn expand_to_grid(
    table: &WavefunctionTable,
    n: usize,
    y: &[f64],
    out: &mut [f64],
    scratch: &mut Vec<f64>,
    scratch2: &mut Vec<f64>,
) {
    let m = table.n_levels();
    debug_assert_eq!(y.len(), m.pow(4));
    debug_assert_eq!(out.len(), n.pow(4));
    let mut cur_len = y.len();
    scratch.clear();
    scratch.extend_from_slice(y);
    for _step in 0..4 {
        let rest = cur_len / m;
        // expand leading axis: tmp[p + n r] = sum_a phi[a][p] cur[a + m r]
        scratch2.clear();
        scratch2.resize(n * rest, 0.0);
        for r in 0..rest {
            let base_in = r * m;
            let base_out = r * n;
            for a in 0..m {
                let coeff = scratch[base_in + a];
                if coeff == 0.0 {
                    continue;
                }
                let phi = table.level(a);
                for p in 0..n {
                    scratch2[base_out + p] += coeff * phi[p];
                }
            }
        }
        // rotate leading to slowest
        cur_len = n * rest;
        scratch.clear();
        scratch.resize(cur_len, 0.0);
        for r in 0..rest {
            for p in 0..n {
                scratch[r + rest * p] = scratch2[p + n * r];
            }
        }
    }
    out.copy_from_slice(&scratch[..cur_len]);
}

/// Inputs for the assembly.
pub struct AssemblyInput<'a> {
    pub grid: &'a GridSpec,
    pub table: &'a WavefunctionTable,
    pub omega: f64,
    pub coulomb_c: f64,
    pub gamma_p: f64,
    pub rule: Regularization,
    pub form: PencilForm,
    pub memory_budget: u64,
}

/// Estimated working-set bytes of the assembly.
pub fn assembly_bytes(n: usize, m: usize) -> u64 {
    let md = m.pow(4) as u64;
    let grid = n.pow(4) as u64;
    // two dense label operators plus per-column streaming buffers
    2 * md * md * 8 + 8 * grid * 8
}

/// Build the label-space pencil operators.
pub fn assemble_subspace_operators(input: &AssemblyInput<'_>) -> Result<SubspaceOperators> {
    let n = input.grid.n();
    let m = input.table.n_levels();
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "subspace levels m={m} must not exceed grid resolution n={n}"
        )));
    }
    let need = assembly_bytes(n, m);
    if need > input.memory_budget {
        return Err(Error::MemoryBudget {
            required: need,
            budget: input.memory_budget,
        });
    }
    let h = input.grid.h();
    let grams = gram_tables(input.table, input.grid, input.omega);
    let m_poly = build_m(n)?;
    let n_poly = build_n_matrix(n, input.gamma_p)?;

    let (mut h_label, b_label) = match input.form {
        PencilForm::NSandwich => {
            let mn = m_poly.product(&n_poly)?;
            let nn = n_poly.product(&n_poly)?;
            let kin = assemble_poly(m, &mn, &grams);
            let b = assemble_poly(m, &nn, &grams);
            let w = assemble_weighted(m, &n_poly, &n_poly, &grams);
            (kin / (h * h) + w, b)
        }
        PencilForm::Plain => {
            let kin = assemble_poly(m, &m_poly, &grams);
            let b = assemble_poly(m, &n_poly, &grams);
            let ident = DirectPolyMatrix::identity(n);
            let w = assemble_weighted(m, &n_poly, &ident, &grams);
            (kin / (h * h) + w, b)
        }
    };

    let need_plane = matches!(input.rule, Regularization::Excluded) && input.coulomb_c != 0.0;
    let mut plane_map = None;

    if input.coulomb_c != 0.0 || need_plane {
        let u_coul = coulomb_grid(input.grid, input.coulomb_c, input.rule);
        let plane_idx = coincidence_indices(input.grid);
        let md = m.pow(4);
        let dim = n.pow(4);
        let columns: Vec<(Vec<f64>, Option<Vec<f64>>)> = (0..md)
            .into_par_iter()
            .map(|kcol| {
                let mut ws = MatvecWorkspace::new(n);
                let mut s1 = Vec::new();
                let mut s2 = Vec::new();
                let mut v = vec![0.0; dim];
                let mut y = vec![0.0; md];
                y[kcol] = 1.0;
                expand_to_grid(input.table, n, &y, &mut v, &mut s1, &mut s2);
                // reconstructed state (N v for the sandwich form, v otherwise)
                let mut nv = vec![0.0; dim];
                n_poly.matvec_into(&v, &mut nv, &mut ws).expect("sizes");
                let state = match input.form {
                    PencilForm::NSandwich => &nv,
                    PencilForm::Plain => &v,
                };
                // the excluded rule pins the state, not the expansion
                // coordinates, at the coincidence sites
                let plane_col =
                    need_plane.then(|| plane_idx.iter().map(|&mu| state[mu]).collect::<Vec<f64>>());
                let mut w: Vec<f64> = state.iter().zip(&u_coul).map(|(t, u)| t * u).collect();
                let mut nw = vec![0.0; dim];
                n_poly.matvec_into(&w, &mut nw, &mut ws).expect("sizes");
                w = nw;
                let mut col = vec![0.0; md];
                contract_to_labels(input.table, n, &w, &mut col, &mut s1, &mut s2);
                (col, plane_col)
            })
            .collect();
        for (kcol, (w_col, _)) in columns.iter().enumerate() {
            for (krow, &val) in w_col.iter().enumerate() {
                h_label[(krow, kcol)] += val;
            }
        }
        if need_plane {
            let n2 = plane_idx.len();
            let mut pm = DMatrix::zeros(n2, md);
            for (kcol, (_, plane_col)) in columns.iter().enumerate() {
                if let Some(pc) = plane_col {
                    for (r, &val) in pc.iter().enumerate() {
                        pm[(r, kcol)] = val;
                    }
                }
            }
            plane_map = Some(pm);
        }
    }
    let plane_scale = plane_map
        .as_ref()
        .map(|pm| {
            (0..pm.ncols())
                .map(|j| pm.column(j).norm())
                .fold(0.0f64, f64::max)
        })
        .unwrap_or(0.0);

    // record asymmetry, then symmetrize
    let mut asym = 0.0f64;
    let md = m.pow(4);
    for c in 0..md {
        for r in 0..c {
            asym = asym.max((h_label[(r, c)] - h_label[(c, r)]).abs());
        }
    }
    for c in 0..md {
        for r in 0..c {
            let s = 0.5 * (h_label[(r, c)] + h_label[(c, r)]);
            h_label[(r, c)] = s;
            h_label[(c, r)] = s;
        }
    }
    let mut b_sym = b_label;
    for c in 0..md {
        for r in 0..c {
            let s = 0.5 * (b_sym[(r, c)] + b_sym[(c, r)]);
            b_sym[(r, c)] = s;
            b_sym[(c, r)] = s;
        }
    }

    Ok(SubspaceOperators {
        form: input.form,
        m,
        n,
        h,
        h_label,
        b_label: b_sym,
        asym,
        plane_map,
        plane_scale,
    })
}
