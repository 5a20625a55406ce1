//! Direct polynomials of the tridiagonal factor A: the scheme matrices
//! M1..M4, M, N, their lazy matrix-vector products, CSR assembly with exact
//! nonzero accounting, and the closed-form spectral oracle.
//!
//! Every matrix here is of the form sum_t z_t A^a (x) A^b (x) A^c (x) A^d
//! over one n-by-n factor A, so any two of them commute and all spectra are
//! known analytically from the eigenvalues 2 cos(k pi/(n+1)) of A.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::grid::GridFunction;

pub const DEFAULT_GAMMA_P: f64 = 23.0 / 3840.0;

/// One Kronecker term z * A^e0 (x axis p) ... A^e3 (x axis l).
///
/// `exps[0]` acts on the fastest-varying lattice index p; in the usual
/// Kronecker notation that is the last factor of the product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub exps: [u8; 4],
}

/// A matrix represented as a polynomial in Kronecker powers of A.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectPolyMatrix {
    n: usize,
    terms: Vec<Term>,
}

/// The n-by-n tridiagonal factor: zeros on the diagonal, ones off it.
pub fn build_a(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("A needs n >= 1".into()));
    }
    let mut a = DMatrix::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        a[(i, i + 1)] = 1.0;
        a[(i + 1, i)] = 1.0;
    }
    Ok(a)
}

/// The modified pentadiagonal factor A' = A^2 - 2E (corner entries -1).
pub fn build_a_prime(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument("A' needs n >= 2".into()));
    }
    let a = build_a(n)?;
    let mut ap = &a * &a;
    for i in 0..n {
        ap[(i, i)] -= 2.0;
    }
    Ok(ap)
}

fn merge_terms(mut raw: Vec<Term>) -> Vec<Term> {
    // deterministic accumulation order makes products commute bit-exactly
    raw.sort_by(|a, b| a.exps.cmp(&b.exps).then(a.coeff.total_cmp(&b.coeff)));
    let mut merged: Vec<Term> = Vec::new();
    for t in raw {
        if let Some(m) = merged.last_mut() {
            if m.exps == t.exps {
                m.coeff += t.coeff;
                continue;
            }
        }
        merged.push(t);
    }
    merged.retain(|t| t.coeff != 0.0);
    merged
}

impl DirectPolyMatrix {
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("factor size must be >= 1".into()));
        }
        Ok(DirectPolyMatrix {
            n,
            terms: merge_terms(terms),
        })
    }

    pub fn identity(n: usize) -> Self {
        DirectPolyMatrix {
            n,
            terms: vec![Term {
                coeff: 1.0,
                exps: [0; 4],
            }],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n.pow(4)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn scaled(&self, s: f64) -> Self {
        DirectPolyMatrix {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: s * t.coeff,
                    exps: t.exps,
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        DirectPolyMatrix::new(self.n, terms)
    }

    /// Matrix product; exponents add term by term, so the result is again a
    /// direct polynomial and the product commutes.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coeff: a.coeff * b.coeff,
                    exps: [
                        a.exps[0] + b.exps[0],
                        a.exps[1] + b.exps[1],
                        a.exps[2] + b.exps[2],
                        a.exps[3] + b.exps[3],
                    ],
                });
            }
        }
        DirectPolyMatrix::new(self.n, terms)
    }

    /// Lazy matrix-vector product via per-axis tridiagonal applications.
    pub fn matvec(&self, f: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        let mut ws = MatvecWorkspace::new(self.n);
        self.matvec_into(f, &mut out, &mut ws)?;
        Ok(out)
    }

    /// Same as [`DirectPolyMatrix::matvec`] with caller-provided buffers.
    pub fn matvec_into(&self, f: &[f64], out: &mut [f64], ws: &mut MatvecWorkspace) -> Result<()> {
        let dim = self.dim();
        if f.len() != dim || out.len() != dim {
            return Err(Error::SizeMismatch {
                expected: dim,
                got: f.len().max(out.len()),
            });
        }
        out.fill(0.0);
        for t in &self.terms {
            if t.exps == [0, 0, 0, 0] {
                for (o, v) in out.iter_mut().zip(f) {
                    *o += t.coeff * v;
                }
                continue;
            }
            ws.a.copy_from_slice(f);
            for axis in 0..4 {
                for _ in 0..t.exps[axis] {
                    apply_a_along_axis(self.n, axis, &ws.a, &mut ws.b);
                    std::mem::swap(&mut ws.a, &mut ws.b);
                }
            }
            for (o, v) in out.iter_mut().zip(&ws.a) {
                *o += t.coeff * v;
            }
        }
        Ok(())
    }

    pub fn matvec_grid(&self, f: &GridFunction) -> Result<GridFunction> {
        if f.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        let out = self.matvec(f.values())?;
        Ok(GridFunction::from_values(
            &crate::grid::GridSpec::new(self.n, 1.0)?,
            out,
        )?)
    }

    /// Dense assembly for small n (tests and oracles).
    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.n;
        let dim = self.dim();
        let a = build_a(n).expect("n >= 1");
        let mut pow = vec![DMatrix::<f64>::identity(n, n)];
        let max_e = self
            .terms
            .iter()
            .map(|t| t.exps.iter().copied().max().unwrap_or(0))
            .max()
            .unwrap_or(0);
        for _ in 0..max_e {
            let last = pow.last().unwrap() * &a;
            pow.push(last);
        }
        let mut out = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            let f0 = &pow[t.exps[0] as usize];
            let f1 = &pow[t.exps[1] as usize];
            let f2 = &pow[t.exps[2] as usize];
            let f3 = &pow[t.exps[3] as usize];
            for (row, col, out_val) in iter_kron4(n) {
                let v = f3[(row.3, col.3)]
                    * f2[(row.2, col.2)]
                    * f1[(row.1, col.1)]
                    * f0[(row.0, col.0)];
                if v != 0.0 {
                    out[(out_val.0, out_val.1)] += t.coeff * v;
                }
            }
        }
        out
    }

    /// Assemble compressed sparse rows. `budget_bytes` caps the estimated
    /// allocation (values + 32-bit column indices + row pointers).
    pub fn assemble_csr(&self, budget_bytes: u64) -> Result<CsrMatrix> {
        let n = self.n;
        let dim = self.dim();
        let a = build_a(n)?;
        let max_e = self
            .terms
            .iter()
            .map(|t| t.exps.iter().copied().max().unwrap_or(0))
            .max()
            .unwrap_or(0) as usize;
        let mut pow = vec![DMatrix::<f64>::identity(n, n)];
        for _ in 0..max_e {
            let last = pow.last().unwrap() * &a;
            pow.push(last);
        }
        // per-axis sparse rows of each needed power
        let rows_of: Vec<Vec<Vec<(usize, f64)>>> = pow
            .iter()
            .map(|m| {
                (0..n)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| m[(r, c)] != 0.0)
                            .map(|c| (c, m[(r, c)]))
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let upper: u64 = self
            .terms
            .iter()
            .map(|t| {
                t.exps
                    .iter()
                    .map(|&e| {
                        // nonzeros per row of A^e are at most e+1
                        (e as u64) + 1
                    })
                    .product::<u64>()
            })
            .sum::<u64>()
            * dim as u64;
        let estimate = upper * 12 + (dim as u64 + 1) * 8;
        if estimate > budget_bytes {
            return Err(Error::MemoryBudget {
                required: estimate,
                budget: budget_bytes,
            });
        }

        let mut indptr = Vec::with_capacity(dim + 1);
        let mut indices: Vec<u32> = Vec::new();
        let mut values: Vec<f64> = Vec::new();
        indptr.push(0usize);
        let mut scratch: Vec<(u32, f64)> = Vec::with_capacity(128);
        let stride = [1usize, n, n * n, n * n * n];
        for mu in 0..dim {
            let c0 = mu % n;
            let c1 = (mu / n) % n;
            let c2 = (mu / (n * n)) % n;
            let c3 = mu / (n * n * n);
            scratch.clear();
            for t in &self.terms {
                let r0 = &rows_of[t.exps[0] as usize][c0];
                let r1 = &rows_of[t.exps[1] as usize][c1];
                let r2 = &rows_of[t.exps[2] as usize][c2];
                let r3 = &rows_of[t.exps[3] as usize][c3];
                for &(j3, v3) in r3 {
                    for &(j2, v2) in r2 {
                        for &(j1, v1) in r1 {
                            for &(j0, v0) in r0 {
                                let col = j0 * stride[0]
                                    + j1 * stride[1]
                                    + j2 * stride[2]
                                    + j3 * stride[3];
                                scratch.push((col as u32, t.coeff * v3 * v2 * v1 * v0));
                            }
                        }
                    }
                }
            }
            scratch.sort_unstable_by_key(|e| e.0);
            let mut idx = 0;
            while idx < scratch.len() {
                let col = scratch[idx].0;
                let mut val = 0.0;
                while idx < scratch.len() && scratch[idx].0 == col {
                    val += scratch[idx].1;
                    idx += 1;
                }
                if val != 0.0 {
                    indices.push(col);
                    values.push(val);
                }
            }
            indptr.push(indices.len());
        }
        Ok(CsrMatrix {
            nrows: dim,
            indptr,
            indices,
            values,
        })
    }
}

/// Scratch buffers for [`DirectPolyMatrix::matvec_into`].
pub struct MatvecWorkspace {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl MatvecWorkspace {
    pub fn new(n: usize) -> Self {
        let dim = n.pow(4);
        MatvecWorkspace {
            a: vec![0.0; dim],
            b: vec![0.0; dim],
        }
    }
}

/// out = (A along `axis`) applied to f, zero boundary.
pub fn apply_a_along_axis(n: usize, axis: usize, f: &[f64], out: &mut [f64]) {
    let stride = n.pow(axis as u32);
    let block = stride * n;
    let len = f.len();
    debug_assert_eq!(len, n.pow(4));
    out.fill(0.0);
    for base in (0..len).step_by(block) {
        for off in 0..stride {
            let start = base + off;
            // line elements at start + q*stride, q = 0..n
            if n == 1 {
                continue;
            }
            out[start] = f[start + stride];
            for q in 1..n - 1 {
                let idx = start + q * stride;
                out[idx] = f[idx - stride] + f[idx + stride];
            }
            out[start + (n - 1) * stride] = f[start + (n - 2) * stride];
        }
    }
}

fn iter_kron4(
    n: usize,
) -> impl Iterator<
    Item = (
        (usize, usize, usize, usize),
        (usize, usize, usize, usize),
        (usize, usize),
    ),
> {
    let dim = n.pow(4);
    (0..dim).flat_map(move |row| {
        let r0 = row % n;
        let r1 = (row / n) % n;
        let r2 = (row / (n * n)) % n;
        let r3 = row / (n * n * n);
        (0..dim).map(move |col| {
            let c0 = col % n;
            let c1 = (col / n) % n;
            let c2 = (col / (n * n)) % n;
            let c3 = col / (n * n * n);
            ((r0, r1, r2, r3), (c0, c1, c2, c3), (row, col))
        })
    })
}

/// Build the matrix of the j-th neighbor difference operator, j = 1..4.
///
/// M4 is normalized to the A' = A^2 - 2E convention, expanded so that all
/// four matrices are direct polynomials in the single factor A.
pub fn build_mi(j: usize, n: usize) -> Result<DirectPolyMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument("scheme matrices need n >= 2".into()));
    }
    let mut terms = Vec::new();
    let push_axes = |terms: &mut Vec<Term>, pattern: [u8; 4], coeff: f64| {
        terms.push(Term {
            coeff,
            exps: pattern,
        });
    };
    match j {
        1 => {
            for ax in 0..4 {
                let mut e = [0u8; 4];
                e[ax] = 1;
                push_axes(&mut terms, e, 1.0);
            }
            push_axes(&mut terms, [0; 4], -8.0);
        }
        2 => {
            for a in 0..4 {
                for b in (a + 1)..4 {
                    let mut e = [0u8; 4];
                    e[a] = 1;
                    e[b] = 1;
                    push_axes(&mut terms, e, 1.0);
                }
            }
            push_axes(&mut terms, [0; 4], -24.0);
        }
        3 => {
            for skip in 0..4 {
                let mut e = [1u8; 4];
                e[skip] = 0;
                push_axes(&mut terms, e, 1.0);
            }
            push_axes(&mut terms, [0; 4], -32.0);
        }
        4 => {
            push_axes(&mut terms, [1; 4], 1.0);
            // A' = A^2 - 2E on each axis plus the constants -16 and -8
            for ax in 0..4 {
                let mut e = [0u8; 4];
                e[ax] = 2;
                push_axes(&mut terms, e, 1.0);
            }
            push_axes(&mut terms, [0; 4], -16.0 - 2.0 * 4.0 - 8.0);
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "difference operator index must be 1..4, got {j}"
            )))
        }
    }
    DirectPolyMatrix::new(n, terms)
}

/// M = -(1/30)(12 M1 + M2 + M3).
pub fn build_m(n: usize) -> Result<DirectPolyMatrix> {
    let m1 = build_mi(1, n)?.scaled(-12.0 / 30.0);
    let m2 = build_mi(2, n)?.scaled(-1.0 / 30.0);
    let m3 = build_mi(3, n)?.scaled(-1.0 / 30.0);
    m1.add(&m2)?.add(&m3)
}

/// N = E + (12g' - 1/30) M1 + (1/36 - 4g') M2 + g' M3 - (1/240) M4.
pub fn build_n_matrix(n: usize, gamma_p: f64) -> Result<DirectPolyMatrix> {
    let ap = 12.0 * gamma_p - 1.0 / 30.0;
    let bp = 1.0 / 36.0 - 4.0 * gamma_p;
    let e = DirectPolyMatrix::identity(n);
    let m1 = build_mi(1, n)?.scaled(ap);
    let m2 = build_mi(2, n)?.scaled(bp);
    let m3 = build_mi(3, n)?.scaled(gamma_p);
    let m4 = build_mi(4, n)?.scaled(-1.0 / 240.0);
    e.add(&m1)?.add(&m2)?.add(&m3)?.add(&m4)
}

/// Compressed-sparse-row matrix with 32-bit column indices.
#[derive(Debug, Clone)]
pub struct CsrMatrix {
    pub nrows: usize,
    pub indptr: Vec<usize>,
    pub indices: Vec<u32>,
    pub values: Vec<f64>,
}

impl CsrMatrix {
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn matvec(&self, f: &[f64], out: &mut [f64]) {
        for row in 0..self.nrows {
            let mut acc = 0.0;
            for idx in self.indptr[row]..self.indptr[row + 1] {
                acc += self.values[idx] * f[self.indices[idx] as usize];
            }
            out[row] = acc;
        }
    }

    /// Coordinate-format text dump: `row col value` per line, 1-based.
    pub fn write_coo<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        for row in 0..self.nrows {
            for idx in self.indptr[row]..self.indptr[row + 1] {
                writeln!(
                    w,
                    "{} {} {:.16e}",
                    row + 1,
                    self.indices[idx] + 1,
                    self.values[idx]
                )?;
            }
        }
        Ok(())
    }
}

/// Exact nonzero counts of the scheme matrices (section on sparsity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NnzReport {
    pub n: u64,
    pub m1: u64,
    pub m2: u64,
    pub m3: u64,
    pub m4: u64,
    pub m: u64,
    pub n_matrix: u64,
    pub lhs: u64,
    /// Leading-order approximations 65 n^4 and 89 n^4.
    pub m_leading: u64,
    pub n_leading: u64,
    /// Memory for storing the equation (LHS matrix plus N) in CSR with
    /// 8-byte values, 8-byte column indices and 8-byte row pointers.
    pub equation_bytes: u64,
}

pub fn nnz_report(n: u64) -> NnzReport {
    let n4 = n * n * n * n;
    let m1 = 8 * (n - 1) * n * n * n + n4;
    let m2 = 24 * (n - 1) * (n - 1) * n * n + n4;
    let m3 = 32 * (n - 1) * (n - 1) * (n - 1) * n + n4;
    let m4 = 16 * (n - 1) * (n - 1) * (n - 1) * (n - 1) + 8 * (n - 2) * n * n * n + n4;
    let m = 8 * (n - 1) * n * n * n
        + 24 * (n - 1) * (n - 1) * n * n
        + 32 * (n - 1) * (n - 1) * (n - 1) * n
        + n4;
    let n_matrix = m + 16 * (n - 1) * (n - 1) * (n - 1) * (n - 1) + 8 * (n - 2) * n * n * n;
    let lhs = n_matrix;
    let equation_bytes = (lhs + n_matrix) * 16 + 2 * (n4 + 1) * 8;
    NnzReport {
        n,
        m1,
        m2,
        m3,
        m4,
        m,
        n_matrix,
        lhs,
        m_leading: 65 * n4,
        n_leading: 89 * n4,
        equation_bytes,
    }
}

/// Which closed-form spectrum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    M1,
    M2,
    M3,
    M4,
    M,
    N,
    Laplacian,
}

/// Closed-form eigenvalues of all scheme matrices at resolution n.
#[derive(Debug, Clone, Copy)]
pub struct SpectralOracle {
    n: usize,
    gamma_p: f64,
}

impl SpectralOracle {
    pub fn new(n: usize, gamma_p: f64) -> Self {
        SpectralOracle { n, gamma_p }
    }

    pub fn with_default_gamma(n: usize) -> Self {
        SpectralOracle::new(n, DEFAULT_GAMMA_P)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gamma_p(&self) -> f64 {
        self.gamma_p
    }

    /// Eigenvalue 2 cos(k pi/(n+1)) of the factor A, k = 1..n.
    #[inline]
    pub fn omega(&self, k: usize) -> f64 {
        2.0 * (k as f64 * std::f64::consts::PI / (self.n as f64 + 1.0)).cos()
    }

    fn check_k(&self, k: [usize; 4]) -> Result<[f64; 4]> {
        for &ki in &k {
            if ki < 1 || ki > self.n {
                return Err(Error::IndexOutOfRange(format!(
                    "mode index {ki} outside 1..{}",
                    self.n
                )));
            }
        }
        Ok([
            self.omega(k[0]),
            self.omega(k[1]),
            self.omega(k[2]),
            self.omega(k[3]),
        ])
    }

    /// m_j(k), the eigenvalue of the j-th difference-operator matrix.
    pub fn neighbor_eigenvalue(&self, j: usize, k: [usize; 4]) -> Result<f64> {
        let w = self.check_k(k)?;
        let e1: f64 = w.iter().sum();
        let e2: f64 = (0..4)
            .flat_map(|a| ((a + 1)..4).map(move |b| (a, b)))
            .map(|(a, b)| w[a] * w[b])
            .sum();
        let e3: f64 = (0..4)
            .map(|skip| {
                w.iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| v)
                    .product::<f64>()
            })
            .sum();
        let e4: f64 = w.iter().product();
        Ok(match j {
            1 => e1 - 8.0,
            2 => e2 - 24.0,
            3 => e3 - 32.0,
            4 => e4 + w.iter().map(|v| v * v).sum::<f64>() - 32.0,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "difference operator index must be 1..4, got {j}"
                )))
            }
        })
    }

    /// theta(k), the eigenvalue of M.
    pub fn theta(&self, k: [usize; 4]) -> Result<f64> {
        let m1 = self.neighbor_eigenvalue(1, k)?;
        let m2 = self.neighbor_eigenvalue(2, k)?;
        let m3 = self.neighbor_eigenvalue(3, k)?;
        Ok(-(12.0 * m1 + m2 + m3) / 30.0)
    }

    /// lambda(k), the eigenvalue of N.
    pub fn lambda(&self, k: [usize; 4]) -> Result<f64> {
        let m1 = self.neighbor_eigenvalue(1, k)?;
        let m2 = self.neighbor_eigenvalue(2, k)?;
        let m3 = self.neighbor_eigenvalue(3, k)?;
        let m4 = self.neighbor_eigenvalue(4, k)?;
        let gp = self.gamma_p;
        Ok(
            1.0 + (12.0 * gp - 1.0 / 30.0) * m1 + (1.0 / 36.0 - 4.0 * gp) * m2 + gp * m3
                - m4 / 240.0,
        )
    }

    /// Eigenvalue of the discrete (negative) Laplacian, (n+1)^2 theta/lambda.
    pub fn laplacian(&self, k: [usize; 4]) -> Result<f64> {
        let np1 = (self.n as f64 + 1.0).powi(2);
        Ok(np1 * self.theta(k)? / self.lambda(k)?)
    }

    pub fn eigenvalue(&self, which: MatrixKind, k: [usize; 4]) -> Result<f64> {
        match which {
            MatrixKind::M1 => self.neighbor_eigenvalue(1, k),
            MatrixKind::M2 => self.neighbor_eigenvalue(2, k),
            MatrixKind::M3 => self.neighbor_eigenvalue(3, k),
            MatrixKind::M4 => self.neighbor_eigenvalue(4, k),
            MatrixKind::M => self.theta(k),
            MatrixKind::N => self.lambda(k),
            MatrixKind::Laplacian => self.laplacian(k),
        }
    }

    #[inline]
    fn corner_cos(&self) -> f64 {
        (std::f64::consts::PI / (self.n as f64 + 1.0)).cos()
    }

    /// theta at the five corner classes (1,1,1,1), (1,1,1,n), ..., (n,n,n,n).
    pub fn theta_corner(&self, class: usize) -> f64 {
        let c = self.corner_cos();
        match class {
            1 => -16.0 / 15.0 * c.powi(3) - 0.8 * c * c - 16.0 / 5.0 * c + 76.0 / 15.0,
            2 => 8.0 / 15.0 * c.powi(3) - 1.6 * c + 76.0 / 15.0,
            3 => 4.0 / 15.0 * c * c + 76.0 / 15.0,
            4 => -8.0 / 15.0 * c.powi(3) + 1.6 * c + 76.0 / 15.0,
            5 => 16.0 / 15.0 * c.powi(3) - 0.8 * c * c + 16.0 / 5.0 * c + 76.0 / 15.0,
            _ => panic!("corner class must be 1..5"),
        }
    }

    /// lambda at the five corner classes for this oracle's gamma'.
    pub fn lambda_corner(&self, class: usize) -> f64 {
        let c = self.corner_cos();
        let g = self.gamma_p;
        let tail = 11.0 / 15.0 - 32.0 * g;
        match class {
            1 => {
                -c.powi(4) / 15.0
                    + 32.0 * g * c.powi(3)
                    + (0.6 - 96.0 * g) * c * c
                    + (96.0 * g - 4.0 / 15.0) * c
                    + tail
            }
            2 => {
                c.powi(4) / 15.0 - 16.0 * g * c.powi(3) - c * c / 15.0
                    + (48.0 * g - 2.0 / 15.0) * c
                    + tail
            }
            3 => -c.powi(4) / 15.0 + (32.0 * g - 13.0 / 45.0) * c * c + tail,
            4 => {
                c.powi(4) / 15.0 + 16.0 * g * c.powi(3) - c * c / 15.0
                    + (2.0 / 15.0 - 48.0 * g) * c
                    + tail
            }
            5 => {
                -c.powi(4) / 15.0 - 32.0 * g * c.powi(3)
                    + (0.6 - 96.0 * g) * c * c
                    + (4.0 / 15.0 - 96.0 * g) * c
                    + tail
            }
            _ => panic!("corner class must be 1..5"),
        }
    }

    /// (theta_min, theta_max) = (theta at the (1,1,1,1) corner, at (n,..,n)).
    pub fn theta_extrema(&self) -> (f64, f64) {
        (self.theta_corner(1), self.theta_corner(5))
    }

    /// (lambda_min, lambda_max) over the corner classes.
    pub fn lambda_extrema(&self) -> (f64, f64) {
        let vals: Vec<f64> = (1..=5).map(|i| self.lambda_corner(i)).collect();
        (
            vals.iter().cloned().fold(f64::INFINITY, f64::min),
            vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    /// Ground level of the discrete Laplacian, (n+1)^2 theta_min/lambda_max.
    pub fn ground_state_energy(&self) -> f64 {
        let (tmin, _) = self.theta_extrema();
        let (_, lmax) = self.lambda_extrema();
        (self.n as f64 + 1.0).powi(2) * tmin / lmax
    }
}

/// Relative deficit predicted for the ground level: (703/60480) pi^6 / n^6.
pub fn ground_state_predicted_deficit(n: usize) -> f64 {
    703.0 / 60480.0 * std::f64::consts::PI.powi(6) / (n as f64).powi(6)
}
