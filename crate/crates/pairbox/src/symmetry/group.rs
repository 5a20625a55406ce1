//! The order-32 invariance group of the interacting two-particle box
//! Hamiltonian: signed 4x4 permutation matrices commuting with the
//! pair-distance form, generated as products of coordinate permutations
//! (order 4) and square point symmetries applied to both particles
//! (order 8).

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};

/// A signed permutation matrix with its unique decomposition R = d(R) s(R)
/// into a sign part and a permutation part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupElement {
    /// Matrix entries, mat[row][col] in {-1, 0, 1}.
    pub mat: [[i8; 4]; 4],
    /// Column of the nonzero entry in each row: sigma maps k to k' with
    /// k'[row] = k[col_of_row[row]].
    pub col_of_row: [usize; 4],
    /// Sign of the nonzero entry in each column (the column sums).
    pub col_sign: [i8; 4],
    /// Index into the order-4 coordinate-permutation factor.
    pub a_index: usize,
    /// Index into the order-8 square-symmetry factor.
    pub b_index: usize,
}

impl GroupElement {
    fn from_matrix(mat: [[i8; 4]; 4], a_index: usize, b_index: usize) -> Self {
        let mut col_of_row = [0usize; 4];
        let mut col_sign = [0i8; 4];
        for r in 0..4 {
            for c in 0..4 {
                if mat[r][c] != 0 {
                    col_of_row[r] = c;
                    col_sign[c] = mat[r][c];
                }
            }
        }
        GroupElement {
            mat,
            col_of_row,
            col_sign,
            a_index,
            b_index,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == IDENTITY
    }

    /// Permutation image sigma(R) applied to a label 4-tuple.
    #[inline]
    pub fn permute(&self, k: [usize; 4]) -> [usize; 4] {
        [
            k[self.col_of_row[0]],
            k[self.col_of_row[1]],
            k[self.col_of_row[2]],
            k[self.col_of_row[3]],
        ]
    }

    /// Sign factor f(R, k) = prod_i (column sum_i)^{k_i}.
    #[inline]
    pub fn label_sign(&self, k: [usize; 4]) -> i8 {
        let mut s = 1i8;
        for i in 0..4 {
            if self.col_sign[i] < 0 && k[i] % 2 == 1 {
                s = -s;
            }
        }
        s
    }
}

const IDENTITY: [[i8; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

fn matmul(a: &[[i8; 4]; 4], b: &[[i8; 4]; 4]) -> [[i8; 4]; 4] {
    let mut out = [[0i8; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = 0i8;
            for j in 0..4 {
                acc += a[r][j] * b[j][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

/// The four coordinate-permutation generators (identity, particle swap,
/// swap of the two x coordinates, swap of the two y coordinates).
pub fn coordinate_permutations() -> [[[i8; 4]; 4]; 4] {
    [
        IDENTITY,
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]],
    ]
}

/// The eight square point symmetries, acting identically on both particles.
pub fn square_symmetries() -> [[[i8; 4]; 4]; 8] {
    let blocks: [[[i8; 2]; 2]; 4] = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1], [1, 0]],
        [[1, 0], [0, -1]],
    ];
    let mut out = [[[0i8; 4]; 4]; 8];
    for (i, g) in blocks.iter().enumerate() {
        for r in 0..2 {
            for c in 0..2 {
                out[i][r][c] = g[r][c];
                out[i][r + 2][c + 2] = g[r][c];
                out[i + 4][r][c] = -g[r][c];
                out[i + 4][r + 2][c + 2] = -g[r][c];
            }
        }
    }
    out
}

/// The pair-distance quadratic form |r1 - r2|^2 = x^T Q x.
pub const Q_FORM: [[i8; 4]; 4] = [[1, 0, -1, 0], [0, 1, 0, -1], [-1, 0, 1, 0], [0, -1, 0, 1]];

/// The full invariance group with its multiplication table.
#[derive(Debug, Clone)]
pub struct Group {
    elements: Vec<GroupElement>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

/// Generate all 32 products, verify uniqueness, closure and inverses.
pub fn generate_group() -> Result<Group> {
    let a_members = coordinate_permutations();
    let b_members = square_symmetries();
    let mut elements = Vec::with_capacity(32);
    for (ia, ra) in a_members.iter().enumerate() {
        for (ib, rb) in b_members.iter().enumerate() {
            let m = matmul(ra, rb);
            if elements.iter().any(|e: &GroupElement| e.mat == m) {
                return Err(Error::RepresentationFailure(format!(
                    "duplicate product at a={ia}, b={ib}"
                )));
            }
            elements.push(GroupElement::from_matrix(m, ia, ib));
        }
    }
    let find = |m: &[[i8; 4]; 4]| -> Result<usize> {
        elements
            .iter()
            .position(|e| &e.mat == m)
            .ok_or_else(|| Error::RepresentationFailure("product left the set".into()))
    };
    let mut mul = vec![vec![0usize; 32]; 32];
    for i in 0..32 {
        for j in 0..32 {
            mul[i][j] = find(&matmul(&elements[i].mat, &elements[j].mat))?;
        }
    }
    let mut inv = vec![usize::MAX; 32];
    let ident = find(&IDENTITY)?;
    for i in 0..32 {
        for j in 0..32 {
            if mul[i][j] == ident {
                inv[i] = j;
            }
        }
        if inv[i] == usize::MAX {
            return Err(Error::RepresentationFailure(format!(
                "element {i} has no inverse"
            )));
        }
    }
    Ok(Group { elements, mul, inv })
}

impl Group {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn identity_index(&self) -> usize {
        self.elements
            .iter()
            .position(|e| e.is_identity())
            .expect("identity present")
    }

    /// Index of the particle-swap element.
    pub fn particle_swap_index(&self) -> usize {
        self.elements
            .iter()
            .position(|e| e.a_index == 1 && e.b_index == 0)
            .expect("swap present")
    }

    /// Does R commute with the pair-distance form Q?
    pub fn commutes_with_q(&self, i: usize) -> bool {
        let r = &self.elements[i].mat;
        matmul(r, &Q_FORM) == matmul(&Q_FORM, r)
    }

    /// The distinct permutation images sigma(G), a group of order 8.
    pub fn sigma_images(&self) -> Vec<[usize; 4]> {
        let mut out: Vec<[usize; 4]> = Vec::new();
        for e in &self.elements {
            if !out.contains(&e.col_of_row) {
                out.push(e.col_of_row);
            }
        }
        out
    }
}

/// Apply the scalar transformation operator P(R) to a grid function:
/// (P(R) v)(x) = v(R^{-1} x), realized as the exact lattice index relation.
pub fn scalar_transform_grid(
    r: &GroupElement,
    f: &GridFunction,
    spec: &GridSpec,
) -> Result<GridFunction> {
    if f.n() != spec.n() {
        return Err(Error::SizeMismatch {
            expected: spec.n(),
            got: f.n(),
        });
    }
    let n = spec.n() as i64;
    let mut out = GridFunction::zeros(spec);
    let v = f.values();
    let o = out.values_mut();
    // indices transform with x' = R x: p'_row = sum_c R[row][c] p_c
    // + (n+1)/2 (1 - sum_c R[row][c]); only one c contributes per row
    let mut src = [0i64; 4];
    for l in 1..=n {
        for k in 1..=n {
            for i in 1..=n {
                for p in 1..=n {
                    src[0] = p;
                    src[1] = i;
                    src[2] = k;
                    src[3] = l;
                    let mut dst = [0i64; 4];
                    for row in 0..4 {
                        let c = r.col_of_row[row];
                        let s = r.mat[row][c] as i64;
                        dst[row] = if s > 0 { src[c] } else { (n + 1) - src[c] };
                    }
                    let nu =
                        ((p - 1) + n * (i - 1) + n * n * (k - 1) + n * n * n * (l - 1)) as usize;
                    let mu = ((dst[0] - 1)
                        + n * (dst[1] - 1)
                        + n * n * (dst[2] - 1)
                        + n * n * n * (dst[3] - 1)) as usize;
                    o[mu] = v[nu];
                }
            }
        }
    }
    Ok(out)
}

/// Action of P(R) on an oscillator product label: P(R) v(k) = sign * v(k').
pub fn scalar_transform_labels(r: &GroupElement, k: [usize; 4]) -> (i8, [usize; 4]) {
    (r.label_sign(k), r.permute(k))
}
