//! The fourteen inequivalent unitary irreducible representations of the
//! order-32 group: ten built as products of the order-4 factor's characters
//! with the square-symmetry representations, four induced two-dimensional
//! ones, all realized as signed permutation matrices with integer entries.

use std::fmt;

use crate::error::{Error, Result};
use crate::symmetry::group::{square_symmetries, Group};

/// Representation label, printed as `G<q><p>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub q: u8,
    pub p: u8,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}{}", self.q, self.p)
    }
}

impl IrrepLabel {
    pub fn parse(s: &str) -> Result<IrrepLabel> {
        let s = s.trim();
        let digits = s
            .strip_prefix('G')
            .or_else(|| s.strip_prefix('g'))
            .unwrap_or(s);
        if digits.len() == 2 {
            let q = digits.as_bytes()[0] - b'0';
            let p = digits.as_bytes()[1] - b'0';
            if ALL_LABELS.contains(&IrrepLabel { q, p }) {
                return Ok(IrrepLabel { q, p });
            }
        }
        Err(Error::InvalidArgument(format!(
            "unknown representation label {s:?}; expected one of G11..G45"
        )))
    }
}

/// All fourteen labels in table order.
pub const ALL_LABELS: [IrrepLabel; 14] = [
    IrrepLabel { q: 1, p: 1 },
    IrrepLabel { q: 1, p: 2 },
    IrrepLabel { q: 1, p: 3 },
    IrrepLabel { q: 1, p: 4 },
    IrrepLabel { q: 1, p: 5 },
    IrrepLabel { q: 2, p: 1 },
    IrrepLabel { q: 2, p: 2 },
    IrrepLabel { q: 2, p: 3 },
    IrrepLabel { q: 2, p: 4 },
    IrrepLabel { q: 4, p: 1 },
    IrrepLabel { q: 4, p: 2 },
    IrrepLabel { q: 4, p: 3 },
    IrrepLabel { q: 4, p: 4 },
    IrrepLabel { q: 4, p: 5 },
];

/// Permutation symmetry of a channel under particle exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExchangeSymmetry {
    Symmetric,
    Antisymmetric,
}

/// Representation matrices as 2x2 integer arrays (1-D reps use entry (0,0)).
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: IrrepLabel,
    pub dim: usize,
    mats: Vec<[[i8; 2]; 2]>,
}

impl Irrep {
    #[inline]
    pub fn entry(&self, element: usize, row: usize, col: usize) -> i8 {
        self.mats[element][row][col]
    }

    pub fn character(&self, element: usize) -> i8 {
        let m = &self.mats[element];
        if self.dim == 1 {
            m[0][0]
        } else {
            m[0][0] + m[1][1]
        }
    }
}

/// Character table of the order-4 factor on its elements R1..R4.
const CHI_A: [[i8; 4]; 5] = [
    [0, 0, 0, 0], // unused slot so that CHI_A[q] is the q-th row
    [1, 1, 1, 1],
    [1, -1, 1, -1],
    [1, -1, -1, 1],
    [1, 1, -1, -1],
];

/// Conjugacy class of each square-symmetry element (columns of the printed
/// character table: R1 | R4,R8 | R5 | R3,R7 | R2,R6).
const B_CLASS: [usize; 8] = [0, 4, 3, 1, 2, 4, 3, 1];

/// Characters of the square-symmetry group by class.
const CHI_B: [[i8; 5]; 6] = [
    [0, 0, 0, 0, 0],
    [1, 1, 1, 1, 1],
    [1, 1, 1, -1, -1],
    [1, -1, 1, 1, -1],
    [1, -1, 1, -1, 1],
    [2, 0, -2, 0, 0],
];

/// The two-dimensional square-symmetry representation (upper-left blocks of
/// the defining matrices).
fn b5(ib: usize) -> [[i8; 2]; 2] {
    let base: [[[i8; 2]; 2]; 4] = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1], [1, 0]],
        [[1, 0], [0, -1]],
    ];
    if ib < 4 {
        base[ib]
    } else {
        let m = base[ib - 4];
        [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]]
    }
}

/// Little group of q = 2: {R1, R4, R5, R8}, isomorphic to the order-4
/// factor via R1->R1, R4->R4, R5->R3, R8->R2.
fn little_group_image(ib: usize) -> Option<usize> {
    match ib {
        0 => Some(0),
        3 => Some(3),
        4 => Some(2),
        7 => Some(1),
        _ => None,
    }
}

/// Full set of irreducible representations plus consistency data.
#[derive(Debug, Clone)]
pub struct IrrepTable {
    irreps: Vec<Irrep>,
}

fn b_mul(i: usize, j: usize) -> usize {
    // multiplication table of the square-symmetry factor, derived from the
    // matrices themselves
    let b = square_symmetries();
    let mut prod = [[0i8; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = 0i8;
            for t in 0..4 {
                acc += b[i][r][t] * b[j][t][c];
            }
            prod[r][c] = acc;
        }
    }
    b.iter().position(|m| *m == prod).expect("closed")
}

fn b_inv(i: usize) -> usize {
    (0..8).find(|&j| b_mul(i, j) == 0).expect("invertible")
}

fn induced_2d(p: usize, ia: usize, ib: usize) -> [[i8; 2]; 2] {
    // coset representatives R1 (index 0) and R7 (index 6)
    let r7 = 6usize;
    let chi = |q: usize, img: Option<usize>| -> i8 {
        match img {
            Some(a) => CHI_A[q][a],
            None => 0,
        }
    };
    let m00 = CHI_A[2][ia] * chi(p, little_group_image(ib));
    let m01 = CHI_A[2][ia] * chi(p, little_group_image(b_mul(ib, b_inv(r7))));
    let m10 = CHI_A[3][ia] * chi(p, little_group_image(b_mul(r7, ib)));
    let m11 = CHI_A[3][ia] * chi(p, little_group_image(b_mul(b_mul(r7, ib), b_inv(r7))));
    [[m00, m01], [m10, m11]]
}

/// Build all fourteen representations and verify homomorphism,
/// orthogonality and character orthogonality exactly.
pub fn build_irreps(group: &Group) -> Result<IrrepTable> {
    let mut irreps = Vec::with_capacity(14);
    for &label in &ALL_LABELS {
        let (q, p) = (label.q as usize, label.p as usize);
        let dim = if p == 5 || q == 2 { 2 } else { 1 };
        let mut mats = Vec::with_capacity(32);
        for e in group.elements() {
            let (ia, ib) = (e.a_index, e.b_index);
            let m = if q == 2 {
                induced_2d(p, ia, ib)
            } else if p == 5 {
                let mut m = b5(ib);
                let ca = CHI_A[q][ia];
                for r in 0..2 {
                    for c in 0..2 {
                        m[r][c] *= ca;
                    }
                }
                m
            } else {
                let v = CHI_A[q][ia] * CHI_B[p][B_CLASS[ib]];
                [[v, 0], [0, 0]]
            };
            mats.push(m);
        }
        irreps.push(Irrep { label, dim, mats });
    }
    let table = IrrepTable { irreps };
    table.verify(group)?;
    Ok(table)
}

impl IrrepTable {
    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn get(&self, label: IrrepLabel) -> &Irrep {
        self.irreps
            .iter()
            .find(|ir| ir.label == label)
            .expect("label exists")
    }

    /// Antisymmetric under particle exchange iff q = 2.
    pub fn exchange_symmetry(&self, label: IrrepLabel) -> ExchangeSymmetry {
        if label.q == 2 {
            ExchangeSymmetry::Antisymmetric
        } else {
            ExchangeSymmetry::Symmetric
        }
    }

    fn verify(&self, group: &Group) -> Result<()> {
        let sum_d2: usize = self.irreps.iter().map(|ir| ir.dim * ir.dim).sum();
        if sum_d2 != 32 {
            return Err(Error::RepresentationFailure(format!(
                "sum of squared dimensions is {sum_d2}, not 32"
            )));
        }
        for ir in &self.irreps {
            let d = ir.dim;
            for i in 0..32 {
                // orthogonality of each matrix
                for r in 0..d {
                    for c in 0..d {
                        let mut acc = 0i32;
                        for t in 0..d {
                            acc += i32::from(ir.entry(i, r, t)) * i32::from(ir.entry(i, c, t));
                        }
                        let want = i32::from(r == c);
                        if acc != want {
                            return Err(Error::RepresentationFailure(format!(
                                "{}: matrix {i} not orthogonal",
                                ir.label
                            )));
                        }
                    }
                }
                for j in 0..32 {
                    let k = group.multiply(i, j);
                    for r in 0..d {
                        for c in 0..d {
                            let mut acc = 0i32;
                            for t in 0..d {
                                acc += i32::from(ir.entry(i, r, t)) * i32::from(ir.entry(j, t, c));
                            }
                            if acc != i32::from(ir.entry(k, r, c)) {
                                return Err(Error::RepresentationFailure(format!(
                                    "{}: homomorphism fails at pair ({i}, {j})",
                                    ir.label
                                )));
                            }
                        }
                    }
                }
            }
        }
        // character orthogonality
        for a in &self.irreps {
            for b in &self.irreps {
                let mut acc = 0i32;
                for i in 0..32 {
                    acc += i32::from(a.character(i)) * i32::from(b.character(i));
                }
                let want = if a.label == b.label { 32 } else { 0 };
                if acc != want {
                    return Err(Error::RepresentationFailure(format!(
                        "characters of {} and {} not orthogonal (sum {acc})",
                        a.label, b.label
                    )));
                }
            }
        }
        // particle swap must be -E exactly in the q = 2 channels
        let swap = group.particle_swap_index();
        for ir in &self.irreps {
            for r in 0..ir.dim {
                for c in 0..ir.dim {
                    let want = if r == c {
                        if ir.label.q == 2 {
                            -1
                        } else {
                            1
                        }
                    } else {
                        0
                    };
                    if ir.entry(swap, r, c) != want {
                        return Err(Error::RepresentationFailure(format!(
                            "{}: swap matrix wrong at ({r},{c})",
                            ir.label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Character table as CSV (rows: irreps; columns: the 32 elements).
    pub fn characters_csv(&self) -> String {
        let mut out = String::from("irrep,dim");
        for i in 0..32 {
            out.push_str(&format!(",e{i}"));
        }
        out.push('\n');
        for ir in &self.irreps {
            out.push_str(&format!("{},{}", ir.label, ir.dim));
            for i in 0..32 {
                out.push_str(&format!(",{}", ir.character(i)));
            }
            out.push('\n');
        }
        out
    }
}
