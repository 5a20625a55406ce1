//! Orbit decomposition of the oscillator product labels and construction of
//! the symmetry-adapted basis by row projections.
//!
//! Labels k in {0..m-1}^4 split into orbits under the order-8 permutation
//! image of the group. Applying the diagonal projector of row j of an
//! irrep to each label of an orbit and keeping an orthogonal maximal set
//! yields the blocks; per-orbit multiplicities are checked exactly against
//! the character formula.

use crate::error::{Error, Result};
use crate::symmetry::group::Group;
use crate::symmetry::irreps::{IrrepLabel, IrrepTable, ALL_LABELS};

/// One orbit of labels under the permutation image of the group.
#[derive(Debug, Clone)]
pub struct KClass {
    pub representative: [usize; 4],
    pub members: Vec<[usize; 4]>,
}

impl KClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Decompose {0..m-1}^4 into orbits, sorted by lexicographic representative.
pub fn decompose_classes(m: usize, group: &Group) -> Vec<KClass> {
    let sigmas = group.sigma_images();
    let mut seen = vec![false; m * m * m * m];
    let flat = |k: [usize; 4]| k[0] + m * k[1] + m * m * k[2] + m * m * m * k[3];
    let mut classes = Vec::new();
    // iterate in lexicographic (k1, k2, k3, k4) order
    for k1 in 0..m {
        for k2 in 0..m {
            for k3 in 0..m {
                for k4 in 0..m {
                    let k = [k1, k2, k3, k4];
                    if seen[flat(k)] {
                        continue;
                    }
                    let mut members: Vec<[usize; 4]> = Vec::new();
                    for sg in &sigmas {
                        let kp = [k[sg[0]], k[sg[1]], k[sg[2]], k[sg[3]]];
                        if !members.contains(&kp) {
                            members.push(kp);
                        }
                    }
                    members.sort();
                    for &kp in &members {
                        seen[flat(kp)] = true;
                    }
                    classes.push(KClass {
                        representative: k,
                        members,
                    });
                }
            }
        }
    }
    classes
}

/// Expected number of classes, C(m,1) + 4 C(m,2) + 6 C(m,3) + 3 C(m,4).
pub fn expected_class_count(m: usize) -> usize {
    let c = |n: usize, k: usize| -> usize {
        if k > n {
            return 0;
        }
        let mut num = 1usize;
        let mut den = 1usize;
        for i in 0..k {
            num *= n - i;
            den *= i + 1;
        }
        num / den
    };
    c(m, 1) + 4 * c(m, 2) + 6 * c(m, 3) + 3 * c(m, 4)
}

/// A projected basis vector: sparse coefficients over flat label indices.
#[derive(Debug, Clone)]
pub struct SymmetryAdaptedVector {
    pub coeffs: Vec<(usize, f64)>,
}

impl SymmetryAdaptedVector {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }
}

/// The full symmetry-adapted basis for one subspace size m.
#[derive(Debug, Clone)]
pub struct SymmetryBasis {
    pub m: usize,
    pub classes: Vec<KClass>,
    /// vectors[label index in ALL_LABELS][row j] -> ordered vector list
    vectors: Vec<Vec<Vec<SymmetryAdaptedVector>>>,
}

/// Flat label index with k1 fastest, matching the grid convention.
#[inline]
pub fn label_flat(k: [usize; 4], m: usize) -> usize {
    k[0] + m * k[1] + m * m * k[2] + m * m * m * k[3]
}

/// Apply the projections and assemble the basis. Per-class multiplicities
/// are verified against the exact character formula.
pub fn project_basis(m: usize, group: &Group, irreps: &IrrepTable) -> Result<SymmetryBasis> {
    let classes = decompose_classes(m, group);
    let mut vectors: Vec<Vec<Vec<SymmetryAdaptedVector>>> = ALL_LABELS
        .iter()
        .map(|&lab| {
            let d = irreps.get(lab).dim;
            (0..d).map(|_| Vec::new()).collect()
        })
        .collect();

    for class in &classes {
        let z = class.size();
        let index_of =
            |k: [usize; 4]| -> usize { class.members.iter().position(|&mk| mk == k).unwrap() };
        for (li, &lab) in ALL_LABELS.iter().enumerate() {
            let ir = irreps.get(lab);
            let d = ir.dim;
            // exact character-formula multiplicity for this class
            let mut chi_sum = 0i64;
            for gi in 0..32 {
                let mut fix_sign = 0i64;
                for &k in &class.members {
                    let e = group.element(gi);
                    if e.permute(k) == k {
                        fix_sign += i64::from(e.label_sign(k));
                    }
                }
                chi_sum += fix_sign * i64::from(ir.character(gi));
            }
            debug_assert_eq!(chi_sum % 32, 0);
            let want = (chi_sum / 32) as usize;

            for j in 0..d {
                let mut kept: Vec<Vec<f64>> = Vec::new();
                for &kseed in &class.members {
                    let mut w = vec![0.0f64; z];
                    for gi in 0..32 {
                        let e = group.element(gi);
                        let (s, kp) = (e.label_sign(kseed), e.permute(kseed));
                        let coeff = f64::from(ir.entry(gi, j, j)) * f64::from(s) * d as f64 / 32.0;
                        w[index_of(kp)] += coeff;
                    }
                    // modified Gram-Schmidt against the kept set
                    for u in &kept {
                        let dot: f64 = w.iter().zip(u).map(|(a, b)| a * b).sum();
                        for (wi, ui) in w.iter_mut().zip(u) {
                            *wi -= dot * ui;
                        }
                    }
                    let norm: f64 = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm > 1e-10 {
                        for v in w.iter_mut() {
                            *v /= norm;
                        }
                        kept.push(w);
                    }
                }
                if kept.len() != want {
                    return Err(Error::ProjectionRank {
                        class: class.representative,
                        got: kept.len(),
                        want,
                    });
                }
                for w in kept {
                    let coeffs = w
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| v.abs() > 0.0)
                        .map(|(i, &v)| (label_flat(class.members[i], m), v))
                        .collect();
                    vectors[li][j].push(SymmetryAdaptedVector { coeffs });
                }
            }
        }
    }
    Ok(SymmetryBasis {
        m,
        classes,
        vectors,
    })
}

impl SymmetryBasis {
    /// Vectors transforming as row j of the given irrep.
    pub fn vectors(&self, label: IrrepLabel, row: usize) -> &[SymmetryAdaptedVector] {
        let li = ALL_LABELS.iter().position(|&l| l == label).unwrap();
        &self.vectors[li][row]
    }

    /// Number of independent vectors per row of the given irrep.
    pub fn multiplicity(&self, label: IrrepLabel) -> usize {
        let li = ALL_LABELS.iter().position(|&l| l == label).unwrap();
        self.vectors[li][0].len()
    }

    /// Multiplicities in table order.
    pub fn multiplicities(&self) -> Vec<(IrrepLabel, usize)> {
        ALL_LABELS
            .iter()
            .map(|&lab| (lab, self.multiplicity(lab)))
            .collect()
    }

    /// Dense coefficient matrix (m^4 x r) of one block's vectors.
    pub fn coefficient_matrix(&self, label: IrrepLabel, row: usize) -> nalgebra::DMatrix<f64> {
        let vecs = self.vectors(label, row);
        let dim = self.m.pow(4);
        let mut c = nalgebra::DMatrix::zeros(dim, vecs.len());
        for (col, v) in vecs.iter().enumerate() {
            for &(idx, val) in &v.coeffs {
                c[(idx, col)] = val;
            }
        }
        c
    }

    /// CSV audit table of the per-irrep counts.
    pub fn multiplicities_csv(&self, irreps: &IrrepTable) -> String {
        let mut out = String::from("irrep,dim,count\n");
        for &lab in &ALL_LABELS {
            out.push_str(&format!(
                "{},{},{}\n",
                lab,
                irreps.get(lab).dim,
                self.multiplicity(lab)
            ));
        }
        out
    }
}
