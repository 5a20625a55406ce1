//! Reduced density matrix of one particle, Schmidt spectrum, purity and von
//! Neumann entropy.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Schmidt threshold used for the reported coefficient count.
pub const SCHMIDT_COUNT_THRESHOLD: f64 = 1e-6;

/// Reduced single-particle state of a normalized two-particle wave function.
#[derive(Debug, Clone)]
pub struct ReducedDensity {
    /// rho over the composite index (p, i), dimension n^2.
    pub rho: DMatrix<f64>,
    /// Schmidt values (eigenvalues of rho), descending, clamped at zero.
    pub schmidt: Vec<f64>,
    pub purity: f64,
    pub entropy: f64,
    pub schmidt_count: usize,
}

/// Entanglement summary for reports.
#[derive(Debug, Clone, Serialize)]
pub struct EntanglementSummary {
    pub purity: f64,
    pub schmidt_count: usize,
    pub entropy: f64,
}

/// Build rho_{(pi),(p'i')} = sum_{kl} psi_{pikl} psi_{p'i'kl} and derive the
/// Schmidt data from its spectrum.
pub fn reduce_density(state: &GridFunction) -> Result<ReducedDensity> {
    let n = state.n();
    let total: f64 = state.values().iter().map(|v| v * v).sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized {
            deviation: (total - 1.0).abs(),
        });
    }
    // view the state as a matrix G[(p,i), (k,l)]; rho = G G^T
    let n2 = n * n;
    let mut g = DMatrix::zeros(n2, n2);
    let v = state.values();
    let mut mu = 0;
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for p in 0..n {
                    g[(p + n * i, k + n * l)] = v[mu];
                    mu += 1;
                }
            }
        }
    }
    let rho = &g * g.transpose();
    let eig = nalgebra::SymmetricEigen::new(rho.clone());
    let mut schmidt: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| if l < 1e-14 { 0.0 } else { l })
        .collect();
    schmidt.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let purity = schmidt.iter().map(|l| l * l).sum();
    let entropy = -schmidt
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| l * l.ln())
        .sum::<f64>();
    let schmidt_count = schmidt
        .iter()
        .filter(|&&l| l > SCHMIDT_COUNT_THRESHOLD)
        .count();
    Ok(ReducedDensity {
        rho,
        schmidt,
        purity,
        entropy,
        schmidt_count,
    })
}

/// Same reduction taken over the first particle's coordinates instead; the
/// identical-particle statement is that both spectra agree.
pub fn reduce_density_second(state: &GridFunction) -> Result<ReducedDensity> {
    let n = state.n();
    let mut swapped = GridFunction::zeros(&crate::grid::GridSpec::new(n, 1.0)?);
    let v = state.values();
    let o = swapped.values_mut();
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for p in 0..n {
                    // exchange (p,i) <-> (k,l)
                    o[k + n * l + n * n * p + n * n * n * i] =
                        v[p + n * i + n * n * k + n * n * n * l];
                }
            }
        }
    }
    reduce_density(&swapped)
}

impl ReducedDensity {
    pub fn summary(&self) -> EntanglementSummary {
        EntanglementSummary {
            purity: self.purity,
            schmidt_count: self.schmidt_count,
            entropy: self.entropy,
        }
    }

    pub fn trace(&self) -> f64 {
        self.schmidt.iter().sum()
    }

    /// Schmidt values above the reporting floor.
    pub fn schmidt_truncated(&self, floor: f64) -> Vec<f64> {
        self.schmidt
            .iter()
            .cloned()
            .take_while(|&l| l > floor)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;

    fn product_state(n: usize, a: &[f64], b: &[f64]) -> GridFunction {
        let spec = GridSpec::new(n, 1.0).unwrap();
        let mut g = GridFunction::zeros(&spec);
        let mut mu = 0;
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for p in 0..n {
                        g.values_mut()[mu] = a[p] * a[i] * b[k] * b[l];
                        mu += 1;
                    }
                }
            }
        }
        g
    }

    fn unit(v: Vec<f64>) -> Vec<f64> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / n).collect()
    }

    #[test]
    fn product_state_is_pure() {
        let n = 4;
        let a = unit((0..n).map(|i| 1.0 + i as f64).collect());
        let b = unit((0..n).map(|i| (i as f64 * 0.7).cos() + 2.0).collect());
        let rd = reduce_density(&product_state(n, &a, &b)).unwrap();
        assert!((rd.purity - 1.0).abs() < 1e-10);
        assert_eq!(rd.schmidt_count, 1);
        assert!(rd.entropy.abs() < 1e-10);
        assert!((rd.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn balanced_superposition_gives_ln2() {
        // (|ab> + |ba>)/sqrt2 with orthogonal a, b has entropy ln 2
        let n = 4;
        let a = unit(vec![1.0, 1.0, 1.0, 1.0]);
        let b = unit(vec![1.0, -1.0, 1.0, -1.0]);
        let g1 = product_state(n, &a, &b);
        let g2 = product_state(n, &b, &a);
        let spec = GridSpec::new(n, 1.0).unwrap();
        let mut g = GridFunction::zeros(&spec);
        for ((o, x), y) in g.values_mut().iter_mut().zip(g1.values()).zip(g2.values()) {
            *o = (x + y) / 2f64.sqrt();
        }
        let rd = reduce_density(&g).unwrap();
        assert!((rd.entropy - 2f64.ln()).abs() < 1e-10);
        assert!((rd.purity - 0.5).abs() < 1e-10);
        assert_eq!(rd.schmidt_count, 2);
    }

    #[test]
    fn both_reductions_share_spectrum() {
        let n = 4;
        let spec = GridSpec::new(n, 1.0).unwrap();
        let mut g = GridFunction::sample(&spec, |a, b, c, d| {
            (a * 1.1 + 0.3).sin() * (b - c).cos() + 0.2 * d
        });
        let norm = g.norm();
        for v in g.values_mut().iter_mut() {
            *v /= norm;
        }
        let r1 = reduce_density(&g).unwrap();
        let r2 = reduce_density_second(&g).unwrap();
        for (a, b) in r1.schmidt.iter().zip(&r2.schmidt) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn entropy_bounds_and_consistency() {
        let n = 3;
        let spec = GridSpec::new(n, 1.0).unwrap();
        let mut g = GridFunction::sample(&spec, |a, b, c, d| a + b * b - c + 0.5 * d + 0.8);
        let norm = g.norm();
        for v in g.values_mut().iter_mut() {
            *v /= norm;
        }
        let rd = reduce_density(&g).unwrap();
        assert!(rd.entropy >= 0.0);
        assert!(rd.entropy <= ((n * n) as f64).ln() + 1e-12);
        assert!(rd.purity <= 1.0 + 1e-12);
        let purity_check: f64 = rd.schmidt.iter().map(|l| l * l).sum();
        assert_eq!(rd.purity, purity_check);
        assert!((rd.trace() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn trace_deviation_rejected() {
        let spec = GridSpec::new(3, 1.0).unwrap();
        let g = GridFunction::sample(&spec, |_, _, _, _| 0.5);
        assert!(reduce_density(&g).is_err());
    }
}
