//! Densities of states: delta-peak lists for one and two particles, the
//! Green's-function weights of the interacting one-particle spectrum, and
//! the Lorentzian-broadened rendering.

use crate::error::{Error, Result};
use crate::oscillator::{OscillatorBasis, WavefunctionTable};
use crate::solver::subspace::contract_to_labels;
use crate::solver::EigenResult;
use crate::symmetry::{ExchangeSymmetry, IrrepTable};

/// A delta-peak spectrum: (position in units of omega, weight).
#[derive(Debug, Clone)]
pub struct DeltaSpectrum {
    pub peaks: Vec<(f64, f64)>,
    pub eta: f64,
}

impl DeltaSpectrum {
    pub fn new(mut peaks: Vec<(f64, f64)>, eta: f64) -> Self {
        peaks.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        DeltaSpectrum { peaks, eta }
    }

    pub fn total_weight(&self) -> f64 {
        self.peaks.iter().map(|p| p.1).sum()
    }

    /// Lorentzian-broadened curve (eta/pi)/(x^2 + eta^2) at the sample
    /// positions. Presentation only; the peak list is the primary output.
    pub fn broadened(&self, positions: &[f64]) -> Vec<f64> {
        positions
            .iter()
            .map(|&x| {
                self.peaks
                    .iter()
                    .map(|&(e, w)| {
                        let d = x - e;
                        w * (self.eta / std::f64::consts::PI) / (d * d + self.eta * self.eta)
                    })
                    .sum()
            })
            .collect()
    }

    pub fn peaks_csv(&self) -> String {
        let mut out = String::from("position,weight\n");
        for &(e, w) in &self.peaks {
            out.push_str(&format!("{e:.6},{w:.6}\n"));
        }
        out
    }
}

/// Merge peaks closer than `tol`, summing weights.
pub fn merge_peaks(mut peaks: Vec<(f64, f64)>, tol: f64) -> Vec<(f64, f64)> {
    peaks.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (e, w) in peaks {
        if let Some(last) = out.last_mut() {
            if (e - last.0).abs() <= tol {
                last.1 += w;
                continue;
            }
        }
        out.push((e, w));
    }
    out
}

/// Single-particle peaks at (nu_{n1} + nu_{n2} + 1), n1, n2 < cap, in units
/// of omega.
pub fn dos_noninteracting_g1(basis: &OscillatorBasis, cap: usize, eta: f64) -> DeltaSpectrum {
    let nu = basis.nu();
    let cap = cap.min(nu.len());
    let mut peaks = Vec::new();
    for n1 in 0..cap {
        for n2 in 0..cap {
            peaks.push((nu[n1] + nu[n2] + 1.0, 1.0));
        }
    }
    DeltaSpectrum::new(merge_peaks(peaks, 1e-9), eta)
}

/// Total two-particle spectrum as the discrete self-convolution of g1.
pub fn dos_noninteracting_g2_total(basis: &OscillatorBasis, cap: usize, eta: f64) -> DeltaSpectrum {
    let g1 = dos_noninteracting_g1(basis, cap, eta);
    let mut peaks = Vec::new();
    for &(e1, w1) in &g1.peaks {
        for &(e2, w2) in &g1.peaks {
            peaks.push((e1 + e2, w1 * w2));
        }
    }
    DeltaSpectrum::new(merge_peaks(peaks, 1e-9), eta)
}

/// Sector-restricted two-particle DOS: peaks (E^{qp}_r, d_qp) over the
/// irreps of the requested exchange symmetry.
pub fn dos_two_particle(
    result: &EigenResult,
    irreps: &IrrepTable,
    sector: ExchangeSymmetry,
    eta: f64,
    level_cap: usize,
) -> DeltaSpectrum {
    let mut peaks = Vec::new();
    for block in &result.blocks {
        if block.row != 0 {
            continue;
        }
        if irreps.exchange_symmetry(block.label) != sector {
            continue;
        }
        let d = irreps.get(block.label).dim as f64;
        for e in block.energies.iter().take(level_cap) {
            peaks.push((e / result.omega, d));
        }
    }
    DeltaSpectrum::new(peaks, eta)
}

/// Interacting one-particle DOS with Green's-function weights.
///
/// The occupied particle sits in the product level (m1, m2); peaks appear
/// at E^{qp}_r - eps_m with weights built from the overlap tensor
/// S^{n1 n2}_{m1 m2} of each two-particle eigenstate. Antisymmetric
/// intermediate states use the fermionic (minus) combination, symmetric
/// ones the bosonic (plus) combination.
pub struct InteractingG1Input<'a> {
    pub result: &'a EigenResult,
    pub irreps: &'a IrrepTable,
    pub basis: &'a OscillatorBasis,
    pub table: &'a WavefunctionTable,
    pub solver: &'a crate::solver::Solver,
    pub occupied: (usize, usize),
    pub sector: ExchangeSymmetry,
    pub eta: f64,
    pub level_cap: usize,
}

pub fn dos_one_particle_interacting(input: &InteractingG1Input<'_>) -> Result<DeltaSpectrum> {
    let (m1, m2) = input.occupied;
    let m = input.table.n_levels();
    if m1 >= m || m2 >= m {
        return Err(Error::IndexOutOfRange(format!(
            "occupied level ({m1}, {m2}) outside 0..{m}"
        )));
    }
    let nu = input.basis.nu();
    let eps_m = nu[m1] + nu[m2] + 1.0;
    let n = input.table.n_grid();
    let omega = input.result.omega;
    let mut peaks = Vec::new();
    let (mut s1, mut s2) = (Vec::new(), Vec::new());
    for block in &input.result.blocks {
        if input.irreps.exchange_symmetry(block.label) != input.sector {
            continue;
        }
        if block.row != 0 {
            continue;
        }
        let d = input.irreps.get(block.label).dim;
        for r in 0..block.energies.len().min(input.level_cap) {
            let mut weight = 0.0;
            // the scalar products do not depend on the row, but the weight
            // sums over all rows of the irrep
            for row in 0..d {
                let psi = input.solver.state_grid(input.result, block.label, 0, r)?;
                let _ = row;
                // S tensor: contraction of the grid state against the
                // oscillator products
                let mut s_tensor = vec![0.0; m.pow(4)];
                contract_to_labels(
                    input.table,
                    n,
                    psi.values(),
                    &mut s_tensor,
                    &mut s1,
                    &mut s2,
                );
                let s_at = |n1: usize, n2: usize, k1: usize, k2: usize| {
                    s_tensor[n1 + m * n2 + m * m * k1 + m * m * m * k2]
                };
                let s_mm = s_at(m1, m2, m1, m2);
                let sqrt2 = std::f64::consts::SQRT_2;
                let mut acc = 0.0;
                for p in 0..n {
                    for i in 0..n {
                        let mut amp = 0.0;
                        for n1 in 0..m {
                            for n2 in 0..m {
                                amp += sqrt2
                                    * input.table.level(n1)[p]
                                    * input.table.level(n2)[i]
                                    * s_at(n1, n2, m1, m2);
                            }
                        }
                        let occ = input.table.level(m1)[p] * input.table.level(m2)[i];
                        let corrected = match input.sector {
                            ExchangeSymmetry::Antisymmetric => amp - sqrt2 * occ * s_mm,
                            ExchangeSymmetry::Symmetric => amp + occ * s_mm,
                        };
                        acc += corrected * corrected;
                    }
                }
                weight += acc;
            }
            peaks.push((block.energies[r] / omega - eps_m, weight));
        }
    }
    Ok(DeltaSpectrum::new(peaks, input.eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{find_levels, OscillatorSpec};

    fn table_basis(m: usize) -> OscillatorBasis {
        find_levels(OscillatorSpec::from_omega2_half(500.0, 1.0, m).unwrap()).unwrap()
    }

    #[test]
    fn lowest_g1_peak_near_one() {
        let basis = table_basis(8);
        let g1 = dos_noninteracting_g1(&basis, 8, 0.01);
        assert!((g1.peaks[0].0 - 1.000002).abs() < 1e-5);
        assert!((g1.peaks[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lowest_g2_peak_weight_one() {
        let basis = table_basis(8);
        let g2 = dos_noninteracting_g2_total(&basis, 8, 0.01);
        assert!((g2.peaks[0].0 - 2.000004).abs() < 1e-5);
        assert!((g2.peaks[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn convolution_total_weight() {
        let basis = table_basis(4);
        let g1 = dos_noninteracting_g1(&basis, 4, 0.01);
        let g2 = dos_noninteracting_g2_total(&basis, 4, 0.01);
        let w1 = g1.total_weight();
        assert!((g2.total_weight() - w1 * w1).abs() < 1e-9);
    }

    #[test]
    fn broadened_curve_integrates_to_weight() {
        let s = DeltaSpectrum::new(vec![(1.0, 2.0)], 0.01);
        // midpoint rule over a wide window
        let steps = 200000;
        let (lo, hi) = (-80.0, 82.0);
        let dx = (hi - lo) / steps as f64;
        let xs: Vec<f64> = (0..steps).map(|i| lo + (i as f64 + 0.5) * dx).collect();
        let total: f64 = s.broadened(&xs).iter().sum::<f64>() * dx;
        assert!((total - 2.0).abs() < 1e-3, "integral {total}");
    }

    #[test]
    fn merge_sums_weights() {
        let merged = merge_peaks(vec![(1.0, 1.0), (1.0 + 1e-12, 2.0), (2.0, 0.5)], 1e-9);
        assert_eq!(merged.len(), 2);
        assert!((merged[0].1 - 3.0).abs() < 1e-12);
    }
}
