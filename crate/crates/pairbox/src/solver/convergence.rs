//! Convergence of noninteracting levels with the resolution n and the
//! log-log fit of the deficit exponent.

use serde::Serialize;

use crate::error::Result;
use crate::solver::{PencilForm, ProblemConfig, Solver};
use crate::symmetry::IrrepLabel;

/// One fitted level.
#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    /// 1-based level rank within the block.
    pub rank: usize,
    pub e_inf: f64,
    /// Fitted exponent b of E_inf - E_n ~ a / n^b.
    pub slope_b: f64,
    pub stderr: f64,
    /// False when some deficit was nonpositive and had to be dropped.
    pub clean: bool,
    pub samples: Vec<(usize, f64)>,
}

/// Least-squares line fit y = a + b x; returns (a, b, stderr of b).
pub fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let denom = n * sxx - sx * sx;
    let b = (n * sxy - sx * sy) / denom;
    let a = (sy - b * sx) / n;
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| {
            let r = yi - a - b * xi;
            r * r
        })
        .sum();
    let dof = (x.len().max(3) - 2) as f64;
    let se_b = (ss_res / dof / (sxx - sx * sx / n)).sqrt();
    (a, b, se_b)
}

/// Solve the trivial-representation block at c = 0 over a range of n and
/// fit the deficit exponents of the picked levels (1-based ranks).
pub fn run_convergence_study(
    base: &ProblemConfig,
    level_picks: &[usize],
    n_values: &[usize],
) -> Result<Vec<FitResult>> {
    let label = IrrepLabel { q: 1, p: 1 };
    let mut per_n: Vec<Vec<f64>> = Vec::new();
    let mut e_inf: Vec<f64> = Vec::new();
    for &n in n_values {
        let config = ProblemConfig {
            n,
            coulomb_c: 0.0,
            ..base.clone()
        };
        let solver = Solver::new(config)?;
        let result = solver.solve(Some(&[label]))?;
        let levels = result.levels_over_omega(label, 0).expect("block solved");
        per_n.push(levels);
        if e_inf.is_empty() {
            e_inf = solver.exact_block_levels(label);
        }
    }
    let mut out = Vec::new();
    for &rank in level_picks {
        let idx = rank - 1;
        let einf = e_inf[idx];
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut clean = true;
        let mut samples = Vec::new();
        for (ni, &n) in n_values.iter().enumerate() {
            let en = per_n[ni][idx];
            samples.push((n, en));
            let deficit = einf - en;
            if deficit > 0.0 {
                xs.push((n as f64).ln());
                ys.push(deficit.ln());
            } else {
                clean = false;
            }
        }
        let (_, slope, se) = line_fit(&xs, &ys);
        out.push(FitResult {
            rank,
            e_inf: einf,
            slope_b: -slope,
            stderr: se,
            clean,
            samples,
        });
    }
    Ok(out)
}

/// Deficit exponent of the box ground level from the closed-form oracle
/// (the potential-free mode of the study). The fit runs against the number
/// of lattice segments n + 1, the variable the closed forms depend on; in it
/// the deficit is a clean sixth power, while against n the leading 1/n
/// correction drags the windowed slope down to ~5.7.
pub fn laplacian_ground_exponent(n_values: &[usize]) -> (f64, f64) {
    let four_pi2 = 4.0 * std::f64::consts::PI.powi(2);
    let xs: Vec<f64> = n_values.iter().map(|&n| (n as f64 + 1.0).ln()).collect();
    let ys: Vec<f64> = n_values
        .iter()
        .map(|&n| {
            let e = crate::kron::SpectralOracle::with_default_gamma(n).ground_state_energy();
            (four_pi2 - e).ln()
        })
        .collect();
    let (_, slope, se) = line_fit(&xs, &ys);
    (-slope, se)
}

/// Convenience used by the command line front end.
pub fn default_study_config(m: usize, pencil_form: PencilForm) -> ProblemConfig {
    ProblemConfig {
        m,
        pencil_form,
        ..ProblemConfig::default()
    }
}
