//! The effective potential on the lattice: two confining 2D harmonic wells
//! plus the pair Coulomb repulsion, with a configurable rule for the
//! coincidence set r1 = r2 where 1/r is singular.

use serde::Serialize;

use crate::grid::{GridFunction, GridSpec};

/// Handling of the Coulomb value at coincident lattice sites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Regularization {
    /// Constrain the wave function to vanish at coincident sites (the
    /// singular set is treated like the impenetrable boundary). Default.
    Excluded,
    /// Use the half-cell distance: V = c/(h/2).
    HalfCell,
    /// Explicit finite value at coincident sites.
    PlaneValue(f64),
}

impl Regularization {
    pub fn name(&self) -> String {
        match self {
            Regularization::Excluded => "excluded".into(),
            Regularization::HalfCell => "half-cell".into(),
            Regularization::PlaneValue(v) => format!("plane-value({v})"),
        }
    }

    /// Parse "excluded", "half-cell" or a number.
    pub fn parse(s: &str) -> crate::error::Result<Self> {
        match s {
            "excluded" => Ok(Regularization::Excluded),
            "half-cell" | "halfcell" => Ok(Regularization::HalfCell),
            other => other
                .parse::<f64>()
                .map(Regularization::PlaneValue)
                .map_err(|_| {
                    crate::error::Error::InvalidArgument(format!(
                        "regularization must be 'excluded', 'half-cell' or a number, got {other:?}"
                    ))
                }),
        }
    }
}

/// Harmonic one-axis samples u(x_p) = (1/4) omega^2 x_p^2.
pub fn harmonic_axis(grid: &GridSpec, omega: f64) -> Vec<f64> {
    grid.axis_points()
        .iter()
        .map(|x| 0.25 * omega * omega * x * x)
        .collect()
}

/// Flat indices of the coincidence set x1 = x3, x2 = x4 (p = k and i = l).
pub fn coincidence_indices(grid: &GridSpec) -> Vec<usize> {
    let n = grid.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for p in 1..=n {
            out.push(grid.flat(p, i, p, i));
        }
    }
    out
}

/// The Coulomb part c/|r1 - r2| on the lattice. At coincident sites the
/// value follows the rule; for [`Regularization::Excluded`] it is zero there
/// (the constraint makes the value irrelevant).
pub fn coulomb_grid(grid: &GridSpec, c: f64, rule: Regularization) -> Vec<f64> {
    let n = grid.n();
    let x = grid.axis_points();
    let h = grid.h();
    let plane_value = match rule {
        Regularization::Excluded => 0.0,
        Regularization::HalfCell => c / (h / 2.0),
        Regularization::PlaneValue(v) => v,
    };
    let mut out = vec![0.0; grid.len()];
    let mut mu = 0;
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for p in 0..n {
                    let dx = x[p] - x[k];
                    let dy = x[i] - x[l];
                    let r2 = dx * dx + dy * dy;
                    out[mu] = if r2 > 0.0 { c / r2.sqrt() } else { plane_value };
                    mu += 1;
                }
            }
        }
    }
    out
}

/// Full effective potential grid U(r1) + U(r2) + V(|r1 - r2|).
pub fn build_potential_grid(
    grid: &GridSpec,
    omega: f64,
    c: f64,
    rule: Regularization,
) -> GridFunction {
    let n = grid.n();
    let u1 = harmonic_axis(grid, omega);
    let mut out = GridFunction::zeros(grid);
    let v = out.values_mut();
    let mut mu = 0;
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for p in 0..n {
                    v[mu] = u1[p] + u1[i] + u1[k] + u1[l];
                    mu += 1;
                }
            }
        }
    }
    if c != 0.0 {
        for (o, vc) in v.iter_mut().zip(coulomb_grid(grid, c, rule)) {
            *o += vc;
        }
    }
    out
}
