//! Two-particle density in the 2D domain: n_{pi} = sum_{kl} psi^2_{pikl}.

use crate::error::{Error, Result};
use crate::grid::GridFunction;

/// Normalized density over the (x, y) square, stored row-major with the x
/// index fastest.
#[derive(Debug, Clone)]
pub struct Density2d {
    pub n: usize,
    pub values: Vec<f64>,
}

impl Density2d {
    #[inline]
    pub fn at(&self, p: usize, i: usize) -> f64 {
        self.values[(p - 1) + self.n * (i - 1)]
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_index,y_index,density\n");
        for i in 1..=self.n {
            for p in 1..=self.n {
                out.push_str(&format!("{p},{i},{:.12e}\n", self.at(p, i)));
            }
        }
        out
    }
}

/// Reduce a normalized 4D state over the second particle's coordinates.
pub fn density_2d(state: &GridFunction) -> Result<Density2d> {
    let n = state.n();
    let total: f64 = state.values().iter().map(|v| v * v).sum();
    if (total - 1.0).abs() > 1e-8 {
        return Err(Error::NotNormalized {
            deviation: (total - 1.0).abs(),
        });
    }
    let mut values = vec![0.0; n * n];
    let v = state.values();
    let mut mu = 0;
    for _l in 0..n {
        for _k in 0..n {
            for i in 0..n {
                for p in 0..n {
                    values[p + n * i] += v[mu] * v[mu];
                    mu += 1;
                }
            }
        }
    }
    Ok(Density2d { n, values })
}
