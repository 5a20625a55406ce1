//! Uniform lattice on the four-dimensional box [-b,b]^4 and flat-indexed
//! grid functions.
//!
//! Interior points per axis are x_p = -b + p*h, p = 1..n, with h = 2b/(n+1).
//! A grid function is stored as a vector of length n^4 with the flat index
//! mu = (p-1) + n(i-1) + n^2(k-1) + n^3(l-1), so p varies fastest.

use crate::error::{Error, Result};

/// Resolution and geometry of the 4D cubic lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    b: f64,
}

impl GridSpec {
    pub fn new(n: usize, b: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("grid needs n >= 1".into()));
        }
        if !(b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "half box width must be positive, got {b}"
            )));
        }
        Ok(GridSpec { n, b })
    }

    /// Interior points per axis.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Half box width.
    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Lattice step h = 2b/(n+1). Derived, never stored.
    #[inline]
    pub fn h(&self) -> f64 {
        2.0 * self.b / (self.n as f64 + 1.0)
    }

    /// Coordinate of the p-th interior point (p = 1..n).
    #[inline]
    pub fn point(&self, p: usize) -> f64 {
        debug_assert!(p >= 1 && p <= self.n);
        -self.b + p as f64 * self.h()
    }

    /// All interior coordinates along one axis.
    pub fn axis_points(&self) -> Vec<f64> {
        (1..=self.n).map(|p| self.point(p)).collect()
    }

    /// Total number of lattice points n^4.
    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n * self.n * self.n
    }

    /// Flat index of the lattice point (p,i,k,l), all 1-based.
    #[inline]
    pub fn flat(&self, p: usize, i: usize, k: usize, l: usize) -> usize {
        let n = self.n;
        (p - 1) + n * (i - 1) + n * n * (k - 1) + n * n * n * (l - 1)
    }

    /// Inverse of [`GridSpec::flat`]: 1-based (p,i,k,l) of a flat index.
    #[inline]
    pub fn unflat(&self, mu: usize) -> (usize, usize, usize, usize) {
        let n = self.n;
        let p = mu % n + 1;
        let i = (mu / n) % n + 1;
        let k = (mu / (n * n)) % n + 1;
        let l = mu / (n * n * n) + 1;
        (p, i, k, l)
    }
}

/// A real scalar field sampled on the interior lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    n: usize,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(spec: &GridSpec) -> Self {
        GridFunction {
            n: spec.n(),
            values: vec![0.0; spec.len()],
        }
    }

    pub fn from_values(spec: &GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::SizeMismatch {
                expected: spec.len(),
                got: values.len(),
            });
        }
        Ok(GridFunction {
            n: spec.n(),
            values,
        })
    }

    /// Sample a function of the four coordinates on the whole lattice.
    pub fn sample<F: Fn(f64, f64, f64, f64) -> f64>(spec: &GridSpec, f: F) -> Self {
        let n = spec.n();
        let x = spec.axis_points();
        let mut values = Vec::with_capacity(spec.len());
        for l in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for p in 0..n {
                        values.push(f(x[p], x[i], x[k], x[l]));
                    }
                }
            }
        }
        GridFunction { n, values }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at 1-based lattice coordinates.
    #[inline]
    pub fn at(&self, p: usize, i: usize, k: usize, l: usize) -> f64 {
        let n = self.n;
        self.values[(p - 1) + n * (i - 1) + n * n * (k - 1) + n * n * n * (l - 1)]
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &GridFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}
