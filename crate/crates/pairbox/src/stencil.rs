//! The four neighbor difference operators of the 89-point scheme and the
//! coefficient linear systems that fix the scheme to sixth order.
//!
//! The appliers here are deliberately slow index-level reference
//! implementations used to validate the Kronecker-assembled matrices in
//! [`crate::kron`]. Values outside the interior lattice are taken as zero,
//! except that the two-step part of the fourth-neighbor operator uses the
//! modified convention with diagonal entries -1 at the cells adjacent to
//! each wall (A' = A^2 - 2E).

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};

pub type Rational = Ratio<i64>;

/// Number of j-th neighbor sites in 4D, j = 1..4.
pub const NEIGHBOR_COUNTS: [usize; 4] = [8, 24, 32, 24];

/// Solutions of the two coefficient systems.
///
/// `gamma`, `delta` and `gamma_p` are the free parameters; the rest are
/// determined. Primed coefficients multiply the difference operators on the
/// right-hand side of the scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StencilCoefficients {
    pub gamma: Rational,
    pub delta: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub eta: Rational,
    pub alpha_p: Rational,
    pub beta_p: Rational,
    pub gamma_p: Rational,
    pub delta_p: Rational,
}

/// Default fixing gamma = 1, delta = 0, gamma' = 23/3840.
pub fn default_gamma_p() -> Rational {
    Ratio::new(23, 3840)
}

/// Solve both coefficient systems exactly for the given free parameters.
pub fn solve_coefficient_systems(
    gamma: Rational,
    delta: Rational,
    gamma_p: Rational,
) -> StencilCoefficients {
    let alpha = Ratio::from_integer(12) * gamma;
    let beta = gamma + Ratio::from_integer(8) * delta;
    let eta = Ratio::from_integer(60) * gamma;
    let alpha_p = Ratio::from_integer(12) * gamma_p - gamma / 30;
    let beta_p = -Ratio::from_integer(4) * gamma_p + gamma / 36 + delta * Ratio::new(2, 45);
    let delta_p = -gamma / 240 - delta / 180;
    StencilCoefficients {
        gamma,
        delta,
        alpha,
        beta,
        eta,
        alpha_p,
        beta_p,
        gamma_p,
        delta_p,
    }
}

impl Default for StencilCoefficients {
    fn default() -> Self {
        solve_coefficient_systems(
            Ratio::from_integer(1),
            Ratio::from_integer(0),
            default_gamma_p(),
        )
    }
}

impl StencilCoefficients {
    /// Residuals of the first linear system (three equations), exact.
    pub fn first_system_residuals(&self) -> [Rational; 3] {
        let (a, b, g, d, e) = (self.alpha, self.beta, self.gamma, self.delta, self.eta);
        let two = Ratio::from_integer(2);
        let three = Ratio::from_integer(3);
        let six = Ratio::from_integer(6);
        let r1 = two * (a + six * b + g * 12 + d * 24) - (b * 12 + g * 48 + d * 48);
        let r2 = three * (a + six * b + g * 12 + d * 72) - (b * 30 + g * 120 + d * 120 - e);
        let r3 = six * (a + six * b + g * 12 + d * 72) - (g * 360 + d * 720 - e * 3);
        [r1, r2, r3]
    }

    /// Residuals of the second linear system (three equations), exact.
    pub fn second_system_residuals(&self) -> [Rational; 3] {
        let (ap, bp, gp, dp) = (self.alpha_p, self.beta_p, self.gamma_p, self.delta_p);
        let (g, d) = (self.gamma, self.delta);
        let r1 = ap + bp * 6 + gp * 12 + dp * 12 - (g / 12 + d / 5);
        let r2 = ap + bp * 6 + gp * 12 + dp * 24 - (g / 30 + d * Ratio::new(2, 15));
        let r3 = bp * 12 + gp * 48 + dp * 48
            - (Ratio::from_integer(2) * (g / 30 + d * Ratio::new(2, 15)) + g / 15);
        [r1, r2, r3]
    }
}

#[inline]
fn rat(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Apply the j-th neighbor difference operator (j = 1..4).
pub fn apply_neighbor_op(j: usize, f: &GridFunction, spec: &GridSpec) -> Result<GridFunction> {
    if !(1..=4).contains(&j) {
        return Err(Error::InvalidArgument(format!(
            "neighbor operator index must be 1..4, got {j}"
        )));
    }
    let n = spec.n() as isize;
    let v = f.values();
    let mut out = GridFunction::zeros(spec);

    let get = |p: isize, i: isize, k: isize, l: isize| -> f64 {
        if p < 1 || p > n || i < 1 || i > n || k < 1 || k > n || l < 1 || l > n {
            0.0
        } else {
            let nn = n as usize;
            v[(p as usize - 1)
                + nn * (i as usize - 1)
                + nn * nn * (k as usize - 1)
                + nn * nn * nn * (l as usize - 1)]
        }
    };

    let signs = [-1isize, 1];
    let out_v = out.values_mut();
    let mut mu = 0usize;
    for l in 1..=n {
        for k in 1..=n {
            for i in 1..=n {
                for p in 1..=n {
                    let c = get(p, i, k, l);
                    let mut acc = 0.0;
                    match j {
                        1 => {
                            for s in signs {
                                acc += get(p + s, i, k, l)
                                    + get(p, i + s, k, l)
                                    + get(p, i, k + s, l)
                                    + get(p, i, k, l + s);
                            }
                            acc -= 8.0 * c;
                        }
                        2 => {
                            for a in signs {
                                for bs in signs {
                                    acc += get(p + a, i + bs, k, l)
                                        + get(p + a, i, k + bs, l)
                                        + get(p + a, i, k, l + bs)
                                        + get(p, i + a, k + bs, l)
                                        + get(p, i + a, k, l + bs)
                                        + get(p, i, k + a, l + bs);
                                }
                            }
                            acc -= 24.0 * c;
                        }
                        3 => {
                            for a in signs {
                                for bs in signs {
                                    for g in signs {
                                        acc += get(p + a, i + bs, k + g, l)
                                            + get(p + a, i + bs, k, l + g)
                                            + get(p + a, i, k + bs, l + g)
                                            + get(p, i + a, k + bs, l + g);
                                    }
                                }
                            }
                            acc -= 32.0 * c;
                        }
                        4 => {
                            for a in signs {
                                for bs in signs {
                                    for g in signs {
                                        for d in signs {
                                            acc += get(p + a, i + bs, k + g, l + d);
                                        }
                                    }
                                }
                            }
                            acc -= 16.0 * c;
                            // two-step part with the A' = A^2 - 2E convention:
                            // the first and last cell of each axis pick up -1
                            // on the diagonal
                            acc += get(p - 2, i, k, l) + get(p + 2, i, k, l);
                            acc += get(p, i - 2, k, l) + get(p, i + 2, k, l);
                            acc += get(p, i, k - 2, l) + get(p, i, k + 2, l);
                            acc += get(p, i, k, l - 2) + get(p, i, k, l + 2);
                            for q in [p, i, k, l] {
                                if q == 1 || q == n {
                                    acc -= c;
                                }
                            }
                            acc -= 8.0 * c;
                        }
                        _ => unreachable!(),
                    }
                    out_v[mu] = acc;
                    mu += 1;
                }
            }
        }
    }
    Ok(out)
}

/// Left-hand side operator of the scheme: -(1/30h^2)(12 box1 + box2 + box3),
/// for the default fixing gamma = 1, delta = 0.
pub fn apply_lhs_operator(
    f: &GridFunction,
    _c: &StencilCoefficients,
    spec: &GridSpec,
) -> Result<GridFunction> {
    let b1 = apply_neighbor_op(1, f, spec)?;
    let b2 = apply_neighbor_op(2, f, spec)?;
    let b3 = apply_neighbor_op(3, f, spec)?;
    let h = spec.h();
    let scale = -1.0 / (30.0 * h * h);
    let mut out = GridFunction::zeros(spec);
    for (o, ((v1, v2), v3)) in out
        .values_mut()
        .iter_mut()
        .zip(b1.values().iter().zip(b2.values()).zip(b3.values()))
    {
        *o = scale * (12.0 * v1 + v2 + v3);
    }
    Ok(out)
}

/// Right-hand side operator of the scheme:
/// 1 + (12g'-1/30) box1 + (1/36-4g') box2 + g' box3 - (1/240) box4.
pub fn apply_rhs_operator(
    f: &GridFunction,
    c: &StencilCoefficients,
    spec: &GridSpec,
) -> Result<GridFunction> {
    let b1 = apply_neighbor_op(1, f, spec)?;
    let b2 = apply_neighbor_op(2, f, spec)?;
    let b3 = apply_neighbor_op(3, f, spec)?;
    let b4 = apply_neighbor_op(4, f, spec)?;
    let (a_p, b_p, g_p, d_p) = (
        rat(c.alpha_p),
        rat(c.beta_p),
        rat(c.gamma_p),
        rat(c.delta_p),
    );
    let const_term = rat(c.gamma + c.delta * 2);
    let mut out = GridFunction::zeros(spec);
    for (mu, o) in out.values_mut().iter_mut().enumerate() {
        *o = const_term * f.values()[mu]
            + a_p * b1.values()[mu]
            + b_p * b2.values()[mu]
            + g_p * b3.values()[mu]
            + d_p * b4.values()[mu];
    }
    Ok(out)
}

/// Sample the product of sines that diagonalizes every difference operator:
/// f(x) = prod_i sin(k_i pi (x_i + b)/(2b)).
pub fn sine_product(spec: &GridSpec, k: [usize; 4]) -> GridFunction {
    let n = spec.n();
    let np1 = n as f64 + 1.0;
    let sines: Vec<Vec<f64>> = k
        .iter()
        .map(|&ki| {
            (1..=n)
                .map(|p| (ki as f64 * std::f64::consts::PI * p as f64 / np1).sin())
                .collect()
        })
        .collect();
    let mut out = GridFunction::zeros(spec);
    let v = out.values_mut();
    let mut mu = 0;
    for l in 0..n {
        for kk in 0..n {
            for i in 0..n {
                for p in 0..n {
                    v[mu] = sines[0][p] * sines[1][i] * sines[2][kk] * sines[3][l];
                    mu += 1;
                }
            }
        }
    }
    out
}
