//! The one-dimensional harmonic oscillator confined to [-b, b]: confluent
//! hypergeometric evaluation, level parameters nu_n from the two root
//! conditions, and grid-sampled discretely normalized wavefunctions.
//!
//! Energies are E = omega (nu + 1/2) per axis. Even-index levels solve
//! M(-nu/2, 1/2, omega b^2/2) = 0, odd-index levels
//! M(1/2 - nu/2, 3/2, omega b^2/2) = 0.

use crate::error::{Error, Result};
use crate::grid::GridSpec;

const MAX_SERIES_TERMS: usize = 500;

/// Double-double helpers for the alternating Kummer series. The series for
/// negative first parameter cancels catastrophically near roots (terms reach
/// ~1e6 while the value is ~1e-10), so the accumulation is carried in
/// roughly 32 significant digits.
mod dd {
    #[derive(Debug, Clone, Copy)]
    pub struct Dd {
        pub hi: f64,
        pub lo: f64,
    }

    impl Dd {
        pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

        pub fn from(x: f64) -> Dd {
            Dd { hi: x, lo: 0.0 }
        }

        pub fn value(self) -> f64 {
            self.hi + self.lo
        }
    }

    #[inline]
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        (s, err)
    }

    #[inline]
    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        let err = a.mul_add(b, -p);
        (p, err)
    }

    pub fn add(a: Dd, b: Dd) -> Dd {
        let (s, e) = two_sum(a.hi, b.hi);
        let e = e + a.lo + b.lo;
        let (hi, lo) = two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn mul(a: Dd, b: Dd) -> Dd {
        let (p, e) = two_prod(a.hi, b.hi);
        let e = e + a.hi * b.lo + a.lo * b.hi;
        let (hi, lo) = two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(a: Dd, b: f64) -> Dd {
        mul(a, Dd::from(b))
    }

    pub fn div_f64(a: Dd, b: f64) -> Dd {
        let q1 = a.hi / b;
        let (p, e) = two_prod(q1, b);
        let r = ((a.hi - p) - e + a.lo) / b;
        let (hi, lo) = two_sum(q1, r);
        Dd { hi, lo }
    }
}

/// Kummer's confluent hypergeometric function M(a, b, z) by direct series.
///
/// Accurate for the parameter ranges of the confined oscillator
/// (moderate |a|, b in {1/2, 3/2}, z up to ~60).
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::InvalidArgument(format!(
            "second parameter must not be a nonpositive integer, got {b}"
        )));
    }
    let mut term = dd::Dd::ONE;
    let mut sum = dd::Dd::ONE;
    let mut small_count = 0;
    for j in 0..MAX_SERIES_TERMS {
        let jf = j as f64;
        term = dd::mul_f64(term, (a + jf) * z);
        term = dd::div_f64(term, (b + jf) * (jf + 1.0));
        sum = dd::add(sum, term);
        if term.hi.abs() < 1e-16 * sum.hi.abs().max(1e-300) {
            small_count += 1;
            if small_count >= 3 {
                return Ok(sum.value());
            }
        } else {
            small_count = 0;
        }
        if term.hi == 0.0 {
            return Ok(sum.value());
        }
    }
    Err(Error::SeriesDiverged {
        a,
        b,
        z,
        max_terms: MAX_SERIES_TERMS,
    })
}

/// Physical parameters of the confined oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorSpec {
    pub omega: f64,
    pub b: f64,
    pub n_levels: usize,
}

impl OscillatorSpec {
    pub fn new(omega: f64, b: f64, n_levels: usize) -> Result<Self> {
        if !(omega > 0.0) || !(b > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "oscillator needs omega > 0 and b > 0, got omega={omega}, b={b}"
            )));
        }
        if n_levels == 0 {
            return Err(Error::InvalidArgument("need at least one level".into()));
        }
        Ok(OscillatorSpec { omega, b, n_levels })
    }

    /// Spec via the parameter combination omega^2/2 used in the tables.
    pub fn from_omega2_half(omega2_half: f64, b: f64, n_levels: usize) -> Result<Self> {
        if !(omega2_half > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "omega^2/2 must be positive, got {omega2_half}"
            )));
        }
        OscillatorSpec::new((2.0 * omega2_half).sqrt(), b, n_levels)
    }

    /// Argument of the root conditions, omega b^2 / 2.
    pub fn z(&self) -> f64 {
        self.omega * self.b * self.b / 2.0
    }
}

/// Level parameters and evaluation context for the confined oscillator.
#[derive(Debug, Clone)]
pub struct OscillatorBasis {
    spec: OscillatorSpec,
    nu: Vec<f64>,
}

/// Root condition value for a trial nu of the given parity.
fn condition(spec: &OscillatorSpec, parity_even: bool, nu: f64) -> Result<f64> {
    if parity_even {
        kummer_m(-nu / 2.0, 0.5, spec.z())
    } else {
        kummer_m(0.5 - nu / 2.0, 1.5, spec.z())
    }
}

fn bracketed_roots(spec: &OscillatorSpec, parity_even: bool, count: usize) -> Result<Vec<f64>> {
    // scan nu upward from -1/2 with step 0.25; consecutive roots of one
    // condition are separated by at least ~1 in this parameter regime
    let mut roots = Vec::with_capacity(count);
    let step = 0.25;
    let nu_max = 6.0 * (2 * count + 4) as f64;
    let mut lo = -0.5;
    let mut f_lo = condition(spec, parity_even, lo)?;
    while roots.len() < count {
        let hi = lo + step;
        if hi > nu_max {
            return Err(Error::LevelNotBracketed {
                index: 2 * roots.len() + usize::from(!parity_even),
                nu_max,
            });
        }
        let f_hi = condition(spec, parity_even, hi)?;
        if f_lo == 0.0 {
            roots.push(lo);
        } else if f_lo * f_hi < 0.0 {
            let (mut a, mut b) = (lo, hi);
            let mut fa = f_lo;
            // bisect essentially to machine resolution of nu
            for _ in 0..120 {
                let mid = 0.5 * (a + b);
                if mid == a || mid == b {
                    break;
                }
                let fm = condition(spec, parity_even, mid)?;
                if fa * fm <= 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(roots)
}

/// Find the lowest `spec.n_levels` level parameters nu_0 < nu_1 < ...
pub fn find_levels(spec: OscillatorSpec) -> Result<OscillatorBasis> {
    let m = spec.n_levels;
    let n_even = m / 2 + m % 2;
    let n_odd = m / 2;
    let even = bracketed_roots(&spec, true, n_even)?;
    let odd = if n_odd > 0 {
        bracketed_roots(&spec, false, n_odd)?
    } else {
        Vec::new()
    };
    let mut nu = Vec::with_capacity(m);
    for i in 0..m {
        if i % 2 == 0 {
            nu.push(even[i / 2]);
        } else {
            nu.push(odd[i / 2]);
        }
    }
    for w in nu.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::InvalidArgument(format!(
                "levels not interleaved: {} >= {}",
                w[0], w[1]
            )));
        }
    }
    Ok(OscillatorBasis { spec, nu })
}

impl OscillatorBasis {
    pub fn spec(&self) -> &OscillatorSpec {
        &self.spec
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    pub fn n_levels(&self) -> usize {
        self.nu.len()
    }

    /// Unnormalized wavefunction of level `lev` at x.
    pub fn eval_raw(&self, lev: usize, x: f64) -> Result<f64> {
        let nu = self.nu[lev];
        let w = self.spec.omega;
        // evaluate on |x| and restore parity so sampled tables are
        // symmetric to the last bit
        let ax = x.abs();
        let gauss = (-w * ax * ax / 4.0).exp();
        let val = if lev % 2 == 0 {
            gauss * kummer_m(-nu / 2.0, 0.5, w * ax * ax / 2.0)?
        } else {
            w.sqrt() * ax * gauss * kummer_m(0.5 - nu / 2.0, 1.5, w * ax * ax / 2.0)?
        };
        Ok(if lev % 2 == 1 && x < 0.0 { -val } else { val })
    }

    /// Residual of the root condition at each found level.
    pub fn root_residual(&self, lev: usize) -> Result<f64> {
        condition(&self.spec, lev % 2 == 0, self.nu[lev])
    }

    /// Noninteracting two-particle energy omega (nu_k1 + .. + nu_k4 + 2).
    pub fn noninteracting_energy(&self, k: [usize; 4]) -> Result<f64> {
        for &ki in &k {
            if ki >= self.nu.len() {
                return Err(Error::IndexOutOfRange(format!(
                    "level index {ki} outside 0..{}",
                    self.nu.len()
                )));
            }
        }
        Ok(self.spec.omega * (k.iter().map(|&ki| self.nu[ki]).sum::<f64>() + 2.0))
    }

    /// Sample all levels on the interior grid and normalize discretely so
    /// that sum_p phi(x_p)^2 = 1 per level.
    pub fn sample_wavefunctions(&self, grid: &GridSpec) -> Result<WavefunctionTable> {
        if (grid.b() - self.spec.b).abs() > 1e-14 * self.spec.b {
            return Err(Error::InvalidArgument(
                "grid half-width differs from oscillator box".into(),
            ));
        }
        let n = grid.n();
        let m = self.nu.len();
        let mut phi = vec![vec![0.0; n]; m];
        let mut norms = vec![0.0; m];
        for lev in 0..m {
            let half = (n + 1) / 2;
            for p in 1..=half {
                let v = self.eval_raw(lev, grid.point(p))?;
                phi[lev][p - 1] = v;
                // mirror point n+1-p sits at -x_p
                let sign = if lev % 2 == 1 { -1.0 } else { 1.0 };
                phi[lev][n - p] = sign * v;
            }
            if n % 2 == 1 && lev % 2 == 1 {
                phi[lev][n / 2] = 0.0;
            }
            let norm = phi[lev].iter().map(|v| v * v).sum::<f64>().sqrt();
            norms[lev] = norm;
            for v in phi[lev].iter_mut() {
                *v /= norm;
            }
        }
        Ok(WavefunctionTable {
            n_grid: n,
            phi,
            norms,
        })
    }

    /// CSV rows: index, parity, nu, E/omega.
    pub fn levels_csv(&self) -> String {
        let mut out = String::from("index,parity,nu,energy_over_omega\n");
        for (i, nu) in self.nu.iter().enumerate() {
            let parity = if i % 2 == 0 { "even" } else { "odd" };
            out.push_str(&format!("{i},{parity},{:.9},{:.9}\n", nu, nu + 0.5));
        }
        out
    }
}

/// Grid samples of the normalized wavefunctions, one row per level.
#[derive(Debug, Clone)]
pub struct WavefunctionTable {
    n_grid: usize,
    phi: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl WavefunctionTable {
    pub fn n_grid(&self) -> usize {
        self.n_grid
    }

    pub fn n_levels(&self) -> usize {
        self.phi.len()
    }

    /// Normalized samples of one level.
    pub fn level(&self, lev: usize) -> &[f64] {
        &self.phi[lev]
    }

    /// Discrete norm of the raw samples before normalization.
    pub fn raw_norm(&self, lev: usize) -> f64 {
        self.norms[lev]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.phi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Table of the sixteen level parameters at omega^2/2 = 500, b = 1.
    pub const NU_TABLE: [f64; 16] = [
        0.000001, 1.000017, 2.000235, 3.001945, 4.010898, 5.043776, 6.132232, 7.315886, 8.628132,
        10.088573, 11.705530, 13.481490, 15.416694, 17.510727, 19.763071, 22.173266,
    ];

    fn table_basis(m: usize) -> OscillatorBasis {
        let spec = OscillatorSpec::from_omega2_half(500.0, 1.0, m).unwrap();
        find_levels(spec).unwrap()
    }

    #[test]
    fn kummer_at_zero_is_one() {
        assert_eq!(kummer_m(2.3, 0.5, 0.0).unwrap(), 1.0);
        assert_eq!(kummer_m(-7.0, 1.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn kummer_zero_a_is_one() {
        for z in [0.1, 3.0, 20.0] {
            assert_eq!(kummer_m(0.0, 0.5, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn kummer_terminating_series() {
        // a = -1 truncates after two terms: 1 + (-1/b) z
        let v = kummer_m(-1.0, 0.5, 2.0).unwrap();
        assert!((v - (1.0 - 4.0)).abs() < 1e-14);
    }

    #[test]
    fn kummer_rejects_bad_b() {
        assert!(kummer_m(1.0, 0.0, 1.0).is_err());
        assert!(kummer_m(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn kummer_against_exponential() {
        // M(a, a, z) = e^z
        for z in [0.5, 5.0, 15.0] {
            let v = kummer_m(1.5, 1.5, z).unwrap();
            assert!((v - z.exp()).abs() < 1e-12 * z.exp());
        }
    }

    #[test]
    fn levels_match_printed_table() {
        let basis = table_basis(16);
        for (i, want) in NU_TABLE.iter().enumerate() {
            assert!(
                (basis.nu()[i] - want).abs() < 1e-6,
                "nu_{i}: got {}, want {want}",
                basis.nu()[i]
            );
        }
    }

    #[test]
    fn root_residuals_small() {
        let basis = table_basis(16);
        for lev in 0..16 {
            let r = basis.root_residual(lev).unwrap();
            assert!(r.abs() <= 1e-9, "residual at level {lev} is {r:.3e}");
        }
    }

    #[test]
    fn interleaving_strict() {
        let basis = table_basis(16);
        for w in basis.nu().windows(2) {
            assert!(w[1] > w[0]);
        }
        for nu in basis.nu() {
            assert!(*nu > -0.5);
        }
    }

    #[test]
    fn odd_condition_high_levels_approach_box() {
        // along the odd condition, omega (nu + 1/2) -> (pi^2/(2b)^2)(2m+2)^2;
        // the mth odd-index level approaches the even box mode j = 2m+2 and
        // the relative deviation shrinks with the level
        let basis = table_basis(16);
        let omega = basis.spec().omega;
        let box_unit = std::f64::consts::PI.powi(2) / 4.0;
        let rel = |m_idx: usize| {
            let lev = 2 * m_idx + 1;
            let e = omega * (basis.nu()[lev] + 0.5);
            let j = (2 * m_idx + 2) as f64;
            (e - box_unit * j * j) / e
        };
        let r3 = rel(3);
        let r7 = rel(7);
        assert!(r3 > 0.0 && r7 > 0.0, "confined levels sit above box levels");
        assert!(r7 < r3, "deviation must shrink: {r3} -> {r7}");
        assert!(r7 < 0.15, "highest table level deviation {r7}");
    }

    #[test]
    fn unconfined_limit_integer_nu() {
        let spec = OscillatorSpec::from_omega2_half(5000.0, 1.0, 4).unwrap();
        let basis = find_levels(spec).unwrap();
        for (i, nu) in basis.nu().iter().enumerate() {
            assert!(
                (nu - i as f64).abs() < 1e-4,
                "nu_{i} = {nu} far from integer"
            );
        }
    }

    #[test]
    fn noninteracting_energy_table_values() {
        let basis = table_basis(8);
        let omega = basis.spec().omega;
        // the printed reference energies are sums of six-decimal rounded
        // level parameters, so four levels carry up to 2e-6 of rounding
        let e0 = basis.noninteracting_energy([0, 0, 0, 0]).unwrap() / omega;
        assert!((e0 - 2.000004).abs() < 2.5e-6, "e0 = {e0}");
        let e1 = basis.noninteracting_energy([0, 0, 0, 1]).unwrap() / omega;
        assert!((e1 - 3.000020).abs() < 2.5e-6, "e1 = {e1}");
        // permutation symmetry
        let ea = basis.noninteracting_energy([0, 1, 0, 0]).unwrap();
        let eb = basis.noninteracting_energy([1, 0, 0, 0]).unwrap();
        assert_eq!(ea, eb);
        assert!(basis.noninteracting_energy([0, 0, 0, 8]).is_err());
    }

    #[test]
    fn sampled_wavefunctions_parity_and_norm() {
        let basis = table_basis(4);
        let grid = GridSpec::new(21, 1.0).unwrap();
        let table = basis.sample_wavefunctions(&grid).unwrap();
        let n = 21;
        for lev in 0..4 {
            let phi = table.level(lev);
            let norm: f64 = phi.iter().map(|v| v * v).sum();
            assert!((norm - 1.0).abs() < 1e-13);
            for p in 0..n {
                let sign = if lev % 2 == 1 { -1.0 } else { 1.0 };
                assert_eq!(phi[p], sign * phi[n - 1 - p]);
            }
        }
        // odd level vanishes at the center of an odd grid
        assert_eq!(table.level(1)[10], 0.0);
        assert_eq!(table.level(3)[10], 0.0);
    }

    #[test]
    fn ground_state_is_nearly_gaussian() {
        let basis = table_basis(1);
        let w = basis.spec().omega;
        let mut max_rel: f64 = 0.0;
        for i in 0..=100 {
            let x = -0.5 + i as f64 / 100.0;
            let got = basis.eval_raw(0, x).unwrap();
            let gauss = (-w * x * x / 4.0).exp();
            max_rel = max_rel.max((got - gauss).abs() / gauss);
        }
        assert!(max_rel < 1e-3, "max relative deviation {max_rel}");
    }

    #[test]
    fn wall_values_vanish() {
        let basis = table_basis(8);
        for lev in 0..8 {
            let at_wall = basis.eval_raw(lev, 1.0).unwrap();
            // compare against the interior maximum of the unnormalized samples
            let mut max = 0.0f64;
            for i in 1..100 {
                max = max.max(basis.eval_raw(lev, -1.0 + 0.02 * i as f64).unwrap().abs());
            }
            assert!(
                at_wall.abs() <= 1e-9 * max,
                "level {lev}: wall value {at_wall:.3e} vs max {max:.3e}"
            );
        }
    }

    #[test]
    fn discrete_orthonormality() {
        let basis = table_basis(8);
        let grid = GridSpec::new(30, 1.0).unwrap();
        let table = basis.sample_wavefunctions(&grid).unwrap();
        let mut max_offdiag: f64 = 0.0;
        for a in 0..8 {
            for b in 0..8 {
                let dot: f64 = table
                    .level(a)
                    .iter()
                    .zip(table.level(b))
                    .map(|(x, y)| x * y)
                    .sum();
                if a == b {
                    assert!((dot - 1.0).abs() < 1e-13);
                } else {
                    max_offdiag = max_offdiag.max(dot.abs());
                }
            }
        }
        // grid quadrature of cross terms carries O(h^4) error from the
        // nonzero wall curvature of the products; the top level pair
        // dominates
        assert!(max_offdiag < 2e-5, "max offdiag {max_offdiag:.3e}");
    }
}
