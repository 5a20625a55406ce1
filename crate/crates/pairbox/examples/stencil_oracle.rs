//! The 89-point scheme against its closed-form spectrum.
//!
//! Applies the four neighbor difference operators to sampled sine products
//! and compares with the analytic eigenvalues; then tracks the discrete
//! Laplacian's ground level toward 4 pi^2.
//!
//! Run: cargo run --release --example stencil_oracle

use pairbox::grid::GridSpec;
use pairbox::kron::SpectralOracle;
use pairbox::stencil::{apply_neighbor_op, sine_product};

fn main() {
    let n = 8;
    let spec = GridSpec::new(n, 1.0).unwrap();
    let oracle = SpectralOracle::with_default_gamma(n);
    println!("eigen-relation residuals at n = {n}:");
    for k in [[1, 1, 1, 1], [2, 3, 1, 4], [8, 8, 8, 8]] {
        let f = sine_product(&spec, k);
        for j in 1..=4 {
            let out = apply_neighbor_op(j, &f, &spec).unwrap();
            let m = oracle.neighbor_eigenvalue(j, k).unwrap();
            let res = out
                .values()
                .iter()
                .zip(f.values())
                .map(|(o, v)| (o - m * v).abs())
                .fold(0.0f64, f64::max);
            println!("  k = {k:?}, box_{j}: m = {m:>10.6}, residual {res:.2e}");
        }
    }

    println!();
    println!(
        "discrete Laplacian ground level vs 4 pi^2 = {:.6}:",
        4.0 * std::f64::consts::PI.powi(2)
    );
    println!("{:>6} {:>14} {:>12}", "n", "epsilon_0(n)", "rel deficit");
    for n in [6usize, 10, 20, 40, 80] {
        let e = SpectralOracle::with_default_gamma(n).ground_state_energy();
        let rel = (4.0 * std::f64::consts::PI.powi(2) - e) / (4.0 * std::f64::consts::PI.powi(2));
        println!("{n:>6} {e:>14.8} {rel:>12.2e}");
    }
}
