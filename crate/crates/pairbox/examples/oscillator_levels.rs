//! Level parameters of the confined 1-D harmonic oscillator.
//!
//! Finds the lowest sixteen nu_n from the two confluent-hypergeometric root
//! conditions at omega^2/2 = 500, b = 1 and prints them with the root
//! residuals and per-axis energies.
//!
//! Run: cargo run --release --example oscillator_levels

use pairbox::oscillator::{find_levels, OscillatorSpec};

fn main() {
    let spec = OscillatorSpec::from_omega2_half(500.0, 1.0, 16).unwrap();
    let basis = find_levels(spec).unwrap();
    println!(
        "confined oscillator, omega = {:.6}, b = 1",
        basis.spec().omega
    );
    println!(
        "{:>3} {:>8} {:>14} {:>14} {:>12}",
        "n", "parity", "nu", "E/omega", "residual"
    );
    for (i, nu) in basis.nu().iter().enumerate() {
        let parity = if i % 2 == 0 { "even" } else { "odd" };
        println!(
            "{i:>3} {parity:>8} {nu:>14.6} {:>14.6} {:>12.2e}",
            nu + 0.5,
            basis.root_residual(i).unwrap()
        );
    }
    println!();
    println!("lowest two-particle tensor sums (E/omega):");
    for k in [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1], [0, 0, 0, 2]] {
        let e = basis.noninteracting_energy(k).unwrap() / basis.spec().omega;
        println!("  k = {k:?}: {e:.6}");
    }
}
