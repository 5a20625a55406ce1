//! Noninteracting spectrum against the exact tensor sums.
//!
//! Solves all symmetry blocks at c = 0 and compares the lowest levels with
//! the exact oscillator sums, channel by channel.
//!
//! Run: cargo run --release --example noninteracting_levels [n] [m]

use pairbox::solver::{ProblemConfig, Solver};
use pairbox::symmetry::ALL_LABELS;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(14);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(6);
    let config = ProblemConfig {
        n,
        m,
        coulomb_c: 0.0,
        ..ProblemConfig::default()
    };
    let solver = Solver::new(config).unwrap();
    let result = solver.solve(None).unwrap();
    println!("n = {n}, m = {m}, c = 0 (energies over omega)");
    println!(
        "{:>6} {:>4} {:>12} {:>12} {:>10}",
        "irrep", "r", "numerical", "exact", "deficit"
    );
    for &lab in ALL_LABELS.iter() {
        let levels = result.levels_over_omega(lab, 0).unwrap();
        let exact = solver.exact_block_levels(lab);
        for r in 0..levels.len().min(3) {
            println!(
                "{:>6} {:>4} {:>12.6} {:>12.6} {:>10.2e}",
                lab.to_string(),
                r + 1,
                levels[r],
                exact[r],
                exact[r] - levels[r]
            );
        }
    }
}
