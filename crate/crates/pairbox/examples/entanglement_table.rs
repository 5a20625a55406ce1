//! Entanglement measures of the lowest states with and without interaction.
//!
//! For each selected channel: purity Tr rho^2, the Schmidt count above
//! 1e-6, and the von Neumann entropy, side by side for c = 0 and c = 1.
//!
//! Run: cargo run --release --example entanglement_table [n] [m]

use pairbox::observables::reduce_density;
use pairbox::solver::{ProblemConfig, Solver};
use pairbox::symmetry::IrrepLabel;

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(14);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let mut solved = Vec::new();
    for c in [0.0, 1.0] {
        let config = ProblemConfig {
            n,
            m,
            coulomb_c: c,
            ..ProblemConfig::default()
        };
        let solver = Solver::new(config).unwrap();
        let result = solver.solve(None).unwrap();
        solved.push((solver, result));
    }
    println!(
        "{:>6} | {:>9} {:>5} {:>7} {:>9} | {:>9} {:>5} {:>7} {:>9} | {:>7}",
        "irrep", "purity0", "N0", "S0", "E0/omega", "purity1", "N1", "S1", "E1/omega", "dS"
    );
    for (q, p) in [(1u8, 1u8), (1, 3), (1, 5), (2, 3), (4, 2)] {
        let label = IrrepLabel { q, p };
        let mut row = Vec::new();
        for (solver, result) in &solved {
            let state = solver.state_grid(result, label, 0, 0).unwrap();
            let rd = reduce_density(&state).unwrap();
            let e = result.levels_over_omega(label, 0).unwrap()[0];
            row.push((rd.purity, rd.schmidt_count, rd.entropy, e));
        }
        println!(
            "{:>6} | {:>9.3} {:>5} {:>7.3} {:>9.4} | {:>9.3} {:>5} {:>7.3} {:>9.4} | {:>7.3}",
            label.to_string(),
            row[0].0,
            row[0].1,
            row[0].2,
            row[0].3,
            row[1].0,
            row[1].1,
            row[1].2,
            row[1].3,
            row[1].2 - row[0].2
        );
    }
}
