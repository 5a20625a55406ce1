//! Two-particle densities in the 2D domain.
//!
//! Reduces a few low eigenstates over the second particle's coordinates and
//! prints coarse density profiles; the full grids go to CSV files.
//!
//! Run: cargo run --release --example densities

use pairbox::observables::density_2d;
use pairbox::solver::{ProblemConfig, Solver};
use pairbox::symmetry::IrrepLabel;

fn main() {
    let config = ProblemConfig {
        n: 14,
        m: 6,
        coulomb_c: 1.0,
        ..ProblemConfig::default()
    };
    let solver = Solver::new(config).unwrap();
    let result = solver.solve(None).unwrap();
    let out_dir = std::path::Path::new("target/density-example");
    std::fs::create_dir_all(out_dir).unwrap();
    for (q, p) in [(1u8, 1u8), (1, 5), (2, 4)] {
        let label = IrrepLabel { q, p };
        let state = solver.state_grid(&result, label, 0, 0).unwrap();
        let density = density_2d(&state).unwrap();
        let path = out_dir.join(format!("density_{label}.csv"));
        std::fs::write(&path, density.to_csv()).unwrap();
        println!(
            "{label}: E/omega = {:.3}, total mass {:.6}, written to {}",
            result.levels_over_omega(label, 0).unwrap()[0],
            density.total(),
            path.display()
        );
        // coarse profile along the diagonal
        let diag: Vec<String> = (1..=density.n)
            .map(|p| format!("{:.4}", density.at(p, p)))
            .collect();
        println!("  diagonal: {}", diag.join(" "));
    }
}
