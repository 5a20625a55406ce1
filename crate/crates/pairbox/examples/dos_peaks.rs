//! Densities of states: two-particle peak lists by exchange sector and the
//! interacting one-particle spectrum with Green's-function weights.
//!
//! Run: cargo run --release --example dos_peaks

use pairbox::observables::{
    dos_noninteracting_g1, dos_one_particle_interacting, dos_two_particle, InteractingG1Input,
};
use pairbox::solver::{ProblemConfig, Solver};
use pairbox::symmetry::ExchangeSymmetry;

fn main() {
    let config = ProblemConfig {
        n: 14,
        m: 6,
        coulomb_c: 1.0,
        ..ProblemConfig::default()
    };
    let solver = Solver::new(config).unwrap();
    let result = solver.solve(None).unwrap();

    let g1_free = dos_noninteracting_g1(&solver.basis, 6, 0.01);
    println!("noninteracting single-particle peaks (lowest five):");
    for &(e, w) in g1_free.peaks.iter().take(5) {
        println!("  eps/omega = {e:.4}, weight {w}");
    }

    for sector in [ExchangeSymmetry::Antisymmetric, ExchangeSymmetry::Symmetric] {
        let g2 = dos_two_particle(&result, &solver.irreps, sector, 0.01, 6);
        println!();
        println!("two-particle peaks, {sector:?} sector (lowest six):");
        for &(e, w) in g2.peaks.iter().take(6) {
            println!("  E/omega = {e:.3}, weight {w}");
        }
        let g1 = dos_one_particle_interacting(&InteractingG1Input {
            result: &result,
            irreps: &solver.irreps,
            basis: &solver.basis,
            table: &solver.table,
            solver: &solver,
            occupied: (0, 0),
            sector,
            eta: 0.01,
            level_cap: 4,
        })
        .unwrap();
        println!("one-particle addition peaks over the (0,0)-occupied state:");
        for &(e, w) in g1.peaks.iter().take(5) {
            println!("  eps/omega = {e:.3}, weight {w:.4}");
        }
    }
}
