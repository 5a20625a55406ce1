//! Deficit exponents of the noninteracting levels.
//!
//! Solves the trivial channel over a range of resolutions and fits
//! E_inf - E_n ~ a / n^b for a few levels; the scheme's design order is
//! six, windowed fits land between five and six and a half.
//!
//! Run: cargo run --release --example convergence_fit

use pairbox::solver::convergence::{laplacian_ground_exponent, run_convergence_study};
use pairbox::solver::ProblemConfig;

fn main() {
    let base = ProblemConfig {
        m: 8,
        ..ProblemConfig::default()
    };
    let ns: Vec<usize> = (10..=30).step_by(2).collect();
    println!("fitting over n = {:?} at m = 8, c = 0", ns);
    let fits = run_convergence_study(&base, &[1, 2, 5, 7], &ns).unwrap();
    for f in &fits {
        println!(
            "level r = {}: E_inf = {:.6}, b = {:.2} +- {:.2}{}",
            f.rank,
            f.e_inf,
            f.slope_b,
            f.stderr,
            if f.clean {
                ""
            } else {
                "  (some deficits dropped)"
            }
        );
    }
    let (b, se) = laplacian_ground_exponent(&ns);
    println!("potential-free ground level (closed form): b = {b:.2} +- {se:.2}");
}
