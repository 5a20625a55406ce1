//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass/fail line (run with `--nocapture` to see them). The heavy
//! full-resolution variants of the interacting checks are `#[ignore]`d;
//! run them with `cargo test --release -- --ignored`.

use std::sync::OnceLock;

use pairbox::kron::{
    build_m, build_mi, build_n_matrix, ground_state_predicted_deficit, nnz_report, MatrixKind,
    SpectralOracle, DEFAULT_GAMMA_P,
};
use pairbox::observables::reduce_density;
use pairbox::oscillator::{find_levels, OscillatorSpec};
use pairbox::solver::convergence::run_convergence_study;
use pairbox::solver::{EigenResult, PencilForm, ProblemConfig, Solver};
use pairbox::symmetry::{IrrepLabel, ALL_LABELS};

const FOUR_PI2: f64 = 39.47841760435743;

fn config(n: usize, m: usize, c: f64) -> ProblemConfig {
    ProblemConfig {
        n,
        m,
        coulomb_c: c,
        ..ProblemConfig::default()
    }
}

fn solve_fixture(cfg: ProblemConfig) -> (Solver, EigenResult) {
    let solver = Solver::new(cfg).expect("solver builds");
    let result = solver.solve(None).expect("solve succeeds");
    (solver, result)
}

fn ci_c0() -> &'static (Solver, EigenResult) {
    static CELL: OnceLock<(Solver, EigenResult)> = OnceLock::new();
    CELL.get_or_init(|| solve_fixture(config(14, 6, 0.0)))
}

fn full_c0() -> &'static (Solver, EigenResult) {
    static CELL: OnceLock<(Solver, EigenResult)> = OnceLock::new();
    CELL.get_or_init(|| solve_fixture(config(30, 8, 0.0)))
}

fn m8_c0() -> &'static (Solver, EigenResult) {
    static CELL: OnceLock<(Solver, EigenResult)> = OnceLock::new();
    CELL.get_or_init(|| solve_fixture(config(14, 8, 0.0)))
}

fn m8_c1() -> &'static (Solver, EigenResult) {
    static CELL: OnceLock<(Solver, EigenResult)> = OnceLock::new();
    CELL.get_or_init(|| solve_fixture(config(14, 8, 1.0)))
}

fn full_c1() -> &'static (Solver, EigenResult) {
    static CELL: OnceLock<(Solver, EigenResult)> = OnceLock::new();
    CELL.get_or_init(|| solve_fixture(config(30, 8, 1.0)))
}

/// Degeneracy-weighted ascending union of all block levels over omega.
fn level_union(solver: &Solver, result: &EigenResult) -> Vec<f64> {
    let mut all = Vec::new();
    for &lab in ALL_LABELS.iter() {
        let d = solver.irreps.get(lab).dim;
        if let Some(levels) = result.levels_over_omega(lab, 0) {
            for e in levels {
                for _ in 0..d {
                    all.push(e);
                }
            }
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all
}

fn exact_union(solver: &Solver) -> Vec<f64> {
    let mut all = Vec::new();
    for &lab in ALL_LABELS.iter() {
        let d = solver.irreps.get(lab).dim;
        for e in solver.exact_block_levels(lab) {
            for _ in 0..d {
                all.push(e);
            }
        }
    }
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all
}

/// Printed numerical column of the noninteracting reference table,
/// arranged per irrep in ascending order.
fn paper_noninteracting_slots() -> Vec<(IrrepLabel, Vec<f64>)> {
    let lab = |q, p| IrrepLabel { q, p };
    vec![
        (
            lab(1, 1),
            vec![
                2.000000, 4.000019, 4.000207, 6.000008, 6.000200, 6.000382, 6.000423, 6.001870,
                6.010716,
            ],
        ),
        (
            lab(1, 2),
            vec![4.000019, 4.000212, 6.000200, 6.000410, 6.001870, 6.010716],
        ),
        (lab(1, 3), vec![6.000214, 6.001879]),
        (lab(1, 4), vec![4.000019, 6.000200, 6.001870]),
        (
            lab(1, 5),
            vec![3.000011, 5.000020, 5.000208, 5.000220, 5.001874],
        ),
        (
            lab(2, 1),
            vec![4.000212, 6.000214, 6.000410, 6.001879, 6.010716],
        ),
        (
            lab(2, 2),
            vec![4.000019, 6.000200, 6.000214, 6.001870, 6.001879],
        ),
        (lab(2, 3), vec![5.000220]),
        (
            lab(2, 4),
            vec![3.000011, 5.000020, 5.000208, 5.000220, 5.001874],
        ),
        (lab(4, 1), vec![6.000423]),
        (lab(4, 3), vec![6.000214, 6.001879]),
        (lab(4, 4), vec![4.000019, 6.000200, 6.001870]),
        (lab(4, 5), vec![5.000220]),
    ]
}

#[test]
fn criterion_01_noninteracting_spectrum() {
    // reduced-scale variant: agreement with the exact tensor sums
    let (solver, result) = ci_c0();
    let got = level_union(solver, result);
    let exact = exact_union(solver);
    let mut max_err = 0.0f64;
    let mut all_below = true;
    for (g, e) in got.iter().zip(&exact).take(18) {
        max_err = max_err.max((g - e).abs());
        all_below &= *g <= e + 1e-9;
    }
    assert!(
        max_err <= 5e-3,
        "reduced scale: max deviation {max_err:.2e} over the lowest 18 levels"
    );
    assert!(
        all_below,
        "reduced scale: levels must sit below the exact sums"
    );

    // full scale: every tabulated numerical value within 1e-3, deficits
    // with the right sign
    let (solver, result) = full_c0();
    let mut checked = 0;
    let mut max_dev = 0.0f64;
    for (lab, wants) in paper_noninteracting_slots() {
        let levels = result.levels_over_omega(lab, 0).expect("block present");
        let exact = solver.exact_block_levels(lab);
        for (r, want) in wants.iter().enumerate() {
            let got = levels[r];
            let dev = (got - want).abs();
            max_dev = max_dev.max(dev);
            assert!(
                dev <= 1e-3,
                "{lab} rank {}: got {got:.6}, table {want:.6}",
                r + 1
            );
            assert!(
                got <= exact[r] + 1e-9,
                "{lab} rank {}: {got:.7} not below exact {:.7}",
                r + 1,
                exact[r]
            );
            checked += 1;
        }
    }
    println!(
        "criterion 1 PASS: reduced scale max dev {max_err:.2e} (<= 5e-3, below exact); \
         full scale {checked} tabulated values within {max_dev:.1e} (<= 1e-3), all below exact"
    );
}

#[test]
fn criterion_02_multiplicities() {
    let (solver, _) = m8_c0();
    let want = [
        210, 190, 120, 136, 320, 240, 256, 192, 320, 78, 66, 120, 136, 192,
    ];
    let mut total = 0;
    for (&lab, &w) in ALL_LABELS.iter().zip(&want) {
        let got = solver.sym_basis.multiplicity(lab);
        assert_eq!(got, w, "count of {lab}");
        total += solver.irreps.get(lab).dim * got;
    }
    assert_eq!(total, 4096);
    println!("criterion 2 PASS: multiplicities (210, 190, ..., 192) exact, sum d*r = 4096");
}

#[test]
fn criterion_03_oscillator_levels() {
    let table = [
        0.000001, 1.000017, 2.000235, 3.001945, 4.010898, 5.043776, 6.132232, 7.315886, 8.628132,
        10.088573, 11.705530, 13.481490, 15.416694, 17.510727, 19.763071, 22.173266,
    ];
    let basis = find_levels(OscillatorSpec::from_omega2_half(500.0, 1.0, 16).unwrap()).unwrap();
    let mut max_dev = 0.0f64;
    for (i, want) in table.iter().enumerate() {
        let dev = (basis.nu()[i] - want).abs();
        max_dev = max_dev.max(dev);
        assert!(dev < 1e-6, "nu_{i}: {} vs {want}", basis.nu()[i]);
    }
    println!("criterion 3 PASS: all sixteen level parameters within {max_dev:.1e} (< 1e-6)");
}

#[test]
fn criterion_04_spectral_oracle_equivalence() {
    let mut max_err = 0.0f64;
    for n in [2usize, 3, 4] {
        let oracle = SpectralOracle::with_default_gamma(n);
        let mats = [
            (build_mi(1, n).unwrap(), MatrixKind::M1),
            (build_mi(2, n).unwrap(), MatrixKind::M2),
            (build_mi(3, n).unwrap(), MatrixKind::M3),
            (build_mi(4, n).unwrap(), MatrixKind::M4),
            (build_m(n).unwrap(), MatrixKind::M),
            (build_n_matrix(n, DEFAULT_GAMMA_P).unwrap(), MatrixKind::N),
        ];
        for (poly, kind) in mats {
            let mut got: Vec<f64> = nalgebra::SymmetricEigen::new(poly.to_dense())
                .eigenvalues
                .iter()
                .cloned()
                .collect();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut want = Vec::new();
            for k1 in 1..=n {
                for k2 in 1..=n {
                    for k3 in 1..=n {
                        for k4 in 1..=n {
                            want.push(oracle.eigenvalue(kind, [k1, k2, k3, k4]).unwrap());
                        }
                    }
                }
            }
            want.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in got.iter().zip(&want) {
                max_err = max_err.max((a - b).abs());
            }
        }
    }
    assert!(max_err <= 1e-11, "spectra deviate by {max_err:.2e}");

    // commutator, dense max-norm at n = 3
    let n = 3;
    let m = build_m(n).unwrap().to_dense();
    let nn = build_n_matrix(n, DEFAULT_GAMMA_P).unwrap().to_dense();
    let comm = (&m * &nn - &nn * &m).abs().max();
    assert!(comm <= 1e-13, "dense [M, N] max-norm {comm:.2e}");

    // commutator, randomized matvec at n = 20
    use rand::{Rng, SeedableRng};
    let n = 20;
    let mp = build_m(n).unwrap();
    let np = build_n_matrix(n, DEFAULT_GAMMA_P).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let f: Vec<f64> = (0..n.pow(4)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mn = np.matvec(&mp.matvec(&f).unwrap()).unwrap();
    let nm = mp.matvec(&np.matvec(&f).unwrap()).unwrap();
    let fnorm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
    let rel = mn
        .iter()
        .zip(&nm)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
        / fnorm;
    assert!(rel <= 1e-12, "randomized |(MN-NM)f|/|f| = {rel:.2e}");
    println!(
        "criterion 4 PASS: dense spectra within {max_err:.1e} of the closed forms; \
         [M,N] dense {comm:.1e}, randomized {rel:.1e}"
    );
}

#[test]
fn criterion_05_laplacian_ground_level() {
    // the closed-form value must equal the minimum over all modes
    let oracle = SpectralOracle::with_default_gamma(10);
    let mut min_ratio = f64::INFINITY;
    for k1 in 1..=10 {
        for k2 in 1..=10 {
            for k3 in 1..=10 {
                for k4 in 1..=10 {
                    min_ratio = min_ratio.min(oracle.laplacian([k1, k2, k3, k4]).unwrap());
                }
            }
        }
    }
    let closed = oracle.ground_state_energy();
    assert!(
        (min_ratio - closed).abs() <= 1e-12 * closed.abs(),
        "closed form {closed} vs scanned minimum {min_ratio}"
    );

    let mut ratios = Vec::new();
    for n in [10usize, 20, 40] {
        let e = SpectralOracle::with_default_gamma(n).ground_state_energy();
        let rel = (FOUR_PI2 - e) / FOUR_PI2;
        assert!(rel > 0.0, "must approach from below at n = {n}");
        let ratio = rel / ground_state_predicted_deficit(n);
        assert!(
            (0.5..=2.0).contains(&ratio),
            "n = {n}: deficit {rel:.3e} is {ratio:.2}x the predicted leading term"
        );
        ratios.push(ratio);
    }
    let e10 = SpectralOracle::with_default_gamma(10).ground_state_energy();
    let rel10 = (FOUR_PI2 - e10) / FOUR_PI2;
    assert!((5e-6..=2e-5).contains(&rel10), "n = 10 deficit {rel10:.2e}");
    println!(
        "criterion 5 PASS: ground level equals the corner formula; deficit/prediction = \
         {:.2}, {:.2}, {:.2} at n = 10, 20, 40; relative deficit {rel10:.2e} at n = 10",
        ratios[0], ratios[1], ratios[2]
    );
}

#[test]
fn criterion_06_convergence_exponents() {
    let base = ProblemConfig {
        m: 8,
        pencil_form: PencilForm::NSandwich,
        ..ProblemConfig::default()
    };
    let ns: Vec<usize> = (10..=30).step_by(2).collect();
    let fits = run_convergence_study(&base, &[1, 2, 5, 7], &ns).unwrap();
    for fit in &fits {
        assert!(fit.clean, "level {} had nonpositive deficits", fit.rank);
        assert!(
            (5.0..=6.6).contains(&fit.slope_b),
            "level {}: fitted exponent {:.2} outside [5.0, 6.6]",
            fit.rank,
            fit.slope_b
        );
    }
    let s: Vec<String> = fits
        .iter()
        .map(|f| format!("b({}) = {:.2}", f.rank, f.slope_b))
        .collect();
    println!("criterion 6 PASS: {}", s.join(", "));
}

#[test]
fn criterion_07_nnz_formulas() {
    let budget = 4u64 << 30;
    for n in [3usize, 5, 10] {
        let rep = nnz_report(n as u64);
        assert_eq!(
            build_mi(1, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            rep.m1
        );
        assert_eq!(
            build_mi(2, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            rep.m2
        );
        assert_eq!(
            build_mi(3, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            rep.m3
        );
        assert_eq!(
            build_mi(4, n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            rep.m4
        );
        assert_eq!(
            build_m(n).unwrap().assemble_csr(budget).unwrap().nnz() as u64,
            rep.m
        );
        assert_eq!(
            build_n_matrix(n, DEFAULT_GAMMA_P)
                .unwrap()
                .assemble_csr(budget)
                .unwrap()
                .nnz() as u64,
            rep.n_matrix
        );
    }
    let gib = nnz_report(20).equation_bytes as f64 / (1u64 << 30) as f64;
    assert!(
        (gib - 0.37).abs() <= 0.05 * 0.37,
        "equation storage at n = 20 is {gib:.4} GiB, expected 0.37 within 5%"
    );
    println!("criterion 7 PASS: nonzero counts exact at n = 3, 5, 10; n = 20 storage {gib:.3} GiB");
}

#[test]
fn criterion_08_group_representation_suite() {
    let group = pairbox::symmetry::generate_group().unwrap();
    assert_eq!(group.order(), 32);
    let irreps = pairbox::symmetry::build_irreps(&group).unwrap();
    let sum_d2: usize = irreps.irreps().iter().map(|ir| ir.dim * ir.dim).sum();
    assert_eq!(sum_d2, 32);

    // dense projector completeness on the m = 3 label space through the
    // actual basis construction
    for m in [2usize, 3] {
        let basis = pairbox::symmetry::project_basis(m, &group, &irreps).unwrap();
        let dim = m.pow(4);
        let mut gram = nalgebra::DMatrix::<f64>::zeros(dim, dim);
        for &lab in ALL_LABELS.iter() {
            for row in 0..irreps.get(lab).dim {
                let c = basis.coefficient_matrix(lab, row);
                gram += &c * c.transpose();
            }
        }
        let dev = (&gram - nalgebra::DMatrix::<f64>::identity(dim, dim))
            .abs()
            .max();
        assert!(dev <= 1e-10, "completeness defect {dev:.2e} at m = {m}");
    }

    // randomized completeness at m = 8
    use rand::{Rng, SeedableRng};
    let m = 8usize;
    let basis = pairbox::symmetry::project_basis(m, &group, &irreps).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let y: Vec<f64> = (0..m.pow(4)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut rebuilt = vec![0.0; y.len()];
    for &lab in ALL_LABELS.iter() {
        for row in 0..irreps.get(lab).dim {
            for v in basis.vectors(lab, row) {
                let dot: f64 = v.coeffs.iter().map(|&(i, w)| w * y[i]).sum();
                for &(i, w) in &v.coeffs {
                    rebuilt[i] += dot * w;
                }
            }
        }
    }
    let defect = y
        .iter()
        .zip(&rebuilt)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(
        defect <= 1e-10,
        "random-vector completeness defect {defect:.2e}"
    );

    // row independence of two-dimensional block spectra (the statement is
    // about the unconstrained pencil algebra, so the interacting run uses
    // the half-cell coincidence rule)
    let solver = Solver::new(ProblemConfig {
        n: 10,
        m: 4,
        coulomb_c: 1.0,
        regularization: pairbox::solver::Regularization::HalfCell,
        ..ProblemConfig::default()
    })
    .unwrap();
    let result = solver.solve_all_rows().unwrap();
    let mut max_row_dev = 0.0f64;
    for &lab in ALL_LABELS.iter() {
        if solver.irreps.get(lab).dim != 2 {
            continue;
        }
        let a = result.levels_over_omega(lab, 0).unwrap();
        let b = result.levels_over_omega(lab, 1).unwrap();
        assert_eq!(a.len(), b.len(), "row dimensions differ for {lab}");
        for (x, y) in a.iter().zip(&b) {
            max_row_dev = max_row_dev.max((x - y).abs());
        }
    }
    assert!(
        max_row_dev <= 1e-9,
        "row spectra deviate by {max_row_dev:.2e}"
    );
    println!(
        "criterion 8 PASS: order 32, sum d^2 = 32, completeness within 1e-10, \
         row independence within {max_row_dev:.1e}"
    );
}

#[test]
fn criterion_09_block_diagonalization_equivalence() {
    let mut worst = 0.0f64;
    for c in [0.0, 1.0] {
        let solver = Solver::new(config(4, 2, c)).unwrap();
        let result = solver.solve_all_rows().unwrap();
        let mut union = Vec::new();
        for block in &result.blocks {
            for e in &block.energies {
                union.push(e / result.omega);
            }
        }
        union.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let dense = pairbox::cli::commands::dense_reference_spectrum(&solver).unwrap();
        assert_eq!(union.len(), dense.len(), "dimension mismatch at c = {c}");
        for (a, b) in union.iter().zip(&dense) {
            worst = worst.max((a - b).abs());
        }
    }
    assert!(worst <= 1e-9, "union vs dense deviates by {worst:.2e}");
    println!("criterion 9 PASS: block union equals dense pencil spectrum within {worst:.1e}");
}

fn assert_interacting_targets(solver: &Solver, result: &EigenResult, scale: &str) {
    let lab = |q, p| IrrepLabel { q, p };
    for (label, want, tol) in [
        (lab(2, 1), 4.078, 0.02),
        (lab(2, 2), 4.078, 0.02),
        (lab(2, 3), 5.079, 0.02),
        (lab(2, 4), 3.078, 0.02),
        (lab(1, 1), 2.702, 0.1),
    ] {
        let got = result.levels_over_omega(label, 0).unwrap()[0];
        assert!(
            (got - want).abs() <= tol,
            "{scale}: {label} lowest = {got:.3}, want {want} +- {tol}"
        );
    }
    let _ = solver;
}

#[test]
fn criterion_10_interacting_spectrum() {
    let (solver, result) = m8_c1();
    assert_interacting_targets(solver, result, "n = 14");
    let g11 = result
        .levels_over_omega(IrrepLabel { q: 1, p: 1 }, 0)
        .unwrap()[0];
    let g24 = result
        .levels_over_omega(IrrepLabel { q: 2, p: 4 }, 0)
        .unwrap()[0];
    println!(
        "criterion 10 PASS (n = 14, m = 8): antisymmetric channels within 0.02 \
         (lowest {g24:.3} vs 3.078), symmetric {g11:.3} vs 2.702 +- 0.1 \
         (coincidence-excluded rule in the manifest)"
    );
}

#[test]
#[ignore = "full resolution; run with --ignored (about fifteen minutes)"]
fn criterion_10_interacting_spectrum_full() {
    let (solver, result) = full_c1();
    assert_interacting_targets(solver, result, "n = 30");
    let g11 = result
        .levels_over_omega(IrrepLabel { q: 1, p: 1 }, 0)
        .unwrap()[0];
    println!("criterion 10 PASS (n = 30, m = 8): symmetric lowest {g11:.3} vs 2.702");
}

fn entanglement_of(
    solver: &Solver,
    result: &EigenResult,
    label: IrrepLabel,
    rank: usize,
) -> pairbox::observables::ReducedDensity {
    let state = solver.state_grid(result, label, 0, rank).unwrap();
    reduce_density(&state).unwrap()
}

#[test]
fn criterion_11_entanglement() {
    let lab = |q, p| IrrepLabel { q, p };
    let (solver0, result0) = m8_c0();
    let g11_free = entanglement_of(solver0, result0, lab(1, 1), 0);
    assert!((g11_free.purity - 1.0).abs() <= 1e-6);
    assert_eq!(g11_free.schmidt_count, 1);
    assert!(g11_free.entropy.abs() <= 1e-6);
    let g15_free = entanglement_of(solver0, result0, lab(1, 5), 0);
    assert!((g15_free.entropy - std::f64::consts::LN_2).abs() <= 1e-3);
    let g23_free = entanglement_of(solver0, result0, lab(2, 3), 0);
    assert!((g23_free.entropy - 1.386).abs() <= 2e-3);
    assert!((g23_free.purity - 0.250).abs() <= 1e-3);

    let (solver1, result1) = m8_c1();
    let g23_int = entanglement_of(solver1, result1, lab(2, 3), 0);
    let d_s23 = (g23_int.entropy - g23_free.entropy).abs();
    assert!(d_s23 <= 0.01, "antisymmetric entropy shift {d_s23:.4}");
    let g11_int = entanglement_of(solver1, result1, lab(1, 1), 0);
    let d_s11 = g11_int.entropy - g11_free.entropy;
    assert!(
        (d_s11 - 0.587).abs() <= 0.1,
        "symmetric entropy shift {d_s11:.3} vs 0.587 +- 0.1"
    );
    println!(
        "criterion 11 PASS: free S = 0, ln2, ln4 channels exact; interacting \
         dS(G23) = {d_s23:.4} <= 0.01, dS(G11) = {d_s11:.3} vs 0.587 +- 0.1"
    );
}

#[test]
#[ignore = "full resolution; run with --ignored (about fifteen minutes)"]
fn criterion_11_entanglement_full() {
    let lab = |q, p| IrrepLabel { q, p };
    let (solver1, result1) = full_c1();
    let g11_int = entanglement_of(solver1, result1, lab(1, 1), 0);
    assert!((g11_int.entropy - 0.587).abs() <= 0.1);
    let g23_int = entanglement_of(solver1, result1, lab(2, 3), 0);
    assert!((g23_int.entropy - 1.386f64).abs() <= 0.01 + 2e-3);
    println!(
        "criterion 11 PASS (n = 30): S(G11) = {:.3}, purity {:.3}, count {}; S(G23) = {:.4}",
        g11_int.entropy, g11_int.purity, g11_int.schmidt_count, g23_int.entropy
    );
}

#[test]
fn criterion_12_property_suite() {
    use pairbox::observables::{density_2d, dos_two_particle};
    use pairbox::symmetry::ExchangeSymmetry;

    let lab = |q, p| IrrepLabel { q, p };
    let solver0 = Solver::new(config(10, 4, 0.0)).unwrap();
    let result0 = solver0.solve(None).unwrap();
    let solver1 = Solver::new(config(10, 4, 1.0)).unwrap();
    let result1 = solver1.solve(None).unwrap();

    // density normalization and reduced-density consistency for a few states
    for (label, rank) in [
        (lab(1, 1), 0),
        (lab(1, 5), 0),
        (lab(2, 3), 0),
        (lab(4, 4), 0),
    ] {
        let available = result1
            .levels_over_omega(label, 0)
            .map(|l| l.len())
            .unwrap_or(0);
        assert!(available > rank, "{label} has no rank {rank} at this scale");
        let state = solver1.state_grid(&result1, label, 0, rank).unwrap();
        let density = density_2d(&state).unwrap();
        assert!((density.total() - 1.0).abs() <= 1e-10);
        let rd = reduce_density(&state).unwrap();
        assert!((rd.trace() - 1.0).abs() <= 1e-8, "trace of rho");
        assert!(rd.schmidt.iter().all(|&l| l >= 0.0), "rho must be PSD");
        let schmidt_sum: f64 = rd.schmidt.iter().sum();
        assert!((schmidt_sum - 1.0).abs() <= 1e-8, "Schmidt sum rule");
        assert!(rd.purity <= 1.0 + 1e-12 && rd.entropy >= -1e-12);
    }

    // antisymmetric states vanish at coincident lattice sites
    for c_solver in [(&solver0, &result0), (&solver1, &result1)] {
        let (solver, result) = c_solver;
        let state = solver.state_grid(result, lab(2, 1), 0, 0).unwrap();
        let n = solver.config.n;
        let max_abs = state.values().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let mut worst = 0.0f64;
        for p in 1..=n {
            for i in 1..=n {
                worst = worst.max(state.at(p, i, p, i).abs());
            }
        }
        assert!(
            worst <= 1e-12 * max_abs,
            "coincidence amplitude {worst:.2e} vs max {max_abs:.2e}"
        );
    }

    // repulsion never lowers the lowest level of any populated channel; at
    // this small scale the coincidence constraint may exhaust a tiny block
    // entirely, which counts as pushing its levels out of the subspace
    for &label in ALL_LABELS.iter() {
        let e0 = result0.levels_over_omega(label, 0).unwrap();
        let e1 = result1.levels_over_omega(label, 0).unwrap();
        if e0.is_empty() || e1.is_empty() {
            continue;
        }
        assert!(
            e1[0] >= e0[0] - 1e-9,
            "{label}: interacting {:.6} below noninteracting {:.6}",
            e1[0],
            e0[0]
        );
    }

    // sector sum rule of the two-particle DOS
    let sector_cases: [(ExchangeSymmetry, usize); 2] = [
        (
            ExchangeSymmetry::Antisymmetric,
            ALL_LABELS
                .iter()
                .filter(|l| l.q == 2)
                .map(|&l| 2 * solver0.sym_basis.multiplicity(l))
                .sum(),
        ),
        (
            ExchangeSymmetry::Symmetric,
            ALL_LABELS
                .iter()
                .filter(|l| l.q != 2)
                .map(|&l| solver0.irreps.get(l).dim * solver0.sym_basis.multiplicity(l))
                .sum(),
        ),
    ];
    for (sector, want) in sector_cases {
        let spectrum = dos_two_particle(&result0, &solver0.irreps, sector, 0.01, usize::MAX);
        let total = spectrum.total_weight().round() as usize;
        assert_eq!(total, want, "sector weight sum {sector:?}");
    }
    println!(
        "criterion 12 PASS: densities normalized, rho PSD with unit trace, Schmidt sum rule, \
         coincidence zeros, repulsion monotonicity, sector sum rule (n = 10, m = 4)"
    );
}
