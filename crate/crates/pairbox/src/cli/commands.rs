//! Implementations of the command-line subcommands.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::cli::config::RunConfig;
use crate::cli::manifest::{pin15, Manifest};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::kron::{nnz_report, SpectralOracle};
use crate::observables::{
    density_2d, dos_noninteracting_g1, dos_noninteracting_g2_total, dos_one_particle_interacting,
    dos_two_particle, reduce_density, InteractingG1Input,
};
use crate::solver::subspace::SubspaceOperators;
use crate::solver::{EigenResult, Solver};
use crate::symmetry::{ExchangeSymmetry, IrrepLabel, ALL_LABELS};

/// A solved-state selector IRREP:ROW:RANK with 1-based row and rank.
#[derive(Debug, Clone, Copy)]
pub struct StateSelector {
    pub label: IrrepLabel,
    pub row: usize,
    pub rank: usize,
}

impl StateSelector {
    pub fn parse(s: &str) -> Result<StateSelector> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::UnknownSelector {
                selector: s.to_string(),
                available: "format IRREP:ROW:RANK, e.g. G11:1:1".to_string(),
            });
        }
        let label = IrrepLabel::parse(parts[0])?;
        let row: usize = parts[1]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad row in selector {s:?}")))?;
        let rank: usize = parts[2]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad rank in selector {s:?}")))?;
        if row == 0 || rank == 0 {
            return Err(Error::InvalidArgument(
                "selector row and rank are 1-based".into(),
            ));
        }
        Ok(StateSelector { label, row, rank })
    }

    pub fn file_tag(&self) -> String {
        format!("{}_j{}_r{}", self.label, self.row, self.rank)
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path)?;
    f.write_all(contents.as_bytes())?;
    Ok(path)
}

// ---- operator cache --------------------------------------------------

fn cache_path(cfg: &RunConfig) -> PathBuf {
    let mut hasher = Sha256::new();
    hasher.update(cfg.physics_key().as_bytes());
    let digest = hasher.finalize();
    let hex: String = digest.iter().take(12).map(|b| format!("{b:02x}")).collect();
    cfg.output_dir.join("cache").join(format!("ops-{hex}.bin"))
}

fn push_matrix(buf: &mut Vec<u8>, m: &nalgebra::DMatrix<f64>) {
    buf.extend_from_slice(&(m.nrows() as u64).to_le_bytes());
    buf.extend_from_slice(&(m.ncols() as u64).to_le_bytes());
    for v in m.iter() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
}

fn read_matrix(buf: &[u8], pos: &mut usize) -> Option<nalgebra::DMatrix<f64>> {
    let take = |pos: &mut usize, k: usize| -> Option<&[u8]> {
        let s = buf.get(*pos..*pos + k)?;
        *pos += k;
        Some(s)
    };
    let nr = u64::from_le_bytes(take(pos, 8)?.try_into().ok()?) as usize;
    let nc = u64::from_le_bytes(take(pos, 8)?.try_into().ok()?) as usize;
    let mut m = nalgebra::DMatrix::zeros(nr, nc);
    for v in m.iter_mut() {
        *v = f64::from_le_bytes(take(pos, 8)?.try_into().ok()?);
    }
    Some(m)
}

fn save_ops(cfg: &RunConfig, ops: &SubspaceOperators) -> Result<()> {
    let header = serde_json::json!({
        "key": cfg.physics_key(),
        "asym": ops.asym,
        "form": ops.form.name(),
    })
    .to_string();
    let mut buf = Vec::new();
    buf.extend_from_slice(&(header.len() as u64).to_le_bytes());
    buf.extend_from_slice(header.as_bytes());
    buf.push(u8::from(ops.plane_map.is_some()));
    push_matrix(&mut buf, &ops.h_label);
    push_matrix(&mut buf, &ops.b_label);
    if let Some(pm) = &ops.plane_map {
        push_matrix(&mut buf, pm);
    }
    let path = cache_path(cfg);
    std::fs::create_dir_all(path.parent().unwrap())?;
    std::fs::write(path, buf)?;
    Ok(())
}

fn load_ops(cfg: &RunConfig) -> Option<SubspaceOperators> {
    let buf = std::fs::read(cache_path(cfg)).ok()?;
    let mut pos = 0usize;
    let hlen = u64::from_le_bytes(buf.get(0..8)?.try_into().ok()?) as usize;
    pos += 8;
    let header: serde_json::Value = serde_json::from_slice(buf.get(pos..pos + hlen)?).ok()?;
    pos += hlen;
    if header.get("key")?.as_str()? != cfg.physics_key() {
        return None;
    }
    let has_plane = *buf.get(pos)? != 0;
    pos += 1;
    let h_label = read_matrix(&buf, &mut pos)?;
    let b_label = read_matrix(&buf, &mut pos)?;
    let plane_map = if has_plane {
        Some(read_matrix(&buf, &mut pos)?)
    } else {
        None
    };
    let plane_scale = plane_map
        .as_ref()
        .map(|pm| {
            (0..pm.ncols())
                .map(|j| pm.column(j).norm())
                .fold(0.0f64, f64::max)
        })
        .unwrap_or(0.0);
    Some(SubspaceOperators {
        form: cfg.pencil_form,
        m: cfg.m,
        n: cfg.n,
        h: 2.0 * cfg.b / (cfg.n as f64 + 1.0),
        h_label,
        b_label,
        asym: header.get("asym")?.as_f64()?,
        plane_map,
        plane_scale,
    })
}

/// Build the solver, reusing cached subspace operators when possible.
pub fn build_solver(cfg: &RunConfig) -> Result<(Solver, bool)> {
    let problem = cfg.problem();
    problem.validate()?;
    if cfg.use_cache {
        if let Some(ops) = load_ops(cfg) {
            let grid = GridSpec::new(problem.n, problem.b)?;
            let basis = crate::oscillator::find_levels(
                crate::oscillator::OscillatorSpec::from_omega2_half(
                    problem.omega2_half,
                    problem.b,
                    problem.m,
                )?,
            )?;
            let table = basis.sample_wavefunctions(&grid)?;
            let group = crate::symmetry::generate_group()?;
            let irreps = crate::symmetry::build_irreps(&group)?;
            let sym_basis = crate::symmetry::project_basis(problem.m, &group, &irreps)?;
            return Ok((
                Solver {
                    config: problem,
                    grid,
                    basis,
                    table,
                    group,
                    irreps,
                    sym_basis,
                    ops,
                },
                true,
            ));
        }
    }
    let solver = Solver::new(problem)?;
    if cfg.use_cache {
        save_ops(cfg, &solver.ops)?;
    }
    Ok((solver, false))
}

fn degeneracy(label: IrrepLabel) -> usize {
    if label.q == 2 || label.p == 5 {
        2
    } else {
        1
    }
}

/// Levels table in a stable order: irrep label order, then ascending rank.
pub fn levels_csv(result: &EigenResult, cap: usize) -> String {
    let mut out = String::from("irrep,row,rank,energy_over_omega,degeneracy\n");
    for &label in ALL_LABELS.iter() {
        for block in result.blocks.iter().filter(|b| b.label == label) {
            for (idx, e) in block.energies.iter().take(cap).enumerate() {
                out.push_str(&format!(
                    "{},{},{},{:.6},{}\n",
                    label,
                    block.row + 1,
                    idx + 1,
                    e / result.omega,
                    degeneracy(label)
                ));
            }
        }
    }
    out
}

pub fn cmd_levels(cfg: &RunConfig, level_cap: usize) -> Result<()> {
    let started = Instant::now();
    let (solver, cache_hit) = build_solver(cfg)?;
    let result = solver.solve(cfg.irrep_filter.as_deref())?;
    let csv = levels_csv(&result, level_cap);
    write_file(&cfg.output_dir, "levels.csv", &csv)?;
    let mut manifest = Manifest::new("levels", cfg);
    manifest.cache_hit = cache_hit;
    manifest.record_blocks(&result);
    manifest.finish(started);
    write_file(&cfg.output_dir, "manifest.json", &manifest.to_json()?)?;
    println!(
        "levels: wrote {} rows to {}",
        csv.lines().count() - 1,
        cfg.output_dir.join("levels.csv").display()
    );
    Ok(())
}

fn broadened_csv(spectrum: &crate::observables::DeltaSpectrum) -> String {
    let max_pos = spectrum.peaks.last().map(|p| p.0).unwrap_or(1.0);
    let lo = 0.0;
    let hi = max_pos + 1.0;
    let step = 0.005;
    let count = ((hi - lo) / step).ceil() as usize;
    let xs: Vec<f64> = (0..=count).map(|i| lo + step * i as f64).collect();
    let ys = spectrum.broadened(&xs);
    let mut out = String::from("position,value\n");
    for (x, y) in xs.iter().zip(&ys) {
        out.push_str(&format!("{x:.6},{y:.6}\n"));
    }
    out
}

pub fn cmd_dos(cfg: &RunConfig, level_cap: usize) -> Result<()> {
    let started = Instant::now();
    let (solver, cache_hit) = build_solver(cfg)?;
    let result = solver.solve(cfg.irrep_filter.as_deref())?;

    let g1_free = dos_noninteracting_g1(&solver.basis, cfg.m, cfg.eta);
    write_file(
        &cfg.output_dir,
        "dos_g1_noninteracting.csv",
        &g1_free.peaks_csv(),
    )?;
    let g2_free = dos_noninteracting_g2_total(&solver.basis, cfg.m, cfg.eta);
    write_file(
        &cfg.output_dir,
        "dos_g2_total_noninteracting.csv",
        &g2_free.peaks_csv(),
    )?;

    for (sector, tag) in [
        (ExchangeSymmetry::Antisymmetric, "antisymmetric"),
        (ExchangeSymmetry::Symmetric, "symmetric"),
    ] {
        let g2 = dos_two_particle(&result, &solver.irreps, sector, cfg.eta, level_cap);
        write_file(
            &cfg.output_dir,
            &format!("dos_g2_{tag}.csv"),
            &g2.peaks_csv(),
        )?;
        write_file(
            &cfg.output_dir,
            &format!("dos_g2_{tag}_broadened.csv"),
            &broadened_csv(&g2),
        )?;
        let g1 = dos_one_particle_interacting(&InteractingG1Input {
            result: &result,
            irreps: &solver.irreps,
            basis: &solver.basis,
            table: &solver.table,
            solver: &solver,
            occupied: cfg.occupied,
            sector,
            eta: cfg.eta,
            level_cap,
        })?;
        write_file(
            &cfg.output_dir,
            &format!("dos_g1_{tag}.csv"),
            &g1.peaks_csv(),
        )?;
    }

    let mut manifest = Manifest::new("dos", cfg);
    manifest.cache_hit = cache_hit;
    manifest.record_blocks(&result);
    manifest.finish(started);
    write_file(&cfg.output_dir, "manifest.json", &manifest.to_json()?)?;
    println!("dos: peak lists written to {}", cfg.output_dir.display());
    Ok(())
}

pub fn cmd_density(cfg: &RunConfig, selector: StateSelector) -> Result<()> {
    let started = Instant::now();
    let (solver, cache_hit) = build_solver(cfg)?;
    let filter = [selector.label];
    let result = if selector.row == 1 {
        solver.solve(Some(&filter))?
    } else {
        solver.solve_all_rows()?
    };
    let state = solver.state_grid(&result, selector.label, selector.row - 1, selector.rank - 1)?;
    let density = density_2d(&state)?;
    write_file(
        &cfg.output_dir,
        &format!("density_{}.csv", selector.file_tag()),
        &density.to_csv(),
    )?;
    let mut manifest = Manifest::new("density", cfg);
    manifest.cache_hit = cache_hit;
    manifest.record_blocks(&result);
    manifest.finish(started);
    write_file(&cfg.output_dir, "manifest.json", &manifest.to_json()?)?;
    println!(
        "density: total mass {:.9}, file density_{}.csv",
        density.total(),
        selector.file_tag()
    );
    Ok(())
}

pub fn cmd_entanglement(cfg: &RunConfig, selector: StateSelector) -> Result<()> {
    let started = Instant::now();
    let (solver, cache_hit) = build_solver(cfg)?;
    let filter = [selector.label];
    let result = if selector.row == 1 {
        solver.solve(Some(&filter))?
    } else {
        solver.solve_all_rows()?
    };
    let state = solver.state_grid(&result, selector.label, selector.row - 1, selector.rank - 1)?;
    let rd = reduce_density(&state)?;
    let energy = result
        .block(selector.label, selector.row - 1)
        .map(|b| b.energies[selector.rank - 1] / result.omega)
        .unwrap_or(f64::NAN);
    let payload = serde_json::json!({
        "irrep": selector.label.to_string(),
        "row": selector.row,
        "rank": selector.rank,
        "energy_over_omega": pin15(energy),
        "purity": pin15(rd.purity),
        "schmidt_count": rd.schmidt_count,
        "entropy": pin15(rd.entropy),
        "schmidt_values": rd
            .schmidt_truncated(1e-12)
            .iter()
            .map(|&l| pin15(l))
            .collect::<Vec<f64>>(),
    });
    write_file(
        &cfg.output_dir,
        &format!("entanglement_{}.json", selector.file_tag()),
        &(serde_json::to_string_pretty(&payload)? + "\n"),
    )?;
    let mut manifest = Manifest::new("entanglement", cfg);
    manifest.cache_hit = cache_hit;
    manifest.record_blocks(&result);
    manifest.finish(started);
    write_file(&cfg.output_dir, "manifest.json", &manifest.to_json()?)?;
    println!(
        "entanglement {}: S = {:.3}, purity = {:.3}, count = {}",
        selector.file_tag(),
        rd.entropy,
        rd.purity,
        rd.schmidt_count
    );
    Ok(())
}

pub fn cmd_convergence(cfg: &RunConfig, picks: &[usize], n_values: &[usize]) -> Result<()> {
    let started = Instant::now();
    let base = crate::solver::ProblemConfig {
        coulomb_c: 0.0,
        ..cfg.problem()
    };
    let fits = crate::solver::convergence::run_convergence_study(&base, picks, n_values)?;
    let mut csv = String::from("rank,e_inf,slope_b,stderr,clean\n");
    for f in &fits {
        csv.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{}\n",
            f.rank, f.e_inf, f.slope_b, f.stderr, f.clean
        ));
    }
    write_file(&cfg.output_dir, "convergence.csv", &csv)?;
    let mut samples = String::from("rank,n,energy_over_omega\n");
    for f in &fits {
        for (n, e) in &f.samples {
            samples.push_str(&format!("{},{},{:.9}\n", f.rank, n, e));
        }
    }
    write_file(&cfg.output_dir, "convergence_samples.csv", &samples)?;
    let mut manifest = Manifest::new("convergence", cfg);
    manifest.finish(started);
    write_file(&cfg.output_dir, "manifest.json", &manifest.to_json()?)?;
    for f in &fits {
        println!(
            "level {}: E_inf = {:.6}, b = {:.2} +- {:.2}",
            f.rank, f.e_inf, f.slope_b, f.stderr
        );
    }
    Ok(())
}

// ---- verification suite ----------------------------------------------

struct Check {
    passed: bool,
}

fn check(name: &'static str, passed: bool, detail: String, list: &mut Vec<Check>) {
    println!("{} {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    list.push(Check { passed });
}

/// Quick full-stack verification at small sizes (about a minute).
pub fn cmd_verify(cfg: &RunConfig) -> Result<()> {
    let mut checks: Vec<Check> = Vec::new();
    let gamma_p = cfg.gamma_p;
    let gamma_p_f = *gamma_p.numer() as f64 / *gamma_p.denom() as f64;

    // exact coefficient residuals
    {
        let c = crate::stencil::solve_coefficient_systems(
            num_rational::Ratio::from_integer(1),
            num_rational::Ratio::from_integer(0),
            gamma_p,
        );
        let zero = num_rational::Ratio::from_integer(0);
        let ok = c.first_system_residuals().iter().all(|r| *r == zero)
            && c.second_system_residuals().iter().all(|r| *r == zero);
        check(
            "coefficient-systems",
            ok,
            "both linear systems solved with exactly zero rational residual".into(),
            &mut checks,
        );
    }

    // group and representations
    {
        let g = crate::symmetry::generate_group()?;
        let irreps = crate::symmetry::build_irreps(&g);
        let ok = g.order() == 32 && irreps.is_ok();
        check(
            "group-irreps",
            ok,
            format!(
                "order {}, irrep table {}",
                g.order(),
                if irreps.is_ok() {
                    "consistent"
                } else {
                    "failed"
                }
            ),
            &mut checks,
        );
        if let Ok(irreps) = irreps {
            let basis = crate::symmetry::project_basis(3, &g, &irreps)?;
            let total: usize = ALL_LABELS
                .iter()
                .map(|&lab| irreps.get(lab).dim * basis.multiplicity(lab))
                .sum();
            check(
                "projection-completeness",
                total == 81,
                format!("sum d*r = {total} at m = 3 (expect 81)"),
                &mut checks,
            );
        }
    }

    // dense spectra against the closed forms
    {
        let mut max_err = 0.0f64;
        for n in [2usize, 3] {
            let oracle = SpectralOracle::new(n, gamma_p_f);
            for (poly, kind) in [
                (crate::kron::build_m(n)?, crate::kron::MatrixKind::M),
                (
                    crate::kron::build_n_matrix(n, gamma_p_f)?,
                    crate::kron::MatrixKind::N,
                ),
            ] {
                let dense = poly.to_dense();
                let mut got: Vec<f64> = nalgebra::SymmetricEigen::new(dense)
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
                                want.push(oracle.eigenvalue(kind, [k1, k2, k3, k4])?);
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
        check(
            "spectral-oracle",
            max_err <= 1e-11,
            format!("max |dense - closed form| = {max_err:.2e} (n = 2, 3)"),
            &mut checks,
        );
    }

    // commutation of M and N by randomized matvec
    {
        use rand::{Rng, SeedableRng};
        let n = 6;
        let m = crate::kron::build_m(n)?;
        let nn = crate::kron::build_n_matrix(n, gamma_p_f)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let f: Vec<f64> = (0..n.pow(4)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mn = nn.matvec(&m.matvec(&f)?)?;
        let nm = m.matvec(&nn.matvec(&f)?)?;
        let norm = f.iter().map(|v| v * v).sum::<f64>().sqrt();
        let diff = mn
            .iter()
            .zip(&nm)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
            / norm;
        check(
            "commutator",
            diff <= 1e-12,
            format!("|(MN - NM) f| / |f| = {diff:.2e} at n = {n}"),
            &mut checks,
        );
    }

    // nnz formulas against assembled matrices
    {
        let n = 5;
        let rep = nnz_report(n as u64);
        let budget = 1u64 << 31;
        let ok = crate::kron::build_mi(1, n)?.assemble_csr(budget)?.nnz() as u64 == rep.m1
            && crate::kron::build_mi(4, n)?.assemble_csr(budget)?.nnz() as u64 == rep.m4
            && crate::kron::build_n_matrix(n, gamma_p_f)?
                .assemble_csr(budget)?
                .nnz() as u64
                == rep.n_matrix;
        check(
            "nnz-formulas",
            ok,
            format!("exact counts at n = {n}: N has {} nonzeros", rep.n_matrix),
            &mut checks,
        );
    }

    // positivity of N for the configured gamma'
    {
        let oracle = SpectralOracle::new(50, gamma_p_f);
        let (lmin, _) = oracle.lambda_extrema();
        check(
            "n-positivity",
            lmin > 0.0,
            format!("smallest corner eigenvalue of N at n = 50 is {lmin:.3e} (gamma' = {gamma_p})"),
            &mut checks,
        );
    }

    // ground level of the discrete Laplacian
    {
        let four_pi2 = 4.0 * std::f64::consts::PI.powi(2);
        let e10 = SpectralOracle::new(10, gamma_p_f).ground_state_energy();
        let rel = (four_pi2 - e10) / four_pi2;
        let (slope, _) =
            crate::solver::convergence::laplacian_ground_exponent(&[10, 13, 16, 20, 25, 31, 40]);
        let ok = rel > 5e-6 && rel < 2e-5 && (slope - 6.0).abs() < 0.2;
        check(
            "laplacian-ground",
            ok,
            format!("relative deficit at n = 10 is {rel:.2e}, fitted exponent {slope:.2}"),
            &mut checks,
        );
    }

    // tiny block-diagonalization equivalence
    {
        let mut max_err = 0.0f64;
        for c in [0.0, 1.0] {
            let problem = crate::solver::ProblemConfig {
                n: 4,
                m: 2,
                coulomb_c: c,
                gamma_p,
                regularization: cfg.regularization,
                pencil_form: cfg.pencil_form,
                ..crate::solver::ProblemConfig::default()
            };
            let solver = Solver::new(problem)?;
            let result = solver.solve_all_rows()?;
            let mut union: Vec<f64> = Vec::new();
            for block in &result.blocks {
                for e in &block.energies {
                    union.push(*e / result.omega);
                }
            }
            union.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let dense = dense_reference_spectrum(&solver)?;
            for (a, b) in union.iter().zip(&dense) {
                max_err = max_err.max((a - b).abs());
            }
        }
        check(
            "block-equivalence",
            max_err <= 1e-9,
            format!("blocks vs dense pencil at n = 4, m = 2: max diff {max_err:.2e}"),
            &mut checks,
        );
    }

    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(Error::VerificationFailed {
            failed,
            total: checks.len(),
        });
    }
    println!("verify: all {} checks passed", checks.len());
    Ok(())
}

/// Solve the unreduced label-space pencil (with the same plane constraint)
/// and return its sorted spectrum over omega.
pub fn dense_reference_spectrum(solver: &Solver) -> Result<Vec<f64>> {
    let ops = &solver.ops;
    let (mut h, mut b) = (ops.h_label.clone(), ops.b_label.clone());
    if let Some(plane) = &ops.plane_map {
        let z = crate::solver::blocks::null_space_basis(plane, 1e-6);
        h = z.transpose() * &h * &z;
        b = z.transpose() * &b * &z;
    }
    let chol = b.cholesky().ok_or_else(|| Error::OverlapNotSpd {
        block: "dense reference".into(),
        min_ritz: f64::NAN,
    })?;
    let l = chol.l();
    let mut t = h;
    l.solve_lower_triangular_mut(&mut t);
    t.transpose_mut();
    l.solve_lower_triangular_mut(&mut t);
    let mut evs: Vec<f64> = nalgebra::SymmetricEigen::new(t)
        .eigenvalues
        .iter()
        .map(|e| e / solver.omega())
        .collect();
    evs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(evs)
}

/// Sparsity report plus assembled verification when feasible.
pub fn cmd_nnz(cfg: &RunConfig) -> Result<()> {
    let rep = nnz_report(cfg.n as u64);
    println!("{}", serde_json::to_string_pretty(&rep)?);
    println!(
        "equation storage (LHS + N, 16 bytes per entry + row pointers): {:.4} GiB",
        rep.equation_bytes as f64 / (1u64 << 30) as f64
    );
    Ok(())
}
