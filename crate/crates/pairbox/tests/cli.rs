//! End-to-end checks of the command-line surface: artifact layout,
//! determinism of the emitted files, filters and error reporting.

use std::path::Path;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_pairbox")
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn levels_artifacts_and_determinism() {
    let dir = tempdir("levels");
    let args = [
        "levels",
        "-n",
        "8",
        "-m",
        "3",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ];
    let out = run(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv1 = read(&dir.join("levels.csv"));
    assert!(csv1.starts_with("irrep,row,rank,energy_over_omega,degeneracy\n"));
    assert!(csv1.contains("G11,1,1,"));
    // six-decimal energies
    let first_energy = csv1.lines().nth(1).unwrap().split(',').nth(3).unwrap();
    assert_eq!(first_energy.split('.').nth(1).unwrap().len(), 6);
    let manifest1 = read(&dir.join("manifest.json"));
    assert!(manifest1.contains("\"regularization\": \"excluded\""));
    assert!(manifest1.contains("\"gamma_prime\": \"23/3840\""));
    assert!(manifest1.contains("\"blocks\""));

    // a second run must reproduce the data artifacts byte for byte
    let out = run(&args);
    assert!(out.status.success());
    let csv2 = read(&dir.join("levels.csv"));
    assert_eq!(csv1, csv2, "levels.csv must be byte-identical across runs");
    let manifest2 = read(&dir.join("manifest.json"));
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("wall_clock_seconds"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&manifest1), strip(&manifest2));
}

#[test]
fn irrep_filter_restricts_output() {
    let dir = tempdir("filter");
    let out = run(&[
        "levels",
        "-n",
        "8",
        "-m",
        "3",
        "--irreps",
        "G23",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("levels.csv"));
    for line in csv.lines().skip(1) {
        assert!(line.starts_with("G23,"), "unexpected row {line}");
    }
}

#[test]
fn entanglement_artifact_shape() {
    let dir = tempdir("ent");
    let out = run(&[
        "entanglement",
        "-n",
        "8",
        "-m",
        "3",
        "--state",
        "G11:1:1",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let json: serde_json::Value =
        serde_json::from_str(&read(&dir.join("entanglement_G11_j1_r1.json"))).unwrap();
    assert_eq!(json["irrep"], "G11");
    assert!(json["purity"].as_f64().unwrap() > 0.999);
    assert!(json["schmidt_count"].as_u64().unwrap() >= 1);
    assert!(json["entropy"].as_f64().unwrap() < 1e-3);
    assert!(!json["schmidt_values"].as_array().unwrap().is_empty());
}

#[test]
fn density_total_mass() {
    let dir = tempdir("density");
    let out = run(&[
        "density",
        "-n",
        "8",
        "-m",
        "3",
        "--state",
        "G15:2:1",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(&dir.join("density_G15_j2_r1.csv"));
    let total: f64 = csv
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-8, "density mass {total}");
}

#[test]
fn unknown_selector_is_machine_readable() {
    let dir = tempdir("badsel");
    let out = run(&[
        "density",
        "-n",
        "6",
        "-m",
        "2",
        "--state",
        "G11:1:999",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ]);
    assert!(!out.status.success());
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert!(err["error"].as_str().unwrap().contains("selector"));
}

#[test]
fn tampered_gamma_prime_fails_verification() {
    let out = run(&["verify", "--gamma-prime", "1/100"]);
    assert!(
        !out.status.success(),
        "gamma' = 0.01 must fail the N-positivity check"
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("FAIL n-positivity"), "{stdout}");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempdir("conf");
    let conf = dir.join("run.conf");
    std::fs::write(&conf, "n=8\nm=3\nirreps=G11\n").unwrap();
    let out = run(&[
        "levels",
        "--config",
        conf.to_str().unwrap(),
        "--irreps",
        "G41",
        "-o",
        dir.to_str().unwrap(),
        "--no-cache",
    ]);
    assert!(out.status.success());
    let csv = read(&dir.join("levels.csv"));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("G41,")));
}

#[test]
fn cache_round_trip_matches() {
    let dir = tempdir("cache");
    let args = ["levels", "-n", "8", "-m", "3", "-o", dir.to_str().unwrap()];
    assert!(run(&args).status.success());
    let csv1 = read(&dir.join("levels.csv"));
    assert!(dir.join("cache").read_dir().unwrap().next().is_some());
    // second run hits the cache and reproduces the table
    assert!(run(&args).status.success());
    let csv2 = read(&dir.join("levels.csv"));
    assert_eq!(csv1, csv2);
    let manifest = read(&dir.join("manifest.json"));
    assert!(manifest.contains("\"cache_hit\": true"));
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("pairbox-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
