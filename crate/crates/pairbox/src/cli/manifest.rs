//! Run manifests: every physics-affecting knob plus solver diagnostics,
//! written as JSON with pinned float formatting.

use serde::Serialize;

use crate::cli::config::RunConfig;
use crate::solver::EigenResult;

/// Round a float to 15 significant digits so that serialized output does
/// not depend on platform-specific shortest-round-trip quirks.
pub fn pin15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[derive(Debug, Serialize)]
pub struct BlockInfo {
    pub irrep: String,
    pub row: usize,
    pub size: usize,
    pub unconstrained_size: usize,
    pub asymmetry: f64,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub n: usize,
    pub m: usize,
    pub omega2_half: f64,
    pub omega: f64,
    pub b: f64,
    pub h: f64,
    pub coulomb_c: f64,
    pub gamma_prime: String,
    pub regularization: String,
    pub pencil_form: String,
    pub eta: f64,
    pub occupied: [usize; 2],
    pub irrep_filter: Option<Vec<String>>,
    pub threads: usize,
    pub memory_budget: u64,
    pub cache_hit: bool,
    pub wall_clock_seconds: f64,
    pub blocks: Vec<BlockInfo>,
}

impl Manifest {
    pub fn new(command: &str, cfg: &RunConfig) -> Manifest {
        let omega = (2.0 * cfg.omega2_half).sqrt();
        Manifest {
            command: command.to_string(),
            n: cfg.n,
            m: cfg.m,
            omega2_half: pin15(cfg.omega2_half),
            omega: pin15(omega),
            b: pin15(cfg.b),
            h: pin15(2.0 * cfg.b / (cfg.n as f64 + 1.0)),
            coulomb_c: pin15(cfg.coulomb_c),
            gamma_prime: format!("{}/{}", cfg.gamma_p.numer(), cfg.gamma_p.denom()),
            regularization: cfg.regularization.name(),
            pencil_form: cfg.pencil_form.name().to_string(),
            eta: pin15(cfg.eta),
            occupied: [cfg.occupied.0, cfg.occupied.1],
            irrep_filter: cfg
                .irrep_filter
                .as_ref()
                .map(|f| f.iter().map(|l| l.to_string()).collect()),
            threads: rayon::current_num_threads(),
            memory_budget: cfg.memory_budget,
            cache_hit: false,
            wall_clock_seconds: 0.0,
            blocks: Vec::new(),
        }
    }

    pub fn record_blocks(&mut self, result: &EigenResult) {
        self.blocks = result
            .blocks
            .iter()
            .map(|b| BlockInfo {
                irrep: b.label.to_string(),
                row: b.row + 1,
                size: b.energies.len(),
                unconstrained_size: b.pencil.unconstrained_dim,
                asymmetry: pin15(b.pencil.asym),
            })
            .collect();
    }

    pub fn finish(&mut self, started: std::time::Instant) {
        self.wall_clock_seconds = pin15(started.elapsed().as_secs_f64());
    }

    pub fn to_json(&self) -> crate::error::Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinning_is_idempotent() {
        for x in [1.0 / 3.0, 2.0f64.sqrt(), 1e-17, 123456.789] {
            let once = pin15(x);
            assert_eq!(pin15(once), once);
        }
    }

    #[test]
    fn manifest_serializes() {
        let cfg = RunConfig::default();
        let m = Manifest::new("levels", &cfg);
        let json = m.to_json().unwrap();
        assert!(json.contains("\"gamma_prime\": \"23/3840\""));
        assert!(json.contains("\"regularization\": \"excluded\""));
    }
}
