//! Command-line front end: levels, dos, density, entanglement, convergence,
//! verify. Options come from flags and/or a key=value config file; flags
//! override the file.

pub mod commands;
pub mod config;
pub mod manifest;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
pub use commands::StateSelector;
pub use config::RunConfig;

#[derive(Parser, Debug)]
#[command(
    name = "pairbox",
    about = "Two interacting particles in a 2D box: spectra, densities, entanglement",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct CommonOpts {
    /// Config file with key=value lines (flags override it)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Interior grid points per axis
    #[arg(short = 'n', long)]
    pub resolution: Option<usize>,
    /// Oscillator levels per axis spanning the low-energy subspace
    #[arg(short = 'm', long)]
    pub levels: Option<usize>,
    /// Potential scale omega^2/2
    #[arg(long)]
    pub omega2_half: Option<f64>,
    /// Half box width
    #[arg(short = 'b', long)]
    pub box_half_width: Option<f64>,
    /// Coulomb strength c
    #[arg(short = 'c', long)]
    pub coulomb: Option<f64>,
    /// Free stencil parameter gamma' as a rational, e.g. 23/3840
    #[arg(long)]
    pub gamma_prime: Option<String>,
    /// Coulomb value at coincident sites: excluded, half-cell, or a number
    #[arg(long)]
    pub regularization: Option<String>,
    /// Pencil form: n-sandwich or plain
    #[arg(long)]
    pub pencil_form: Option<String>,
    /// Only these irreps, e.g. G11,G23
    #[arg(long)]
    pub irreps: Option<String>,
    /// Output directory
    #[arg(short = 'o', long)]
    pub output_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Memory budget in bytes for assembly
    #[arg(long)]
    pub memory_budget: Option<u64>,
    /// Lorentzian broadening for rendered DOS curves
    #[arg(long)]
    pub eta: Option<f64>,
    /// Occupied one-particle level m1,m2 for the interacting g1
    #[arg(long)]
    pub occupied: Option<String>,
    /// Disable the assembled-operator cache
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve all symmetry blocks and write the level table
    Levels {
        #[command(flatten)]
        opts: CommonOpts,
        /// Levels per block to report
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Densities of states: peak lists and broadened curves
    Dos {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long, default_value_t = 12)]
        cap: usize,
    },
    /// Two-particle density of one state (selector IRREP:ROW:RANK)
    Density {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long)]
        state: String,
    },
    /// Reduced density matrix, Schmidt spectrum and entropy of one state
    Entanglement {
        #[command(flatten)]
        opts: CommonOpts,
        #[arg(long)]
        state: String,
    },
    /// Fit deficit exponents of the trivial-irrep levels over a range of n
    Convergence {
        #[command(flatten)]
        opts: CommonOpts,
        /// 1-based level ranks to fit
        #[arg(long, default_value = "1,2,5,7")]
        picks: String,
        /// Resolutions, e.g. 10:30:2 (start:stop:step)
        #[arg(long, default_value = "10:30:2")]
        n_range: String,
    },
    /// Run the quick invariant suite and exit nonzero on failure
    Verify {
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Print the exact sparsity accounting for the configured resolution
    Nnz {
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn merge(opts: &CommonOpts) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &opts.config {
        for (k, v) in config::read_config_file(path)? {
            cfg.apply_key(&k, &v)?;
        }
    }
    if let Some(n) = opts.resolution {
        cfg.n = n;
    }
    if let Some(m) = opts.levels {
        cfg.m = m;
    }
    if let Some(v) = opts.omega2_half {
        cfg.omega2_half = v;
    }
    if let Some(v) = opts.box_half_width {
        cfg.b = v;
    }
    if let Some(v) = opts.coulomb {
        cfg.coulomb_c = v;
    }
    if let Some(v) = &opts.gamma_prime {
        cfg.gamma_p = config::parse_rational(v)?;
    }
    if let Some(v) = &opts.regularization {
        cfg.regularization = crate::solver::Regularization::parse(v)?;
    }
    if let Some(v) = &opts.pencil_form {
        cfg.pencil_form = crate::solver::PencilForm::parse(v)?;
    }
    if let Some(v) = &opts.irreps {
        cfg.irrep_filter = Some(config::parse_irrep_filter(v)?);
    }
    if let Some(v) = &opts.output_dir {
        cfg.output_dir = v.clone();
    }
    if let Some(v) = opts.threads {
        cfg.threads = Some(v);
    }
    if let Some(v) = opts.memory_budget {
        cfg.memory_budget = v;
    }
    if let Some(v) = opts.eta {
        cfg.eta = v;
    }
    if let Some(v) = &opts.occupied {
        let (a, b) = v
            .split_once(',')
            .ok_or_else(|| crate::error::Error::InvalidArgument("occupied expects m1,m2".into()))?;
        cfg.occupied = (
            a.trim().parse().map_err(|_| {
                crate::error::Error::InvalidArgument("occupied expects integers".into())
            })?,
            b.trim().parse().map_err(|_| {
                crate::error::Error::InvalidArgument("occupied expects integers".into())
            })?,
        );
    }
    if opts.no_cache {
        cfg.use_cache = false;
    }
    if let Some(t) = cfg.threads {
        // ignore failure when a global pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    Ok(cfg)
}

fn parse_picks(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| crate::error::Error::InvalidArgument(format!("bad level rank {p:?}")))
        })
        .collect()
}

fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || crate::error::Error::InvalidArgument(format!("bad n range {s:?}"));
    match parts.as_slice() {
        [start, stop, step] => {
            let (a, b, st): (usize, usize, usize) = (
                start.parse().map_err(|_| bad())?,
                stop.parse().map_err(|_| bad())?,
                step.parse().map_err(|_| bad())?,
            );
            if st == 0 || b < a {
                return Err(bad());
            }
            Ok((a..=b).step_by(st).collect())
        }
        _ => Err(bad()),
    }
}

/// Entry point used by the binary.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Levels { opts, cap } => {
            let cfg = merge(&opts)?;
            commands::cmd_levels(&cfg, cap)
        }
        Command::Dos { opts, cap } => {
            let cfg = merge(&opts)?;
            commands::cmd_dos(&cfg, cap)
        }
        Command::Density { opts, state } => {
            let cfg = merge(&opts)?;
            let sel = StateSelector::parse(&state)?;
            commands::cmd_density(&cfg, sel)
        }
        Command::Entanglement { opts, state } => {
            let cfg = merge(&opts)?;
            let sel = StateSelector::parse(&state)?;
            commands::cmd_entanglement(&cfg, sel)
        }
        Command::Convergence {
            opts,
            picks,
            n_range,
        } => {
            let cfg = merge(&opts)?;
            let picks = parse_picks(&picks)?;
            let ns = parse_n_range(&n_range)?;
            commands::cmd_convergence(&cfg, &picks, &ns)
        }
        Command::Verify { opts } => {
            let cfg = merge(&opts)?;
            commands::cmd_verify(&cfg)
        }
        Command::Nnz { opts } => {
            let cfg = merge(&opts)?;
            commands::cmd_nnz(&cfg)
        }
    }
}
